"""Backend selection and work splitting for the integer l1 kernels.

The compiled Cython module is used when it imports; otherwise, or when
``CROSSKISS_PURE_PYTHON=1`` is set, the numpy/itertools twin in
``_fallback`` takes over. Worker threads (``CROSSKISS_THREADS`` or
:func:`set_threads`) split loops into fixed chunks whose results are merged
in chunk order, so output never depends on the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_INT64_SAFE = 2**62

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

if _compiled is not None and os.environ.get("CROSSKISS_PURE_PYTHON", "") in ("", "0"):
    BACKEND = "compiled"
else:
    BACKEND = "python"

_threads = max(1, int(os.environ.get("CROSSKISS_THREADS", "1") or 1))


def available_backends() -> list[str]:
    return sorted(_BACKENDS)


def set_backend(name: str) -> None:
    global BACKEND
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    BACKEND = name


def set_threads(n: int) -> None:
    global _threads
    if n < 1:
        raise ValueError("thread count must be >= 1")
    _threads = int(n)


def get_threads() -> int:
    return _threads


def _impl(backend):
    return _BACKENDS[backend or BACKEND]


def _map(fn, items):
    if _threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=_threads) as pool:
        return list(pool.map(fn, items))


def _chunks(total: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, total))
    edges = np.linspace(0, total, pieces + 1).astype(int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def as_points(points) -> np.ndarray:
    arr = np.ascontiguousarray(points, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("points must be a 2-d integer array")
    return arr


def box_search(basis, target, lo, hi, bound, backend=None):
    """All integer u in the box [lo, hi] with ``|u . basis - target|_1 <= bound``.

    ``basis`` and ``target`` are integer (already denominator-scaled). Returns
    ``(coeffs, norms)``; rows come out in odometer order (last coordinate
    fastest). Magnitudes that could overflow int64 are routed to the
    arbitrary-precision Python loop automatically.
    """
    n = len(basis)
    lo = [int(x) for x in lo]
    hi = [int(x) for x in hi]
    bound = int(bound)
    if any(a > b for a, b in zip(lo, hi)):
        return np.zeros((0, n), dtype=np.int64), np.zeros(0, dtype=np.int64)
    reach = sum(max(abs(a), abs(b)) * max(abs(int(x)) for x in row)
                for a, b, row in zip(lo, hi, basis))
    reach = n * (reach + max(abs(int(x)) for x in target)) + abs(bound)
    big = reach >= _INT64_SAFE
    if big:
        impl = _fallback
        basis_arr = [[int(x) for x in r] for r in basis]
        target_arr = [int(x) for x in target]
        dtype = object
    else:
        impl = _impl(backend)
        basis_arr = np.ascontiguousarray(basis, dtype=np.int64)
        target_arr = np.ascontiguousarray(target, dtype=np.int64)
        dtype = np.int64

    def run(first):
        sub_lo = np.array([first] + lo[1:], dtype=np.int64) if not big else [first] + lo[1:]
        sub_hi = np.array([first] + hi[1:], dtype=np.int64) if not big else [first] + hi[1:]
        cap = 1024
        while True:
            coeffs = np.zeros((cap, n), dtype=dtype)
            norms = np.zeros(cap, dtype=dtype)
            found = impl.enumerate_box(basis_arr, target_arr, sub_lo, sub_hi, bound, coeffs, norms)
            if found <= cap:
                return coeffs[:found], norms[:found]
            cap = int(found)

    parts = _map(run, list(range(lo[0], hi[0] + 1)))
    coeffs = np.concatenate([p[0] for p in parts], axis=0)
    norms = np.concatenate([p[1] for p in parts], axis=0)
    return coeffs, norms


def count_within(points, center, radius, backend=None) -> int:
    pts = as_points(points)
    c = np.ascontiguousarray(center, dtype=np.int64)
    impl = _impl(backend)
    parts = _map(lambda ab: impl.count_within(pts, c, int(radius), ab[0], ab[1]),
                 _chunks(pts.shape[0], _threads))
    return int(sum(parts))


def greedy_select(points, radius, backend=None) -> np.ndarray:
    pts = as_points(points)
    return np.asarray(_impl(backend).greedy_select(pts, int(radius)), dtype=np.int64)


def first_violation(points, radius, backend=None) -> tuple[int, int, int]:
    """Lexicographically first pair (a < b) closer than ``radius``, or (-1, -1, -1)."""
    pts = as_points(points)
    impl = _impl(backend)
    # chunks by row; earliest chunk with a hit holds the lexicographic first pair
    parts = _map(lambda ab: impl.first_violation(pts, int(radius), ab[0], ab[1]),
                 _chunks(pts.shape[0], _threads))
    for a, b, d in parts:
        if a >= 0:
            return (int(a), int(b), int(d))
    return (-1, -1, -1)
