"""Pure-Python/numpy twins of the compiled kernels in ``_kernels.pyx``.

Signatures and results match the compiled versions exactly; only speed
differs. ``enumerate_box`` runs on Python ints, so it never overflows.
"""

from __future__ import annotations

import itertools

import numpy as np


def enumerate_box(basis, target, lo, hi, bound, out_coeffs, out_norms):
    n = len(basis)
    rows = [[int(x) for x in r] for r in basis]
    t = [int(x) for x in target]
    cap = len(out_coeffs)
    found = 0
    ranges = [range(int(a), int(b) + 1) for a, b in zip(lo, hi)]
    for u in itertools.product(*ranges):
        norm = 0
        for i in range(n):
            norm += abs(sum(u[k] * rows[k][i] for k in range(n)) - t[i])
            if norm > bound:
                break
        if norm <= bound:
            if found < cap:
                out_coeffs[found, :] = u
                out_norms[found] = norm
            found += 1
    return found


def count_within(points, center, radius, start=0, stop=-1):
    if stop < 0:
        stop = points.shape[0]
    block = points[start:stop]
    if block.shape[0] == 0:
        return 0
    d = np.abs(block - np.asarray(center)).sum(axis=1)
    return int(np.count_nonzero(d < radius))


def greedy_select(points, radius):
    npts = points.shape[0]
    alive = np.ones(npts, dtype=bool)
    kept = []
    for a in range(npts):
        if not alive[a]:
            continue
        kept.append(a)
        rest = np.nonzero(alive[a + 1:])[0] + a + 1
        if rest.size:
            d = np.abs(points[rest] - points[a]).sum(axis=1)
            alive[rest[d < radius]] = False
    return np.asarray(kept, dtype=np.int64)


def first_violation(points, radius, start=0, stop=-1):
    npts = points.shape[0]
    if stop < 0:
        stop = npts
    for a in range(start, stop):
        if a + 1 >= npts:
            break
        d = np.abs(points[a + 1:] - points[a]).sum(axis=1)
        hits = np.nonzero(d < radius)[0]
        if hits.size:
            b = int(hits[0])
            return (a, a + 1 + b, int(d[b]))
    return (-1, -1, -1)
