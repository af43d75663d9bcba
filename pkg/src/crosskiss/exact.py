"""Exact rational vectors, norms and supports, plus the binary entropy function.

Vectors are plain tuples of :class:`fractions.Fraction`. Index sets are
0-based here; the CLI converts to 1-based on output.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction
RationalVector = tuple  # tuple[Fraction, ...]


def as_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: a float would silently carry a binary rounding error
    into exact geometry.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact coordinate")


def vec(*coords) -> RationalVector:
    """``vec("1/4", 0, Fraction(1, 2))`` -> tuple of Fractions."""
    if len(coords) == 1 and not isinstance(coords[0], (int, str, Fraction)):
        coords = tuple(coords[0])
    if not coords:
        raise ValueError("vectors need at least one coordinate")
    return tuple(as_rational(c) for c in coords)


def zero(n: int) -> RationalVector:
    return (Fraction(0),) * n


def _check_same_length(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} != {len(v)}")


def add(u: RationalVector, v: RationalVector) -> RationalVector:
    _check_same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: RationalVector, v: RationalVector) -> RationalVector:
    _check_same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def neg(v: RationalVector) -> RationalVector:
    return tuple(-a for a in v)


def scale(c, v: RationalVector) -> RationalVector:
    c = as_rational(c)
    return tuple(c * a for a in v)


def l1_norm(v: RationalVector) -> Fraction:
    return sum((abs(a) for a in v), Fraction(0))


def linf_norm(v: RationalVector) -> Fraction:
    return max((abs(a) for a in v), default=Fraction(0))


def l1_distance(u: RationalVector, v: RationalVector) -> Fraction:
    return l1_norm(sub(u, v))


def support(v: RationalVector) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(v) if a != 0)


def max_coordinates(v: RationalVector) -> frozenset[int]:
    """Indices i with ``|v_i| == linf_norm(v)``."""
    m = linf_norm(v)
    if m == 0:
        raise ValueError("max-coordinates are undefined for zero vector")
    return frozenset(i for i, a in enumerate(v) if abs(a) == m)


def hadamard_pair_transform(v: RationalVector) -> RationalVector:
    """(x, y) -> (x + y, x - y).

    The l-infinity norm of the image equals the l1 norm of the input, so the
    map carries l1 geometry in the plane onto l-infinity geometry.
    """
    if len(v) != 2:
        raise ValueError(f"hadamard_pair_transform needs a 2-vector, got dimension {len(v)}")
    x, y = v
    return (x + y, x - y)


def inverse_hadamard_pair_transform(w: RationalVector) -> RationalVector:
    if len(w) != 2:
        raise ValueError(f"inverse transform needs a 2-vector, got dimension {len(w)}")
    a, b = w
    return ((a + b) / 2, (a - b) / 2)


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for x in values:
        d = math.lcm(d, x.denominator)
    return d


def format_rational(x: Fraction) -> str:
    x = as_rational(x)
    return f"{x.numerator}/{x.denominator}"


def vector_to_json(v: RationalVector) -> list[str]:
    return [format_rational(a) for a in v]


def vector_from_json(items: Sequence) -> RationalVector:
    return vec(*items)


def parse_vector(text: str) -> RationalVector:
    """Parse ``"1/4,1/4,1/4,1/4"`` (brackets and spaces tolerated)."""
    body = text.strip().strip("[]()")
    return vec(*(p.strip().strip("'\"") for p in body.split(",") if p.strip()))


def canonical_key(v: RationalVector) -> tuple:
    """Sort key used everywhere a deterministic vector order is needed.

    Each vector is first replaced by the member of ``{v, -v}`` whose first
    nonzero coordinate is positive; those are compared lexicographically on
    (numerator, denominator) pairs. The trailing flag puts ``v`` before ``-v``.
    """
    flip = False
    for a in v:
        if a != 0:
            flip = a < 0
            break
    rep = neg(v) if flip else v
    return (tuple((a.numerator, a.denominator) for a in rep), flip)


def binary_entropy(s: float) -> float:
    """H(s) = -s log2 s - (1-s) log2 (1-s); exactly 0 at both endpoints."""
    s = float(s)
    if not 0.0 <= s <= 1.0 or math.isnan(s):
        raise ValueError(f"binary entropy is defined on [0, 1], got {s}")
    if s == 0.0 or s == 1.0:
        return 0.0
    return -s * math.log2(s) - (1.0 - s) * math.log2(1.0 - s)


def log2_binomial(n: int, k: int) -> float:
    """log2 C(n, k) through log-Gamma, usable for n far beyond exact factorials."""
    if k < 0 or k > n:
        return -math.inf
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2)
