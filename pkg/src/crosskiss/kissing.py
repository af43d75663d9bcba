"""Translative kissing configurations of the cross-polytope.

Point sets are stored as integer numpy arrays together with a common
denominator, so every norm and distance below is an exact integer
comparison. The X(m1, m2) construction, its l1 balls and the greedy
extraction all run through the integer kernels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .exact import as_rational, common_denominator, format_rational

BRUTEFORCE_GUARD = 10**8
CONSTRUCT_GUARD = 5 * 10**7
LOWER_Z1 = Fraction(19, 100)
LOWER_Z2 = Fraction(9, 100)


class FormulaRangeError(ValueError):
    pass


def canonical_order(points: np.ndarray) -> np.ndarray:
    """Row order matching :func:`crosskiss.exact.canonical_key` for integer rows."""
    pts = np.asarray(points)
    if len(pts) == 0:
        return np.zeros(0, dtype=np.int64)
    nonzero = pts != 0
    first = np.where(nonzero.any(axis=1), nonzero.argmax(axis=1), 0)
    lead = pts[np.arange(len(pts)), first]
    flip = lead < 0
    rep = np.where(flip[:, None], -pts, pts)
    keys = [flip] + [rep[:, i] for i in range(pts.shape[1] - 1, -1, -1)]
    return np.lexsort(keys)


@dataclass
class KissingConfiguration:
    """Points ``points / denominator`` meant to have l1 norm ``scale`` and
    pairwise l1 distances at least ``scale``.

    ``valid`` stays ``None`` until :func:`verify_kissing_configuration` runs.
    """

    n: int
    scale: Fraction
    points: np.ndarray
    denominator: int = 1
    valid: bool | None = None

    def __post_init__(self):
        self.scale = as_rational(self.scale)
        self.points = kernels.as_points(self.points) if len(self.points) else np.zeros((0, self.n), dtype=np.int64)
        if self.points.shape[1] != self.n:
            raise ValueError(f"points have dimension {self.points.shape[1]}, expected {self.n}")

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def from_vectors(cls, vectors: Sequence, scale) -> "KissingConfiguration":
        vectors = [tuple(as_rational(x) for x in v) for v in vectors]
        n = len(vectors[0])
        d = common_denominator(x for v in vectors for x in v)
        pts = np.array([[int(x * d) for x in v] for v in vectors], dtype=np.int64)
        return cls(n, as_rational(scale), pts, d)

    def vectors(self) -> list[tuple[Fraction, ...]]:
        d = self.denominator
        return [tuple(Fraction(int(x), d) for x in row) for row in self.points.tolist()]

    def to_json(self) -> dict:
        d = self.denominator
        return {
            "n": self.n,
            "scale": format_rational(self.scale),
            "points": [[format_rational(Fraction(int(x), d)) for x in row] for row in self.points.tolist()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "KissingConfiguration":
        cfg = cls.from_vectors(data["points"], data["scale"])
        if int(data["n"]) != cfg.n:
            raise ValueError(f"n={data['n']} does not match point dimension {cfg.n}")
        return cfg


@dataclass(frozen=True)
class ValidityReport:
    valid: bool
    size: int
    reason: str = ""
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"valid": self.valid, "size": self.size, "reason": self.reason, "witness": self.witness}


def _show(row, d: int) -> list[str]:
    return [format_rational(Fraction(int(x), d)) for x in row]


def verify_kissing_configuration(cfg: KissingConfiguration) -> ValidityReport:
    """Check norms and pairwise separation exactly; the first violation found is reported."""
    d = math.lcm(cfg.denominator, cfg.scale.denominator)
    pts = cfg.points * (d // cfg.denominator)
    m = int(cfg.scale * d)
    norms = np.abs(pts).sum(axis=1)
    bad = np.nonzero(norms != m)[0]
    if bad.size:
        i = int(bad[0])
        cfg.valid = False
        return ValidityReport(False, len(cfg), "point norm differs from scale",
                              {"index": i, "point": _show(pts[i], d),
                               "norm": format_rational(Fraction(int(norms[i]), d)),
                               "scale": format_rational(cfg.scale)})
    a, b, dist = kernels.first_violation(pts, m)
    if a >= 0:
        cfg.valid = False
        return ValidityReport(False, len(cfg), "pair closer than scale",
                              {"indices": [a, b], "points": [_show(pts[a], d), _show(pts[b], d)],
                               "distance": format_rational(Fraction(dist, d)),
                               "scale": format_rational(cfg.scale)})
    cfg.valid = True
    return ValidityReport(True, len(cfg))


# --- counting bounds ------------------------------------------------------------

def hadwiger_bound(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return 3**n - 1


def support_size_bound(n: int, k: int) -> int:
    """Most vectors with support size k a kissing configuration in R^n can hold."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return math.comb(n, k) * 3**k


def lattice_kissing_upper_bound(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return 12 * (2**n - 1)


def small_support_sum(n: int) -> int:
    """sum_{k=1}^{floor(n/6)} C(n, k) 3^k (0 when n < 6)."""
    return sum(support_size_bound(n, k) for k in range(1, n // 6 + 1))


def small_support_crude(n: int) -> int:
    """floor(n/6) * C(n, floor(n/6)) * 3^floor(n/6): the one-term overestimate of the sum."""
    k = n // 6
    return k * math.comb(n, k) * 3**k


def support_inequality_table(n_max: int = 120) -> dict:
    """Check sum < 2^n - 1 (and its crude overestimate) for n = 1..n_max.

    ``n0`` is the least n such that the inequality holds on all of [n, n_max].
    """
    rows = []
    for n in range(1, n_max + 1):
        s, crude, target = small_support_sum(n), small_support_crude(n), 2**n - 1
        rows.append({"n": n, "sum": s, "crude": crude, "two_pow_minus_one": target,
                     "lattice_upper": lattice_kissing_upper_bound(n),
                     "holds": s < target, "crude_holds": crude < target})

    def threshold(flag: str) -> int | None:
        n0 = None
        for row in reversed(rows):
            if not row[flag]:
                break
            n0 = row["n"]
        return n0

    return {"n_max": n_max, "n0": threshold("holds"), "n0_crude": threshold("crude_holds"), "rows": rows}


# --- the X(m1, m2) construction -------------------------------------------------

@dataclass(frozen=True)
class CodeParams:
    """Points of {0, +-1, +-2}^n with m1 coordinates of size 1 and m2 of size 2."""

    n: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.n < 1 or self.m1 < 0 or self.m2 < 0:
            raise ValueError(f"infeasible params: {self}")
        if self.m1 + self.m2 > self.n:
            raise ValueError(f"infeasible params: m1 + m2 = {self.m1 + self.m2} > n = {self.n}")
        if self.m1 + self.m2 == 0:
            raise ValueError("infeasible params: X would be {0}")

    @property
    def m(self) -> int:
        return self.m1 + 2 * self.m2

    @property
    def formula_in_range(self) -> bool:
        return 2 * self.m2 < self.m1

    @property
    def size(self) -> int:
        return math.comb(self.n, self.m1) * math.comb(self.n - self.m1, self.m2) * 2 ** (self.m1 + self.m2)

    def center(self) -> np.ndarray:
        x0 = np.zeros(self.n, dtype=np.int64)
        x0[: self.m1] = 1
        x0[self.m1: self.m1 + self.m2] = 2
        return x0

    def to_json(self) -> dict:
        return {"n": self.n, "m1": self.m1, "m2": self.m2, "m": self.m}


def construct_X(params: CodeParams) -> KissingConfiguration:
    """All of X(m1, m2) in canonical order, as a candidate pool at scale m."""
    if params.size > CONSTRUCT_GUARD:
        raise ValueError(f"|X| = {params.size} exceeds the construction guard {CONSTRUCT_GUARD}")
    n, m1, m2 = params.n, params.m1, params.m2
    k = m1 + m2
    patterns = []
    for ones in itertools.combinations(range(n), m1):
        rest = [i for i in range(n) if i not in ones]
        for twos in itertools.combinations(rest, m2):
            patterns.append((ones, twos))
    # positions of the nonzero entries and their magnitudes, one row per pattern
    pos = np.array([list(o) + list(t) for o, t in patterns], dtype=np.int64).reshape(len(patterns), k)
    mag = np.array([1] * m1 + [2] * m2, dtype=np.int64)
    signs = np.array(list(itertools.product((1, -1), repeat=k)), dtype=np.int64).reshape(-1, k)
    pts = np.zeros((len(patterns) * len(signs), n), dtype=np.int64)
    rows = np.arange(len(pts))
    for j in range(k):
        col = np.repeat(pos[:, j], len(signs))
        val = np.tile(signs[:, j] * mag[j], len(patterns))
        pts[rows, col] = val
    pts = pts[canonical_order(pts)]
    return KissingConfiguration(n, Fraction(params.m), pts, 1)


@dataclass(frozen=True)
class BallCount:
    params: CodeParams
    center: tuple[int, ...] | None
    count: int
    method: str
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"params": self.params.to_json(), "center": None if self.center is None else list(self.center),
                "count": self.count, "method": self.method, **self.meta}


def _to_canonical_frame(params: CodeParams, center: np.ndarray):
    """Signed permutation (as index array + signs) taking ``center`` to the canonical x0."""
    mags = np.abs(center)
    order = np.concatenate([np.nonzero(mags == 1)[0], np.nonzero(mags == 2)[0], np.nonzero(mags == 0)[0]])
    signs = np.where(center[order] < 0, -1, 1)
    return order, signs


def ball_size_bruteforce(params: CodeParams, center=None, points: KissingConfiguration | None = None) -> BallCount:
    """|{y in X : |center - y|_1 < m}| by direct distance evaluation (center included).

    The count is recomputed with the overlap criterion 2 c1 + 4 c2 + 2 c3 > m
    after moving ``center`` to the canonical point, and the two must agree.
    """
    if params.size > BRUTEFORCE_GUARD:
        raise ValueError(f"size guard exceeded: |X| = {params.size} > {BRUTEFORCE_GUARD} distance evaluations")
    X = points if points is not None else construct_X(params)
    c = params.center() if center is None else np.asarray(center, dtype=np.int64)
    if int(np.abs(c).sum()) != params.m or sorted(np.abs(c).tolist()) != sorted(np.abs(params.center()).tolist()):
        raise ValueError("center is not a point of X")
    count = kernels.count_within(X.points, c, params.m)

    order, signs = _to_canonical_frame(params, c)
    y = X.points[:, order] * signs
    m1, m2 = params.m1, params.m2
    c1 = np.count_nonzero(y[:, :m1] == 2, axis=1)
    c2 = np.count_nonzero(y[:, m1:m1 + m2] == 2, axis=1)
    c3 = np.count_nonzero(y[:, :m1 + m2] == 1, axis=1)
    by_criterion = int(np.count_nonzero(2 * c1 + 4 * c2 + 2 * c3 > params.m))
    if by_criterion != count:
        raise AssertionError(f"distance count {count} != criterion count {by_criterion} for {params}")
    return BallCount(params, tuple(int(x) for x in c), count, "bruteforce")


def _comb(n: int, k: int) -> int:
    return math.comb(n, k) if 0 <= k <= n else 0


def overlap_threshold(x1: int, x2: int, m: int) -> int:
    """Least integer h with 2 x1 + 4 x2 + 2 h > m."""
    return (m - 2 * x1 - 4 * x2) // 2 + 1


def g_term(x1: int, x2: int, params: CodeParams) -> int:
    n, m1, m2 = params.n, params.m1, params.m2
    h = overlap_threshold(x1, x2, params.m)
    return (_comb(m1, x1) * _comb(m2, x2) * _comb(m1 + m2 - x1 - x2, h)
            * _comb(n - x1 - x2 - h, m1 - h) * _comb(n - m1 - x1 - x2, m2 - x1 - x2)
            * (2 ** (m1 + m2 - x1 - x2 - h) if m1 + m2 - x1 - x2 - h >= 0 else 0))


def ball_size_formula(params: CodeParams) -> BallCount:
    """Closed-form upper bound on the ball size: the sum of g over x1 + x2 <= m2.

    Needs 2 m2 <= m1 so that the threshold h stays nonnegative; at 2 m2 == m1
    the sum is still evaluated and flagged ``boundary``.
    """
    if 2 * params.m2 > params.m1:
        raise FormulaRangeError(f"formula outside validity range: need m2 <= m1/2, got m1={params.m1}, m2={params.m2}")
    total = sum(g_term(x1, x2, params)
                for x1 in range(params.m2 + 1) for x2 in range(params.m2 + 1 - x1))
    return BallCount(params, None, total, "formula", {"boundary": not params.formula_in_range})


def greedy_kissing_subset(X: KissingConfiguration, scale=None) -> KissingConfiguration:
    """Greedy valid subset: scan in canonical order, keep a point, drop its open ball.

    Each kept point removes at most one ball's worth of candidates, so the
    result has at least ceil(|X| / max ball size) points.
    """
    m = as_rational(scale) if scale is not None else X.scale
    d = math.lcm(X.denominator, m.denominator)
    pts = X.points * (d // X.denominator)
    norms = np.abs(pts).sum(axis=1)
    if np.any(norms != int(m * d)):
        raise ValueError("every candidate must have l1 norm equal to the scale")
    if len(pts) == 0:
        return KissingConfiguration(X.n, m, pts, d, valid=True)
    pts = pts[canonical_order(pts)]
    kept = kernels.greedy_select(pts, int(m * d))
    out = KissingConfiguration(X.n, m, pts[kept], d)
    verify_kissing_configuration(out)
    return out


def union_bound_floor(size: int, ball: int) -> int:
    return -(-size // ball)


@dataclass(frozen=True)
class LowerBoundCertificate:
    params: CodeParams
    sizeX: int
    maxBall_bruteforce: int
    ballFormula: int | None
    greedySize: int | None
    valid: bool | None
    union_floor: int
    formula_floor: int | None

    @property
    def log2_rate(self) -> float | None:
        if not self.greedySize:
            return None
        return math.log2(self.greedySize) / self.params.n

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "sizeX": self.sizeX,
            "maxBall_bruteforce": self.maxBall_bruteforce,
            "ballFormula": self.ballFormula,
            "greedySize": self.greedySize,
            "valid": self.valid,
            "log2_rate": self.log2_rate,
            "union_floor": self.union_floor,
            "formula_floor": self.formula_floor,
        }


def lower_bound_params(n: int) -> CodeParams:
    if n < 12:
        raise ValueError(f"infeasible n={n}: need n >= 12 so that m1 >= 2 and m2 >= 1")
    return CodeParams(n, math.floor(LOWER_Z1 * n), math.floor(LOWER_Z2 * n))


def certify(params: CodeParams, greedy: bool = True) -> LowerBoundCertificate:
    X = construct_X(params)
    ball = ball_size_bruteforce(params, points=X).count
    try:
        formula = ball_size_formula(params).count
    except FormulaRangeError:
        formula = None
    size = greedy_valid = None
    if greedy:
        S = greedy_kissing_subset(X)
        size, greedy_valid = len(S), S.valid
    return LowerBoundCertificate(params, len(X), ball, formula, size, greedy_valid,
                                 union_bound_floor(len(X), ball),
                                 None if formula is None else union_bound_floor(len(X), formula))


def lower_bound_certificate(n: int, greedy: bool = True) -> LowerBoundCertificate:
    """Run the construction at m1 = floor(0.19 n), m2 = floor(0.09 n)."""
    return certify(lower_bound_params(n), greedy)
