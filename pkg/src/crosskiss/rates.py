"""Exponential rates behind the asymptotic kissing bounds for the cross-polytope.

Rates are kept in log2 units; ``base`` fields give 2**rate. Optimizers are
deterministic: a fixed grid followed by local refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import betainc, gammaln

from .exact import binary_entropy

INV_SQRT2 = 1.0 / math.sqrt(2.0)
DEFAULT_LOWER = (0.19, 0.09)
DEFAULT_UPPER = (0.334, 0.296, 1.5675)


class InfeasibleParametersError(ValueError):
    pass


class CapIntervalEmpty(ValueError):
    pass


@dataclass(frozen=True)
class LowerRateParams:
    z1: float
    z2: float

    def __post_init__(self):
        z1, z2 = self.z1, self.z2
        if not (0 < z1 <= 1 and 0 < z2 <= 1 and z2 < z1 / 2 and z1 + z2 < 1):
            raise InfeasibleParametersError(
                f"need 0 < z1, z2 <= 1, z2 < z1/2 and z1 + z2 < 1; got z1={z1}, z2={z2}")


@dataclass(frozen=True)
class UpperRateParams:
    b: float
    c: float
    R: float

    def __post_init__(self):
        if not 0 < self.c < 1:
            raise InfeasibleParametersError(f"need 0 < c < 1, got {self.c}")
        if not 0 < self.a < 0.5:
            raise InfeasibleParametersError(f"need 0 < a = b(1-c) < 1/2, got a={self.a}")
        if not self.R > 1:
            raise InfeasibleParametersError(f"need R > 1, got {self.R}")

    @property
    def a(self) -> float:
        return self.b * (1 - self.c)

    def a_at(self, n: int | None) -> float:
        """``a`` with the finite-n correction b/n when ``n`` is given."""
        return self.a if n is None else self.a + self.b / n


@dataclass
class RateReport:
    function: str
    value: float
    params: dict
    argmax: tuple | None = None
    base: float | None = None
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"function": self.function, "params": self.params, "value": self.value,
               "argmax": None if self.argmax is None else list(self.argmax)}
        if self.base is not None:
            out["base"] = self.base
        out.update(self.meta)
        return out


# --- lower bound ----------------------------------------------------------------

def _h_array(s: np.ndarray) -> np.ndarray:
    """Entropy on arrays; -inf outside [0, 1] instead of raising."""
    s = np.asarray(s, dtype=float)
    out = np.full(s.shape, -np.inf)
    inside = (s >= 0) & (s <= 1)
    t = np.where(inside & (s > 0) & (s < 1), s, 0.5)
    vals = -t * np.log2(t) - (1 - t) * np.log2(1 - t)
    out[inside] = np.where((s[inside] == 0) | (s[inside] == 1), 0.0, vals[inside])
    return out


def _f_array(y1, y2, z1: float, z2: float) -> np.ndarray:
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    d3 = z1 + z2 - y1 - y2
    d4 = 1 + y2 - z1 / 2 - z2
    d5 = 1 - z1 - y1 - y2
    with np.errstate(divide="ignore", invalid="ignore"):
        total = (z1 * _h_array(y1 / z1) + z2 * _h_array(y2 / z2)
                 + d3 * _h_array((z1 / 2 + z2 - y1 - 2 * y2) / d3)
                 + d4 * _h_array((y1 + 2 * y2 + z1 / 2 - z2) / d4)
                 + d5 * _h_array((z2 - y1 - y2) / d5)
                 + z1 / 2 + y2)
    bad = (y1 < 0) | (y2 < 0) | (d3 <= 0) | (d4 <= 0) | (d5 <= 0) | ~np.isfinite(total)
    return np.where(bad, -np.inf, total)


def f_rate(y1: float, y2: float, z1: float, z2: float) -> float:
    """Growth rate (log2, per coordinate) of the g term at x_i = y_i n, m_i = z_i n.

    Points where some entropy argument leaves [0, 1] return -inf.
    """
    return float(_f_array(y1, y2, z1, z2))


def _refine(fun, start: tuple[float, float], step: float, feasible, tol: float = 1e-9):
    """Pattern search on the axes and the anti-diagonal with halving steps."""
    x = start
    fx = fun(*x)
    moves = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))
    while step > tol:
        improved = False
        for dx, dy in moves:
            cand = (x[0] + dx * step, x[1] + dy * step)
            if not feasible(cand):
                continue
            fc = fun(*cand)
            if fc > fx:
                x, fx, improved = cand, fc, True
                break
        if not improved:
            step /= 2
    return x, fx


def sup_f(params: LowerRateParams, grid: int = 400, refine: bool = True) -> RateReport:
    """max of f over the triangle y1, y2 >= 0, y1 + y2 <= z2."""
    z1, z2 = params.z1, params.z2
    idx = np.arange(grid + 1)
    i, j = np.meshgrid(idx, idx, indexing="ij")
    keep = i + j <= grid
    y1 = z2 * i[keep] / grid
    y2 = z2 * j[keep] / grid
    vals = _f_array(y1, y2, z1, z2)
    # argmax returns the first maximum; rows are ordered by (i, j), i.e. lexicographically
    k = int(np.argmax(vals))
    grid_value = float(vals[k])
    arg = (float(y1[k]), float(y2[k]))
    value = grid_value
    if refine:
        def feasible(p):
            return p[0] >= 0 and p[1] >= 0 and p[0] + p[1] <= z2

        arg, value = _refine(lambda a, b: f_rate(a, b, z1, z2), arg, z2 / grid, feasible)
        value = max(value, grid_value)
    return RateReport("sup_f", value, {"z1": z1, "z2": z2}, arg,
                      meta={"grid": grid, "grid_value": grid_value, "tolerance": 1e-7})


def code_size_rate(params: LowerRateParams) -> float:
    """log2 |X(m1, m2)| / n in the limit."""
    z1, z2 = params.z1, params.z2
    return binary_entropy(z1) + (1 - z1) * binary_entropy(z2 / (1 - z1)) + z1 + z2


def lower_bound_rate(params: LowerRateParams, grid: int = 400) -> RateReport:
    s = sup_f(params, grid)
    size = code_size_rate(params)
    rate = size - s.value
    return RateReport("lower_bound_rate", rate, {"z1": params.z1, "z2": params.z2}, s.argmax, 2.0**rate,
                      meta={"size_rate": size, "sup_f": s.value, "grid": grid, "tolerance": 1e-7})


# --- upper bound ----------------------------------------------------------------

def cap_interval(params: UpperRateParams) -> float:
    """Right end of the k' interval, (1 + 1/sqrt2 - R) / (2b)."""
    return (1 + INV_SQRT2 - params.R) / (2 * params.b)


def _alpha_array(k: np.ndarray, params: UpperRateParams) -> np.ndarray:
    b, c, R = params.b, params.c, params.R
    k = np.asarray(k, dtype=float)
    root = np.sqrt(np.clip(1 - 2 * (R - 1 + 2 * k * b) ** 2, 0.0, None))
    ent = _h_array(np.minimum(k / c, 1.0))
    # past k' = c the binomial C(cn, k) vanishes
    return np.where(k <= c, 2.0 ** (c * ent + (1 - c)) * root, 0.0)


def alpha_function(kprime: float, params: UpperRateParams) -> float:
    hi = cap_interval(params)
    if not (0 <= kprime <= hi * (1 + 1e-12) + 1e-15):
        raise ValueError(f"k'={kprime} outside [0, {hi}]")
    return float(_alpha_array(min(kprime, hi), params))


def _golden_max(fun, lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float]:
    ratio = (math.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - ratio * (b - a)
    d = a + ratio * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - ratio * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + ratio * (b - a)
            fd = fun(d)
    x = (a + b) / 2
    return x, fun(x)


def alpha_sup(params: UpperRateParams, grid: int = 2000) -> RateReport:
    """sup of the cap integrand over k'; ``feasible`` means sup < 1."""
    hi = cap_interval(params)
    if hi <= 0:
        raise CapIntervalEmpty("cap interval empty; alpha vacuously 0")
    ks = np.linspace(0.0, hi, grid + 1)
    vals = _alpha_array(ks, params)
    i = int(np.argmax(vals))
    lo_k, hi_k = ks[max(i - 1, 0)], ks[min(i + 1, grid)]
    k_best, v_best = _golden_max(lambda t: float(_alpha_array(t, params)), lo_k, hi_k)
    if vals[i] > v_best:
        k_best, v_best = float(ks[i]), float(vals[i])
    return RateReport("alpha_sup", float(v_best), _upper_dict(params), (float(k_best),),
                      meta={"feasible": bool(v_best < 1), "interval": [0.0, hi], "grid": grid, "tolerance": 1e-12})


def _upper_dict(params: UpperRateParams) -> dict:
    return {"b": params.b, "c": params.c, "R": params.R, "a": params.a}


def xprime_complement_rate(params: UpperRateParams, n: int | None = None) -> float:
    """Base of the count of points with few large coordinates:
    2^H(c) * ((3 - 2a) / (1 - 2a))^c."""
    a = params.a_at(n)
    if not 0 < a < 0.5:
        raise ValueError(f"need 0 < a < 1/2, got a={a}")
    return 2.0 ** binary_entropy(params.c) * ((3 - 2 * a) / (1 - 2 * a)) ** params.c


def blichfeldt_rate(R: float) -> float:
    """Limit base of vol(R K_n) / vol(B_n / sqrt(2n)), which is 2R sqrt(e/pi)."""
    if R <= 0:
        raise ValueError("R must be positive")
    return 2 * R * math.sqrt(math.e / math.pi)


def log_ball_volume(n: int, radius: float = 1.0) -> float:
    """Natural log of the volume of the n-ball of the given radius."""
    return (n / 2) * math.log(math.pi) - float(gammaln(n / 2 + 1)) + n * math.log(radius)


def blichfeldt_finite_log_rate(R: float, n: int) -> float:
    """(1/n) ln[(2R)^n / (n! vol(B_n / sqrt(2n)))] at finite n."""
    log_q = n * math.log(2 * R) - float(gammaln(n + 1)) - log_ball_volume(n, 1 / math.sqrt(2 * n))
    return log_q / n


def upper_bound_rate(params: UpperRateParams) -> RateReport:
    """max of the two branch bases; the volume branch needs alpha < 1."""
    try:
        alpha = alpha_sup(params)
        alpha_value, feasible = alpha.value, alpha.meta["feasible"]
    except CapIntervalEmpty:
        alpha_value, feasible = 0.0, True
    if not feasible:
        raise InfeasibleParametersError(
            f"Blichfeldt branch infeasible for these parameters (alpha sup = {alpha_value:.6f} >= 1)")
    xp = xprime_complement_rate(params)
    bl = blichfeldt_rate(params.R)
    base = max(xp, bl)
    return RateReport("upper_bound_rate", math.log2(base), _upper_dict(params), None, base,
                      meta={"xprime_complement": xp, "blichfeldt": bl, "alpha_sup": alpha_value,
                            "alpha_feasible": feasible})


def upper_bound_sweep(b_values, c_values, R_values) -> list[dict]:
    """One row per (b, c, R); infeasible triples are kept with ``base`` = None."""
    rows = []
    for b in b_values:
        for c in c_values:
            for R in R_values:
                row = {"b": float(b), "c": float(c), "R": float(R)}
                try:
                    rep = upper_bound_rate(UpperRateParams(float(b), float(c), float(R)))
                    row.update(alpha_sup=rep.meta["alpha_sup"], feasible=True,
                               xprime_complement=rep.meta["xprime_complement"],
                               blichfeldt=rep.meta["blichfeldt"], base=rep.base)
                except InfeasibleParametersError:
                    row.update(alpha_sup=None, feasible=False, xprime_complement=None,
                               blichfeldt=None, base=None)
                rows.append(row)
    return rows


# --- finite-n identities and checks --------------------------------------------

@dataclass(frozen=True)
class IdentityCheck:
    n: int
    factor: Fraction
    expected: Fraction

    @property
    def holds(self) -> bool:
        return self.factor == self.expected

    def to_json(self) -> dict:
        return {"n": self.n, "factor": f"{self.factor.numerator}/{self.factor.denominator}",
                "expected": f"{self.expected.numerator}/{self.expected.denominator}", "holds": self.holds}


def blichfeldt_integral_identity(n: int) -> IdentityCheck:
    """Exact value of (integral of the density over its ball) / (ball volume).

    In the radial variable t = r / rho the density is 1 - t^2 and the shell
    weight is n t^(n-1), so the ratio is the integral over [0, 1] of
    n t^(n-1) - n t^(n+1), done here term by term in rationals.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    poly = {n - 1: Fraction(n), n + 1: Fraction(-n)}  # exponent -> coefficient
    factor = sum((coef / (e + 1) for e, coef in poly.items()), Fraction(0))
    return IdentityCheck(n, factor, Fraction(2, n + 2))


def blichfeldt_identity_mc(n: int, samples: int = 10**6, seed: int = 0) -> tuple[float, float]:
    """Monte Carlo mean of the density over a uniform point of its ball, with std error."""
    rng = np.random.default_rng(seed)
    t2 = rng.random(samples) ** (2.0 / n)  # |Y|^2 / rho^2 for Y uniform in the ball
    vals = 1.0 - t2
    return float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(samples))


def ball_ratio_check(n: int) -> float:
    """[vol(B_n) / vol(B_{n-1})] / sqrt(2 pi / n); tends to 1."""
    return math.exp(log_ball_volume(n) - log_ball_volume(n - 1)) / math.sqrt(2 * math.pi / n)


@dataclass(frozen=True)
class CapCheck:
    n: int
    r: float
    h: float
    cap_exact: float
    cap_mc: float
    cap_mc_stderr: float
    cylinder: float

    @property
    def holds(self) -> bool:
        return bool(self.cap_mc <= self.cylinder + 3 * self.cap_mc_stderr)

    def to_json(self) -> dict:
        return {"n": self.n, "r": self.r, "h": self.h, "cap_exact": self.cap_exact, "cap_mc": self.cap_mc,
                "cap_mc_stderr": self.cap_mc_stderr, "cylinder": self.cylinder, "holds": self.holds}


def cap_volume(n: int, r: float, h: float) -> float:
    """Exact volume of a cap of height h (<= r) cut from the n-ball of radius r."""
    x = (2 * r * h - h * h) / (r * r)
    return 0.5 * math.exp(log_ball_volume(n, r)) * float(betainc((n + 1) / 2, 0.5, x))


def cylinder_volume(n: int, r: float, h: float) -> float:
    """h (r^2 - (r-h)^2)^((n-1)/2) vol(B_{n-1})."""
    if n == 1:
        return h
    base_r2 = r * r - (r - h) ** 2
    return h * base_r2 ** ((n - 1) / 2) * math.exp(log_ball_volume(n - 1))


def cap_cylinder_bound_check(n: int, r: float, h: float, samples: int = 200_000, seed: int = 0) -> CapCheck:
    """Sample uniform points of the ball and count those in the cap."""
    if not 0 < h <= r:
        raise ValueError(f"need 0 < h <= r, got h={h}, r={r}")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((samples, n))
    first = g[:, 0] / np.linalg.norm(g, axis=1)
    radius = r * rng.random(samples) ** (1.0 / n)
    hit = radius * first >= r - h
    p = float(hit.mean())
    vol = math.exp(log_ball_volume(n, r))
    return CapCheck(n, r, h, cap_volume(n, r, h), p * vol, vol * math.sqrt(p * (1 - p) / samples),
                    cylinder_volume(n, r, h))
