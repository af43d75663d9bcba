import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crosskiss import kissing as k
from crosskiss import rates as r

LOW = r.LowerRateParams(0.19, 0.09)
UP = r.UpperRateParams(0.334, 0.296, 1.5675)


def H(s):
    return 0.0 if s in (0.0, 1.0) else -s * math.log2(s) - (1 - s) * math.log2(1 - s)


def f_oracle(y1, y2, z1, z2):
    """Scalar transcription of the exponent, written independently of rates.py."""
    a = z1 + z2 - y1 - y2
    b = 1 + y2 - z1 / 2 - z2
    c = 1 - z1 - y1 - y2
    args = [y1 / z1, y2 / z2, (z1 / 2 + z2 - y1 - 2 * y2) / a, (y1 + 2 * y2 + z1 / 2 - z2) / b, (z2 - y1 - y2) / c]
    if any(not 0 <= t <= 1 for t in args):
        return -math.inf
    return z1 * H(args[0]) + z2 * H(args[1]) + a * H(args[2]) + b * H(args[3]) + c * H(args[4]) + z1 / 2 + y2


def sup_oracle(z1, z2, steps=120):
    """Coarse grid, then two rounds of local 21x21 grids at shrinking spacing."""
    best = max(((f_oracle(z2 * i / steps, z2 * j / steps, z1, z2), z2 * i / steps, z2 * j / steps)
                for i in range(steps + 1) for j in range(steps + 1 - i)))
    h = z2 / steps
    for _ in range(6):
        _, c1, c2 = best
        cands = [(f_oracle(c1 + h * i / 10, c2 + h * j / 10, z1, z2), c1 + h * i / 10, c2 + h * j / 10)
                 for i in range(-10, 11) for j in range(-10, 11)
                 if c1 + h * i / 10 >= 0 and c2 + h * j / 10 >= 0 and c1 + c2 + h * (i + j) / 10 <= z2]
        best = max([best] + cands)
        h /= 10
    return best


# --- lower bound ----------------------------------------------------------------

def test_f_anchor_and_oracle_agreement():
    assert r.f_rate(0.01728, 0.04327, 0.19, 0.09) == pytest.approx(1.17029, abs=1e-4)
    for y1, y2 in [(0, 0), (0.01, 0.03), (0.05, 0.02), (0.0172812, 0.0432773)]:
        assert r.f_rate(y1, y2, 0.19, 0.09) == pytest.approx(f_oracle(y1, y2, 0.19, 0.09), abs=1e-12)
    # boundary anchor, computed by the scalar oracle
    assert r.f_rate(0, 0, 0.19, 0.09) == pytest.approx(0.8053316, abs=1e-7)
    assert r.f_rate(0.2, 0.0, 0.19, 0.09) == -math.inf


@pytest.mark.parametrize("y", [(0.01728, 0.04327), (0.0, 0.0), (0.03, 0.02)])
def test_f_is_the_growth_rate_of_g(y):
    """(1/n) log2 g at x_i = y_i n converges to f; the gap shrinks roughly like log(n)/n."""
    f = r.f_rate(*y, 0.19, 0.09)
    gaps = []
    for n in (500, 2000, 8000, 32000):
        p = k.CodeParams(n, math.floor(0.19 * n), math.floor(0.09 * n))
        gaps.append(f - math.log2(k.g_term(round(y[0] * n), round(y[1] * n), p)) / n)
    assert all(g > 0 for g in gaps)
    assert gaps[0] > gaps[1] > gaps[2] > gaps[3]
    assert gaps[-1] < 2e-3


def test_code_size_rate_is_the_growth_rate_of_X():
    rate = r.code_size_rate(LOW)
    gaps = [rate - math.log2(k.CodeParams(n, math.floor(0.19 * n), math.floor(0.09 * n)).size) / n
            for n in (500, 2000, 8000, 32000)]
    assert gaps[0] > gaps[1] > gaps[2] > gaps[3] > 0
    assert gaps[-1] < 1e-3


def test_sup_f_at_the_reference_point():
    rep = r.sup_f(LOW)
    assert rep.value == pytest.approx(1.17029, abs=1e-3)
    assert rep.argmax[0] == pytest.approx(0.01728, abs=2e-3)
    assert rep.argmax[1] == pytest.approx(0.04327, abs=2e-3)
    oracle_value, *_ = sup_oracle(0.19, 0.09)
    assert rep.value == pytest.approx(oracle_value, abs=1e-6)


def test_sup_f_grid_values_are_monotone_in_resolution():
    # grids of size N, 2N, 4N are nested, so the raw maximum can only grow
    vals = [r.sup_f(LOW, grid=g, refine=False).value for g in (100, 200, 400, 800)]
    assert vals == sorted(vals)
    assert vals[-1] - vals[0] < 1e-3


def test_sup_f_degenerate_z2():
    p = r.LowerRateParams(0.19, 1e-6)
    assert r.sup_f(p).value == pytest.approx(r.f_rate(0, 0, 0.19, 1e-6), abs=1e-4)


def test_sup_f_at_z1_020():
    # Oracle value; it sits 0.029 above the (0.19, 0.09) value, i.e. the
    # sup moves by more than 0.02 under this change of z1.
    rep = r.sup_f(r.LowerRateParams(0.20, 0.09))
    oracle_value, *_ = sup_oracle(0.20, 0.09)
    assert rep.value == pytest.approx(oracle_value, abs=1e-6)
    assert rep.value == pytest.approx(1.19927, abs=1e-5)
    assert rep.value - r.sup_f(LOW).value == pytest.approx(0.029, abs=1e-3)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.12, 0.3), st.floats(0.01, 0.05))
def test_sup_f_is_continuous(z1, z2):
    a = r.sup_f(r.LowerRateParams(z1, z2), grid=120).value
    b = r.sup_f(r.LowerRateParams(z1 + 1e-4, z2), grid=120).value
    assert abs(a - b) < 5e-3


def test_lower_bound_rate():
    rep = r.lower_bound_rate(LOW)
    assert rep.value == pytest.approx(0.218818, abs=1e-3)
    assert rep.base >= 1.1637
    assert rep.value > math.log2(1.1348)
    assert rep.value > 0.2075


def test_lower_params_domain():
    for bad in ((0.19, 0.1), (0, 0.01), (0.9, 0.2), (1.2, 0.1)):
        with pytest.raises(r.InfeasibleParametersError):
            r.LowerRateParams(*bad)


# --- upper bound ----------------------------------------------------------------

def test_alpha_endpoints():
    hi = r.cap_interval(UP)
    assert UP.R - 1 + 2 * hi * UP.b == pytest.approx(1 / math.sqrt(2))
    assert r.alpha_function(hi, UP) == pytest.approx(0.0, abs=1e-6)
    direct = 2 ** (1 - UP.c) * math.sqrt(1 - 2 * (UP.R - 1) ** 2)
    assert r.alpha_function(0.0, UP) == pytest.approx(direct, rel=1e-12)
    with pytest.raises(ValueError):
        r.alpha_function(-0.01, UP)
    with pytest.raises(ValueError):
        r.alpha_function(hi + 0.01, UP)


def test_alpha_sup():
    rep = r.alpha_sup(UP)
    assert rep.meta["feasible"] and rep.value < 1
    grid = np.linspace(0, r.cap_interval(UP), 20001)
    assert rep.value >= max(r.alpha_function(x, UP) for x in grid[::10]) - 1e-12

    near = r.UpperRateParams(0.334, 0.296, 1.70)
    rep = r.alpha_sup(near)
    assert r.cap_interval(near) < 0.011
    assert rep.value == pytest.approx(r.alpha_function(0.0, near), rel=1e-9)
    assert rep.value == pytest.approx(0.2304, abs=1e-4)

    big = r.alpha_sup(r.UpperRateParams(0.334, 0.296, 1.2))
    assert not big.meta["feasible"]
    assert big.value == pytest.approx(1.8268, abs=1e-4)

    with pytest.raises(r.CapIntervalEmpty):
        r.alpha_sup(r.UpperRateParams(0.334, 0.296, 1.75))


def test_xprime_complement_rate():
    assert r.xprime_complement_rate(UP) == pytest.approx(2.9161, abs=2e-3)
    tiny = r.UpperRateParams(0.334, 1e-9, 1.5)
    assert r.xprime_complement_rate(tiny) == pytest.approx(1.0, abs=1e-6)
    other = r.xprime_complement_rate(r.UpperRateParams(0.30, 0.296, 1.5675))
    assert other < r.xprime_complement_rate(UP) - 0.05
    a = 0.30 * (1 - 0.296)
    assert other == pytest.approx(2 ** H(0.296) * ((3 - 2 * a) / (1 - 2 * a)) ** 0.296, rel=1e-12)
    assert other == pytest.approx(2.8581, abs=1e-4)
    with pytest.raises(r.InfeasibleParametersError):
        r.UpperRateParams(0.9, 0.1, 1.5)


def test_blichfeldt_rate():
    assert r.blichfeldt_rate(1.5675) == pytest.approx(2.91616, abs=1e-4)
    assert r.blichfeldt_rate(0.5 * math.sqrt(math.pi / math.e)) == pytest.approx(1.0, abs=1e-15)
    fin = r.blichfeldt_finite_log_rate(1.5675, 2000)
    assert fin == pytest.approx(math.log(r.blichfeldt_rate(1.5675)), abs=5e-3)


def test_log_ball_volume_small_dimensions():
    assert math.exp(r.log_ball_volume(2)) == pytest.approx(math.pi)
    assert math.exp(r.log_ball_volume(3, 2.0)) == pytest.approx(4 / 3 * math.pi * 8)


def test_upper_bound_rate():
    rep = r.upper_bound_rate(UP)
    assert rep.base == pytest.approx(2.9162, abs=1e-3)
    assert rep.value == pytest.approx(math.log2(rep.base))
    assert rep.meta["alpha_feasible"]
    with pytest.raises(r.InfeasibleParametersError, match="infeasible"):
        r.upper_bound_rate(r.UpperRateParams(0.334, 0.296, 1.2))


@pytest.mark.slow
def test_upper_sweep_finds_no_clear_improvement():
    rows = r.upper_bound_sweep(np.linspace(0.30, 0.37, 15), np.linspace(0.26, 0.33, 15), np.linspace(1.52, 1.62, 21))
    feasible = [row["base"] for row in rows if row["feasible"]]
    assert feasible
    assert min(feasible) >= 2.9162 - 1e-3


# --- finite-n identities ----------------------------------------------------------

@pytest.mark.parametrize("n", range(1, 51))
def test_integral_identity(n):
    assert r.blichfeldt_integral_identity(n).holds


def test_integral_identity_values():
    from fractions import Fraction
    assert r.blichfeldt_integral_identity(1).factor == Fraction(2, 3)
    assert r.blichfeldt_integral_identity(4).factor == Fraction(1, 3)
    mc, err = r.blichfeldt_identity_mc(10, 10**6, seed=0)
    assert abs(mc - 1 / 6) < 1e-3
    assert err < 5e-4


def test_integral_identity_mc_by_rejection():
    """Uniform points of the 3-ball by rejection from the cube, an unrelated sampler."""
    rng = np.random.default_rng(4)
    pts = rng.uniform(-1, 1, size=(600_000, 3))
    inside = pts[(pts**2).sum(axis=1) <= 1]
    est = (1 - (inside**2).sum(axis=1)).mean()
    assert est == pytest.approx(2 / 5, abs=2e-3)
    assert r.blichfeldt_integral_identity(3).factor == pytest.approx(est, abs=2e-3)


@pytest.mark.parametrize("n", [1000, 10000])
def test_ball_ratio(n):
    assert abs(r.ball_ratio_check(n) - 1) < 1e-3


def test_cap_cylinder():
    chk = r.cap_cylinder_bound_check(5, 1.0, 0.2)
    assert chk.holds
    assert chk.cap_mc == pytest.approx(chk.cap_exact, abs=4 * chk.cap_mc_stderr)
    assert chk.cap_exact <= chk.cylinder
    # a hemisphere of the unit 3-ball
    assert r.cap_volume(3, 1.0, 1.0) == pytest.approx(2 * math.pi / 3)
    assert r.cap_volume(5, 1.0, 1e-6) < 1e-8 and r.cylinder_volume(5, 1.0, 1e-6) < 1e-8
    with pytest.raises(ValueError):
        r.cap_cylinder_bound_check(5, 1.0, 1.5)
