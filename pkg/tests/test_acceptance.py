"""The nine acceptance criteria, each at its stated tolerance and time limit.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import math
import random
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from crosskiss import kissing, lattice, rates
from crosskiss.exact import add, hadamard_pair_transform, l1_norm, linf_norm, support

RESULTS: list[tuple[int, bool, float, str]] = []


def criterion_1():
    want = {("half_D4_plus", None): 40, ("L0", None): 36, ("L1", None): 28, ("L1_prime", None): 28,
            ("L_prime", None): 20, ("Dn", 4): 32, ("Zn", 4): 8}
    got, slowest = {}, 0.0
    for (name, n), count in want.items():
        t = time.perf_counter()
        got[name] = len(lattice.minimal_vectors(lattice.named_lattice(name, n)))
        slowest = max(slowest, time.perf_counter() - t)
    ok = list(got.values()) == list(want.values()) and slowest < 10
    return ok, f"counts {got}, slowest {slowest:.2f}s"


def criterion_2():
    L1, L1p = lattice.named_lattice("L1"), lattice.named_lattice("L1_prime")
    sigma = lattice.find_signed_permutation_equivalence(L1, L1p)
    verified = sigma is not None and sigma.apply_lattice(L1p).same_as(L1)
    none = lattice.find_signed_permutation_equivalence(lattice.named_lattice("half_D4_plus"),
                                                       lattice.named_lattice("L0"))
    return verified and none is None, f"sigma={sigma.to_json() if sigma else None}, half_D4_plus/L0 -> {none}"


def criterion_3():
    cert = lattice.covering_radius_h2sum()
    h2sum = lattice.named_lattice("H2_sum_H2")
    grid = [Fraction(k, 8) for k in range(5)]
    fam_ok = all(lattice.closest_point_l1(h2sum, lattice.DeepHoleFamily(kind).point(a, b))[1] == 1
                 for kind in lattice.DEEP_HOLE_KINDS for a in grid for b in grid)
    rng = random.Random(0)
    worst = max(lattice.closest_point_l1(h2sum, tuple(Fraction(rng.randint(-60, 60), rng.randint(1, 16))
                                                      for _ in range(4)))[1] for _ in range(100))
    ok = cert.radius == 1 and len(cert.steps) >= 5 and fam_ok and worst <= 1
    return ok, f"radius {cert.radius}, {len(cert.steps)} steps, all 100 family points at 1: {fam_ok}, random max {worst}"


def criterion_4():
    lp = lattice.named_lattice("L_prime")
    chain = all(lattice.named_lattice(k).contains_lattice(lp) and not lp.contains_lattice(lattice.named_lattice(k))
                for k in ("half_D4_plus", "L0", "L1", "L1_prime"))
    pairs, disjoint = 0, True
    for name in lattice.FOUR_DIM_NAMES:
        L = lattice.named_lattice(name)
        for x, y in lattice.mod_2L_classes(L, lattice.minimal_vectors(L)).same_class_pairs():
            pairs += 1
            disjoint &= not (support(x) & support(y))
    return chain and disjoint, f"strict chain {chain}, {pairs} same-class pairs all disjoint: {disjoint}"


def criterion_5():
    table = kissing.support_inequality_table(120)
    rows = table["rows"]
    exact = all(r["lattice_upper"] == 12 * (2 ** r["n"] - 1)
                and r["sum"] == sum(math.comb(r["n"], k) * 3**k for k in range(1, r["n"] // 6 + 1))
                for r in rows)
    n0 = table["n0"]
    holds = n0 is not None and all(r["sum"] < 2 ** r["n"] - 1 for r in rows if r["n"] >= n0)
    return exact and holds, f"n0 = {n0} (crude n0 = {table['n0_crude']})"


CONSTRUCTION_PARAMS = ((10, 3, 1), (12, 2, 1), (14, 3, 1), (16, 3, 1))


def criterion_6():
    details, ok = [], True
    for n, m1, m2 in CONSTRUCTION_PARAMS:
        p = kissing.CodeParams(n, m1, m2)
        closed = math.comb(n, m1) * math.comb(n - m1, m2) * 2 ** (m1 + m2)
        c = kissing.certify(p)
        good = (c.sizeX == closed and c.ballFormula >= c.maxBall_bruteforce and c.valid
                and c.greedySize >= -(-closed // c.maxBall_bruteforce))
        ok &= bool(good)
        details.append(f"({n},{m1},{m2}): |X|={c.sizeX} ball={c.maxBall_bruteforce} "
                       f"formula={c.ballFormula} greedy={c.greedySize}>={c.union_floor}")
    return ok, "; ".join(details)


def criterion_7():
    s = rates.sup_f(rates.LowerRateParams(0.19, 0.09))
    lb = rates.lower_bound_rate(rates.LowerRateParams(0.19, 0.09))
    up = rates.UpperRateParams(0.334, 0.296, 1.5675)
    xp = rates.xprime_complement_rate(up)
    bl = rates.blichfeldt_rate(1.5675)
    ub = rates.upper_bound_rate(up)
    checks = [abs(s.value - 1.17029) <= 1e-3,
              abs(s.argmax[0] - 0.01728) <= 2e-3 and abs(s.argmax[1] - 0.04327) <= 2e-3,
              abs(lb.value - 0.218818) <= 1e-3, 2**lb.value >= 1.1637,
              abs(xp - 2.9161) <= 2e-3, abs(bl - 2.91616) <= 1e-4,
              abs(ub.base - 2.9162) <= 1e-3, ub.meta["alpha_feasible"] is True]
    return all(checks), (f"sup_f={s.value:.6f} at ({s.argmax[0]:.5f},{s.argmax[1]:.5f}), rate={lb.value:.6f}, "
                         f"2^rate={2**lb.value:.5f}, xprime={xp:.5f}, blichfeldt={bl:.5f}, upper={ub.base:.5f}")


def criterion_8():
    exact = all(rates.blichfeldt_integral_identity(n).factor == Fraction(2, n + 2) for n in range(1, 51))
    fin = rates.blichfeldt_finite_log_rate(1.5675, 2000)
    gap = abs(fin - math.log(rates.blichfeldt_rate(1.5675)))
    return exact and gap <= 5e-3, f"2/(n+2) exact for n=1..50: {exact}; n=2000 gap {gap:.2e}"


def _cli(threads, *argv):
    return subprocess.run([sys.executable, "-m", "crosskiss.cli", "--threads", str(threads), *argv],
                          capture_output=True, check=True).stdout


def criterion_9():
    rng = random.Random(0)

    def rq():
        return Fraction(rng.randint(-1000, 1000), rng.randint(1, 100))

    hada = all(linf_norm(hadamard_pair_transform((a, b))) == l1_norm((a, b))
               for a, b in ((rq(), rq()) for _ in range(10_000)))
    tri = True
    for _ in range(10_000):
        u, v = tuple(rq() for _ in range(4)), tuple(rq() for _ in range(4))
        tri &= l1_norm(add(u, v)) <= l1_norm(u) + l1_norm(v)
    nprng = np.random.default_rng(0)
    centers = True
    for n, m1, m2 in CONSTRUCTION_PARAMS:
        p = kissing.CodeParams(n, m1, m2)
        X = kissing.construct_X(p)
        counts = {kissing.ball_size_bruteforce(p, X.points[i], points=X).count
                  for i in nprng.choice(len(X), 5, replace=False)}
        centers &= len(counts) == 1
    same = all(_cli(1, *argv) == _cli(8, *argv) for argv in (
        ["lattice", "min-vectors", "--name", "L0"],
        ["kissing", "build", "--n", "12", "--m1", "2", "--m2", "1", "--greedy"],
        ["reproduce", "all"]))
    return hada and tri and centers and same, (f"hadamard {hada}, triangle {tri}, "
                                               f"center independence {centers}, threads 1 vs 8 identical {same}")


CRITERIA = [(1, criterion_1, 10 * 7), (2, criterion_2, 5), (3, criterion_3, 30), (4, criterion_4, None),
            (5, criterion_5, 5), (6, criterion_6, 300), (7, criterion_7, 60), (8, criterion_8, 10),
            (9, criterion_9, 120)]


def evaluate(number, fn, limit):
    t = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t
    in_time = limit is None or elapsed < limit
    RESULTS.append((number, bool(ok and in_time), elapsed, detail))
    return ok, in_time, elapsed, detail


@pytest.mark.parametrize("number, fn, limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, fn, limit):
    ok, in_time, elapsed, detail = evaluate(number, fn, limit)
    assert ok, detail
    assert in_time, f"took {elapsed:.1f}s, limit {limit}s"


def summary_lines():
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'} ({t:.1f}s) {detail}" for n, ok, t, detail in RESULTS]


if __name__ == "__main__":
    for number, fn, limit in CRITERIA:
        evaluate(number, fn, limit)
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(ok for _, ok, _, _ in RESULTS) else 1)
