"""Recompute every headline number and compare it with its reference value."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import kissing, lattice, rates
from .exact import hadamard_pair_transform, l1_norm, linf_norm, support


@dataclass(frozen=True)
class Check:
    item: str
    expected: str
    computed: str
    ok: bool

    def to_json(self) -> dict:
        return {"item": self.item, "expected": self.expected, "computed": self.computed, "ok": self.ok}


def _close(x: float, target: float, tol: float) -> bool:
    return abs(x - target) <= tol


def lattice_checks() -> list[Check]:
    out = []
    counts = {("half_D4_plus", None): 40, ("L0", None): 36, ("L1", None): 28, ("L1_prime", None): 28,
              ("L_prime", None): 20, ("Dn", 4): 32, ("Zn", 4): 8}
    for (name, n), want in counts.items():
        got = len(lattice.minimal_vectors(lattice.named_lattice(name, n)))
        label = name if n is None else f"{name}(n={n})"
        out.append(Check(f"|M({label})|", str(want), str(got), got == want))
    L1, L1p = lattice.named_lattice("L1"), lattice.named_lattice("L1_prime")
    sigma = lattice.find_signed_permutation_equivalence(L1, L1p)
    ok = sigma is not None and sigma.apply_lattice(L1p).same_as(L1)
    out.append(Check("L1 equivalent to L1'", "signed permutation", str(sigma.to_json() if sigma else None), ok))
    none = lattice.find_signed_permutation_equivalence(lattice.named_lattice("half_D4_plus"),
                                                       lattice.named_lattice("L0"))
    out.append(Check("half_D4_plus vs L0", "not equivalent", str(none), none is None))
    cert = lattice.covering_radius_h2sum()
    out.append(Check("rho(H2+H2)", "1", str(cert.radius), cert.radius == 1))
    lp = lattice.named_lattice("L_prime")
    chain = all(lattice.named_lattice(k).contains_lattice(lp) and not lp.contains_lattice(lattice.named_lattice(k))
                for k in ("half_D4_plus", "L0", "L1", "L1_prime"))
    out.append(Check("L' strictly inside half_D4_plus, L0, L1, L1'", "true", str(chain), chain))
    return out


def deep_hole_checks(seed: int = 0) -> list[Check]:
    h2sum = lattice.named_lattice("H2_sum_H2")
    grid = [Fraction(k, 8) for k in range(5)]
    out = []
    for kind in lattice.DEEP_HOLE_KINDS:
        fam = lattice.DeepHoleFamily(kind)
        dists = {lattice.closest_point_l1(h2sum, fam.point(a, b))[1] for a in grid for b in grid}
        out.append(Check(f"deep-hole family {kind}: distance to H2+H2", "1",
                         ",".join(str(d) for d in sorted(dists)), dists == {1}))
    rng = random.Random(seed)
    worst = max(lattice.closest_point_l1(h2sum, tuple(Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                                                      for _ in range(4)))[1] for _ in range(100))
    out.append(Check("max distance over 100 random points", "<= 1", str(worst), worst <= 1))
    return out


def bound_checks() -> list[Check]:
    table = kissing.support_inequality_table(120)
    n0 = table["n0"]
    return [
        Check("Hadwiger bound n=4", "80", str(kissing.hadwiger_bound(4)), kissing.hadwiger_bound(4) == 80),
        Check("lattice upper bound n=4", "180", str(kissing.lattice_kissing_upper_bound(4)),
              kissing.lattice_kissing_upper_bound(4) == 180),
        Check("sum C(n,k)3^k < 2^n - 1 for n in [n0, 120]", "n0 found", f"n0={n0}", n0 is not None),
    ]


def construction_checks() -> list[Check]:
    out = []
    for n, m1, m2 in ((10, 3, 1), (12, 2, 1), (14, 3, 1), (16, 3, 1)):
        p = kissing.CodeParams(n, m1, m2)
        cert = kissing.certify(p)
        ok = (cert.sizeX == p.size and cert.ballFormula is not None and cert.ballFormula >= cert.maxBall_bruteforce
              and cert.valid and cert.greedySize >= cert.union_floor)
        out.append(Check(f"X({m1},{m2}) in R^{n}",
                         f"|X|={p.size}, formula>=ball, greedy>=floor",
                         f"|X|={cert.sizeX}, ball={cert.maxBall_bruteforce}, formula={cert.ballFormula}, "
                         f"greedy={cert.greedySize}, floor={cert.union_floor}", bool(ok)))
    return out


def rate_checks() -> list[Check]:
    low = rates.LowerRateParams(*rates.DEFAULT_LOWER)
    s = rates.sup_f(low)
    lb = rates.lower_bound_rate(low)
    up = rates.UpperRateParams(*rates.DEFAULT_UPPER)
    xp = rates.xprime_complement_rate(up)
    bl = rates.blichfeldt_rate(up.R)
    ub = rates.upper_bound_rate(up)
    arg_ok = _close(s.argmax[0], 0.01728, 2e-3) and _close(s.argmax[1], 0.04327, 2e-3)
    fin = rates.blichfeldt_finite_log_rate(up.R, 2000)
    identity_ok = all(rates.blichfeldt_integral_identity(n).holds for n in range(1, 51))
    return [
        Check("sup f(z1*, z2*)", "1.17029", f"{s.value:.6f}", _close(s.value, 1.17029, 1e-3)),
        Check("argmax of f", "(0.01728, 0.04327)", f"({s.argmax[0]:.5f}, {s.argmax[1]:.5f})", arg_ok),
        Check("lower-bound exponent", "0.218818", f"{lb.value:.6f}", _close(lb.value, 0.218818, 1e-3)),
        Check("lower-bound base", ">= 1.1637", f"{lb.base:.5f}", lb.base >= 1.1637),
        Check("|X \\ X'| base", "2.9161", f"{xp:.5f}", _close(xp, 2.9161, 2e-3)),
        Check("M base (Blichfeldt)", "2.91616", f"{bl:.5f}", _close(bl, 2.91616, 1e-4)),
        Check("alpha sup < 1", "< 1", f"{ub.meta['alpha_sup']:.6f}", ub.meta["alpha_feasible"]),
        Check("upper-bound base", "2.9162", f"{ub.base:.5f}", _close(ub.base, 2.9162, 1e-3)),
        Check("integral identity factor 2/(n+2), n=1..50", "exact", str(identity_ok), identity_ok),
        Check("finite-n Blichfeldt rate at n=2000", f"{math.log(bl):.5f} +- 5e-3", f"{fin:.5f}",
              _close(fin, math.log(bl), 5e-3)),
    ]


def property_checks(seed: int = 0) -> list[Check]:
    rng = random.Random(seed)

    def rq():
        return Fraction(rng.randint(-50, 50), rng.randint(1, 20))

    hada = all(linf_norm(hadamard_pair_transform((a, b))) == l1_norm((a, b))
               for a, b in ((rq(), rq()) for _ in range(10_000)))
    disjoint = True
    for name in lattice.FOUR_DIM_NAMES:
        L = lattice.named_lattice(name)
        classes = lattice.mod_2L_classes(L, lattice.minimal_vectors(L))
        disjoint &= all(not (support(x) & support(y)) for x, y in classes.same_class_pairs())
    return [
        Check("|T v|_inf == |v|_1 on 10^4 random 2-vectors", "true", str(hada), hada),
        Check("mod-2L same-class minimal pairs have disjoint supports", "true", str(disjoint), disjoint),
    ]


def run_all(seed: int = 0) -> list[Check]:
    return (lattice_checks() + deep_hole_checks(seed) + bound_checks() + construction_checks()
            + rate_checks() + property_checks(seed))
