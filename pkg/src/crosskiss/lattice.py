"""Rational lattices under the l1 norm.

Everything here is exact. Lattice points are found by scanning a box of
integer coefficient vectors: if ``x = u . B`` then ``u = x . B^{-1}`` and
``|u_i| <= |x|_1 * max_j |B^{-1}_{ji}|``, so a bound on the l1 norm of ``x``
gives a finite, rigorous box of candidates. The scan itself runs in the
integer kernels after scaling everything by a common denominator.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import kernels
from .exact import (
    RationalVector,
    add,
    as_rational,
    canonical_key,
    common_denominator,
    format_rational,
    hadamard_pair_transform,
    inverse_hadamard_pair_transform,
    l1_norm,
    linf_norm,
    scale,
    sub,
    support,
    vec,
    vector_from_json,
    vector_to_json,
)

MAX_EQUIVALENCE_DIM = 6
HALF = Fraction(1, 2)


class DegenerateBasisError(ValueError):
    pass


class NotALatticeError(ValueError):
    """Raised for point sets that are not closed under addition.

    ``witness`` is a triple (x, y, x + y) with x, y in the set and x + y not.
    """

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


class SearchInfeasibleError(ValueError):
    pass


def _invert(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DegenerateBasisError("degenerate basis: determinant is zero")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _determinant(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    a = [list(r) for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def _hermite_rows(rows: list[list[int]], n: int) -> list[list[int]]:
    """Row-style Hermite normal form of an integer generating set (zero rows dropped)."""
    pool = [list(r) for r in rows if any(r)]
    out: list[list[int]] = []
    for col in range(n):
        while True:
            nz = sorted((r for r in pool if r[col] != 0), key=lambda r: abs(r[col]))
            if len(nz) <= 1:
                break
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for j in range(n):
                    r[j] -= q * p[j]
            pool = [r for r in pool if any(r)]
        nz = [r for r in pool if r[col] != 0]
        if not nz:
            continue
        p = nz[0]
        pool = [r for r in pool if r is not p]
        if p[col] < 0:
            p = [-x for x in p]
        out.append(p)
    # reduce entries above each pivot into [0, pivot)
    for i, p in enumerate(out):
        col = next(j for j, x in enumerate(p) if x)
        for r in out[:i]:
            q = r[col] // p[col]
            if q:
                for j in range(n):
                    r[j] -= q * p[j]
    return out


class Lattice:
    """Z-span of the rows of a nonsingular rational matrix.

    The exact inverse is computed once at construction. Instances are treated
    as immutable.
    """

    __slots__ = ("basis", "inverse", "n", "_scaled")

    def __init__(self, rows: Sequence[Sequence]):
        rows = [vec(*r) if not isinstance(r, tuple) else tuple(as_rational(x) for x in r) for r in rows]
        n = len(rows)
        if n == 0:
            raise ValueError("a lattice needs at least one basis row")
        if any(len(r) != n for r in rows):
            raise ValueError(f"dimension error: expected {n} rows of length {n}, got lengths {[len(r) for r in rows]}")
        self.basis: tuple[RationalVector, ...] = tuple(rows)
        self.inverse = tuple(tuple(r) for r in _invert([list(r) for r in rows]))
        self.n = n
        self._scaled = None

    def __repr__(self) -> str:
        body = ", ".join("(" + ", ".join(str(x) for x in r) + ")" for r in self.basis)
        return f"Lattice([{body}])"

    @property
    def determinant(self) -> Fraction:
        return _determinant([list(r) for r in self.basis])

    def coefficients(self, v: RationalVector) -> tuple[Fraction, ...]:
        if len(v) != self.n:
            raise ValueError(f"dimension mismatch: lattice has n={self.n}, vector has {len(v)}")
        return tuple(sum((v[j] * self.inverse[j][i] for j in range(self.n)), Fraction(0))
                     for i in range(self.n))

    def point(self, u: Sequence[int]) -> RationalVector:
        return tuple(sum((int(u[k]) * self.basis[k][i] for k in range(self.n)), Fraction(0))
                     for i in range(self.n))

    def __contains__(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coefficients(tuple(as_rational(x) for x in v)))

    def scaled(self) -> tuple[int, list[list[int]]]:
        """Common denominator D and the integer matrix D * basis."""
        if self._scaled is None:
            d = common_denominator(x for r in self.basis for x in r)
            self._scaled = (d, [[int(x * d) for x in r] for r in self.basis])
        return self._scaled

    def column_bounds(self) -> tuple[Fraction, ...]:
        """max_j |inverse[j][i]| per coefficient i."""
        return tuple(max(abs(self.inverse[j][i]) for j in range(self.n)) for i in range(self.n))

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(b in self for b in other.basis)

    def same_as(self, other: "Lattice") -> bool:
        return self.n == other.n and self.contains_lattice(other) and other.contains_lattice(self)

    def scaled_by(self, c) -> "Lattice":
        return Lattice([scale(c, r) for r in self.basis])

    def to_json(self) -> dict:
        return {"n": self.n, "basis": [vector_to_json(r) for r in self.basis]}

    @classmethod
    def from_json(cls, data: dict) -> "Lattice":
        rows = [vector_from_json(r) for r in data["basis"]]
        if "n" in data and int(data["n"]) != len(rows):
            raise ValueError(f"dimension error: n={data['n']} but {len(rows)} basis rows")
        return cls(rows)


def lattice_from_basis(rows: Sequence[Sequence]) -> Lattice:
    return Lattice(rows)


def lattice_from_generators(gens: Sequence[Sequence]) -> Lattice:
    """Basis (Hermite form) of the Z-span of an arbitrary rational generating set."""
    gens = [vec(*g) if not isinstance(g, tuple) else g for g in gens]
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("dimension error: generators of unequal length")
    d = common_denominator(x for g in gens for x in g)
    rows = _hermite_rows([[int(x * d) for x in g] for g in gens], n)
    if len(rows) != n:
        raise DegenerateBasisError(f"degenerate basis: generators span rank {len(rows)} < {n}")
    return Lattice([[Fraction(x, d) for x in r] for r in rows])


def load_lattice(path) -> Lattice:
    with open(path) as fh:
        return Lattice.from_json(json.load(fh))


def member(L: Lattice, v: RationalVector) -> bool:
    if len(v) != L.n:
        raise ValueError(f"dimension mismatch: lattice has n={L.n}, vector has {len(v)}")
    return v in L


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    za = (Fraction(0),) * a.n
    zb = (Fraction(0),) * b.n
    return Lattice([r + zb for r in a.basis] + [za + r for r in b.basis])


def lattice_points_near(L: Lattice, center: RationalVector | None, bound) -> list[tuple[RationalVector, Fraction]]:
    """Every lattice point x with ``|x - center|_1 <= bound``, paired with that distance."""
    bound = as_rational(bound)
    n = L.n
    center = (Fraction(0),) * n if center is None else tuple(as_rational(x) for x in center)
    c = L.coefficients(center)
    radii = [bound * m for m in L.column_bounds()]
    lo = [math.ceil(ci - ri) for ci, ri in zip(c, radii)]
    hi = [math.floor(ci + ri) for ci, ri in zip(c, radii)]
    d = math.lcm(L.scaled()[0], common_denominator(center))
    rows = [[int(x * d) for x in r] for r in L.basis]
    target = [int(x * d) for x in center]
    coeffs, norms = kernels.box_search(rows, target, lo, hi, math.floor(bound * d))
    return [(L.point(u), Fraction(int(nm), d)) for u, nm in zip(coeffs.tolist(), norms.tolist())]


def _seed_bound(L: Lattice) -> Fraction:
    """A norm attained by some nonzero lattice vector: shortest of rows and row sums/differences."""
    cands = [l1_norm(r) for r in L.basis]
    for a, b in itertools.combinations(L.basis, 2):
        cands.append(l1_norm(add(a, b)))
        cands.append(l1_norm(sub(a, b)))
    return min(x for x in cands if x > 0)


@dataclass(frozen=True)
class MinimalVectorSet:
    lattice: Lattice
    minimum: Fraction
    vectors: tuple[RationalVector, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    def representatives(self) -> tuple[RationalVector, ...]:
        """One vector of each +/- pair: the one whose first nonzero coordinate is positive."""
        return tuple(v for v in self.vectors if not canonical_key(v)[1])

    def to_json(self) -> dict:
        return {
            "minimum": format_rational(self.minimum),
            "count": len(self.vectors),
            "vectors": [vector_to_json(v) for v in self.vectors],
        }

    def to_csv_rows(self) -> list[list[str]]:
        return [vector_to_json(v) for v in self.vectors]


def l1_minimum(L: Lattice) -> Fraction:
    return minimal_vectors(L).minimum


def minimal_vectors(L: Lattice) -> MinimalVectorSet:
    """All nonzero lattice vectors of least l1 norm, in canonical order."""
    bound = _seed_bound(L)
    found = [(x, d) for x, d in lattice_points_near(L, None, bound) if d > 0]
    lam = min(d for _, d in found)
    vectors = sorted((x for x, d in found if d == lam), key=canonical_key)
    return MinimalVectorSet(L, lam, tuple(vectors))


@dataclass(frozen=True)
class Mod2Classes:
    """+/- representatives of minimal vectors grouped by their coset in L/2L."""

    classes: tuple[tuple[tuple[int, ...], tuple[RationalVector, ...]], ...]

    @property
    def num_representatives(self) -> int:
        return sum(len(reps) for _, reps in self.classes)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def sizes(self) -> list[int]:
        return [len(reps) for _, reps in self.classes]

    def same_class_pairs(self) -> Iterator[tuple[RationalVector, RationalVector]]:
        for _, reps in self.classes:
            yield from itertools.combinations(reps, 2)


def mod_2L_classes(L: Lattice, S: MinimalVectorSet) -> Mod2Classes:
    groups: dict[tuple[int, ...], list[RationalVector]] = {}
    for v in S.representatives():
        u = L.coefficients(v)
        if any(c.denominator != 1 for c in u):
            raise ValueError(f"{v} is not in the lattice")
        groups.setdefault(tuple(int(c) % 2 for c in u), []).append(v)
    return Mod2Classes(tuple(sorted((k, tuple(vs)) for k, vs in groups.items())))


@dataclass(frozen=True)
class SignedPermutation:
    """x -> y with ``y[i] = signs[i] * x[perm[i]]`` (0-based ``perm``)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError(f"not a permutation: {self.perm}")
        if len(self.signs) != len(self.perm) or any(s not in (1, -1) for s in self.signs):
            raise ValueError(f"signs must be +1/-1, one per coordinate: {self.signs}")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(n)), (1,) * n)

    @property
    def n(self) -> int:
        return len(self.perm)

    def __call__(self, v: RationalVector) -> RationalVector:
        if len(v) != self.n:
            raise ValueError(f"dimension mismatch: {self.n} != {len(v)}")
        return tuple(s * v[p] for s, p in zip(self.signs, self.perm))

    def inverse(self) -> "SignedPermutation":
        perm = [0] * self.n
        signs = [1] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPermutation(tuple(perm), tuple(signs))

    def compose(self, other: "SignedPermutation") -> "SignedPermutation":
        """self after other."""
        return SignedPermutation(tuple(other.perm[p] for p in self.perm),
                                 tuple(s * other.signs[p] for s, p in zip(self.signs, self.perm)))

    def apply_lattice(self, L: Lattice) -> Lattice:
        return Lattice([self(r) for r in L.basis])

    def to_json(self) -> dict:
        # 1-based like the rest of the external surface
        return {"perm": [p + 1 for p in self.perm], "signs": list(self.signs)}


def signed_permutations(n: int) -> Iterator[SignedPermutation]:
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(perm, signs)


def _support_profile(S: MinimalVectorSet) -> list[int]:
    return sorted(len(support(v)) for v in S.vectors)


def find_signed_permutation_equivalence(L1: Lattice, L2: Lattice,
                                        max_dim: int = MAX_EQUIVALENCE_DIM) -> SignedPermutation | None:
    """A signed permutation sigma with sigma(L2) == L1, or None."""
    if L1.n != L2.n:
        raise ValueError(f"dimension mismatch: {L1.n} != {L2.n}")
    n = L1.n
    if n > max_dim:
        raise SearchInfeasibleError(
            f"search infeasible: n={n} exceeds the threshold n <= {max_dim} "
            f"({2**n * math.factorial(n)} signed permutations)")
    if abs(L1.determinant) != abs(L2.determinant):
        return None
    m1, m2 = minimal_vectors(L1), minimal_vectors(L2)
    if m1.minimum != m2.minimum or len(m1) != len(m2) or _support_profile(m1) != _support_profile(m2):
        return None
    targets = set(m1.vectors)
    for sigma in signed_permutations(n):
        if not all(sigma(v) in targets for v in m2.vectors):
            continue
        if all(sigma(b) in L1 for b in L2.basis):
            back = sigma.inverse()
            if all(back(b) in L2 for b in L1.basis):
                return sigma
    return None


def closest_point_l1(L: Lattice, y: RationalVector) -> tuple[RationalVector, Fraction]:
    """Nearest lattice point to ``y`` in l1 and its exact distance.

    Rounding the coefficients of ``y`` gives a first candidate; its distance
    bounds the coefficient box that is then scanned exhaustively. Ties go to
    the canonically smallest point.
    """
    y = tuple(as_rational(x) for x in y)
    if len(y) != L.n:
        raise ValueError(f"dimension mismatch: lattice has n={L.n}, point has {len(y)}")
    start = L.point([round(c) for c in L.coefficients(y)])
    bound = l1_norm(sub(start, y))
    near = lattice_points_near(L, y, bound)
    best = min(d for _, d in near)
    point = min((x for x, d in near if d == best), key=canonical_key)
    return point, best


# --- H2 + H2 and its deep holes -------------------------------------------------

DEEP_HOLE_KINDS = ("v1", "v2", "v2prime", "v3")


@dataclass(frozen=True)
class DeepHoleFamily:
    """Two-parameter segment family of deep holes, 0 <= x1, x2 <= 1/2."""

    kind: str

    def __post_init__(self):
        if self.kind not in DEEP_HOLE_KINDS:
            raise ValueError(f"unknown deep-hole family {self.kind!r}; expected one of {DEEP_HOLE_KINDS}")

    def point(self, x1, x2) -> RationalVector:
        x1, x2 = as_rational(x1), as_rational(x2)
        if not (0 <= x1 <= HALF and 0 <= x2 <= HALF):
            raise ValueError("family parameters must lie in [0, 1/2]")
        first = (x1, HALF - x1) if self.kind in ("v1", "v2prime") else (x1, x1 - HALF)
        second = (x2, HALF - x2) if self.kind in ("v1", "v2") else (x2, x2 - HALF)
        return first + second


def _h2() -> Lattice:
    return Lattice([vec(1, 0), vec("1/2", "1/2")])


def _block_in_family(block: RationalVector, h2: Lattice) -> bool:
    """Is ``block`` in {(x, +/-(1/2 - x)) : 0 <= x <= 1/2} + H2?

    Such a block sits at l1 distance exactly 1/2 from the lattice point it is
    offset from, so only those lattice points need checking.
    """
    for p, d in lattice_points_near(h2, block, HALF):
        if d != HALF:
            continue
        a, b = sub(block, p)
        if 0 <= a <= HALF and abs(b) == HALF - a:
            return True
    return False


def is_deep_hole_h2sum(y: RationalVector) -> bool:
    """Deep-hole test for H2 + H2, by exact distance and by the closed-form family.

    The two answers must agree; a disagreement raises ``AssertionError``.
    """
    y = tuple(as_rational(x) for x in y)
    if len(y) != 4:
        raise ValueError(f"H2 + H2 lives in dimension 4, got {len(y)}")
    _, dist = closest_point_l1(named_lattice("H2_sum_H2"), y)
    by_distance = dist == 1
    h2 = _h2()
    by_family = _block_in_family(y[:2], h2) and _block_in_family(y[2:], h2)
    if by_distance != by_family:
        raise AssertionError(f"deep-hole cross-check disagreement at {y}: distance {dist}, family {by_family}")
    return by_distance


@dataclass(frozen=True)
class CoveringCertificate:
    radius: Fraction
    steps: tuple[tuple[str, str], ...]

    def to_json(self) -> dict:
        return {"radius": format_rational(self.radius),
                "steps": [{"claim": c, "value": v} for c, v in self.steps]}


def _linf_covering_radius_integer_lattice(k: int) -> Fraction:
    """l-infinity covering radius of Z^k.

    Coordinatewise rounding puts every point within max_t dist(t, Z) of Z^k,
    and that sup is attained at t = 1/2, simultaneously in every coordinate.
    """
    half = Fraction(1, 2)
    per_coord = min(abs(half - math.floor(half)), abs(half - math.ceil(half)))
    hole = (half,) * k
    neighbours = [tuple(Fraction(x) for x in p) for p in itertools.product((0, 1), repeat=k)]
    attained = min(linf_norm(sub(hole, p)) for p in neighbours)
    if attained != per_coord:
        raise AssertionError("l-infinity covering radius of Z^k is not attained at the cube centre")
    return per_coord


def _show(v: RationalVector) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def covering_radius_h2sum() -> CoveringCertificate:
    """Exact l1 covering radius of H2 + H2 with the chain of facts behind it."""
    steps: list[tuple[str, str]] = []
    h2 = _h2()
    images = [hadamard_pair_transform(b) for b in h2.basis]
    image_lattice = Lattice(images)
    z2 = named_lattice("Zn", 2)
    if not image_lattice.same_as(z2):
        raise AssertionError("T(H2) != Z^2")
    steps.append(("T(x,y)=(x+y,x-y) maps the H2 basis to", "; ".join(_show(r) for r in images)))
    steps.append(("T(H2) == Z^2 (mutual basis membership)", "true"))
    for b in h2.basis:
        if linf_norm(hadamard_pair_transform(b)) != l1_norm(b):
            raise AssertionError("norm transfer failed")
    steps.append(("|T v|_inf == |v|_1 for every v (checked on basis)", "true"))
    rho_inf = _linf_covering_radius_integer_lattice(2)
    steps.append(("l-infinity covering radius of Z^2", str(rho_inf)))
    rho_h2 = rho_inf
    hole_h2 = inverse_hadamard_pair_transform((HALF, HALF))
    _, d = closest_point_l1(h2, hole_h2)
    if d != rho_h2:
        raise AssertionError("transported deep hole does not attain the radius")
    steps.append((f"l1 covering radius of H2 (deep hole T^-1(1/2,1/2) = {_show(hole_h2)})", str(rho_h2)))
    radius = rho_h2 + rho_h2
    steps.append(("direct sum: rho(H2+H2) = rho(H2) + rho(H2)", str(radius)))
    hole = hole_h2 + hole_h2
    _, d4 = closest_point_l1(named_lattice("H2_sum_H2"), hole)
    if d4 != radius:
        raise AssertionError("4-dimensional deep hole does not attain the radius")
    steps.append((f"closest_point_l1(H2+H2, {_show(hole)})", str(d4)))
    return CoveringCertificate(radius, tuple(steps))


# --- catalog -------------------------------------------------------------------

def _dn_rows(n: int) -> list[RationalVector]:
    if n == 1:
        return [vec(2)]
    rows = []
    e = lambda i: tuple(Fraction(int(j == i)) for j in range(n))  # noqa: E731
    rows.append(add(e(0), e(1)))
    rows.append(sub(e(0), e(1)))
    for k in range(2, n):
        rows.append(add(e(k - 1), e(k)))
    return rows


def dn_plus_closure_check(n: int) -> bool:
    """True iff D_n together with D_n + (1/2,...,1/2) is closed under addition.

    The set is closed exactly when twice the glue vector, (1,...,1), lies in D_n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    dn = Lattice(_dn_rows(n))
    return (Fraction(1),) * n in dn


_L_PRIME_GENS = [
    vec(1, 0, 0, 0), vec(0, 1, 0, 0), vec(0, 0, 1, 0), vec(0, 0, 0, 1),
    vec("1/2", "1/2", 0, 0), vec(0, 0, "1/2", "1/2"), vec("1/4", "1/4", "1/4", "1/4"),
]

GLUE_VECTORS = {
    "L0": vec("1/4", "-1/4", 0, "1/2"),
    "L1": vec("1/8", "-3/8", "1/8", "-3/8"),
    "L1_prime": vec("1/8", "-3/8", "3/8", "-1/8"),
}

CATALOG = ("Zn", "Dn", "Dn_plus", "half_D4_plus", "H2", "H2_sum_H2", "L_prime", "L0", "L1", "L1_prime")
FOUR_DIM_NAMES = ("half_D4_plus", "L_prime", "L0", "L1", "L1_prime")


def _normalise_name(name: str) -> tuple[str, int | None]:
    key = name.strip().lower().replace("-", "_").replace("'", "_prime")
    for canonical in CATALOG:
        if key == canonical.lower():
            return canonical, None
    m = re.fullmatch(r"([zd])(\d+)(_?plus|\+)?", key)
    if m:
        base = "Zn" if m.group(1) == "z" else ("Dn_plus" if m.group(3) else "Dn")
        return base, int(m.group(2))
    aliases = {"lprime": "L_prime", "l1prime": "L1_prime", "h2+h2": "H2_sum_H2", "h2_h2": "H2_sum_H2"}
    if key in aliases:
        return aliases[key], None
    raise KeyError(f"unknown lattice {name!r}; catalog: {', '.join(CATALOG)}")


def named_lattice(name: str, n: int | None = None) -> Lattice:
    """Lattices from the catalog. ``Zn``, ``Dn`` and ``Dn_plus`` need ``n``
    (or a name like ``d4``); the rest are fixed 2- or 4-dimensional lattices."""
    key, n_from_name = _normalise_name(name)
    n = n if n is not None else n_from_name
    if key in ("Zn", "Dn", "Dn_plus"):
        if n is None or n < 1:
            raise ValueError(f"{key} needs a dimension n >= 1")
        if key == "Zn":
            return Lattice([tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)])
        if key == "Dn":
            return Lattice(_dn_rows(n))
        glue = (HALF,) * n
        if not dn_plus_closure_check(n):
            twice = add(glue, glue)
            raise NotALatticeError(f"D_{n}^+ is not a lattice for odd n={n}: 2*(1/2,...,1/2) has odd coordinate sum",
                                   (glue, glue, twice))
        return lattice_from_generators(_dn_rows(n) + [glue])
    if key == "half_D4_plus":
        return named_lattice("Dn_plus", 4).scaled_by(HALF)
    if key == "H2":
        return _h2()
    if key == "H2_sum_H2":
        h2 = _h2()
        return direct_sum(h2, h2)
    if key == "L_prime":
        return lattice_from_generators(_L_PRIME_GENS)
    return lattice_from_generators(_L_PRIME_GENS + [GLUE_VECTORS[key]])


def in_dn_plus(v: RationalVector) -> bool:
    """Membership in the point set D_n union (D_n + (1/2,...,1/2)), for any n."""
    v = tuple(as_rational(x) for x in v)
    if all(x.denominator == 1 for x in v):
        return sum(v) % 2 == 0
    shifted = tuple(x - HALF for x in v)
    return all(x.denominator == 1 for x in shifted) and sum(shifted) % 2 == 0
