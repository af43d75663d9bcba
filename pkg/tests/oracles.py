"""Independent reference implementations used by the tests.

None of these touch bases, inverses or the scanning kernels: membership is
decided from the defining generators directly.
"""

import itertools
from fractions import Fraction

HALF = Fraction(1, 2)

L_PRIME_GLUE = [(HALF, HALF, 0, 0), (0, 0, HALF, HALF), (Fraction(1, 4),) * 4]
EXTRA_GLUE = {
    "L_prime": None,
    "L0": (Fraction(1, 4), Fraction(-1, 4), 0, HALF),
    "L1": (Fraction(1, 8), Fraction(-3, 8), Fraction(1, 8), Fraction(-3, 8)),
    "L1_prime": (Fraction(1, 8), Fraction(-3, 8), Fraction(3, 8), Fraction(-1, 8)),
}


def _mod1(v):
    return tuple(Fraction(x) % 1 for x in v)


def glue_group(gens):
    """Finite subgroup of (Q/Z)^n generated by ``gens``, by closure."""
    group = {_mod1((0,) * len(gens[0]))}
    frontier = list(group)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                s = _mod1(tuple(a + b for a, b in zip(g, h)))
                if s not in group:
                    group.add(s)
                    nxt.append(s)
        frontier = nxt
    return group


def member_oracle(name):
    """Membership predicate for lattices that contain Z^4."""
    if name == "half_D4_plus":
        gens = [(HALF, HALF, 0, 0), (HALF, -HALF, 0, 0), (0, HALF, HALF, 0), (0, 0, HALF, HALF),
                (Fraction(1, 4),) * 4]
    else:
        gens = list(L_PRIME_GLUE) + ([EXTRA_GLUE[name]] if EXTRA_GLUE[name] else [])
    group = glue_group(gens)
    return lambda v: _mod1(v) in group


def d4_member(v):
    return all(Fraction(x).denominator == 1 for x in v) and sum(v) % 2 == 0


def integer_points_l1(n, radius):
    """All integer n-vectors with l1 norm <= radius."""
    if n == 0:
        yield ()
        return
    for x in range(-radius, radius + 1):
        for rest in integer_points_l1(n - 1, radius - abs(x)):
            yield (x,) + rest


def minimal_by_enumeration(is_member, denom, radius_units, n=4):
    """Nonzero members of (1/denom)Z^n with l1 <= radius_units/denom of least norm."""
    best, found = None, []
    for p in integer_points_l1(n, radius_units):
        if not any(p):
            continue
        v = tuple(Fraction(x, denom) for x in p)
        if not is_member(v):
            continue
        nm = sum(abs(x) for x in v)
        if best is None or nm < best:
            best, found = nm, [v]
        elif nm == best:
            found.append(v)
    return best, set(found)


def h2_block_distance(y1, y2):
    """l1 distance from (y1, y2) to H2 = Z^2 + {0, (1/2, 1/2)} by a local scan."""
    best = None
    for shift in (Fraction(0), HALF):
        a0, b0 = int((y1 - shift) // 1), int((y2 - shift) // 1)
        for a, b in itertools.product(range(a0 - 1, a0 + 3), range(b0 - 1, b0 + 3)):
            d = abs(y1 - a - shift) + abs(y2 - b - shift)
            best = d if best is None or d < best else best
    return best


def union_find_partition(items, same):
    parent = list(range(len(items)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in itertools.combinations(range(len(items)), 2):
        if same(items[i], items[j]):
            parent[find(i)] = find(j)
    groups = {}
    for i, x in enumerate(items):
        groups.setdefault(find(i), set()).add(x)
    return {frozenset(g) for g in groups.values()}
