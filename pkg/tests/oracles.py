"""Slow reference implementations written straight from the definitions.

Arrow sets here are frozensets of ``(x, y)`` pairs with ``x < y``; only the
order, meet and join tables of a lattice are used, none of the package's
bitmask machinery.
"""

from __future__ import annotations

from itertools import combinations

from latmodel.arrowsets import ArrowSet


def arrows_of(lat) -> list[tuple[int, int]]:
    return [(x, y) for x in range(lat.n) for y in range(lat.n) if x != y and lat.leq(x, y)]


def pairs(s: ArrowSet) -> frozenset:
    return frozenset(s.pairs())


def to_set(lat, ps) -> ArrowSet:
    return ArrowSet.from_arrows(lat, ps)


def has(s, x, y) -> bool:
    return x == y or (x, y) in s


def composition_closed(lat, s) -> bool:
    return all((x, z) in s for (x, y) in s for (y2, z) in s if y == y2)


def pullback_closed(lat, s) -> bool:
    return all(has(s, lat.meet[x][z], z) for (x, y) in s for z in range(lat.n) if lat.leq(z, y))


def pushout_closed(lat, s) -> bool:
    return all(has(s, z, lat.join[y][z]) for (x, y) in s for z in range(lat.n) if lat.leq(x, z))


def transfer(lat, s) -> bool:
    return composition_closed(lat, s) and pullback_closed(lat, s)


def cotransfer(lat, s) -> bool:
    return composition_closed(lat, s) and pushout_closed(lat, s)


def decomposable(lat, s) -> bool:
    return all(has(s, x, y) and has(s, y, z)
               for (x, z) in s for y in range(lat.n) if lat.leq(x, y) and lat.leq(y, z))


def all_subsets(lat):
    arr = arrows_of(lat)
    for r in range(len(arr) + 1):
        for c in combinations(arr, r):
            yield frozenset(c)


def lifts(lat, i, p) -> bool:
    a, b = i
    x, y = p
    return not (lat.leq(a, x) and lat.leq(b, y)) or lat.leq(b, x)


def llp(lat, s):
    return frozenset(f for f in arrows_of(lat) if all(lifts(lat, f, g) for g in s))


def rlp(lat, s):
    return frozenset(g for g in arrows_of(lat) if all(lifts(lat, f, g) for f in s))


def compose(lat, first, second):
    """``x -> y`` factoring as ``first`` (or id) then ``second`` (or id)."""
    return frozenset((x, y) for (x, y) in arrows_of(lat)
                     if any(lat.leq(x, z) and lat.leq(z, y) and has(first, x, z) and has(second, z, y)
                            for z in range(lat.n)))


def is_wfs(lat, left, right) -> bool:
    return compose(lat, left, right) == frozenset(arrows_of(lat)) and \
        llp(lat, right) == left and rlp(lat, left) == right


def all_wfs(lat):
    """Every weak factorization system, found by closing each subset under lifting twice."""
    out = set()
    for s in all_subsets(lat):
        right = rlp(lat, s)
        left = llp(lat, right)
        if is_wfs(lat, left, right):
            out.add((left, right))
    return out


def two_out_of_three(lat, w) -> bool:
    for x in range(lat.n):
        for y in range(lat.n):
            for z in range(lat.n):
                if lat.leq(x, y) and lat.leq(y, z):
                    if has(w, x, y) + has(w, y, z) + has(w, x, z) == 2:
                        return False
    return True


def all_model_structures(lat):
    """Every (W, AC, C, AF, F) built from a pair of weak factorization systems.

    (C, AF) and (AC, F) range over all weak factorization systems; W is
    AF after AC; keep the pairs with AC = C & W, AF = F & W and W 2-out-of-3.
    """
    wfs = all_wfs(lat)
    out = set()
    for c, af in wfs:
        for ac, f in wfs:
            if not ac <= c:
                continue
            w = compose(lat, ac, af)
            if ac == c & w and af == f & w and two_out_of_three(lat, w):
                out.add((w, ac, c, af, f))
    return out
