import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from conftest import SMALL, arrows, random_lattices
from latmodel import lattice as L
from latmodel.arrowsets import (
    ArrowSet,
    composition_closure,
    cts_join,
    cts_meet,
    generate_cotransfer,
    generate_transfer,
    is_composition_closed,
    is_cotransfer_system,
    is_decomposable,
    is_saturated,
    is_transfer_system,
    is_wide_decomposable,
    k_max,
    t_max,
    ts_join,
    ts_meet,
)
from latmodel.enumeration import enumerate_cotransfer_systems, enumerate_transfer_systems
from latmodel.errors import (
    MixedLattices,
    NotComparable,
    NotDecomposable,
    NotTransferOrCotransfer,
    NotTransferSystem,
)

C2 = L.chain(2)
G21 = L.grid(2, 1)
G22 = L.grid(2, 2)

GRID_W = "(0,0)>(0,1) (0,1)>(0,2) (0,0)>(0,2) (1,1)>(1,2) (2,0)>(2,1) (2,1)>(2,2) (2,0)>(2,2)"


def test_arrowset_basics():
    s = arrows(C2, "0>1 1>2")
    assert len(s) == 2 and (0, 1) in s and (0, 2) not in s
    assert (1, 1) in s  # identities are always there
    assert s | arrows(C2, "0>2") == ArrowSet.complete(C2)
    assert s.complement() == arrows(C2, "0>2")
    assert ArrowSet.from_arrows(C2, [(0, 0), (0, 1)]) == arrows(C2, "0>1")
    assert s.with_arrow((0, 2)).without_arrow((0, 1)) == arrows(C2, "1>2 0>2")
    assert ArrowSet.covers_of(C2) == s
    with pytest.raises(NotComparable):
        ArrowSet.from_arrows(C2, [(2, 0)])
    with pytest.raises(MixedLattices):
        s | ArrowSet.empty(L.chain(3))


def test_composition_closed():
    assert is_composition_closed(ArrowSet.empty(C2))
    assert not is_composition_closed(arrows(C2, "0>1 1>2"))
    assert is_composition_closed(arrows(C2, "0>1 1>2 0>2"))
    ex = arrows(G21, "(0,0)>(0,1) (1,0)>(1,1) (1,0)>(2,0) (1,0)>(2,1) (2,0)>(2,1)")
    assert is_composition_closed(ex)
    assert composition_closure(arrows(C2, "0>1 1>2")) == ArrowSet.complete(C2)


def test_decomposable():
    assert not is_decomposable(arrows(C2, "0>2"))
    assert is_decomposable(arrows(G21, "(1,0)>(1,1)"))
    # unions of intervals on a chain
    c4 = L.chain(4)
    assert is_decomposable(arrows(c4, "0>1 1>2 0>2 3>4"))


def test_transfer_and_cotransfer_examples():
    assert is_transfer_system(arrows(C2, "0>1 0>2"))
    assert not is_transfer_system(arrows(C2, "0>2"))
    assert is_transfer_system(ArrowSet.empty(C2))
    assert is_cotransfer_system(arrows(C2, "1>2 0>2"))
    assert not is_cotransfer_system(arrows(C2, "0>2"))
    assert is_cotransfer_system(ArrowSet.complete(C2))


def test_saturated():
    assert not is_saturated(arrows(C2, "0>1 0>2"))
    assert is_saturated(ArrowSet.complete(C2))
    with pytest.raises(NotTransferOrCotransfer):
        is_saturated(arrows(C2, "0>2"))


def test_generate_examples():
    s = arrows(G21, "(1,0)>(2,0) (2,0)>(2,1)")
    want = arrows(G21, "(0,0)>(0,1) (1,0)>(1,1) (1,0)>(2,0) (1,0)>(2,1) (2,0)>(2,1)")
    assert generate_transfer(s) == want
    assert generate_transfer(ArrowSet.empty(G21)) == ArrowSet.empty(G21)
    # every pushout of 0->1 on [2] is 0->1 or an identity, so it generates only itself
    assert generate_cotransfer(arrows(C2, "0>1")) == arrows(C2, "0>1")
    assert generate_cotransfer(arrows(C2, "0>2")) == arrows(C2, "0>2 1>2")
    assert generate_cotransfer(ArrowSet.empty(C2)) == ArrowSet.empty(C2)


def test_meet_join_examples():
    sq = L.grid(1, 1)
    vert = arrows(sq, "(0,0)>(0,1) (1,0)>(1,1)")
    horiz = arrows(sq, "(0,0)>(1,0) (0,1)>(1,1)")
    assert is_transfer_system(vert) and is_transfer_system(horiz)
    assert ts_meet(vert, horiz) == ArrowSet.empty(sq)
    assert ts_join(vert, ArrowSet.empty(sq)) == vert
    top = ArrowSet.empty(C2)
    for t in enumerate_transfer_systems(C2):
        top = ts_join(top, t)
    assert top == ArrowSet.complete(C2)
    with pytest.raises(NotTransferSystem):
        ts_meet(arrows(C2, "0>2"), top)
    with pytest.raises(MixedLattices):
        ts_join(top, ArrowSet.empty(L.chain(3)))


def test_t_max_k_max_examples():
    w = arrows(G22, GRID_W)
    assert t_max(w) == arrows(G22, "(0,0)>(0,1) (0,1)>(0,2) (0,0)>(0,2) (1,1)>(1,2) (2,1)>(2,2)")
    assert k_max(w) == arrows(G22, "(0,1)>(0,2) (1,1)>(1,2) (2,0)>(2,1) (2,1)>(2,2) (2,0)>(2,2)")
    assert t_max(ArrowSet.complete(G22)) == ArrowSet.complete(G22)
    assert k_max(ArrowSet.empty(G22)) == ArrowSet.empty(G22)
    n5 = L.pentagon()
    assert k_max(arrows(n5, "0>a a>c 0>c 0>b")) == arrows(n5, "a>c")
    with pytest.raises(NotDecomposable):
        t_max(arrows(C2, "0>2"))


# -- against the definitions ----------------------------------------------------


@pytest.mark.parametrize("lat", [l for l in SMALL if l.num_arrows <= 12], ids=lambda l: l.name)
def test_predicates_match_definitions_exhaustively(lat):
    for s in O.all_subsets(lat):
        a = O.to_set(lat, s)
        assert is_composition_closed(a) == O.composition_closed(lat, s)
        assert is_decomposable(a) == O.decomposable(lat, s)
        assert is_transfer_system(a) == O.transfer(lat, s)
        assert is_cotransfer_system(a) == O.cotransfer(lat, s)


def _intersection_of_supersets(systems, s):
    out = None
    for t in systems:
        if s <= t:
            out = t if out is None else out & t
    return out


@pytest.mark.parametrize("lat", [l for l in SMALL if l.num_arrows <= 12], ids=lambda l: l.name)
def test_generation_is_the_least_superset(lat):
    trs = list(enumerate_transfer_systems(lat))
    cos = list(enumerate_cotransfer_systems(lat))
    for s in O.all_subsets(lat):
        a = O.to_set(lat, s)
        assert generate_transfer(a) == _intersection_of_supersets(trs, a)
        assert generate_cotransfer(a) == _intersection_of_supersets(cos, a)
    for t in trs:  # sets that are already closed
        assert generate_transfer(t) == t


@pytest.mark.parametrize("lat", [l for l in SMALL if l.num_arrows <= 12], ids=lambda l: l.name)
def test_t_max_is_join_of_everything_inside(lat):
    trs = list(enumerate_transfer_systems(lat))
    cos = list(enumerate_cotransfer_systems(lat))
    for s in O.all_subsets(lat):
        if not (O.decomposable(lat, s) and O.composition_closed(lat, s)):
            continue
        q = O.to_set(lat, s)
        tm, km = t_max(q), k_max(q)
        assert tm <= q and km <= q
        assert is_transfer_system(tm) and is_cotransfer_system(km)
        assert all(t <= tm for t in trs if t <= q)
        assert all(k <= km for k in cos if k <= q)
        assert is_saturated(tm) and is_saturated(km)


def _sets(lat):
    return st.integers(0, lat.full_mask).map(lambda m: ArrowSet(lat, m))


@st.composite
def lattice_and_sets(draw, k=2):
    lat = draw(st.one_of(st.sampled_from(SMALL + [L.grid(2, 2)]), random_lattices()))
    return (lat,) + tuple(draw(_sets(lat)) for _ in range(k))


@given(lattice_and_sets())
def test_generation_is_a_closure_operator(data):
    lat, a, b = data
    for gen in (generate_transfer, generate_cotransfer):
        ga = gen(a)
        assert a <= ga
        assert gen(ga) == ga
        assert gen(a & b) <= ga
    assert is_transfer_system(generate_transfer(a))
    assert is_cotransfer_system(generate_cotransfer(a))


@given(lattice_and_sets(3))
def test_transfer_systems_form_a_lattice(data):
    lat, a, b, c = data
    x, y, z = generate_transfer(a), generate_transfer(b), generate_transfer(c)
    assert ts_meet(x, y) == ts_meet(y, x) and ts_join(x, y) == ts_join(y, x)
    assert ts_join(x, ts_join(y, z)) == ts_join(ts_join(x, y), z)
    assert ts_meet(x, ts_meet(y, z)) == ts_meet(ts_meet(x, y), z)
    assert ts_join(x, ts_meet(x, y)) == x and ts_meet(x, ts_join(x, y)) == x
    assert is_transfer_system(ts_meet(x, y))
    u, v, w = generate_cotransfer(a), generate_cotransfer(b), generate_cotransfer(c)
    assert cts_join(u, cts_meet(u, v)) == u and cts_meet(u, cts_join(u, v)) == u
    assert cts_join(u, cts_join(v, w)) == cts_join(cts_join(u, v), w)


@given(lattice_and_sets(1))
def test_dual_lattice_swaps_transfer_and_cotransfer(data):
    lat, a = data
    d = lat.dual()
    flipped = ArrowSet.from_arrows(d, [(y, x) for x, y in a.pairs()])
    assert is_transfer_system(a) == is_cotransfer_system(flipped)
    assert is_decomposable(a) == is_decomposable(flipped)
