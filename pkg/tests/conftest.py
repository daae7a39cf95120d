import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from latmodel import lattice as L  # noqa: E402
from latmodel.errors import NotALattice  # noqa: E402
from latmodel.lattice import Lattice  # noqa: E402
from latmodel.reproduce import arrows  # noqa: E402,F401

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def small_lattices() -> list[Lattice]:
    """The fixed zoo every exhaustive check runs over."""
    out = [L.chain(n) for n in range(5)]
    out += [L.grid(1, 1), L.grid(2, 1)]
    out += [L.diamond(n) for n in range(1, 5)]
    out.append(L.pentagon())
    return out


SMALL = small_lattices()
SMALL_IDS = [lat.name for lat in SMALL]


@pytest.fixture(params=SMALL, ids=SMALL_IDS)
def small(request) -> Lattice:
    return request.param


@st.composite
def random_lattices(draw, max_inner: int = 4) -> Lattice:
    """A random bounded poset on up to ``max_inner`` middle elements that happens to be a lattice.

    Middle elements are ordered by a random transitive relation compatible
    with their index order; bottom and top are added around them.
    """
    k = draw(st.integers(0, max_inner))
    rel = [[False] * k for _ in range(k)]
    for i in range(k):
        for j in range(i + 1, k):
            rel[i][j] = draw(st.booleans())
    for m in range(k):
        for i in range(k):
            for j in range(k):
                if rel[i][m] and rel[m][j]:
                    rel[i][j] = True
    n = k + 2
    up = [(1 << n) - 1]  # bottom
    for i in range(k):
        mask = (1 << (i + 1)) | (1 << (n - 1))
        for j in range(k):
            if rel[i][j]:
                mask |= 1 << (j + 1)
        up.append(mask)
    up.append(1 << (n - 1))
    labels = ["bot"] + [f"m{i}" for i in range(k)] + ["top"]
    try:
        return Lattice(labels, up, name=None)
    except NotALattice:
        from hypothesis import assume
        assume(False)


def mask_for(lat: Lattice):
    return st.integers(0, lat.full_mask)
