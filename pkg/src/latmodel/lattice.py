"""Finite lattices, their named families, and pullback/pushout of arrows.

Elements are dense integer ids ``0..n-1`` carrying string labels. The order is
stored as two tuples of bitmasks (``up[x]`` holds every ``y >= x``, ``down[y]``
every ``x <= y``); meet and join are full ``n x n`` tables computed once.

Non-identity arrows (comparable pairs ``x < y``) are indexed once per lattice,
sorted by ``(src, tgt)``. That index is what :class:`latmodel.arrowsets.ArrowSet`
bitsets refer to, and the per-arrow masks precomputed here (pullbacks,
pushouts, extensions, factors) are what keep the enumeration core fast.
"""

from __future__ import annotations

from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CycleError,
    NonCover,
    NotAboveSource,
    NotALattice,
    NotBelowTarget,
    NotComparable,
    UnknownElement,
)


class Arrow(NamedTuple):
    src: int
    tgt: int

    @property
    def is_identity(self) -> bool:
        return self.src == self.tgt


def iter_bits(mask: int):
    """Yield the positions of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


DISPLAY = {"bot": "⊥", "top": "⊤"}


class Lattice:
    """An immutable finite lattice.

    Build instances with the constructors in this module (:func:`chain`,
    :func:`product`, :func:`from_cover_relations`, ...), not directly.
    ``name`` and ``chain_dims``/``coords`` are metadata: ``name`` is the
    family spec the lattice was built from (``"grid:2,1"``) and ``coords``
    gives per-element coordinates when the lattice is a product of chains.
    Neither takes part in equality.
    """

    def __init__(self, labels: Sequence[str], up: Sequence[int], name: str | None = None,
                 chain_dims: tuple[int, ...] | None = None,
                 coords: Sequence[tuple[int, ...]] | None = None):
        self.labels = tuple(str(lab) for lab in labels)
        self.n = len(self.labels)
        if self.n == 0:
            raise ValueError("a lattice needs at least one element")
        if len(set(self.labels)) != self.n:
            raise ValueError(f"duplicate labels in {self.labels}")
        self.up = tuple(up)
        self._check_partial_order()
        down = [0] * self.n
        for x in range(self.n):
            for y in iter_bits(self.up[x]):
                down[y] |= 1 << x
        self.down = tuple(down)
        self.name = name
        self.chain_dims = chain_dims
        self.coords = tuple(coords) if coords is not None else None
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self.meet = self._bound_table(self.down, "meet")
        self.join = self._bound_table(self.up, "join")
        self.covers = self._compute_covers()
        all_elems = (1 << self.n) - 1
        self.bottom = next(x for x in range(self.n) if self.up[x] == all_elems)
        self.top = next(x for x in range(self.n) if self.down[x] == all_elems)

    def _check_partial_order(self):
        for x, ux in enumerate(self.up):
            if not ux >> x & 1:
                raise ValueError(f"order is not reflexive at {self.labels[x]!r}")
            for y in iter_bits(ux & ~(1 << x)):
                if self.up[y] >> x & 1:
                    raise CycleError([self.labels[x], self.labels[y], self.labels[x]])
                if self.up[y] & ~ux:
                    raise ValueError(f"order is not transitive through {self.labels[y]!r}")

    def _bound_table(self, cone: Sequence[int], what: str) -> tuple[tuple[int, ...], ...]:
        # meet(x, y): the unique common lower bound whose down-set holds all of them
        n = self.n
        table = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(x, n):
                common = cone[x] & cone[y]
                best = [m for m in iter_bits(common) if common & ~cone[m] == 0]
                if len(best) != 1:
                    raise NotALattice(self.labels[x], self.labels[y], what)
                table[x][y] = table[y][x] = best[0]
        return tuple(tuple(row) for row in table)

    def _compute_covers(self) -> tuple[tuple[int, int], ...]:
        out = []
        for x in range(self.n):
            above = self.up[x] & ~(1 << x)
            for y in iter_bits(above):
                between = above & self.down[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return tuple(out)

    # -- basic order queries -------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    @cached_property
    def leq_table(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.leq(x, y) for y in range(self.n)) for x in range(self.n))

    def index(self, element: int | str) -> int:
        """Resolve a label or an id to an element id."""
        if isinstance(element, int) and not isinstance(element, bool):
            if 0 <= element < self.n:
                return element
            raise UnknownElement(f"no element with id {element}")
        try:
            return self._index[str(element)]
        except KeyError:
            raise UnknownElement(f"no element labelled {element!r}") from None

    def display_label(self, x: int) -> str:
        lab = self.labels[x]
        return DISPLAY.get(lab, lab)

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """Length of the longest chain from the bottom to each element."""
        rank = [0] * self.n
        for x in self.topological_order:
            for y in iter_bits(self.up[x] & ~(1 << x)):
                rank[y] = max(rank[y], rank[x] + 1)
        return tuple(rank)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        return tuple(sorted(range(self.n), key=lambda x: self.down[x].bit_count()))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.labels == other.labels and self.up == other.up

    def __hash__(self):
        return hash((self.labels, self.up))

    def __repr__(self):
        tag = self.name or f"{self.n} elements"
        return f"Lattice({tag})"

    def __getstate__(self):
        # cached tables are rebuilt lazily after unpickling
        return {"labels": self.labels, "up": self.up, "name": self.name,
                "chain_dims": self.chain_dims, "coords": self.coords}

    def __setstate__(self, state):
        self.__init__(**state)

    def dual(self) -> "Lattice":
        """The order-dual lattice (same labels, reversed order)."""
        name = f"dual({self.name})" if self.name else None
        return Lattice(self.labels, self.down, name=name)

    # -- arrows --------------------------------------------------------------

    @cached_property
    def arrows(self) -> tuple[Arrow, ...]:
        """All non-identity arrows, sorted by (src, tgt)."""
        return tuple(Arrow(x, y) for x in range(self.n)
                     for y in iter_bits(self.up[x] & ~(1 << x)))

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    @cached_property
    def arrow_id(self) -> tuple[tuple[int, ...], ...]:
        """``arrow_id[x][y]`` is the bit of ``x -> y``, or -1 (identity or not comparable)."""
        table = [[-1] * self.n for _ in range(self.n)]
        for i, (x, y) in enumerate(self.arrows):
            table[x][y] = i
        return tuple(tuple(row) for row in table)

    def arrow(self, src: int | str, tgt: int | str) -> Arrow:
        x, y = self.index(src), self.index(tgt)
        if not self.leq(x, y):
            raise NotComparable(self.labels[x], self.labels[y])
        return Arrow(x, y)

    def format_arrow(self, a: Arrow) -> str:
        return f"{self.display_label(a.src)}→{self.display_label(a.tgt)}"

    @cached_property
    def full_mask(self) -> int:
        return (1 << len(self.arrows)) - 1

    @cached_property
    def cover_mask(self) -> int:
        mask = 0
        for x, y in self.covers:
            mask |= 1 << self.arrow_id[x][y]
        return mask

    def pullback_arrow(self, f: Arrow, z: int) -> Arrow:
        """Pull ``f: x -> y`` back along ``z -> y``: returns ``(x ^ z) -> z``."""
        x, y = f
        if not self.leq(z, y):
            raise NotBelowTarget(f"{self.labels[z]} is not below target {self.labels[y]}")
        return Arrow(self.meet[x][z], z)

    def pushout_arrow(self, f: Arrow, z: int) -> Arrow:
        """Push ``f: x -> y`` out along ``x -> z``: returns ``z -> (y v z)``."""
        x, y = f
        if not self.leq(x, z):
            raise NotAboveSource(f"{self.labels[z]} is not above source {self.labels[x]}")
        return Arrow(z, self.join[y][z])

    def _mask_of(self, pairs: Iterable[tuple[int, int]]) -> int:
        ids = self.arrow_id
        mask = 0
        for x, y in pairs:
            i = ids[x][y]
            if i >= 0:
                mask |= 1 << i
        return mask

    @cached_property
    def pullback_masks(self) -> tuple[int, ...]:
        """Per arrow: every non-identity pullback of it (the arrow itself included)."""
        return tuple(self._mask_of(self.pullback_arrow(f, z) for z in iter_bits(self.down[f.tgt]))
                     for f in self.arrows)

    @cached_property
    def pushout_masks(self) -> tuple[int, ...]:
        return tuple(self._mask_of(self.pushout_arrow(f, z) for z in iter_bits(self.up[f.src]))
                     for f in self.arrows)

    @cached_property
    def down_ext_masks(self) -> tuple[int, ...]:
        """Per arrow ``x -> y``: all ``z -> y`` with ``z <= x``."""
        return tuple(self._mask_of((z, y) for z in iter_bits(self.down[x])) for x, y in self.arrows)

    @cached_property
    def up_ext_masks(self) -> tuple[int, ...]:
        """Per arrow ``z -> x``: all ``z -> y`` with ``y >= x``."""
        return tuple(self._mask_of((z, y) for y in iter_bits(self.up[x])) for z, x in self.arrows)

    @cached_property
    def factor_masks(self) -> tuple[int, ...]:
        """Per arrow ``x -> z``: every non-identity ``x -> y`` and ``y -> z`` with ``x <= y <= z``."""
        out = []
        for x, z in self.arrows:
            interval = self.up[x] & self.down[z]
            out.append(self._mask_of([(x, y) for y in iter_bits(interval)]
                                     + [(y, z) for y in iter_bits(interval)]))
        return tuple(out)

    @cached_property
    def _rows(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        ids = self.arrow_id
        return tuple(tuple((y, 1 << ids[x][y]) for y in iter_bits(self.up[x] & ~(1 << x)))
                     for x in range(self.n))

    def composition_closure_mask(self, mask: int) -> int:
        """Transitive closure of an arrow bitmask (Warshall on successor masks)."""
        if not mask:
            return 0
        n = self.n
        succ = [0] * n
        for i in iter_bits(mask):
            x, y = self.arrows[i]
            succ[x] |= 1 << y
        for k in range(n):
            kbit = 1 << k
            sk = succ[k]
            if not sk:
                continue
            for i in range(n):
                if succ[i] & kbit:
                    succ[i] |= sk
        out = 0
        for x in range(n):
            s = succ[x]
            if s:
                for y, b in self._rows[x]:
                    if s >> y & 1:
                        out |= b
        return out


# -- constructors ------------------------------------------------------------


def _closure_from_covers(n: int, cover_pairs: Sequence[tuple[int, int]], labels) -> list[int]:
    succ = [0] * n
    for x, y in cover_pairs:
        succ[x] |= 1 << y
    # DFS for a cycle so the error can name it
    state = [0] * n
    stack_path: list[int] = []

    def visit(v):
        state[v] = 1
        stack_path.append(v)
        for w in iter_bits(succ[v]):
            if state[w] == 1:
                cyc = stack_path[stack_path.index(w):] + [w]
                raise CycleError([labels[c] for c in cyc])
            if state[w] == 0:
                visit(w)
        stack_path.pop()
        state[v] = 2

    for v in range(n):
        if state[v] == 0:
            visit(v)
    up = [(1 << x) | succ[x] for x in range(n)]
    for k in range(n):
        for i in range(n):
            if up[i] >> k & 1:
                up[i] |= up[k]
    return up


def from_cover_relations(labels: Sequence, cover_pairs: Iterable[Sequence[int]],
                         name: str | None = None) -> Lattice:
    """Build a lattice from labels and a list of ``(lower, upper)`` cover index pairs.

    Raises :class:`CycleError`, :class:`NonCover` (a declared cover that is
    implied by other covers) or :class:`NotALattice`.
    """
    labels = [str(lab) for lab in labels]
    n = len(labels)
    pairs = []
    for pair in cover_pairs:
        x, y = (int(v) for v in pair)
        if not (0 <= x < n and 0 <= y < n):
            raise UnknownElement(f"cover {pair} references an element outside 0..{n - 1}")
        if x == y:
            raise CycleError([labels[x], labels[x]])
        pairs.append((x, y))
    pairs = sorted(set(pairs))
    up = _closure_from_covers(n, pairs, labels)
    lat = Lattice(labels, up, name=name)
    declared = set(pairs)
    actual = set(lat.covers)
    for x, y in pairs:
        if (x, y) not in actual:
            raise NonCover(labels[x], labels[y])
    assert declared == actual
    return lat


def chain(n: int) -> Lattice:
    """The total order ``[n] = {0 < 1 < ... < n}``."""
    if n < 0:
        raise ValueError("chain length must be non-negative")
    up = [((1 << (n + 1)) - 1) & ~((1 << i) - 1) for i in range(n + 1)]
    return Lattice([str(i) for i in range(n + 1)], up, name=f"chain:{n}",
                   chain_dims=(n,), coords=[(i,) for i in range(n + 1)])


def product(p: Lattice, q: Lattice) -> Lattice:
    """Cartesian product with the componentwise order; element ``(i, j)`` has id ``i*|q| + j``."""
    labels = [f"({a},{b})" for a in p.labels for b in q.labels]
    up = []
    for i in range(p.n):
        for j in range(q.n):
            mask = 0
            for i2 in iter_bits(p.up[i]):
                for j2 in iter_bits(q.up[j]):
                    mask |= 1 << (i2 * q.n + j2)
            up.append(mask)
    dims = coords = None
    if p.chain_dims is not None and q.chain_dims is not None:
        dims = p.chain_dims + q.chain_dims
        coords = [a + b for a in p.coords for b in q.coords]
    name = None
    if dims is not None and len(dims) >= 2:
        name = "grid:" + ",".join(map(str, dims))
    elif p.name and q.name:
        name = f"({p.name})x({q.name})"
    return Lattice(labels, up, name=name, chain_dims=dims, coords=coords)


def grid(*dims: int) -> Lattice:
    """``[m] x [n] x ...`` as an iterated product of chains."""
    if not dims:
        raise ValueError("grid needs at least one dimension")
    lat = chain(dims[0])
    for d in dims[1:]:
        lat = product(lat, chain(d))
    return lat


def _relabel(lat: Lattice, labels: Sequence[str], name: str | None) -> Lattice:
    return Lattice(labels, lat.up, name=name)


def parallel_composition(p: Lattice, q: Lattice) -> Lattice:
    """Glue ``p`` and ``q`` along their bottoms and along their tops.

    Middle elements keep their labels; a label of ``q`` that clashes with one
    of ``p`` gets a trailing prime.
    """
    if p.n < 2 or q.n < 2:
        raise ValueError("parallel composition needs lattices with at least two elements")
    p_mid = [x for x in range(p.n) if x not in (p.bottom, p.top)]
    q_mid = [x for x in range(q.n) if x not in (q.bottom, q.top)]
    labels = ["bot"] + [p.labels[x] for x in p_mid]
    taken = set(labels) | {"top"}
    for x in q_mid:
        lab = q.labels[x]
        while lab in taken:
            lab += "'"
        taken.add(lab)
        labels.append(lab)
    labels.append("top")
    n = len(labels)
    top = n - 1
    pmap = {p.bottom: 0, p.top: top}
    pmap.update({x: i + 1 for i, x in enumerate(p_mid)})
    qmap = {q.bottom: 0, q.top: top}
    qmap.update({x: i + 1 + len(p_mid) for i, x in enumerate(q_mid)})
    up = [0] * n
    for lat, mapping in ((p, pmap), (q, qmap)):
        for x in range(lat.n):
            for y in iter_bits(lat.up[x]):
                up[mapping[x]] |= 1 << mapping[y]
    name = f"({p.name})*({q.name})" if p.name and q.name else None
    # the Lattice constructor validates meets and joins
    return Lattice(labels, up, name=name)


def diamond(n: int) -> Lattice:
    """``[2]^{*n}``: a bottom, a top and ``n`` pairwise incomparable middles ``1..n``."""
    if n < 1:
        raise ValueError("diamond needs n >= 1")
    lat = chain(2)
    for _ in range(n - 1):
        lat = parallel_composition(lat, chain(2))
    labels = ["bot"] + [str(i) for i in range(1, n + 1)] + ["top"]
    return _relabel(lat, labels, name=f"diamond:{n}")


def pentagon() -> Lattice:
    """The non-modular lattice N5: ``0 < a < c < 1`` and ``0 < b < 1``."""
    return from_cover_relations(["0", "a", "b", "c", "1"],
                                [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)], name="pentagon")


def canonical_form(lat: Lattice) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Covers after renumbering elements by (rank, label); labels dropped.

    A cheap structural fingerprint for comparing constructor outputs. It is
    not an isomorphism test: two isomorphic lattices whose labels order
    differently within a rank can get different forms.
    """
    order = sorted(range(lat.n), key=lambda x: (lat.rank[x], lat.labels[x]))
    pos = {x: i for i, x in enumerate(order)}
    return lat.n, tuple(sorted((pos[x], pos[y]) for x, y in lat.covers))
