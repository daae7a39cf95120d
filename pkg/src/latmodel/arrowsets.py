"""Sets of arrows over a fixed lattice, and the (co)transfer-system algebra on them.

An :class:`ArrowSet` is a bitset over the lattice's non-identity arrow index.
Identities are never stored; every predicate here treats them as present.
The ``*_mask`` functions work on raw ints and are what the enumerators call;
the public functions wrap them for :class:`ArrowSet` values.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import (
    MixedLattices,
    NotComparable,
    NotDecomposable,
    NotTransferOrCotransfer,
    NotTransferSystem,
    NotCotransferSystem,
)
from .lattice import Arrow, Lattice, iter_bits


class ArrowSet:
    """An immutable set of non-identity arrows of one lattice."""

    __slots__ = ("lattice", "mask")

    def __init__(self, lattice: Lattice, mask: int = 0):
        if mask < 0 or mask > lattice.full_mask:
            raise ValueError(f"mask {mask:#x} out of range for {lattice!r}")
        self.lattice = lattice
        self.mask = mask

    @classmethod
    def from_arrows(cls, lattice: Lattice, arrows: Iterable) -> "ArrowSet":
        """Collect ``(src, tgt)`` pairs given as ids or labels; identities are dropped."""
        mask = 0
        for src, tgt in arrows:
            x, y = lattice.index(src), lattice.index(tgt)
            if not lattice.leq(x, y):
                raise NotComparable(lattice.labels[x], lattice.labels[y])
            if x != y:
                mask |= 1 << lattice.arrow_id[x][y]
        return cls(lattice, mask)

    @classmethod
    def empty(cls, lattice: Lattice) -> "ArrowSet":
        return cls(lattice, 0)

    @classmethod
    def complete(cls, lattice: Lattice) -> "ArrowSet":
        return cls(lattice, lattice.full_mask)

    @classmethod
    def covers_of(cls, lattice: Lattice) -> "ArrowSet":
        return cls(lattice, lattice.cover_mask)

    def __iter__(self) -> Iterator[Arrow]:
        arrows = self.lattice.arrows
        return (arrows[i] for i in iter_bits(self.mask))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, arrow) -> bool:
        x, y = arrow
        if x == y:
            return True
        i = self.lattice.arrow_id[x][y]
        return i >= 0 and bool(self.mask >> i & 1)

    def _other(self, other: "ArrowSet") -> int:
        if not isinstance(other, ArrowSet):
            raise TypeError(f"expected ArrowSet, got {type(other).__name__}")
        if other.lattice is not self.lattice and other.lattice != self.lattice:
            raise MixedLattices(f"{self.lattice!r} vs {other.lattice!r}")
        return other.mask

    def __or__(self, other):
        return ArrowSet(self.lattice, self.mask | self._other(other))

    def __and__(self, other):
        return ArrowSet(self.lattice, self.mask & self._other(other))

    def __sub__(self, other):
        return ArrowSet(self.lattice, self.mask & ~self._other(other))

    def __xor__(self, other):
        return ArrowSet(self.lattice, self.mask ^ self._other(other))

    def complement(self) -> "ArrowSet":
        """All non-identity arrows not in this set."""
        return ArrowSet(self.lattice, self.lattice.full_mask & ~self.mask)

    def __le__(self, other):
        return self.mask & ~self._other(other) == 0

    def __ge__(self, other):
        return self._other(other) & ~self.mask == 0

    def __lt__(self, other):
        return self <= other and self.mask != other.mask

    def __gt__(self, other):
        return self >= other and self.mask != other.mask

    def __eq__(self, other):
        if not isinstance(other, ArrowSet):
            return NotImplemented
        return self.mask == other.mask and (
            self.lattice is other.lattice or self.lattice == other.lattice)

    def __hash__(self):
        return hash((self.mask, self.lattice))

    def sort_key(self) -> tuple[int, int]:
        return (self.mask.bit_count(), self.mask)

    def with_arrow(self, arrow) -> "ArrowSet":
        return self | ArrowSet.from_arrows(self.lattice, [arrow])

    def without_arrow(self, arrow) -> "ArrowSet":
        return self - ArrowSet.from_arrows(self.lattice, [arrow])

    def pairs(self) -> list[tuple[int, int]]:
        return [(a.src, a.tgt) for a in self]

    def label_pairs(self) -> list[tuple[str, str]]:
        labels = self.lattice.labels
        return [(labels[a.src], labels[a.tgt]) for a in self]

    def __repr__(self):
        body = ", ".join(self.lattice.format_arrow(a) for a in self)
        return f"ArrowSet({{{body}}})"


def _same_lattice(*sets: ArrowSet) -> Lattice:
    lat = sets[0].lattice
    for s in sets[1:]:
        if s.lattice is not lat and s.lattice != lat:
            raise MixedLattices(f"{lat!r} vs {s.lattice!r}")
    return lat


# -- mask-level predicates ----------------------------------------------------


def is_composition_closed_mask(lat: Lattice, mask: int) -> bool:
    return lat.composition_closure_mask(mask) == mask


def is_decomposable_mask(lat: Lattice, mask: int) -> bool:
    factors = lat.factor_masks
    for i in iter_bits(mask):
        if factors[i] & ~mask:
            return False
    return True


def pullback_closed_mask(lat: Lattice, mask: int) -> bool:
    pbs = lat.pullback_masks
    return all(pbs[i] & ~mask == 0 for i in iter_bits(mask))


def pushout_closed_mask(lat: Lattice, mask: int) -> bool:
    pos = lat.pushout_masks
    return all(pos[i] & ~mask == 0 for i in iter_bits(mask))


def is_transfer_mask(lat: Lattice, mask: int) -> bool:
    return pullback_closed_mask(lat, mask) and is_composition_closed_mask(lat, mask)


def is_cotransfer_mask(lat: Lattice, mask: int) -> bool:
    return pushout_closed_mask(lat, mask) and is_composition_closed_mask(lat, mask)


def is_wide_decomposable_mask(lat: Lattice, mask: int) -> bool:
    """Composition closed and decomposable: the shape of a class of weak equivalences."""
    return is_decomposable_mask(lat, mask) and is_composition_closed_mask(lat, mask)


def _spread(masks, mask: int) -> int:
    out = mask
    for i in iter_bits(mask):
        out |= masks[i]
    return out


def generate_transfer_mask(lat: Lattice, mask: int) -> int:
    # one pullback pass suffices: a pullback of a pullback is a pullback
    return lat.composition_closure_mask(_spread(lat.pullback_masks, mask))


def generate_cotransfer_mask(lat: Lattice, mask: int) -> int:
    return lat.composition_closure_mask(_spread(lat.pushout_masks, mask))


def t_max_mask(lat: Lattice, q: int) -> int:
    pbs = lat.pullback_masks
    short = 0
    for i in iter_bits(q & lat.cover_mask):
        if pbs[i] & ~q == 0:
            short |= 1 << i
    return lat.composition_closure_mask(short)


def k_max_mask(lat: Lattice, q: int) -> int:
    pos = lat.pushout_masks
    short = 0
    for i in iter_bits(q & lat.cover_mask):
        if pos[i] & ~q == 0:
            short |= 1 << i
    return lat.composition_closure_mask(short)


# -- public API ---------------------------------------------------------------


def is_composition_closed(a: ArrowSet) -> bool:
    return is_composition_closed_mask(a.lattice, a.mask)


def is_decomposable(a: ArrowSet) -> bool:
    """Interval-closed: ``x -> z`` in the set forces ``x -> y`` and ``y -> z`` for ``x <= y <= z``."""
    return is_decomposable_mask(a.lattice, a.mask)


def is_wide_decomposable(a: ArrowSet) -> bool:
    return is_wide_decomposable_mask(a.lattice, a.mask)


def is_transfer_system(a: ArrowSet) -> bool:
    """Composition closed and closed under pullbacks."""
    return is_transfer_mask(a.lattice, a.mask)


def is_cotransfer_system(a: ArrowSet) -> bool:
    """Composition closed and closed under pushouts."""
    return is_cotransfer_mask(a.lattice, a.mask)


def is_saturated(a: ArrowSet) -> bool:
    """Saturation of a transfer or cotransfer system.

    A transfer system is saturated when ``x -> z`` in it gives ``y -> z`` for
    every ``x <= y <= z``; a cotransfer system when it gives ``x -> y``.
    """
    lat = a.lattice
    is_t, is_k = is_transfer_system(a), is_cotransfer_system(a)
    if not (is_t or is_k):
        raise NotTransferOrCotransfer(repr(a))
    for f in a:
        x, z = f
        for y in iter_bits(lat.up[x] & lat.down[z]):
            if is_t and (y, z) not in a:
                return False
            if is_k and (x, y) not in a:
                return False
    return True


def composition_closure(a: ArrowSet) -> ArrowSet:
    return ArrowSet(a.lattice, a.lattice.composition_closure_mask(a.mask))


def pullback_closure(a: ArrowSet) -> ArrowSet:
    return ArrowSet(a.lattice, _spread(a.lattice.pullback_masks, a.mask))


def pushout_closure(a: ArrowSet) -> ArrowSet:
    return ArrowSet(a.lattice, _spread(a.lattice.pushout_masks, a.mask))


def generate_transfer(s: ArrowSet) -> ArrowSet:
    """Smallest transfer system containing ``s``: pullback closure, then composition closure."""
    return ArrowSet(s.lattice, generate_transfer_mask(s.lattice, s.mask))


def generate_cotransfer(s: ArrowSet) -> ArrowSet:
    """Smallest cotransfer system containing ``s``: pushout closure, then composition closure."""
    return ArrowSet(s.lattice, generate_cotransfer_mask(s.lattice, s.mask))


def _require(pred, exc, *sets):
    for s in sets:
        if not pred(s):
            raise exc(repr(s))


def ts_meet(t1: ArrowSet, t2: ArrowSet) -> ArrowSet:
    _same_lattice(t1, t2)
    _require(is_transfer_system, NotTransferSystem, t1, t2)
    return t1 & t2


def ts_join(t1: ArrowSet, t2: ArrowSet) -> ArrowSet:
    lat = _same_lattice(t1, t2)
    _require(is_transfer_system, NotTransferSystem, t1, t2)
    joined = lat.composition_closure_mask(t1.mask | t2.mask)
    assert joined == generate_transfer_mask(lat, t1.mask | t2.mask)
    return ArrowSet(lat, joined)


def cts_meet(k1: ArrowSet, k2: ArrowSet) -> ArrowSet:
    _same_lattice(k1, k2)
    _require(is_cotransfer_system, NotCotransferSystem, k1, k2)
    return k1 & k2


def cts_join(k1: ArrowSet, k2: ArrowSet) -> ArrowSet:
    lat = _same_lattice(k1, k2)
    _require(is_cotransfer_system, NotCotransferSystem, k1, k2)
    joined = lat.composition_closure_mask(k1.mask | k2.mask)
    assert joined == generate_cotransfer_mask(lat, k1.mask | k2.mask)
    return ArrowSet(lat, joined)


def t_max(q: ArrowSet) -> ArrowSet:
    """Largest transfer system inside the decomposable subcategory ``q``.

    Closes under composition the cover arrows of ``q`` all of whose
    pullbacks stay in ``q``.
    """
    if not is_decomposable(q):
        raise NotDecomposable(repr(q))
    return ArrowSet(q.lattice, t_max_mask(q.lattice, q.mask))


def k_max(q: ArrowSet) -> ArrowSet:
    """Largest cotransfer system inside the decomposable subcategory ``q``."""
    if not is_decomposable(q):
        raise NotDecomposable(repr(q))
    return ArrowSet(q.lattice, k_max_mask(q.lattice, q.mask))
