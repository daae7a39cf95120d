"""Lifting properties and weak factorization systems on a finite lattice.

In a poset a square from ``i: a -> b`` to ``p: x -> y`` exists exactly when
``a <= x`` and ``b <= y``, and it has a diagonal exactly when ``b <= x``. The
``*_oracle`` functions apply that test to every pair of arrows; they are the
ground truth that the extension formulas (:func:`left_lift`,
:func:`right_lift`) are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .arrowsets import ArrowSet, _same_lattice, is_cotransfer_mask, is_transfer_mask
from .errors import NotCotransferSystem, NotTransferSystem
from .lattice import Arrow, Lattice, iter_bits


@dataclass(frozen=True)
class Diagnosis:
    """Outcome of a structural check. Truthy iff it passed."""

    ok: bool
    failed: str | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def fail(cls, failed: str, witness=None) -> "Diagnosis":
        return cls(False, failed, witness)


PASS = Diagnosis(True)


def lifts_against(lat: Lattice, i, p) -> bool:
    """Whether ``i`` has the left lifting property against ``p``."""
    a, b = i
    x, y = p
    if lat.leq(a, x) and lat.leq(b, y):
        return lat.leq(b, x)
    return True


def left_lifters_oracle_mask(lat: Lattice, mask: int) -> int:
    arrows = lat.arrows
    targets = [arrows[j] for j in iter_bits(mask)]
    out = 0
    for i, f in enumerate(arrows):
        if all(lifts_against(lat, f, g) for g in targets):
            out |= 1 << i
    return out


def right_lifters_oracle_mask(lat: Lattice, mask: int) -> int:
    arrows = lat.arrows
    sources = [arrows[j] for j in iter_bits(mask)]
    out = 0
    for i, g in enumerate(arrows):
        if all(lifts_against(lat, f, g) for f in sources):
            out |= 1 << i
    return out


def left_lifters_oracle(s: ArrowSet) -> ArrowSet:
    """Every non-identity arrow with the left lifting property against all of ``s``."""
    return ArrowSet(s.lattice, left_lifters_oracle_mask(s.lattice, s.mask))


def right_lifters_oracle(s: ArrowSet) -> ArrowSet:
    """Every non-identity arrow with the right lifting property against all of ``s``."""
    return ArrowSet(s.lattice, right_lifters_oracle_mask(s.lattice, s.mask))


def downward_extension_mask(lat: Lattice, mask: int) -> int:
    ext = lat.down_ext_masks
    out = 0
    for i in iter_bits(mask):
        out |= ext[i]
    return out


def upward_extension_mask(lat: Lattice, mask: int) -> int:
    ext = lat.up_ext_masks
    out = 0
    for i in iter_bits(mask):
        out |= ext[i]
    return out


def left_lift_mask(lat: Lattice, t: int) -> int:
    out = lat.full_mask & ~downward_extension_mask(lat, t)
    if config.DEBUG:
        assert out == left_lifters_oracle_mask(lat, t), "left lift formula disagrees with oracle"
    return out


def right_lift_mask(lat: Lattice, k: int) -> int:
    out = lat.full_mask & ~upward_extension_mask(lat, k)
    if config.DEBUG:
        assert out == right_lifters_oracle_mask(lat, k), "right lift formula disagrees with oracle"
    return out


def downward_extension(t: ArrowSet) -> ArrowSet:
    """All ``z -> y`` such that some ``x -> y`` in ``t`` has ``z <= x``."""
    return ArrowSet(t.lattice, downward_extension_mask(t.lattice, t.mask))


def upward_extension(k: ArrowSet) -> ArrowSet:
    """All ``z -> y`` such that some ``z -> x`` in ``k`` has ``x <= y``."""
    return ArrowSet(k.lattice, upward_extension_mask(k.lattice, k.mask))


def left_lift(t: ArrowSet) -> ArrowSet:
    """Left lifting class of a transfer system, as the complement of its downward extension."""
    if not is_transfer_mask(t.lattice, t.mask):
        raise NotTransferSystem(repr(t))
    return ArrowSet(t.lattice, left_lift_mask(t.lattice, t.mask))


def right_lift(k: ArrowSet) -> ArrowSet:
    """Right lifting class of a cotransfer system, as the complement of its upward extension."""
    if not is_cotransfer_mask(k.lattice, k.mask):
        raise NotCotransferSystem(repr(k))
    return ArrowSet(k.lattice, right_lift_mask(k.lattice, k.mask))


@dataclass(frozen=True)
class WFS:
    left: ArrowSet
    right: ArrowSet

    @property
    def lattice(self) -> Lattice:
        return self.left.lattice


def factorization_witness(lat: Lattice, left: int, right: int) -> Arrow | None:
    """First arrow that does not factor as (left or id) then (right or id), if any."""
    ids = lat.arrow_id
    for f in lat.arrows:
        x, y = f
        for z in iter_bits(lat.up[x] & lat.down[y]):
            l_ok = z == x or left >> ids[x][z] & 1
            r_ok = z == y or right >> ids[z][y] & 1
            if l_ok and r_ok:
                break
        else:
            return f
    return None


def _first_diff(lat: Lattice, a: int, b: int) -> tuple[int, int]:
    d = a ^ b
    return tuple(lat.arrows[(d & -d).bit_length() - 1])


def validate_wfs(left: ArrowSet, right: ArrowSet) -> Diagnosis:
    """Check factorization and both lifting equalities of ``(left, right)`` with the oracle."""
    lat = _same_lattice(left, right)
    f = factorization_witness(lat, left.mask, right.mask)
    if f is not None:
        return Diagnosis.fail("factorization", tuple(f))
    llp = left_lifters_oracle_mask(lat, right.mask)
    if llp != left.mask:
        return Diagnosis.fail("left = llp(right)", _first_diff(lat, llp, left.mask))
    rlp = right_lifters_oracle_mask(lat, left.mask)
    if rlp != right.mask:
        return Diagnosis.fail("right = rlp(left)", _first_diff(lat, rlp, right.mask))
    return PASS


def wfs_from_transfer(t: ArrowSet) -> WFS:
    w = WFS(left_lift(t), t)
    assert validate_wfs(w.left, w.right)
    return w


def wfs_from_cotransfer(k: ArrowSet) -> WFS:
    w = WFS(k, right_lift(k))
    assert validate_wfs(w.left, w.right)
    return w
