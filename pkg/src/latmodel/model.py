"""Model structures on a finite lattice.

A model structure is pinned down by its weak equivalences ``W`` and its
acyclic fibrations ``AF`` (a transfer system inside ``W``). Given both, the
rest follows: ``C`` is the left lifting class of ``AF``, ``AC = C & W`` and
``F`` the right lifting class of ``AC``. The pair works exactly when ``AC``
comes out as a cotransfer system, which is what :func:`check_pair_afw` tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import config
from .arrowsets import (
    ArrowSet,
    _same_lattice,
    is_cotransfer_mask,
    is_transfer_mask,
    is_wide_decomposable_mask,
    k_max_mask,
    t_max_mask,
)
from .errors import (
    NotAModelStructure,
    NotDecomposable,
    NotInAFW,
    NotWeakEquivalenceSet,
    PreconditionViolated,
)
from .lattice import Arrow, Lattice, iter_bits
from .lifting import (
    PASS,
    Diagnosis,
    left_lift_mask,
    left_lifters_oracle_mask,
    right_lift_mask,
    right_lifters_oracle_mask,
    validate_wfs,
)

CLASS_NAMES = ("W", "AC", "C", "AF", "F")


@dataclass(frozen=True)
class ModelStructure:
    weq: ArrowSet
    acof: ArrowSet
    cof: ArrowSet
    afib: ArrowSet
    fib: ArrowSet

    @property
    def lattice(self) -> Lattice:
        return self.weq.lattice

    def classes(self) -> dict[str, ArrowSet]:
        return {"W": self.weq, "AC": self.acof, "C": self.cof, "AF": self.afib, "F": self.fib}

    def replace(self, **classes: ArrowSet) -> "ModelStructure":
        """Copy with some classes swapped out, keyed by ``W``/``AC``/``C``/``AF``/``F``."""
        cur = self.classes()
        cur.update(classes)
        return ModelStructure(cur["W"], cur["AC"], cur["C"], cur["AF"], cur["F"])


@dataclass(frozen=True)
class AFInterval:
    """All acyclic-fibration classes compatible with one weak equivalence set."""

    weq: ArrowSet
    af_min: ArrowSet
    af_max: ArrowSet
    members: tuple[ArrowSet, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ACInterval:
    weq: ArrowSet
    ac_min: ArrowSet
    ac_max: ArrowSet
    members: tuple[ArrowSet, ...]

    def __len__(self) -> int:
        return len(self.members)


# -- the pair test and its dual ------------------------------------------------


def _afw_ok(lat: Lattice, w: int, t: int) -> bool:
    return is_cotransfer_mask(lat, left_lift_mask(lat, t) & w)


def _acw_ok(lat: Lattice, w: int, k: int) -> bool:
    return is_transfer_mask(lat, right_lift_mask(lat, k) & w)


def _require_weq_shape(w: ArrowSet):
    if not is_wide_decomposable_mask(w.lattice, w.mask):
        raise PreconditionViolated("w", "not a composition-closed decomposable subcategory")


def check_pair_afw(w: ArrowSet, t: ArrowSet) -> bool:
    """Whether ``(W=w, AF=t)`` extends to a model structure."""
    lat = _same_lattice(w, t)
    _require_weq_shape(w)
    if not is_transfer_mask(lat, t.mask):
        raise PreconditionViolated("t", "not a transfer system")
    if t.mask & ~w.mask:
        raise PreconditionViolated("t", "not contained in w")
    return _afw_ok(lat, w.mask, t.mask)


def check_pair_acw(w: ArrowSet, k: ArrowSet) -> bool:
    """Whether ``(W=w, AC=k)`` extends to a model structure."""
    lat = _same_lattice(w, k)
    _require_weq_shape(w)
    if not is_cotransfer_mask(lat, k.mask):
        raise PreconditionViolated("k", "not a cotransfer system")
    if k.mask & ~w.mask:
        raise PreconditionViolated("k", "not contained in w")
    return _acw_ok(lat, w.mask, k.mask)


def _closure_failure(lat: Lattice, mask: int, masks) -> tuple | None:
    """An arrow of ``mask`` and one of its pullbacks/pushouts that falls outside, if any."""
    for i in iter_bits(mask):
        missing = masks[i] & ~mask
        if missing:
            j = (missing & -missing).bit_length() - 1
            return tuple(lat.arrows[i]), tuple(lat.arrows[j])
    comp = lat.composition_closure_mask(mask) & ~mask
    if comp:
        j = (comp & -comp).bit_length() - 1
        return ("composite",), tuple(lat.arrows[j])
    return None


def assemble_model_structure(w: ArrowSet, t: ArrowSet) -> ModelStructure:
    """Build the model structure with weak equivalences ``w`` and acyclic fibrations ``t``."""
    lat = _same_lattice(w, t)
    if not check_pair_afw(w, t):
        ac = left_lift_mask(lat, t.mask) & w.mask
        witness = _closure_failure(lat, ac, lat.pushout_masks)
        raise NotAModelStructure("acyclic cofibrations are not closed under pushouts", witness)
    cof = left_lift_mask(lat, t.mask)
    acof = cof & w.mask
    fib = right_lifters_oracle_mask(lat, acof)
    assert fib == right_lift_mask(lat, acof)
    m = ModelStructure(w, ArrowSet(lat, acof), ArrowSet(lat, cof), t, ArrowSet(lat, fib))
    if config.DEBUG:
        d = verify_model_structure(m)
        assert d, d
    return m


def assemble_from_acyclic_cofibrations(w: ArrowSet, k: ArrowSet) -> ModelStructure:
    """Dual assembly from weak equivalences ``w`` and acyclic cofibrations ``k``."""
    lat = _same_lattice(w, k)
    if not check_pair_acw(w, k):
        af = right_lift_mask(lat, k.mask) & w.mask
        witness = _closure_failure(lat, af, lat.pullback_masks)
        raise NotAModelStructure("acyclic fibrations are not closed under pullbacks", witness)
    fib = right_lift_mask(lat, k.mask)
    afib = fib & w.mask
    cof = left_lifters_oracle_mask(lat, afib)
    return ModelStructure(w, k, ArrowSet(lat, cof), ArrowSet(lat, afib), ArrowSet(lat, fib))


# -- independent verification --------------------------------------------------


def _in(lat: Lattice, mask: int, x: int, y: int) -> bool:
    return x == y or bool(mask >> lat.arrow_id[x][y] & 1)


def compose_classes(lat: Lattice, first: int, second: int) -> int:
    """Arrows ``x -> y`` that factor as ``first`` (or id) followed by ``second`` (or id)."""
    out = 0
    for i, (x, y) in enumerate(lat.arrows):
        for z in range(lat.n):
            if lat.leq(x, z) and lat.leq(z, y) and _in(lat, first, x, z) and _in(lat, second, z, y):
                out |= 1 << i
                break
    return out


def verify_model_structure(m: ModelStructure) -> Diagnosis:
    """Re-check every model-structure axiom from scratch; report the first failure."""
    lat = _same_lattice(m.weq, m.acof, m.cof, m.afib, m.fib)
    d = validate_wfs(m.acof, m.fib)
    if not d:
        return Diagnosis.fail(f"(AC, F) weak factorization system: {d.failed}", d.witness)
    d = validate_wfs(m.cof, m.afib)
    if not d:
        return Diagnosis.fail(f"(C, AF) weak factorization system: {d.failed}", d.witness)
    if m.acof.mask & ~m.cof.mask:
        return Diagnosis.fail("AC ⊆ C", _lowest(lat, m.acof.mask & ~m.cof.mask))
    if m.afib.mask & ~m.fib.mask:
        return Diagnosis.fail("AF ⊆ F", _lowest(lat, m.afib.mask & ~m.fib.mask))
    w = m.weq.mask
    composite = compose_classes(lat, m.acof.mask, m.afib.mask)
    if composite != w:
        return Diagnosis.fail("W = AF ∘ AC", _lowest(lat, composite ^ w))
    if m.acof.mask != m.cof.mask & w:
        return Diagnosis.fail("AC = C ∩ W", _lowest(lat, m.acof.mask ^ (m.cof.mask & w)))
    if m.afib.mask != m.fib.mask & w:
        return Diagnosis.fail("AF = F ∩ W", _lowest(lat, m.afib.mask ^ (m.fib.mask & w)))
    for x in range(lat.n):
        for y in iter_bits(lat.up[x]):
            for z in iter_bits(lat.up[y]):
                held = (_in(lat, w, x, y), _in(lat, w, y, z), _in(lat, w, x, z))
                if sum(held) == 2:
                    return Diagnosis.fail("two-out-of-three", (x, y, z))
                if held[2] and not (held[0] and held[1]):
                    return Diagnosis.fail("W decomposable", (x, y, z))
    return PASS


def _lowest(lat: Lattice, mask: int) -> tuple[int, int]:
    return tuple(lat.arrows[(mask & -mask).bit_length() - 1])


# -- which subcategories are weak equivalence sets ----------------------------


def _good_cover_successors(lat: Lattice, q: int, masks) -> list[int]:
    succ = [0] * lat.n
    for i in iter_bits(q & lat.cover_mask):
        if masks[i] & ~q == 0:
            x, y = lat.arrows[i]
            succ[x] |= 1 << y
    return succ


def _reach(succ: list[int], start: int, limit: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= succ[v]
        nxt &= limit & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def factorization_condition_witness(q: ArrowSet, arrows=None) -> Arrow | None:
    """First arrow of ``q`` with no cover-path factorization (pushout-good covers, then pullback-good ones)."""
    lat = q.lattice
    if not is_wide_decomposable_mask(lat, q.mask):
        raise NotDecomposable(repr(q))
    po_succ = _good_cover_successors(lat, q.mask, lat.pushout_masks)
    pb_succ = _good_cover_successors(lat, q.mask, lat.pullback_masks)
    pb_pred = [0] * lat.n
    for x in range(lat.n):
        for y in iter_bits(pb_succ[x]):
            pb_pred[y] |= 1 << x
    for f in (q if arrows is None else arrows):
        x, z = f
        interval = lat.up[x] & lat.down[z]
        if not _reach(po_succ, x, interval) & _reach(pb_pred, z, interval):
            return f
    return None


def satisfies_factorization_condition(q: ArrowSet) -> bool:
    """Every arrow of ``q`` factors into covers whose pushouts lie in ``q``, followed by
    covers whose pullbacks lie in ``q``."""
    return factorization_condition_witness(q) is None


def axis_arrows(q: ArrowSet) -> list[Arrow]:
    """Arrows of ``q`` whose endpoints differ in exactly one grid coordinate."""
    lat = q.lattice
    if lat.coords is None:
        raise ValueError(f"{lat!r} is not a product of chains")
    out = []
    for f in q:
        a, b = lat.coords[f.src], lat.coords[f.tgt]
        if sum(u != v for u, v in zip(a, b)) == 1:
            out.append(f)
    return out


def satisfies_factorization_condition_grid(q: ArrowSet) -> bool:
    """Grid shortcut: on a product of chains only axis-parallel arrows need checking."""
    return factorization_condition_witness(q, axis_arrows(q)) is None


def weq_exhaustive(q: ArrowSet) -> bool:
    """Search every transfer system inside ``q`` for one that pairs with it."""
    from .enumeration import iter_transfer_masks

    lat = q.lattice
    return any(_afw_ok(lat, q.mask, t) for t in iter_transfer_masks(lat, within=q.mask))


def is_weak_equivalence_set_mask(lat: Lattice, q: int) -> bool:
    return _afw_ok(lat, q, t_max_mask(lat, q))


def is_weak_equivalence_set(q: ArrowSet) -> bool:
    """Whether ``q`` is the class of weak equivalences of some model structure."""
    lat = q.lattice
    if not is_wide_decomposable_mask(lat, q.mask):
        raise NotDecomposable(repr(q))
    ok = is_weak_equivalence_set_mask(lat, q.mask)
    if config.DEBUG:
        assert ok == satisfies_factorization_condition(q), q
        if lat.num_arrows <= config.ORACLE_MAX_ARROWS:
            assert ok == weq_exhaustive(q), q
    return ok


# -- extremal classes and intervals -------------------------------------------


def _require_weq(w: ArrowSet):
    if not is_wide_decomposable_mask(w.lattice, w.mask) or not is_weak_equivalence_set(w):
        raise NotWeakEquivalenceSet(repr(w))


def af_min(w: ArrowSet) -> ArrowSet:
    """Smallest acyclic-fibration class for ``w``: right lift of ``K_max(w)``, cut down to ``w``."""
    _require_weq(w)
    lat = w.lattice
    return ArrowSet(lat, right_lift_mask(lat, k_max_mask(lat, w.mask)) & w.mask)


def ac_min(w: ArrowSet) -> ArrowSet:
    _require_weq(w)
    lat = w.lattice
    return ArrowSet(lat, left_lift_mask(lat, t_max_mask(lat, w.mask)) & w.mask)


def af_max(w: ArrowSet) -> ArrowSet:
    _require_weq(w)
    return ArrowSet(w.lattice, t_max_mask(w.lattice, w.mask))


def ac_max(w: ArrowSet) -> ArrowSet:
    _require_weq(w)
    return ArrowSet(w.lattice, k_max_mask(w.lattice, w.mask))


def af_interval(w: ArrowSet) -> AFInterval:
    """Every transfer system between ``AF_min`` and ``AF_max = T_max``, in canonical order."""
    from .enumeration import iter_transfer_masks

    lo, hi = af_min(w), af_max(w)
    lat = w.lattice
    members = sorted(iter_transfer_masks(lat, within=hi.mask, superset_of=lo.mask),
                     key=lambda t: (t.bit_count(), t))
    for t in members:
        if not _afw_ok(lat, w.mask, t):
            raise AssertionError(f"interval member {ArrowSet(lat, t)!r} fails the pair test")
    return AFInterval(w, lo, hi, tuple(ArrowSet(lat, t) for t in members))


def ac_interval(w: ArrowSet) -> ACInterval:
    """Every cotransfer system between ``AC_min`` and ``AC_max = K_max``."""
    from .enumeration import iter_cotransfer_masks

    lo, hi = ac_min(w), ac_max(w)
    lat = w.lattice
    members = sorted(iter_cotransfer_masks(lat, within=hi.mask, superset_of=lo.mask),
                     key=lambda k: (k.bit_count(), k))
    for k in members:
        if not _acw_ok(lat, w.mask, k):
            raise AssertionError(f"interval member {ArrowSet(lat, k)!r} fails the pair test")
    return ACInterval(w, lo, hi, tuple(ArrowSet(lat, k) for k in members))


def dual_map(w: ArrowSet, t: ArrowSet) -> ArrowSet:
    """Send an acyclic-fibration class to the acyclic cofibrations of the same structure."""
    lat = _same_lattice(w, t)
    if (not is_wide_decomposable_mask(lat, w.mask) or not is_transfer_mask(lat, t.mask)
            or t.mask & ~w.mask or not _afw_ok(lat, w.mask, t.mask)):
        raise NotInAFW(repr(t))
    return ArrowSet(lat, left_lift_mask(lat, t.mask) & w.mask)
