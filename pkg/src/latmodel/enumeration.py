"""Exhaustive enumeration and counting of (co)transfer systems, weak equivalence
sets and model structures, plus the closed-form counts they are compared to.

Transfer systems are found by a binary decision over the arrow index: each
arrow is excluded or included, and including one immediately adds its
pullbacks and every composite (the generated transfer system). A branch dies
as soon as that closure reaches an excluded arrow. Every transfer system has
exactly one decision path, so no deduplication is needed; the output order
is the depth-first order with "exclude" explored first.

With ``jobs > 1`` the tree is cut at a fixed depth and subtrees are handed to
a process pool; results are concatenated in subtree order, which reproduces
the single-process order exactly.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .arrowsets import (
    ArrowSet,
    generate_cotransfer_mask,
    generate_transfer_mask,
    is_decomposable_mask,
)
from .errors import TooLarge
from .lattice import Lattice, iter_bits

KINDS = ("transfer", "cotransfer", "decomposable", "weq", "model")
_ALIASES = {"weq_set": "weq", "weak_equivalence": "weq", "model_structure": "model",
            "wide_decomposable": "decomposable"}

SPLIT_DEPTH = 8


def normalize_kind(kind: str) -> str:
    kind = _ALIASES.get(kind, kind)
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


@dataclass(frozen=True)
class EnumerationRequest:
    lattice: Lattice
    kind: str
    within: ArrowSet | None = None
    superset_of: ArrowSet | None = None
    count_only: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", normalize_kind(self.kind))
        if self.within is not None and self.superset_of is not None:
            if not self.superset_of <= self.within:
                raise ValueError("superset_of must be contained in within")


@dataclass
class CountReport:
    lattice: str
    counts: dict[str, int]
    expected: dict[str, int] = field(default_factory=dict)
    match: bool | None = None
    wall_time: float = 0.0

    def to_json(self) -> dict:
        return {"lattice": self.lattice, "counts": self.counts, "expected": self.expected,
                "match": self.match, "wall_time": round(self.wall_time, 6)}


# -- decision-tree search for closed sets -------------------------------------


def _search(lat: Lattice, gen, state, depth_limit=None):
    """Depth-first over undecided arrows from ``state = (i, included, excluded)``.

    Yields finished sets as ints, or, when ``depth_limit`` is reached, the
    pending states themselves (as tuples) so they can be farmed out.
    """
    m = lat.num_arrows
    closure = lat.composition_closure_mask
    stack = [(state, 0)]
    while stack:
        (i, inc, exc), depth = stack.pop()
        decided = inc | exc
        while i < m and decided >> i & 1:
            i += 1
        if i == m:
            yield inc
            continue
        if depth_limit is not None and depth == depth_limit:
            yield (i, inc, exc)
            continue
        bit = 1 << i
        new = closure(inc | gen[i])
        # push include first so that exclude is explored first
        if not new & exc:
            stack.append(((i + 1, new, exc), depth + 1))
        stack.append(((i + 1, inc, exc | bit), depth + 1))


def _run_subtree(args) -> list[int]:
    lat, kind, state = args
    gen = lat.pullback_masks if kind == "transfer" else lat.pushout_masks
    return list(_search(lat, gen, state))


def _closed_masks(lat: Lattice, kind: str, within: int | None, superset_of: int | None,
                  jobs: int) -> Iterator[int]:
    if kind == "transfer":
        gen, generate = lat.pullback_masks, generate_transfer_mask
    else:
        gen, generate = lat.pushout_masks, generate_cotransfer_mask
    full = lat.full_mask
    within = full if within is None else within
    start = generate(lat, superset_of or 0)
    if start & ~within:
        return
    root = (0, start, full & ~within)
    if jobs <= 1:
        yield from _search(lat, gen, root)
        return
    pending = []
    for item in _search(lat, gen, root, depth_limit=SPLIT_DEPTH):
        pending.append(item)
    tasks = [(lat, kind, s if isinstance(s, tuple) else (lat.num_arrows, s, 0)) for s in pending]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_run_subtree, tasks, chunksize=1):
            yield from chunk


def iter_transfer_masks(lat: Lattice, within: int | None = None,
                        superset_of: int | None = None, jobs: int = 1) -> Iterator[int]:
    return _closed_masks(lat, "transfer", within, superset_of, jobs)


def iter_cotransfer_masks(lat: Lattice, within: int | None = None,
                          superset_of: int | None = None, jobs: int = 1) -> Iterator[int]:
    return _closed_masks(lat, "cotransfer", within, superset_of, jobs)


def _bounds(within: ArrowSet | None, superset_of: ArrowSet | None):
    return (None if within is None else within.mask,
            None if superset_of is None else superset_of.mask)


def enumerate_transfer_systems(lattice: Lattice, within: ArrowSet | None = None,
                               superset_of: ArrowSet | None = None,
                               jobs: int = 1) -> Iterator[ArrowSet]:
    """Every transfer system ``T`` with ``superset_of ⊆ T ⊆ within``, each once."""
    hi, lo = _bounds(within, superset_of)
    for t in iter_transfer_masks(lattice, hi, lo, jobs):
        yield ArrowSet(lattice, t)


def enumerate_cotransfer_systems(lattice: Lattice, within: ArrowSet | None = None,
                                 superset_of: ArrowSet | None = None,
                                 jobs: int = 1) -> Iterator[ArrowSet]:
    hi, lo = _bounds(within, superset_of)
    for k in iter_cotransfer_masks(lattice, hi, lo, jobs):
        yield ArrowSet(lattice, k)


# -- wide decomposable subcategories ------------------------------------------


def _decomposable_chunk(args) -> list[int]:
    lat, start, stop = args
    covers = list(iter_bits(lat.cover_mask))
    closure = lat.composition_closure_mask
    out = []
    for s in range(start, stop):
        mask = 0
        for j, c in enumerate(covers):
            if s >> j & 1:
                mask |= 1 << c
        cand = closure(mask)
        if is_decomposable_mask(lat, cand):
            out.append(cand)
    return out


def iter_decomposable_masks(lat: Lattice, jobs: int = 1) -> Iterator[int]:
    # such a set is determined by its covers: it is the composition closure of them
    total = 1 << lat.cover_mask.bit_count()
    if jobs <= 1:
        yield from _decomposable_chunk((lat, 0, total))
        return
    step = max(1, total // (jobs * 8))
    tasks = [(lat, a, min(a + step, total)) for a in range(0, total, step)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_decomposable_chunk, tasks, chunksize=1):
            yield from chunk


def _filtered(masks: Iterator[int], within: int | None, superset_of: int | None):
    for q in masks:
        if within is not None and q & ~within:
            continue
        if superset_of is not None and superset_of & ~q:
            continue
        yield q


def enumerate_wide_decomposable(lattice: Lattice, within: ArrowSet | None = None,
                                superset_of: ArrowSet | None = None,
                                jobs: int = 1) -> Iterator[ArrowSet]:
    """Every composition-closed decomposable arrow set (ordered by its cover subset)."""
    hi, lo = _bounds(within, superset_of)
    for q in _filtered(iter_decomposable_masks(lattice, jobs), hi, lo):
        yield ArrowSet(lattice, q)


def enumerate_weak_equivalence_sets(lattice: Lattice, within: ArrowSet | None = None,
                                    superset_of: ArrowSet | None = None,
                                    jobs: int = 1) -> Iterator[ArrowSet]:
    from .model import is_weak_equivalence_set

    for q in enumerate_wide_decomposable(lattice, within, superset_of, jobs):
        if is_weak_equivalence_set(q):
            yield q


def _structures_for(args):
    from .model import af_interval, assemble_model_structure

    lat, w = args
    weq = ArrowSet(lat, w)
    return [assemble_model_structure(weq, t) for t in af_interval(weq).members]


def enumerate_model_structures(lattice: Lattice, within: ArrowSet | None = None,
                               superset_of: ArrowSet | None = None, jobs: int = 1):
    """Every model structure, grouped by weak equivalence set.

    ``within``/``superset_of`` bound the weak equivalences.
    """
    weqs = [w.mask for w in enumerate_weak_equivalence_sets(lattice, within, superset_of)]
    if jobs <= 1:
        for w in weqs:
            yield from _structures_for((lattice, w))
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_structures_for, [(lattice, w) for w in weqs], chunksize=1):
            yield from chunk


_ENUMERATORS = {
    "transfer": enumerate_transfer_systems,
    "cotransfer": enumerate_cotransfer_systems,
    "decomposable": enumerate_wide_decomposable,
    "weq": enumerate_weak_equivalence_sets,
    "model": enumerate_model_structures,
}


def run(req: EnumerationRequest, jobs: int = 1) -> Iterator:
    """Stream the objects described by ``req``."""
    return _ENUMERATORS[req.kind](req.lattice, req.within, req.superset_of, jobs=jobs)


def count(req: EnumerationRequest, jobs: int = 1) -> CountReport:
    started = time.perf_counter()
    n = sum(1 for _ in run(req, jobs))
    report = CountReport(req.lattice.name or f"{req.lattice.n}-element lattice", {req.kind: n})
    if req.within is None and req.superset_of is None:
        fam = family_of(req.lattice)
        if fam is not None:
            exp = expected_count(fam[0], fam[1], req.kind)
            if exp is not None:
                report.expected[req.kind] = exp
                report.match = exp == n
    report.wall_time = time.perf_counter() - started
    return report


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("LATMODEL_JOBS", "1")))
    except ValueError:
        return 1


# -- the brute-force oracle ----------------------------------------------------


def brute_force_filter(lattice: Lattice, predicate: Callable[[ArrowSet], bool],
                       max_arrows: int = 20) -> Iterator[ArrowSet]:
    """Test every subset of the non-identity arrows; yields in increasing mask order."""
    m = lattice.num_arrows
    if m > max_arrows:
        raise TooLarge(f"{lattice!r} has {m} arrows; brute force is capped at {max_arrows}")
    for mask in range(1 << m):
        s = ArrowSet(lattice, mask)
        if predicate(s):
            yield s


# -- closed forms --------------------------------------------------------------


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def _chain_models(n: int) -> int:
    # W is a partition of the n+1 points into intervals; any transfer system inside W works,
    # and a block of b points carries catalan(b) of them
    a = [1] + [0] * (n + 1)
    for k in range(1, n + 2):
        a[k] = sum(catalan(b) * a[k - b] for b in range(1, k + 1))
    return a[n + 1]


def expected_count(family: str, n, kind: str) -> int | None:
    """Closed-form count for a named family, or ``None`` when no formula is known.

    ``n`` is an int (``grid`` with an int means ``[n] x [1]``) or a tuple of
    dimensions for ``grid``; it is ignored for ``pentagon``.
    """
    kind = normalize_kind(kind)
    if family == "chain":
        return {"transfer": catalan(n + 1), "cotransfer": catalan(n + 1),
                "decomposable": 2 ** n, "weq": 2 ** n, "model": _chain_models(n)}[kind]
    if family == "diamond":
        if n < 1:
            return None
        return {"transfer": 2 ** (n + 1) + n, "cotransfer": 2 ** (n + 1) + n,
                "decomposable": 3 ** n + 1, "weq": 3 ** n + 1,
                "model": 3 ** n + 2 ** (n + 1) + 3 * n}[kind]
    if family == "pentagon":
        return {"transfer": 26, "cotransfer": 26, "decomposable": 22, "weq": 22,
                "model": 70}[kind]
    if family == "grid":
        dims = (n, 1) if isinstance(n, int) else tuple(n)
        if len(dims) == 2 and dims[1] == 1 and dims[0] >= 1:
            m = dims[0]
            if kind == "weq":
                return 2 ** (2 * m + 2) - 2 ** (m + 1) - 2 ** m * m
            if dims == (2, 1) and kind in ("transfer", "cotransfer"):
                return 68
            if dims == (1, 1):
                return {"transfer": 10, "cotransfer": 10, "decomposable": 10,
                        "model": 23}.get(kind)
        return None
    return None


def family_of(lat: Lattice):
    """``(family, n)`` recovered from a lattice's name, if it came from a named family."""
    name = lat.name or ""
    fam, _, params = name.partition(":")
    try:
        if fam in ("chain", "diamond"):
            return fam, int(params)
        if fam == "grid":
            return fam, tuple(int(p) for p in params.split(","))
        if fam == "pentagon" and not params:
            return fam, 0
    except ValueError:
        return None
    return None
