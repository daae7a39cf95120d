"""The reproduction table: closed-form counts and worked examples, expected vs computed."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Iterable

from . import lattice as L
from .arrowsets import ArrowSet, generate_transfer, k_max, t_max
from .enumeration import EnumerationRequest, expected_count, run
from .lattice import Lattice
from .lifting import downward_extension, left_lift, right_lift
from .model import (
    af_interval,
    af_min,
    check_pair_acw,
    check_pair_afw,
    is_weak_equivalence_set,
    satisfies_factorization_condition,
)


@dataclass(frozen=True)
class Row:
    key: str
    family: str
    n: int
    expected: object
    compute: Callable[[], object]


@dataclass
class RowResult:
    key: str
    expected: object
    computed: object
    seconds: float

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


def _count(lat_fn: Callable[[], Lattice], kind: str, jobs: int = 1) -> Callable[[], int]:
    return lambda: sum(1 for _ in run(EnumerationRequest(lat_fn(), kind), jobs))


_KIND_LABEL = {"transfer": "transfer systems", "cotransfer": "cotransfer systems",
               "decomposable": "decomposable subcategories", "weq": "weak equivalence sets",
               "model": "model structures"}


def count_rows() -> list[Row]:
    rows = []

    def add(family, n, kind, lat_fn, name=None):
        # grid rows are [n] x [1], which is what expected_count takes an int n to mean
        name = name or (f"{family}:{n}" if family != "grid" else f"grid:{n},1")
        rows.append(Row(f"{name} {_KIND_LABEL[kind]}", family, n,
                        expected_count(family, n, kind), _count(lat_fn, kind)))

    for n in range(6):
        add("chain", n, "transfer", lambda n=n: L.chain(n))
    add("grid", 2, "transfer", lambda: L.grid(2, 1))
    add("grid", 2, "cotransfer", lambda: L.grid(2, 1))
    for n in range(1, 7):
        add("diamond", n, "transfer", lambda n=n: L.diamond(n))
    add("pentagon", 0, "transfer", L.pentagon, "pentagon")
    add("pentagon", 0, "cotransfer", L.pentagon, "pentagon")

    for n in (1, 2):
        add("chain", n, "model", lambda n=n: L.chain(n))
    add("grid", 1, "model", lambda: L.grid(1, 1))
    for n in range(1, 6):
        add("diamond", n, "model", lambda n=n: L.diamond(n))
    add("pentagon", 0, "model", L.pentagon, "pentagon")

    for n in (1, 2, 3):
        add("grid", n, "weq", lambda n=n: L.grid(n, 1))
    for n in range(1, 7):
        add("diamond", n, "weq", lambda n=n: L.diamond(n))
    add("pentagon", 0, "weq", L.pentagon, "pentagon")
    add("pentagon", 0, "decomposable", L.pentagon, "pentagon")
    return rows


def arrows(lat: Lattice, text: str) -> ArrowSet:
    """Arrow set from ``"src>tgt src>tgt ..."`` written with element labels."""
    return ArrowSet.from_arrows(lat, [tuple(tok.split(">")) for tok in text.split()])


def _grid_example_w(g: Lattice) -> ArrowSet:
    return arrows(g, "(0,0)>(0,1) (0,1)>(0,2) (0,0)>(0,2) (1,1)>(1,2) "
                     "(2,0)>(2,1) (2,1)>(2,2) (2,0)>(2,2)")


def _left_square(g: Lattice) -> ArrowSet:
    return arrows(g, "(0,0)>(0,1) (0,0)>(1,0) (0,0)>(1,1) (1,0)>(1,1) (0,1)>(1,1)")


def _pairs(s: ArrowSet) -> list[tuple[str, str]]:
    return sorted(s.label_pairs())


def example_rows() -> list[Row]:
    g21, g11, g22, n5 = L.grid(2, 1), L.grid(1, 1), L.grid(2, 2), L.pentagon()
    e = ArrowSet.empty
    verticals = arrows(g21, "(0,0)>(0,1) (1,0)>(1,1) (2,0)>(2,1)")
    n5_w1 = arrows(n5, "0>a a>c 0>c 0>b")
    n5_w2 = arrows(n5, "0>a c>1")
    q1 = arrows(g22, "(0,0)>(0,1) (1,0)>(1,1) (1,1)>(1,2) (2,1)>(2,2) (1,0)>(1,2)")
    q2 = arrows(g22, "(0,1)>(0,2) (1,0)>(1,1) (1,1)>(1,2) (2,0)>(2,1) (1,0)>(1,2)")
    rows = [
        Row("generated transfer system on grid:2,1", "grid", 2,
            _pairs(arrows(g21, "(0,0)>(0,1) (1,0)>(1,1) (1,0)>(2,0) (1,0)>(2,1) (2,0)>(2,1)")),
            lambda: _pairs(generate_transfer(arrows(g21, "(1,0)>(2,0) (2,0)>(2,1)")))),
        Row("downward extension of the verticals on grid:2,1", "grid", 2,
            _pairs(verticals | arrows(g21, "(0,0)>(1,1) (0,0)>(2,1) (1,0)>(2,1)")),
            lambda: _pairs(downward_extension(verticals))),
        Row("left lift of the complete system on grid:1,1", "grid", 1, [],
            lambda: _pairs(left_lift(ArrowSet.complete(g11)))),
        Row("left lift of the horizontals on grid:1,1", "grid", 1,
            _pairs(arrows(g11, "(0,0)>(0,1) (1,0)>(1,1)")),
            lambda: _pairs(left_lift(arrows(g11, "(0,0)>(1,0) (0,1)>(1,1)")))),
        Row("grid:2,2 T_max", "grid", 2,
            _pairs(arrows(g22, "(0,0)>(0,1) (0,1)>(0,2) (0,0)>(0,2) (1,1)>(1,2) (2,1)>(2,2)")),
            lambda: _pairs(t_max(_grid_example_w(g22)))),
        Row("grid:2,2 K_max", "grid", 2,
            _pairs(arrows(g22, "(0,1)>(0,2) (1,1)>(1,2) (2,0)>(2,1) (2,1)>(2,2) (2,0)>(2,2)")),
            lambda: _pairs(k_max(_grid_example_w(g22)))),
        Row("grid:2,2 right lift of K_max", "grid", 2,
            _pairs(arrows(g22, "(0,0)>(0,1) (0,0)>(0,2) (0,0)>(1,2) (0,0)>(1,1) (0,0)>(1,0) "
                               "(0,0)>(2,2) (0,0)>(2,1) (0,0)>(2,0) (0,1)>(1,1) (0,1)>(2,1) "
                               "(0,2)>(1,2) (0,2)>(2,2) (1,0)>(1,1) (1,0)>(2,0) (1,0)>(1,2) "
                               "(1,0)>(2,2) (1,0)>(2,1) (1,1)>(2,1) (1,2)>(2,2)")),
            lambda: _pairs(right_lift(k_max(_grid_example_w(g22))))),
        Row("grid:2,2 AF_min", "grid", 2, _pairs(arrows(g22, "(0,0)>(0,1) (0,0)>(0,2)")),
            lambda: _pairs(af_min(_grid_example_w(g22)))),
        Row("grid:2,2 |AF(W)|", "grid", 2, 4, lambda: len(af_interval(_grid_example_w(g22)))),
        Row("grid:1,1 two covers with one horizontal as AF", "grid", 1, False,
            lambda: check_pair_afw(arrows(g11, "(0,0)>(0,1) (0,0)>(1,0)"),
                                   arrows(g11, "(0,0)>(1,0)"))),
        Row("grid:2,1 middle vertical is a weak equivalence set", "grid", 2, False,
            lambda: is_weak_equivalence_set(arrows(g21, "(1,0)>(1,1)"))),
        Row("grid:2,1 left square with empty AF", "grid", 2, False,
            lambda: check_pair_afw(_left_square(g21), e(g21))),
        Row("grid:2,1 left square with empty AC", "grid", 2, True,
            lambda: check_pair_acw(_left_square(g21), e(g21))),
        Row("grid:2,2 factorization condition, first set", "grid", 2, False,
            lambda: satisfies_factorization_condition(q1)),
        Row("grid:2,2 factorization condition, second set", "grid", 2, True,
            lambda: satisfies_factorization_condition(q2)),
        Row("pentagon right lift of K_max", "pentagon", 0,
            _pairs(arrows(n5, "0>a 0>b 0>c 0>1 b>1 c>1")),
            lambda: _pairs(right_lift(k_max(n5_w1)))),
        Row("pentagon AF(W) for a transfer-system W", "pentagon", 0,
            [_pairs(arrows(n5, "0>a 0>b 0>c")), _pairs(n5_w1)],
            lambda: [_pairs(t) for t in af_interval(n5_w1).members]),
        Row("pentagon AF(W) for the W that is neither", "pentagon", 0,
            [_pairs(arrows(n5, "0>a"))],
            lambda: [_pairs(t) for t in af_interval(n5_w2).members]),
    ]
    return rows


def all_rows() -> list[Row]:
    return count_rows() + example_rows()


def select(rows: Iterable[Row], family: str | None = None, max_n: int | None = None) -> list[Row]:
    out = []
    for r in rows:
        if family is not None and r.family != family:
            continue
        if max_n is not None and r.n > max_n:
            continue
        out.append(r)
    return out


def evaluate(row: Row) -> RowResult:
    t0 = time.perf_counter()
    try:
        got = row.compute()
    except Exception as e:  # a crash is a mismatch, reported with its message
        got = f"error: {type(e).__name__}: {e}"
    return RowResult(row.key, row.expected, got, time.perf_counter() - t0)


def _short(v) -> str:
    s = str(v)
    return s if len(s) <= 60 else s[:57] + "..."


def report(rows: Iterable[Row], out=print) -> bool:
    """Evaluate and print each row; returns whether everything matched."""
    all_ok = True
    for row in rows:
        r = evaluate(row)
        all_ok &= r.ok
        mark = "ok  " if r.ok else "FAIL"
        line = f"{mark} {r.key:<55} expected {_short(r.expected)}"
        if not r.ok:
            line += f"  got {_short(r.computed)}"
        out(f"{line}  ({r.seconds:.2f}s)")
    out("all rows match" if all_ok else "MISMATCH")
    return all_ok
