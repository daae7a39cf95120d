"""Reading and writing lattices, arrow sets and model structures; DOT export."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from . import lattice as lat_mod
from .arrowsets import ArrowSet, _same_lattice
from .errors import MixedLattices, NotComparable, ParseError, UnknownElement
from .lattice import Lattice
from .lifting import WFS
from .model import CLASS_NAMES, ModelStructure

FAMILIES = {"chain": 1, "grid": 2, "diamond": 1, "pentagon": 0, "file": None}


@dataclass(frozen=True)
class NamedFamilySpec:
    family: str
    params: tuple[int, ...] | str = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParseError(f"unknown lattice family {self.family!r}")
        arity = FAMILIES[self.family]
        if arity is None:
            if not isinstance(self.params, str) or not self.params:
                raise ParseError("file: needs a path")
        elif self.family == "grid":
            # grid takes two or more dimensions
            if isinstance(self.params, str) or len(self.params) < 2:
                raise ParseError("grid needs at least two dimensions, e.g. grid:2,1")
        elif isinstance(self.params, str) or len(self.params) != arity:
            raise ParseError(f"{self.family} takes {arity} parameter(s), got {self.params!r}")

    @classmethod
    def parse(cls, text: str) -> "NamedFamilySpec":
        text = text.strip()
        fam, sep, rest = text.partition(":")
        if fam == "file":
            return cls("file", rest)
        if fam not in FAMILIES:
            raise ParseError(f"unknown lattice family {fam!r} in {text!r}")
        if not sep:
            return cls(fam, ())
        if not re.fullmatch(r"\d+(,\d+)*", rest):
            raise ParseError(f"bad parameters {rest!r} in {text!r}")
        return cls(fam, tuple(int(p) for p in rest.split(",")))

    def __str__(self) -> str:
        if self.family == "file":
            return f"file:{self.params}"
        if not self.params:
            return self.family
        return f"{self.family}:" + ",".join(map(str, self.params))

    def build(self) -> Lattice:
        if self.family == "chain":
            return lat_mod.chain(self.params[0])
        if self.family == "grid":
            return lat_mod.grid(*self.params)
        if self.family == "diamond":
            if self.params[0] < 1:
                raise ParseError("diamond needs n >= 1")
            return lat_mod.diamond(self.params[0])
        if self.family == "pentagon":
            return lat_mod.pentagon()
        path = Path(self.params)
        try:
            data = json.loads(path.read_text())
        except OSError as e:
            raise ParseError(f"cannot read {path}: {e}") from e
        except json.JSONDecodeError as e:
            raise ParseError(f"{path} is not valid JSON: {e}") from e
        return lattice_from_json(data, name=None)


def lattice_from_json(data: Any, name: str | None = None) -> Lattice:
    """``{"labels": [...], "covers": [[lo, hi], ...]}`` to a validated lattice."""
    if not isinstance(data, dict) or set(data) != {"labels", "covers"}:
        raise ParseError('lattice JSON must be an object with exactly "labels" and "covers"')
    labels, covers = data["labels"], data["covers"]
    if not isinstance(labels, list) or not isinstance(covers, list):
        raise ParseError('"labels" and "covers" must be lists')
    pairs = []
    for c in covers:
        if not (isinstance(c, list) and len(c) == 2 and all(isinstance(v, int) for v in c)):
            raise ParseError(f"cover {c!r} is not a pair of integers")
        pairs.append(tuple(c))
    return lat_mod.from_cover_relations(labels, pairs, name=name)


def lattice_to_json(lat: Lattice) -> dict:
    return {"labels": list(lat.labels), "covers": [list(c) for c in lat.covers]}


def parse_lattice(spec: str | NamedFamilySpec | dict) -> Lattice:
    """A lattice from a family string (``"grid:2,1"``), a spec object, or lattice JSON."""
    if isinstance(spec, NamedFamilySpec):
        return spec.build()
    if isinstance(spec, dict):
        return lattice_from_json(spec)
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("{"):
            try:
                return lattice_from_json(json.loads(s))
            except json.JSONDecodeError as e:
                raise ParseError(f"bad lattice JSON: {e}") from e
        return NamedFamilySpec.parse(s).build()
    raise ParseError(f"cannot interpret {spec!r} as a lattice")


def lattice_ref(lat: Lattice) -> str | dict:
    """The family string when the lattice came from one, else its full JSON."""
    if lat.name:
        try:
            if parse_lattice(lat.name) == lat:
                return lat.name
        except Exception:
            pass
    return lattice_to_json(lat)


def _arrow_pairs(lat: Lattice, pairs: Sequence) -> int:
    if not isinstance(pairs, list):
        raise ParseError("arrow list must be a JSON array")
    mask = 0
    for p in pairs:
        if not (isinstance(p, list) and len(p) == 2 and all(isinstance(v, int) for v in p)):
            raise ParseError(f"arrow {p!r} is not a pair of element indices")
        x, y = p
        if not (0 <= x < lat.n and 0 <= y < lat.n):
            raise UnknownElement(f"arrow {p!r} references an element outside 0..{lat.n - 1}")
        if not lat.leq(x, y):
            raise NotComparable(lat.labels[x], lat.labels[y])
        if x != y:
            mask |= 1 << lat.arrow_id[x][y]
    return mask


def _resolve(data: dict, lattice: Lattice | None) -> Lattice:
    if "lattice" not in data:
        if lattice is None:
            raise ParseError('missing "lattice"')
        return lattice
    lat = parse_lattice(data["lattice"])
    if lattice is not None:
        if lat != lattice:
            raise MixedLattices(f"document is over {lat!r}, expected {lattice!r}")
        return lattice
    return lat


def parse_arrow_set(data: str | dict, lattice: Lattice | None = None) -> ArrowSet:
    """``{"lattice": ..., "arrows": [[src, tgt], ...]}``; ``lattice`` overrides or checks the reference."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad arrow-set JSON: {e}") from e
    if not isinstance(data, dict) or "arrows" not in data:
        raise ParseError('arrow-set JSON needs an "arrows" list')
    lat = _resolve(data, lattice)
    return ArrowSet(lat, _arrow_pairs(lat, data["arrows"]))


def serialize_arrow_set(a: ArrowSet) -> dict:
    return {"lattice": lattice_ref(a.lattice), "arrows": [list(p) for p in a.pairs()]}


def serialize_wfs(w: WFS) -> dict:
    return {"lattice": lattice_ref(w.lattice), "left": [list(p) for p in w.left.pairs()],
            "right": [list(p) for p in w.right.pairs()]}


def parse_wfs(data: dict, lattice: Lattice | None = None) -> WFS:
    lat = _resolve(data, lattice)
    return WFS(ArrowSet(lat, _arrow_pairs(lat, data["left"])),
               ArrowSet(lat, _arrow_pairs(lat, data["right"])))


def serialize_model_structure(m: ModelStructure) -> dict:
    out: dict[str, Any] = {"lattice": lattice_ref(m.lattice)}
    for key, cls in m.classes().items():
        out[key] = [list(p) for p in cls.pairs()]
    return out


def parse_model_structure(data: str | dict, lattice: Lattice | None = None) -> ModelStructure:
    if isinstance(data, str):
        data = json.loads(data)
    lat = _resolve(data, lattice)
    missing = [k for k in CLASS_NAMES if k not in data]
    if missing:
        raise ParseError(f"model structure JSON lacks {missing}")
    sets = {k: ArrowSet(lat, _arrow_pairs(lat, data[k])) for k in CLASS_NAMES}
    return ModelStructure(weq=sets["W"], acof=sets["AC"], cof=sets["C"],
                          afib=sets["AF"], fib=sets["F"])


def dumps(obj) -> str:
    """Compact, key-ordered single-line JSON (stable across runs)."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


# -- DOT ----------------------------------------------------------------------

DEFAULT_STYLES = ("color=blue", "color=red, style=dashed", "color=darkgreen, style=dotted",
                  "color=orange", "color=purple")


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def dot_export(lattice: Lattice, overlays: Sequence[tuple[ArrowSet, str | None]] = ()) -> str:
    """Hasse diagram in DOT with gray cover edges plus one styled edge per overlay arrow.

    Each overlay is ``(arrow_set, style)``; a ``None`` style picks from a fixed
    palette. Output depends only on the inputs, never on hashing or timing.
    """
    for s, _ in overlays:
        if s.lattice != lattice:
            raise MixedLattices(f"overlay over {s.lattice!r}, expected {lattice!r}")
    lines = ["digraph lattice {", "  rankdir=BT;", '  node [shape=plaintext];']
    for x in range(lattice.n):
        lines.append(f"  n{x} [label={_dot_id(lattice.display_label(x))}];")
    for x, y in lattice.covers:
        lines.append(f"  n{x} -> n{y} [color=gray, arrowhead=none];")
    for k, (s, style) in enumerate(overlays):
        style = style or DEFAULT_STYLES[k % len(DEFAULT_STYLES)]
        for x, y in s.pairs():
            lines.append(f"  n{x} -> n{y} [{style}, constraint=false];")
    lines.append("}")
    return "\n".join(lines) + "\n"
