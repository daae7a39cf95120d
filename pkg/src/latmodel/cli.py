"""Command-line interface: ``latmodel <command> ...``.

Exit codes: 0 success, 1 a check or reproduction mismatch, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .arrowsets import ArrowSet
from .enumeration import KINDS, EnumerationRequest, count, default_jobs, run
from .errors import LatticeError
from .lattice import Lattice
from .model import (
    af_interval,
    assemble_from_acyclic_cofibrations,
    assemble_model_structure,
    check_pair_acw,
    check_pair_afw,
    is_weak_equivalence_set,
    verify_model_structure,
)
from .reproduce import all_rows, report, select

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise _UsageError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise _UsageError(f"{path}: invalid JSON: {e}") from e


def _arrow_file(path: str | None, lat: Lattice) -> ArrowSet | None:
    if path is None:
        return None
    return io.parse_arrow_set(_read_json(path), lattice=lat)


def _emit(obj) -> None:
    sys.stdout.write(io.dumps(obj) + "\n")


# -- commands -----------------------------------------------------------------


def cmd_lattice(args) -> int:
    try:
        lat = io.parse_lattice(args.spec)
    except LatticeError as e:
        if args.action == "validate":
            print(f"invalid: {type(e).__name__}: {e}")
            return EXIT_MISMATCH
        raise
    if args.action == "validate":
        print(f"valid lattice: {lat.n} elements, {len(lat.covers)} covers, {lat.num_arrows} arrows")
        return EXIT_OK
    print(f"{lat.name or 'lattice'}: {lat.n} elements, {lat.num_arrows} non-identity arrows")
    print("elements: " + " ".join(lat.display_label(x) for x in range(lat.n)))
    print("covers: " + " ".join(f"{lat.display_label(x)}<{lat.display_label(y)}"
                                for x, y in lat.covers))
    print(f"bottom {lat.display_label(lat.bottom)}, top {lat.display_label(lat.top)}")
    return EXIT_OK


def _serialize(kind: str, obj) -> dict:
    if kind == "model":
        return io.serialize_model_structure(obj)
    return io.serialize_arrow_set(obj)


def cmd_enumerate(args) -> int:
    lat = io.parse_lattice(args.lattice)
    within = _arrow_file(args.within, lat)
    superset_of = _arrow_file(args.superset_of, lat)
    try:
        req = EnumerationRequest(lat, args.kind, within, superset_of, count_only=args.count)
    except ValueError as e:
        raise _UsageError(str(e)) from e
    if args.count:
        rep = count(req, jobs=args.jobs)
        print(json.dumps(rep.to_json(), ensure_ascii=False))
        return EXIT_MISMATCH if rep.match is False else EXIT_OK
    for obj in run(req, jobs=args.jobs):
        _emit(_serialize(req.kind, obj))
    return EXIT_OK


def cmd_check(args) -> int:
    lat = io.parse_lattice(args.lattice)
    w = _arrow_file(args.weq, lat)
    out: dict = {"weq": io.serialize_arrow_set(w)["arrows"]}
    if args.af is not None:
        t = _arrow_file(args.af, lat)
        ok = check_pair_afw(w, t)
        out["check"] = "afw"
        if ok:
            m = assemble_model_structure(w, t)
            out["model_structure"] = io.serialize_model_structure(m)
            ok = bool(verify_model_structure(m))
    elif args.ac is not None:
        k = _arrow_file(args.ac, lat)
        ok = check_pair_acw(w, k)
        out["check"] = "acw"
        if ok:
            m = assemble_from_acyclic_cofibrations(w, k)
            out["model_structure"] = io.serialize_model_structure(m)
            ok = bool(verify_model_structure(m))
    else:
        ok = is_weak_equivalence_set(w)
        out["check"] = "weak_equivalence_set"
    out["result"] = ok
    print(json.dumps(out, ensure_ascii=False))
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_interval(args) -> int:
    lat = io.parse_lattice(args.lattice)
    w = _arrow_file(args.weq, lat)
    iv = af_interval(w)
    print(json.dumps({
        "lattice": io.lattice_ref(lat),
        "weq": w.pairs(),
        "af_min": iv.af_min.pairs(),
        "af_max": iv.af_max.pairs(),
        "members": [t.pairs() for t in iv.members],
    }, ensure_ascii=False))
    return EXIT_OK


def cmd_export(args) -> int:
    lat = io.parse_lattice(args.lattice)
    if args.format == "json":
        print(json.dumps(io.lattice_to_json(lat), ensure_ascii=False))
        return EXIT_OK
    overlays = [(_arrow_file(p, lat), None) for p in args.overlay]
    sys.stdout.write(io.dot_export(lat, overlays))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rows = select(all_rows(), family=args.family, max_n=args.max_n)
    if not rows:
        raise _UsageError("no rows match the given filters")
    return EXIT_OK if report(rows) else EXIT_MISMATCH


# -- parser -------------------------------------------------------------------


def _jobs(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latmodel",
                                description="Transfer systems and model structures on finite lattices.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice", help="describe or validate a lattice")
    s.add_argument("action", choices=["show", "validate"])
    s.add_argument("spec", help='family spec ("chain:3", "grid:2,1", "diamond:4", "pentagon", '
                                '"file:PATH") or inline lattice JSON')
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("enumerate", help="stream or count objects of one kind")
    s.add_argument("--kind", required=True, choices=list(KINDS))
    s.add_argument("--lattice", required=True)
    s.add_argument("--count", action="store_true", help="print a count report instead")
    s.add_argument("--within", metavar="FILE", help="arrow-set JSON upper bound")
    s.add_argument("--superset-of", metavar="FILE", help="arrow-set JSON lower bound")
    s.add_argument("--jobs", type=_jobs, default=None,
                   help="worker processes (default $LATMODEL_JOBS or 1)")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("check", help="test a weak equivalence set or a (W, AF)/(W, AC) pair")
    s.add_argument("--lattice", required=True)
    s.add_argument("--weq", required=True, metavar="FILE")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--af", metavar="FILE")
    g.add_argument("--ac", metavar="FILE")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("interval", help="list AF(W) for a weak equivalence set")
    s.add_argument("--lattice", required=True)
    s.add_argument("--weq", required=True, metavar="FILE")
    s.set_defaults(func=cmd_interval)

    s = sub.add_parser("export", help="write a lattice as JSON or DOT")
    s.add_argument("--format", required=True, choices=["json", "dot"])
    s.add_argument("--lattice", required=True)
    s.add_argument("--overlay", action="append", default=[], metavar="FILE",
                   help="arrow-set JSON to highlight (dot only, repeatable)")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("reproduce", help="run the table of known counts and examples")
    s.add_argument("--family", choices=["chain", "grid", "diamond", "pentagon"])
    s.add_argument("--max-n", type=int)
    s.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if getattr(args, "jobs", 1) is None:
        args.jobs = default_jobs()
    try:
        return args.func(args)
    except (_UsageError, LatticeError, ValueError) as e:
        print(f"latmodel: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
