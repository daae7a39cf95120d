import json
import subprocess
import sys

import pytest

from latmodel import cli, lifting
from latmodel import lattice as L
from latmodel.arrowsets import ArrowSet
from latmodel.io import serialize_arrow_set
from latmodel.reproduce import all_rows, arrows, evaluate, select


def _run(*args, env=None):
    return subprocess.run([sys.executable, "-m", "latmodel", *args], capture_output=True,
                          text=True, env=env)


def _write(tmp_path, name, s: ArrowSet):
    p = tmp_path / name
    p.write_text(json.dumps(serialize_arrow_set(s)))
    return str(p)


def test_lattice_show_and_validate(capsys):
    assert cli.main(["lattice", "show", "pentagon"]) == 0
    assert "5 elements" in capsys.readouterr().out
    assert cli.main(["lattice", "validate", "grid:2,1"]) == 0
    bad = '{"labels": ["x", "y", "z", "w"], "covers": [[0, 2], [1, 2], [0, 3], [1, 3]]}'
    assert cli.main(["lattice", "validate", bad]) == 1
    assert "NotALattice" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert cli.main(["enumerate", "--kind", "bogus", "--lattice", "chain:2"]) == 2
    assert cli.main(["enumerate", "--kind", "transfer", "--lattice", "cube:3"]) == 2
    assert cli.main(["enumerate", "--kind", "transfer", "--lattice", "chain:2", "--jobs", "0"]) == 2
    assert cli.main([]) == 2
    capsys.readouterr()


def test_enumerate_stream_and_count(capsys):
    assert cli.main(["enumerate", "--kind", "transfer", "--lattice", "chain:2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 5 and all(json.loads(x)["lattice"] == "chain:2" for x in lines)
    assert cli.main(["enumerate", "--kind", "model", "--lattice", "grid:1,1", "--count"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["counts"] == {"model": 23} and rep["match"] is True


def test_enumerate_bounds(tmp_path, capsys):
    g = L.grid(2, 1)
    hi = _write(tmp_path, "hi.json", arrows(g, "(0,0)>(0,1) (1,0)>(1,1) (2,0)>(2,1)"))
    # verticals containing the left one, closed under pullback: v0, v0+v1, v0+v1+v2
    lo = _write(tmp_path, "lo.json", arrows(g, "(0,0)>(0,1)"))
    assert cli.main(["enumerate", "--kind", "transfer", "--lattice", "grid:2,1",
                     "--within", hi, "--superset-of", lo, "--count"]) == 0
    assert json.loads(capsys.readouterr().out)["counts"] == {"transfer": 3}


def test_check_and_interval(tmp_path, capsys):
    g = L.grid(2, 1)
    w = _write(tmp_path, "w.json", arrows(g, "(1,0)>(1,1)"))
    assert cli.main(["check", "--lattice", "grid:2,1", "--weq", w]) == 1
    assert json.loads(capsys.readouterr().out)["result"] is False
    sq = L.grid(1, 1)
    w = _write(tmp_path, "w2.json", ArrowSet.complete(sq))
    t = _write(tmp_path, "t.json", arrows(sq, "(0,0)>(1,0) (0,1)>(1,1)"))
    assert cli.main(["check", "--lattice", "grid:1,1", "--weq", w, "--af", t]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["result"] is True and set(out["model_structure"]) >= {"W", "AF"}
    assert cli.main(["check", "--lattice", "grid:1,1", "--weq", w, "--ac", t]) == 0
    capsys.readouterr()
    g22 = L.grid(2, 2)
    w = _write(tmp_path, "w3.json", arrows(g22, "(0,0)>(0,1) (0,1)>(0,2) (0,0)>(0,2) (1,1)>(1,2) "
                                                "(2,0)>(2,1) (2,1)>(2,2) (2,0)>(2,2)"))
    assert cli.main(["interval", "--lattice", "grid:2,2", "--weq", w]) == 0
    assert len(json.loads(capsys.readouterr().out)["members"]) == 4


def test_export(tmp_path, capsys):
    assert cli.main(["export", "--format", "json", "--lattice", "pentagon"]) == 0
    assert json.loads(capsys.readouterr().out)["labels"] == ["0", "a", "b", "c", "1"]
    o = _write(tmp_path, "o.json", arrows(L.pentagon(), "0>a a>c"))
    assert cli.main(["export", "--format", "dot", "--lattice", "pentagon", "--overlay", o]) == 0
    text = capsys.readouterr().out
    assert text.startswith("digraph") and text.count("constraint=false") == 2


def test_reproduce_filters(capsys):
    assert cli.main(["reproduce", "--family", "diamond", "--max-n", "4"]) == 0
    out = capsys.readouterr().out
    assert "diamond:4" in out and "diamond:5" not in out and "chain" not in out


def test_reproduce_catches_broken_extension(monkeypatch, capsys):
    real = lifting.downward_extension_mask

    def off_by_one(lat, mask):
        # drop the last arrow of every downward extension
        out = real(lat, mask)
        return out & ~(1 << (out.bit_length() - 1)) if out else out

    monkeypatch.setattr(lifting, "downward_extension_mask", off_by_one)
    row = next(r for r in all_rows() if r.key == "grid:1,1 model structures")
    assert not evaluate(row).ok
    assert cli.main(["reproduce", "--family", "grid", "--max-n", "1"]) == 1
    capsys.readouterr()


def test_select():
    rows = all_rows()
    assert select(rows, family="pentagon") and all(r.family == "pentagon" for r in select(rows, family="pentagon"))


@pytest.mark.parametrize("jobs", ["8"])
def test_jobs_output_is_byte_identical(jobs):
    base = ["enumerate", "--kind", "model", "--lattice", "grid:1,1"]
    one = _run(*base, "--jobs", "1")
    many = _run(*base, "--jobs", jobs)
    assert one.returncode == many.returncode == 0
    assert one.stdout == many.stdout and one.stdout.count("\n") == 23


def test_jobs_from_environment():
    import os

    env = dict(os.environ, LATMODEL_JOBS="3")
    r = _run("enumerate", "--kind", "transfer", "--lattice", "diamond:5", env=env)
    assert r.returncode == 0 and r.stdout == _run("enumerate", "--kind", "transfer",
                                                  "--lattice", "diamond:5").stdout
