import csv
import io
import json
import subprocess
import sys

import pytest

from qcover.cli import main
from qcover.qcd import qcd_read, qcd_write
from qcover.reference_tables import REFERENCE
from qcover.subspace import prefix_space
from qcover.design import CoveringDesign


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_then_verify(tmp_path, capsys):
    path = tmp_path / "d.qcd"
    code, out, _ = run(capsys, "construct", "--method", "b396", "-o", str(path))
    assert code == 0 and "396 blocks" in out
    assert len(qcd_read(path)) == 396
    code, out, _ = run(capsys, "verify", str(path), "--histogram")
    assert code == 0
    assert "uncovered: 0" in out and "total r-subspaces: 2667" in out


def test_verify_truncated_file(tmp_path, capsys):
    path = tmp_path / "d.qcd"
    run(capsys, "construct", "--method", "b396", "-o", str(path))
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-10]) + "\n")
    code, out, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "first uncovered" in out
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["error"] == "verification" and payload["exit"] == 2


def test_verify_filter(tmp_path, capsys):
    path = tmp_path / "g.qcd"
    assert run(capsys, "construct", "--method", "g", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "verify", str(path), "--filter", "v0-dim=2")
    assert code == 0 and "{4: 2100}" in out
    code, _, err = run(capsys, "verify", str(path), "--filter", "v1=2")
    assert code == 1 and json.loads(err)["error"] == "usage"


def test_bounds_n5_text(capsys):
    code, out, _ = run(capsys, "bounds", "--n-max", "5", "--n-min", "5", "--format", "text")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "Bounds on C_2(5,k,r)"
    cells = [r.split()[1:] for r in rows[2:]]
    for r, row in zip(range(4, 0, -1), cells):
        for k, text in zip(range(4, 0, -1), row):
            ref = REFERENCE[5][(k, r)]
            # value agreement cell by cell; (5,3,2) breaks a tie differently
            assert text.startswith(ref.lower_marker + str(ref.lower))
            assert text.rstrip("apqnmrcfgiℓ").endswith(str(ref.upper))


@pytest.mark.parametrize("fmt", ["csv", "json", "markdown"])
def test_bounds_formats(capsys, fmt):
    code, out, _ = run(capsys, "bounds", "--n-max", "6", "--format", fmt)
    assert code == 0
    if fmt == "csv":
        rows = list(csv.DictReader(io.StringIO(out)))
        cell = next(r for r in rows if (r["n"], r["k"], r["r"]) == ("6", "3", "2"))
        assert (cell["lower"], cell["upper"], cell["upper_marker"]) == ("99", "106", "c")
    elif fmt == "json":
        data = json.loads(out)
        assert list(data[0]) == ["n", "k", "r", "lower", "lower_marker", "upper", "upper_marker"]
        assert len(data) == sum(n * (n - 1) // 2 for n in range(2, 7))
    else:
        assert "| r \\ k |" in out and "s99-106c" in out


def test_fixture_check_small(capsys):
    code, _, err = run(capsys, "bounds", "--n-max", "8", "--format", "csv", "--fixture-check")
    assert code == 0
    assert "marker differs at C_2(5, 3, 2)" in err


def test_fixture_check_reports_mismatches(capsys):
    code, _, err = run(capsys, "bounds", "--n-max", "10", "--format", "csv", "--fixture-check")
    assert code == 2
    payload = json.loads(err.strip().splitlines()[-1])
    assert {tuple(m["cell"]) for m in payload["mismatches"]} == {
        (9, 7, 5), (10, 8, 6), (10, 7, 5), (10, 6, 5), (10, 5, 4)}


def test_stats_and_density(tmp_path, capsys):
    path = tmp_path / "c.qcd"
    assert run(capsys, "construct", "--method", "c", "--k", "3", "-o", str(path))[0] == 0
    upath = tmp_path / "u.qcd"
    qcd_write(CoveringDesign.from_subspaces(6, 5, 0, [prefix_space(6, 1)]), upath)
    code, out, _ = run(capsys, "stats", str(path), "--inside", str(upath))
    assert code == 0 and "annotation U: dim 5, 18 blocks inside" in out
    assert f"inside {upath}: 18" in out
    code, out, _ = run(capsys, "density", str(path))
    assert out.splitlines()[0] == "106/93"


@pytest.mark.parametrize("argv,code", [
    (["construct", "--method", "nope"], 1),
    (["construct", "--method", "p", "--n", "5"], 1),
    (["construct", "--method", "n", "--v", "3", "--m", "1"], 1),
    (["construct", "--method", "table", "--n", "6", "--k", "4", "--r", "3"], 3),
    (["bounds", "--n-max", "40"], 1),
    (["frobnicate"], 1),
    (["verify", "/nonexistent.qcd"], 1),
])
def test_error_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    payload = json.loads(err.strip().splitlines()[-1])
    assert payload["exit"] == code and payload["message"]


@pytest.mark.parametrize("method,extra,size", [
    ("p", ["--n", "9", "--k", "2"], 171),
    ("q", ["--n", "6", "--r", "4"], 31),
    ("n", ["--v", "3", "--m", "2", "--delta", "1"], 21),
    ("i", ["--n", "9", "--k", "4"], 1325),
    ("l", ["--n", "8", "--k", "5", "--r", "2"], 93),
    ("r", ["--n", "7", "--k", "4", "--r", "2"], 93),
    ("chain", ["--levels", "2"], 6508),
    ("b7-5-3", [], 99),
    ("table", ["--n", "9", "--k", "3", "--r", "2"], 6508),
    ("a", ["--n", "5", "--k", "3", "--r", "3"], 155),
])
def test_construct_methods(tmp_path, capsys, method, extra, size):
    path = tmp_path / "x.qcd"
    code, out, _ = run(capsys, "construct", "--method", method, *extra, "-o", str(path))
    assert code == 0, out
    assert len(qcd_read(path)) == size


def test_b45230(tmp_path, capsys):
    path = tmp_path / "big.qcd"
    code, out, _ = run(capsys, "construct", "--method", "b45230", "-o", str(path))
    assert code == 0 and "45230 blocks" in out
    code, _, err = run(capsys, "construct", "--method", "b45230", "--no-refine")
    assert code == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qcover", "bounds", "--n-max", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "Bounds on C_2(4,k,r)" in proc.stdout


def test_fallback_exit_code(tmp_path, capsys, monkeypatch):
    from qcover import constructions

    real = constructions.cover_10_5_3
    monkeypatch.setattr(constructions, "cover_10_5_3",
                        lambda refine=True: real(refine=False).with_(provenance="i:fallback"))
    path = tmp_path / "fb.qcd"
    code, out, err = run(capsys, "construct", "--method", "b45230", "-o", str(path))
    assert code == 4
    assert json.loads(err.strip())["error"] == "ambiguity"
    assert len(qcd_read(path)) == 45231


def test_outputs_are_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.qcd", tmp_path / "b.qcd"
    run(capsys, "construct", "--method", "g", "-o", str(a))
    run(capsys, "construct", "--method", "g", "-o", str(b))
    assert a.read_bytes() == b.read_bytes()
