import json
import subprocess
import sys

import pytest

from flowpoly.cli import main
from flowpoly.goldens import EULER, SPRINGER

EX_JSON = '{"vertices": 5, "edges": [[1,3],[1,4],[2,3],[3,5],[3,5],[4,5]]}'
EX_MATRIX_TEXT = "110000\n111000\n010110\n000111\n"


@pytest.fixture
def files(tmp_path):
    g = tmp_path / "g.json"
    g.write_text(EX_JSON)
    m = tmp_path / "m.txt"
    m.write_text(EX_MATRIX_TEXT)
    return tmp_path, str(g), str(m)


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_convert_both_ways(capsys, files):
    _, g, m = files
    code, out, _ = run(capsys, "convert", "--matrix", m, "--to", "graph")
    assert code == 0
    assert json.loads(out) == json.loads(EX_JSON)
    code, out, _ = run(capsys, "convert", "--graph", g, "--to", "matrix")
    assert code == 0 and out == EX_MATRIX_TEXT


def test_convert_intervals(capsys, files):
    tmp, _, _ = files
    p = tmp / "s.json"
    p.write_text('{"intervals": [[1,2],[2,4],[3,6],[5,7]]}')
    code, out, _ = run(capsys, "convert", "--intervals", str(p), "--to", "graph")
    assert code == 0
    assert json.loads(out)["edges"] == [[1, 2], [1, 3], [2, 4], [2, 4], [3, 5], [3, 5], [4, 5]]


def test_kpf_and_listing(capsys, files):
    _, g, _ = files
    code, out, _ = run(capsys, "kpf", "--graph", g, "--netflow", "0,0,2,1,-3")
    assert (code, out) == (0, "16\n")
    code, out, _ = run(capsys, "kpf", "--graph", g, "--netflow", "0,0,2,1,-3", "--list")
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 16 and rows == sorted(rows, key=lambda r: list(map(int, r)))


def test_volume_vertices_euler_springer(capsys, files):
    _, g, _ = files
    assert run(capsys, "volume", "--graph", g)[1] == "16\n"
    assert run(capsys, "volume", "--graph", g, "--method", "compact")[1] == "16\n"
    assert run(capsys, "volume", "--graph", g, "--netflow", "2,0,0,0,-2")[1] == str(16 * 2 ** 6) + "\n"
    assert run(capsys, "vertices", "--k", "2", "--d", "5")[1] == "13\n"
    assert run(capsys, "euler", "--k", "3", "--d", "7")[1] == "47\n"
    assert run(capsys, "springer", "--k", "2", "--dmax", "5")[1].split() == ["1", "1", "3", "11", "57"]


def test_orders_and_polynomials(capsys, files):
    _, g, _ = files
    code, out, _ = run(capsys, "orders", "--graph", g, "--mode", "upper", "--stats", "descents")
    assert code == 0
    lines = out.splitlines()
    assert sum(1 for line in lines if line.startswith("0,")) == 16
    assert any("1 + 9z + 6z^2" in line for line in lines)
    code, out, _ = run(capsys, "hstar", "--graph", g)
    assert "1 + 7z + 7z^2 + z^3" in out
    code, out, _ = run(capsys, "conjecture", "--graph", g, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["upper"] == ["1", "9", "6"] and data["passed"]


def test_entringer_formats(capsys):
    code, tsv, _ = run(capsys, "entringer", "--k", "3", "--N", "3", "--format", "tsv")
    assert code == 0
    assert tsv.splitlines()[0] == "s1\ts2\ts3\tE"
    assert "3\t0\t0\t1" in tsv.splitlines()
    code, js, _ = run(capsys, "entringer", "--k", "3", "--N", "5", "--format", "json")
    entries = {tuple(e["s"]): int(e["value"]) for e in json.loads(js)["entries"]}
    assert entries[(2, 1, 2)] == 3 and entries[(5, 0, 0)] == 5


def test_tables_reproduce_goldens(capsys):
    code, out, err = run(capsys, "tables", "--which", "all", "--format", "json", "--seed-check")
    assert code == 0, err
    data = json.loads(out)
    for k in range(1, 5):
        assert [int(x) for x in data["euler"][str(k)]] == EULER[k]
        assert [int(x) for x in data["springer"][str(k)]] == SPRINGER[k]
    assert "seed-check" in err


def test_tables_text_is_byte_stable(capsys, files, tmp_path):
    first = run(capsys, "tables", "--which", "euler")[1]
    second = run(capsys, "tables", "--which", "euler")[1]
    assert first == second
    assert "1385" in first.split()
    target = tmp_path / "t.txt"
    assert run(capsys, "tables", "--which", "euler", "--out", str(target))[1] == ""
    assert target.read_text() == first


def test_sweep_output_and_thread_stability(capsys, monkeypatch):
    outs = []
    for t in ("1", "2"):
        monkeypatch.setenv("FLOWPOLY_THREADS", t)
        code, out, _ = run(capsys, "sweep", "--check", "conjecture", "--max-vertices", "4", "--simple")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["failed"] == 0


def test_exit_codes(capsys, files, tmp_path):
    _, g, _ = files
    assert run(capsys, "sweep", "--check", "bogus")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "kpf", "--graph", g, "--netflow", "1,2")[0] == 2
    code, _, err = run(capsys, "kpf", "--graph", str(tmp_path / "missing.json"), "--netflow", "0")
    assert code == 2 and "missing.json" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": 3, "edges": [[2, 1]]}')
    code, _, err = run(capsys, "volume", "--graph", str(bad))
    assert code == 2 and "bad.json" in err and "edge 0" in err and "tail < head" in err
    m = tmp_path / "bad.txt"
    m.write_text("10\n02\n")
    code, _, err = run(capsys, "convert", "--matrix", str(m), "--to", "graph")
    assert code == 2 and "bad.txt" in err and "line 2" in err


def test_check_failure_exit_code(capsys, monkeypatch):
    from flowpoly import families

    spec = families.CHECKS["volume-triple-agreement"]
    monkeypatch.setitem(families.CHECKS, "forced",
                        families.CheckSpec(lambda g: (False, {}), spec.family, spec.defaults))
    code, out, _ = run(capsys, "sweep", "--check", "forced", "--max-vertices", "3", "--threads", "1")
    assert code == 1
    assert json.loads(out)["failed"] > 0


def test_cap_error_exit_code(capsys, files, monkeypatch):
    _, g, _ = files
    monkeypatch.setenv("FLOWPOLY_ENUM_CAP", "3")
    code, _, err = run(capsys, "kpf", "--graph", g, "--netflow", "0,0,2,1,-3", "--list")
    assert code == 2 and "cap" in err


def test_console_script_entry_point(files):
    _, g, _ = files
    res = subprocess.run([sys.executable, "-m", "flowpoly.cli", "volume", "--graph", g],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "16\n"


def test_sweep_multigraph_flag(capsys):
    code, out, _ = run(capsys, "sweep", "--check", "conjecture", "--max-vertices", "4", "--max-nonslack", "3",
                       "--multigraph", "--format", "tsv", "--threads", "1")
    assert code == 0 and "total\t108\n" in out and "failed\t0\n" in out
    assert run(capsys, "sweep", "--check", "conjecture", "--max-vertices", "4", "--multigraph")[0] == 2
    assert run(capsys, "sweep", "--check", "conjecture", "--max-vertices", "4", "--simple", "--multigraph")[0] == 2
