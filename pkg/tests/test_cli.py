import json
import subprocess
import sys

import pytest

from qpk.cli import main
from qpk.modelio import FIXTURES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def test_analyze_f3(capsys):
    code, rep, _ = run(capsys, "analyze", "F3")
    assert code == 0
    res = rep["result"]
    assert res["proper"] is False and res["normal"] is False
    assert res["witnesses"]["proper"]["atom"] == [2, 3]
    assert res["witnesses"]["proper"]["point"] == 2
    assert rep["schema"] == "qpk-report/1" and rep["model"] == "leaky"


def test_refine_normal_f5_exit_2(capsys):
    code, rep, err = run(capsys, "refine", "--mode", "normal", "F5")
    assert code == 2 and rep is None
    assert "J_E" in err and "J_*" in err


def test_polytope_f6_vertices(capsys):
    code, rep, _ = run(capsys, "polytope", "--which", "JE", "--emit", "vertices", "F6")
    assert code == 0
    assert rep["result"]["vertices"] == [["0/1", "0/1", "1/1", "0/1"], ["1/2", "1/2", "0/1", "0/1"]]


def test_polytope_hrep(capsys):
    code, rep, _ = run(capsys, "polytope", "--emit", "hrep", "F3")
    assert code == 0 and len(rep["result"]["hrep"]["equalities"]) == 8


def test_member(tmp_path, capsys):
    f = tmp_path / "mu.json"
    f.write_text('["1", "0", "0", "0"]')
    code, rep, _ = run(capsys, "polytope", "--member", str(f), "F3")
    assert code == 0 and rep["result"]["member"] is False
    assert rep["result"]["violation"]["atom"] == [0, 1]


def test_refine_full(capsys):
    code, rep, _ = run(capsys, "refine", "--full", "0,1", "F3")
    assert code == 0 and rep["result"]["restriction_set"] == [0, 1]
    code, _, _ = run(capsys, "refine", "--full", "2,3", "F3")
    assert code == 2


def test_tower_f7(capsys):
    code, rep, _ = run(capsys, "tower", "F7")
    assert code == 0
    res = rep["result"]["pipeline"]
    assert res["result"]["rows"] == [["1/4"] * 4] * 4
    assert res["ok"] and rep["result"]["compatible"]["ok"]


@pytest.mark.parametrize("name", FIXTURES)
def test_oracle_fixture(capsys, name):
    code, rep, _ = run(capsys, "oracle", name)
    assert code == 0 and rep["result"]["agree"]


def test_oracle_random(capsys):
    code, rep, _ = run(capsys, "oracle", "--random", "5", "--seed", "3")
    assert code == 0 and rep["result"]["random"]["failures"] == []


def test_oracle_guard(capsys):
    code, _, err = run(capsys, "oracle", "F3", "--max-n", "3")
    assert code == 2
    code, _, err = run(capsys, "oracle", "F3", "--max-n", "9")
    assert code == 0 and "warning" in err


def test_parse_error_exit_3(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"schema": "qpk-model/1", "n": 2, "partition": [[0],[1]], "kernel": [["1/0","0"],["0","0"]]}')
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 3 and "$.kernel[0][0]" in err


def test_missing_file_exit_3(capsys):
    assert run(capsys, "analyze", "no/such/file.json")[0] == 3


def test_usage_error_exit_3(capsys):
    with pytest.raises(SystemExit) as info:
        main(["refine", "--mode", "bogus", "F3"])
    assert info.value.code == 3


def test_deterministic_output(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["tower", "F7", "--out", str(a)]) == 0
    assert main(["tower", "F7", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_no_floats_in_reports(capsys):
    for name in ("F3", "F6", "F8"):
        _, rep, _ = run(capsys, "analyze", name)

        def walk(v):
            assert not isinstance(v, float)
            if isinstance(v, dict):
                for x in v.values():
                    walk(x)
            elif isinstance(v, list):
                for x in v:
                    walk(x)

        walk(rep)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qpk", "analyze", "F6"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["normal"] is True
