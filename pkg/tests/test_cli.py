import json

import pytest

from hypertoric.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def ex23(tmp_path, capsys):
    f = tmp_path / "ex23.json"
    assert run(capsys, "example", "ex23", "-o", f)[0] == 0
    return f


@pytest.fixture
def am_file(tmp_path, capsys):
    f = tmp_path / "am.json"
    assert run(capsys, "example", "am", "--m", 2, "-o", f)[0] == 0
    return f


TWO_LINES = {"dim": 2, "hyperplanes": [{"normal": [1, 0]}, {"normal": [0, 1]}]}


def test_circuits(capsys, ex23, am_file):
    d = run_json(capsys, "circuits", "--input", ex23)
    assert [c["label"] for c in d["circuits"]] == ["{2,3}", "{1,2,4}", "{1,3,4}"]
    d = run_json(capsys, "circuits", "--input", am_file, "--m", 3)
    assert len(d["circuits"]) == 6 and all(len(c["indices"]) == 2 for c in d["circuits"])
    code, out, _ = run(capsys, "circuits", "--input", ex23, "--format", "csv")
    assert code == 0 and out.count("\n") == 4


def test_malformed_json(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"n": 2,\n  "kbasis": [[1], [-1]\n')
    code, out, err = run(capsys, "circuits", "--input", f)
    assert code == 2 and out == ""
    assert "line" in err and "column" in err


def test_schema_error(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"n": "two", "kbasis": [[1], [-1]]}))
    code, _, err = run(capsys, "circuits", "--input", f)
    assert code == 2 and err
    f.write_text(json.dumps({"n": 3, "kbasis": [[1], [-1]]}))
    assert run(capsys, "circuits", "--input", f)[0] == 2


def test_chambers(capsys, ex23, am_file):
    d = run_json(capsys, "chambers", "--which", "eta", "--input", ex23)
    assert (d["count"], d["bounded_count"]) == (10, 2)
    d = run_json(capsys, "chambers", "--which", "discriminantal", "--input", am_file)
    assert d["count"] == 6
    d = run_json(capsys, "chambers", "--which", "eta", "--input", am_file, "--lift", "1,2,3")
    assert (d["count"], d["bounded_count"]) == (4, 2)
    code, out, _ = run(capsys, "chambers", "--input", ex23, "--format", "dot")
    assert code == 0 and out.startswith("graph") and out.count(" -- ") == 14


def test_semistable_diagonal(capsys, tmp_path):
    f = tmp_path / "d.json"
    run(capsys, "example", "tpn", "--n", 4, "-o", f)
    d = run_json(capsys, "semistable", "--input", f, "--z", "1,0,0,2", "--w", "0,0,0,0")
    assert d["konno"] is True and d["halfspace"] is True
    d = run_json(capsys, "semistable", "--input", f, "--z", "0,0,0,0", "--w", "1,-1,0,0")
    assert d["konno"] is False and d["halfspace"] is False
    d = run_json(capsys, "semistable", "--input", f, "--z", "1,1,0,0", "--w", "1,0,0,0")
    assert d["moment_zero"] is False and d["halfspace"] is None
    assert "NotOnMomentFibre" in d["halfspace_error"] and d["konno"] is True


def test_semistable_sample_and_flops(capsys, ex23):
    d = run_json(capsys, "semistable", "--input", ex23, "--sample", 50, "--seed", 3)
    assert d["checked"] == 50 and d["disagreements"] == 0 and 0 < d["semistable"] < 50
    d = run_json(capsys, "flopdims", "--input", ex23)
    f = {x["circuit"]: x for x in d["flops"]}["{1,2,4}"]
    assert (f["dim_M"], f["dim_B_theta"], f["dim_B_eta_theta"], f["fibre_dim"]) == (4, 0, 2, 1)


def test_certify_am(capsys):
    d = run_json(capsys, "certify", "--am", 2)
    assert d["status"] == "PASS" and d["passed"] == d["cells"] == 6
    code, out, _ = run(capsys, "certify", "--am", 3, "--format", "text")
    assert code == 0 and out == "PASS 72/72 cells\n"


def _rep_for_two_lines(capsys, tmp_path, a, b):
    arr = tmp_path / "two.json"
    arr.write_text(json.dumps(TWO_LINES))
    sal = run_json(capsys, "salvetti", "--arrangement", arr)
    edges = [{"tail": e["tail"], "head": e["head"], "matrix": a if e["walls"] == [1] else b}
             for e in sal["edges"] if e["tail"] < e["head"]]
    rep = tmp_path / "rep.json"
    rep.write_text(json.dumps({"dimension": 2, "edges": edges}))
    return arr, rep


def test_certify_bad_rep(capsys, tmp_path):
    arr, rep = _rep_for_two_lines(capsys, tmp_path, [[1, 1], [0, 1]], [[1, 0], [1, 1]])
    code, out, _ = run(capsys, "certify", "--rep", rep, "--arrangement", arr)
    d = json.loads(out)
    assert code == 0 and d["status"] == "FAIL"
    assert d["failures"] and d["failures"][0]["gamma1_matrix"] != d["failures"][0]["gamma2_matrix"]
    arr, rep = _rep_for_two_lines(capsys, tmp_path, [[2, 0], [0, 1]], [["1/3", 0], [0, 5]])
    d = run_json(capsys, "certify", "--rep", rep, "--arrangement", arr)
    assert d["status"] == "PASS" and d["passed"] == 4


def test_braidcheck(capsys):
    d = run_json(capsys, "braidcheck", "--m", 2)
    assert d["status"] == "PASS"
    assert d["twists"][0]["matrix"] == [[-1, 1], [0, 1]]
    code, out, _ = run(capsys, "braidcheck", "--m", 2, "--format", "csv")
    assert out.splitlines() == ["twist,row,c1,c2", "1,1,-1,1", "1,2,0,1", "2,1,1,0", "2,2,1,-1"]


def test_example_outputs(capsys):
    d = run_json(capsys, "example", "am", "--m", 3)
    assert d["n"] == 4 and d["kbasis"][0] == [1, 0, 0]
    d = run_json(capsys, "example", "tpn", "--n", 4)
    assert d["kbasis"] == [[1], [1], [1], [1]]
    d = run_json(capsys, "example", "ex23")
    assert d["a"] == [[1, 0, 0, 1], [0, 1, 1, 1]]


def test_validation_error_leaves_no_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    out = tmp_path / "out.json"
    code, _, _ = run(capsys, "circuits", "--input", bad, "-o", out)
    assert code == 2 and not out.exists()
    code, _, _ = run(capsys, "semistable", "--example", "tpn", "--z", "1,2", "--w", "0,0",
                     "-o", out)
    assert code == 2 and not out.exists()


def test_missing_file_and_bad_usage(capsys, tmp_path):
    assert run(capsys, "circuits", "--input", tmp_path / "nope.json")[0] == 2
    assert run(capsys, "certify")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["twisty"])
    assert exc.value.code == 2


def test_output_file_matches_stdout(capsys, tmp_path, ex23):
    out = tmp_path / "c.json"
    run(capsys, "circuits", "--input", ex23, "-o", out)
    _, stdout, _ = run(capsys, "circuits", "--input", ex23)
    assert out.read_text() == stdout
