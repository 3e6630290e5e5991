import io
import json
import contextlib
from fractions import Fraction as F

import pytest

from robustlrs.cli import main


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue()


def write_problem(tmp_path, name="p.json", **overrides):
    doc = {
        "order": 2,
        "recurrence": ["1", "1"],
        "initialisation": ["0", "1"],
        "S": [["1", "0"], ["0", "1"]],
        "query": "robust-positivity",
    }
    doc.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_decide_no_with_witness(tmp_path):
    path = write_problem(tmp_path)
    code, out = run(["decide", path])
    assert code == 1
    doc = json.loads(out)
    assert doc["schema"] == "lrs-robust/1"
    assert doc["decision"] == "NO" and doc["witness"]["n"] == 0


def test_decide_yes_reports_thresholds(tmp_path):
    path = write_problem(
        tmp_path, initialisation=["3", "5"], S=[["100", "0"], ["0", "100"]]
    )
    code, out = run(["decide", path])
    assert code == 0
    doc = json.loads(out)
    assert doc["decision"] == "YES"
    assert doc["N"] is not None and doc["N1"] is not None and doc["N2"] is not None
    assert doc["prefix_checked"] == doc["N"]


def test_decide_deterministic_output(tmp_path):
    path = write_problem(tmp_path)
    out1 = run(["decide", path, "--falsify", "--seed", "42"])
    out2 = run(["decide", path, "--falsify", "--seed", "42"])
    assert out1 == out2


def test_verify_roundtrip(tmp_path):
    path = write_problem(tmp_path)
    code, out = run(["decide", path])
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    code2, out2 = run(["verify", path, str(cert)])
    assert code2 == 0
    assert json.loads(out2)["verified"] is True


def test_malformed_file_is_exit_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"order": 2, "recurrence": ["1", "1"],')
    code = main(["decide", str(bad)])
    assert code == 3
    err = capsys.readouterr().err
    assert "JSON parse error" in err and ":1:" in err


def test_dimension_mismatch_is_exit_3(tmp_path, capsys):
    path = write_problem(tmp_path, initialisation=["1"])
    assert main(["decide", path]) == 3


def test_unsupported_query_is_exit_3(tmp_path):
    path = write_problem(tmp_path, query="solve-everything")
    assert main(["decide", path]) == 3


def test_nonuniform_query_dispatch(tmp_path):
    path = write_problem(
        tmp_path,
        recurrence=["-1/2", "3/2"],
        initialisation=["3", "2"],
        S=[["100", "0"], ["0", "100"]],
        query="robust-nonuniform-ultimate",
    )
    code, out = run(["decide", path])
    assert code == 0 and json.loads(out)["decision"] == "YES"


def test_dio_cf_and_linf():
    code, out = run(["dio", "cf", "--x", "sqrt2-1", "--depth", "6"])
    assert code == 0
    assert json.loads(out)["quotients"] == [0, 2, 2, 2, 2, 2]
    code, out = run(["dio", "linf", "--t", "golden", "--n-max", "50000"])
    doc = json.loads(out)
    assert code == 0 and abs(doc["approx"] - 0.4472135955) < 0.01


def test_dio_linf_csv(tmp_path):
    csv = tmp_path / "records.csv"
    code, out = run(
        ["dio", "linf", "--t", "golden", "--n-max", "20000", "--csv", str(csv)]
    )
    assert code == 0
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "n,n_dist" and len(lines) > 1


def test_dio_ostrowski():
    code, out = run(["dio", "ostrowski", "--y", "1/3", "--depth", "25"])
    doc = json.loads(out)
    assert code == 0 and doc["legal"] is True
    assert abs(doc["value_approx"] - 1 / 3) <= doc["tail_bound"] + 1e-12


def test_dio_target():
    code, out = run(
        ["dio", "target", "--x", "sqrt2-1", "--parity", "odd", "--count", "5"]
    )
    doc = json.loads(out)
    assert code == 0 and doc["verified"] is True and len(doc["indices"]) == 5


def test_reduce_build_feeds_decide(tmp_path):
    out_path = tmp_path / "hard.json"
    code, _ = run(
        [
            "reduce",
            "build",
            "--cos-theta",
            "3/5",
            "--cos-phi",
            "4/5",
            "-r",
            "1/10",
            "--out",
            str(out_path),
        ]
    )
    assert code == 0
    code2, out2 = run(["decide", str(out_path)])
    assert code2 == 2  # the hardness envelope: UNSUPPORTED by design
    assert json.loads(out2)["decision"] == "UNSUPPORTED"


def test_reduce_scan():
    code, out = run(
        [
            "reduce",
            "scan",
            "--cos-theta",
            "3/5",
            "--cos-phi",
            "4/5",
            "-r",
            "1/10",
            "--horizon",
            "4000",
        ]
    )
    doc = json.loads(out)
    assert code == 0
    assert "implied_bound" in doc and "heuristic" in doc["oracle"]
