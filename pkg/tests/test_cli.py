import json
import subprocess
import sys

import pytest

from scring.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, err = call(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


def test_close_json(capsys):
    code, rep, _ = report(capsys, "close", "bundled:toy")
    assert code == 0
    assert rep["schema"] == "sck-report/1" and rep["command"] == "close"
    assert rep["result"]["members"] == 20 and rep["result"]["saturated"]


def test_pieces(capsys):
    code, rep, _ = report(capsys, "pieces", "bundled:overlap")
    assert code == 0
    assert rep["result"]["pieces"] == ["1", "x", "X", "y", "Y", "xy", "XY", "yx", "YX"]


def test_lambda_and_prime(capsys):
    _, rep, _ = report(capsys, "lambda", "bundled:overlap", "--word", "xyxy")
    assert rep["result"]["value"] == 2
    _, rep, _ = report(capsys, "lambda", "bundled:c50", "--word", "xyz", "--prime")
    assert rep["result"]["value"] == 3


def test_chart_and_mincov(capsys):
    code, rep, _ = report(capsys, "chart", "bundled:overlap", "--word", "xyxYxyyxyxY")
    assert code == 0 and "nvirt_proxy" in rep["result"]
    code, rep, _ = report(capsys, "mincov", "bundled:overlap", "--word", "xyxYxyyxyxY")
    assert code == 0 and rep["result"]["min_cov"] >= 1


def test_check_exit_codes(capsys):
    code, rep, _ = report(capsys, "check", "bundled:sc_violation")
    assert code == 2 and rep["result"]["verdict"] == "violated"
    assert rep["result"]["witness"]["measures"] == {"Y": 1}
    code, rep, _ = report(capsys, "check", "bundled:toy", "--axiom", "monrel")
    assert code == 0
    code, rep, _ = report(capsys, "check", "bundled:c50", "--axiom", "emptychart", "--prime")
    assert code == 0


def test_check_inconclusive_on_cap(capsys):
    code, _, _ = report(capsys, "check", "bundled:overlap", "--tau", "10", "--cap", "1")
    assert code == 3


def test_freepair_trace(capsys):
    code, rep, _ = report(capsys, "freepair", "bundled:monfree", "--emit", "trace")
    assert code == 0
    assert [t["step"] for t in rep["result"]["trace"]][:2] == ["non_mon_word", "power"]


def test_witness_needs_tau_15(capsys):
    code, _, err = call(capsys, "witness", "bundled:toy")
    assert code == 1 and "15" in err
    code, _, err = call(capsys, "witness", "bundled:c50", "--gammas", "10,180,270,360,450,540")
    assert code == 1


@pytest.mark.parametrize("argv,needle", [
    (("lambda", "bundled:toy", "--word", "xqz"), "column 2"),
    (("close", "bundled:toy", "--tau", "5"), "tau"),
    (("close", "bundled:missing"), "no bundled example"),
    (("close", "bundled:c7", "--bound", "3"), "shorter than a seed"),
    (("close", "bundled:toy", "--format", "xml"), "invalid choice"),
    (("frobnicate",), "invalid choice"),
])
def test_usage_errors_exit_1(capsys, argv, needle):
    try:
        code = run(list(argv))
    except SystemExit as e:  # argparse rejects before run() returns
        code = e.code
    assert code == 1 and needle in capsys.readouterr().err


def test_closure_overflow_exit_3(capsys):
    code, _, err = call(capsys, "close", "bundled:c7", "--cap", "10")
    assert code == 3 and "exceeded" in err


def test_text_output(capsys):
    code, out, _ = call(capsys, "close", "bundled:toy")
    assert code == 0 and "saturated: yes" in out


def test_examples_export(capsys, tmp_path):
    code, out, _ = call(capsys, "examples", "--export", str(tmp_path))
    assert code == 0 and "bundled:c50" in out
    assert (tmp_path / "c50.scr").exists()
    code, rep, _ = report(capsys, "close", str(tmp_path / "toy.scr"))
    assert code == 0 and rep["result"]["members"] == 20


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "scring.cli", "close", "bundled:toy"], capture_output=True,
                       text=True)
    assert r.returncode == 0 and "members: 20" in r.stdout
