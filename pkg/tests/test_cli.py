import json
import subprocess
import sys

import pytest

from tameshear import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def _strip_time(report):
    report["summary"].pop("wall_time")
    return report


def test_report_schema(capsys):
    code, rep = _run(capsys, "verify-sl2", "--input", '{"pairs": [[1, 2], [2, 5]]}')
    assert code == 0
    assert set(rep) == {"task", "config", "cases", "certificates", "attachments", "summary"}
    assert rep["cases"][0]["residual"] == "0"
    assert rep["summary"]["ok"] and rep["summary"]["total"] == 2
    assert [s["kind"] for s in rep["attachments"]["shears"]][2] == "scale-by-value"


def test_deterministic_output(capsys):
    args = ["verify-dani", "--input", '{"pairs": [[1, 3], [2, 1], [5, 4]]}', "--seed", "3"]
    _, first = _run(capsys, *args)
    _, second = _run(capsys, *args)
    assert _strip_time(first) == _strip_time(second)


@pytest.mark.parametrize("suite", ["verify-sl2", "verify-dani", "verify-spectral"])
def test_jobs_match_serial(suite, capsys):
    task = json.dumps({"pairs": [[1, 3], [2, 1], [5, 4], [7, 9]], "lambda": 0.25, "mu": -0.5})
    _, serial = _run(capsys, suite, "--input", task)
    _, parallel = _run(capsys, suite, "--input", task, "--jobs", "3")
    assert _strip_time(serial) == _strip_time(parallel)


def test_input_file_and_out(tmp_path, capsys):
    task = tmp_path / "task.json"
    task.write_text(json.dumps({"pairs": [[1, 3]]}))
    out = tmp_path / "report.json"
    assert cli.main(["verify-dani", "--input", str(task), "--backend", "exact", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["summary"]["max_residual"] == 0.0


@pytest.mark.parametrize("argv", [
    ["verify-sl2", "--input", "{not json"],
    ["verify-sl2", "--input", '{"pairs": [[1, 2], [1, 3]]}'],
    ["verify-sl2", "--input", '{"pairs": [[0, 2]]}'],
    ["verify-sl2", "--input", '{"rows": []}'],
    ["verify-sl2", "--input", "/nonexistent/task.json"],
    ["verify-sl2", "--input", '{"pairs": [[1, 2]]}', "--tol", "0"],
    ["verify-sl2", "--input", '{"pairs": [[1, 2]]}', "--perturb", "5"],
    ["verify-dani", "--input", '{"pairs": [[2, 1]]}', "--backend", "exact"],
    ["verify-spectral", "--input", '{"pairs": [[1, 2]], "lambda": 1.5}'],
    ["verify-density", "--perturb", "7"],
])
def test_invalid_input_exits_2(argv, capsys):
    assert cli.main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_known_defects_do_not_fail_density(capsys):
    code, rep = _run(capsys, "verify-density", "--input", '{"order_samples": 1, "solve_samples": 3}')
    assert code == 0
    assert rep["summary"]["known_defects"] == [
        "[U,W] = 2W", "spanning determinant float value within 1e-9 of -0.130189"]


def test_selftest(capsys):
    code, rep = _run(capsys, "selftest")
    assert code == 0 and rep["summary"]["passed"] == rep["summary"]["total"] == 12


def test_double_precision_option(capsys):
    code, rep = _run(capsys, "verify-dani", "--input", '{"pairs": [[1, 3], [2, 1]]}', "--dps", "0")
    assert code == 0 and rep["config"]["dps"] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tameshear", "verify-sl2", "--input", '{"pairs": [[3, 1]]}'],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["task"] == "verify-sl2"
