import json
import subprocess
import sys
from pathlib import Path

import pytest

from weakarith.cli import main

EXPECTED_EXIT = {
    "chain_bezout_s23.json": 0,
    "localized_ring_s23_q5.json": 0,
    "open_induction_obstructions.json": 0,
    "expect_x_divisible_by_5.json": 1,
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_times(report):
    for step in report["steps"]:
        step.pop("wall_time", None)
    report.pop("wall_time", None)
    return report


@pytest.mark.parametrize("name", sorted(EXPECTED_EXIT))
def test_shipped_scenarios(capsys, scenarios_dir, name):
    code, out, _ = run(capsys, "run", str(scenarios_dir / name))
    report = json.loads(out)
    assert code == EXPECTED_EXIT[name]
    assert report["summary"]["ok"] == (code == 0)
    assert all(r["outcome"]["outcome"] != "skipped" for r in report["steps"])


def test_reports_are_deterministic(capsys, scenarios_dir):
    path = str(scenarios_dir / "chain_bezout_s23.json")
    first = strip_times(json.loads(run(capsys, "run", path)[1]))
    second = strip_times(json.loads(run(capsys, "run", path)[1]))
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_entry_point_subprocess(scenarios_dir, tmp_path):
    out = tmp_path / "report.json"
    proc = subprocess.run(
        [sys.executable, "-m", "weakarith.cli", "run", str(scenarios_dir / "expect_x_divisible_by_5.json"),
         "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 1
    step = json.loads(out.read_text())["steps"][0]
    assert step["outcome"]["outcome"] == "refuted" and not step["passed"]


def test_input_errors_exit_2(capsys, scenarios_dir, tmp_path):
    cfg = str(scenarios_dir / "cfg_sqrt2_s23_q5.json")
    assert run(capsys, "mb", "check-div", "--config", cfg, "--g", "1/0", "--n", "2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": "x", "model": "mb", "steps": [{"op": "no_such_op"}]}')
    assert run(capsys, "run", str(bad))[0] == 2
    assert run(capsys, "run", str(tmp_path / "missing.json"))[0] == 2


def test_chain_commands_and_breach(capsys, tmp_path):
    st = str(tmp_path / "state.json")
    assert run(capsys, "chain", "init", "--S", "2,3", "--state", st)[0] == 0
    assert run(capsys, "chain", "f-step", "--state", st)[0] == 0
    code, out, _ = run(capsys, "chain", "zhat-step", "--state", st, "--a", "x1 + 1", "--n", "2")
    assert code == 0 and json.loads(out)["element"] == "1/2*x1 + 1/2"
    code, out, _ = run(capsys, "chain", "zhat-step", "--state", st, "--a", "x1", "--n", "3")
    assert code == 1 and json.loads(out)["outcome"] == "refuted"
    code, out, _ = run(capsys, "chain", "f-step", "--state", st, "--v", "2", "--w", "x1")
    assert code == 0 and json.loads(out)["k"] == 2
    code, out, _ = run(capsys, "chain", "bezout", "--state", st, "--a", "2", "--b", "x1")
    assert json.loads(out)["d"] == "1"

    data = json.loads(Path(st).read_text())
    data["residues"]["x1"]["4"] = (data["residues"]["x1"]["4"] + 1) % 4
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(data))
    code, _, err = run(capsys, "chain", "zhat-step", "--state", str(bad), "--a", "x2", "--n", "2")
    assert code == 3 and "residue mod 4" in err


def test_mb_commands(capsys, scenarios_dir):
    cfg = str(scenarios_dir / "cfg_sqrt2_s23_q5.json")
    code, out, _ = run(capsys, "mb", "check-div", "--config", cfg, "--g", "3*x + 7", "--n", "6")
    rep = json.loads(out)
    assert code == 0 and rep["outcome"] == "witness"
    code, out, _ = run(capsys, "mb", "check-div", "--config", cfg, "--g", "x", "--n", "5")
    assert json.loads(out)["outcome"] == "refuted"
    code, out, _ = run(capsys, "mb", "check-normality", "--config", cfg, "--u", "[0, 1]*x^2", "--v", "x^2",
                       "--z", "0", "--z", "-2")
    assert json.loads(out)["outcome"] == "nonmember"


def test_puiseux_and_oi_commands(capsys):
    code, out, _ = run(capsys, "puiseux", "floor", "--series", "[(1/2,1),(0,1/2)]")
    rep = json.loads(out)
    assert code == 0 and rep["integer_part"] == "[(1/2, 1)]" and rep["remainder"] == "[(0, 1/2)]"
    code, out, _ = run(capsys, "puiseux", "roots", "--poly", "y^2 - x")
    rep = json.loads(out)
    assert rep["roots"] == ["-x^(1/2)", "x^(1/2)"] and all(rep["plug_back"])
    code, out, _ = run(capsys, "oi", "obstruct", "-P", "-2,0,0,1", "-p", "2", "--certs", "outside")
    assert code == 0 and json.loads(out)["conclusion"] == "obstructed"
    code, out, _ = run(capsys, "oi", "obstruct", "-P", "-2,0,0,1", "-p", "2")
    assert json.loads(out)["conclusion"] == "undetermined"
