import json
import warnings

import pytest

warnings.filterwarnings("ignore", category=DeprecationWarning)

from idleopt.cli import main

FIG2 = {
    "initial_cookies": 0,
    "initial_rate": 1,
    "items": [
        {"x": 10, "y": 72, "alpha": 1},
        {"x": 100, "y": 700, "alpha": 1},
    ],
    "goal": {"type": "cookies", "value": 60000},
}


@pytest.fixture
def fig2_file(tmp_path):
    path = tmp_path / "fig2.json"
    path.write_text(json.dumps(FIG2))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve_emits_solution_json(fig2_file, capsys):
    code, out, _ = run(
        capsys, "solve", "--method", "fixed-dp", "--instance", fig2_file,
        "--validate", "--stats",
    )
    assert code == 0
    body = json.loads(out)
    assert body["solution"]["optimal"] is True
    assert len(body["solution"]["strategy"]["purchases"]) == 230
    assert body["stats"]["states_visited"] > 0


def test_every_emitted_solution_validates(fig2_file, capsys, tmp_path):
    for method in ["fixed-dp", "two-item", "greedy-eff", "greedy-ratio", "local"]:
        code, out, _ = run(
            capsys, "--exact", "solve", "--method", method,
            "--instance", fig2_file, "--validate",
        )
        assert code == 0, method


def test_missing_instance_file_exits_2(capsys):
    code, _, err = run(capsys, "solve", "--instance", "/nonexistent.json")
    assert code == 2
    assert "cannot read" in err


def test_invalid_instance_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(dict(FIG2, items=[{"x": 0, "y": 1, "alpha": 1}])))
    code, _, err = run(capsys, "solve", "--instance", str(path))
    assert code == 2
    assert "NonPositiveRateGain" in err


def test_budget_exhaustion_exits_3(fig2_file, capsys):
    code, _, err = run(
        capsys, "--budget", "10", "solve", "--method", "oracle",
        "--instance", fig2_file,
    )
    assert code == 3
    assert "budget_exceeded" in err


def test_sweep_csv_is_byte_stable(fig2_file, capsys):
    runs = []
    for _ in range(2):
        code, out, err = run(
            capsys, "sweep", "--instance", fig2_file, "--r-max", "200"
        )
        assert code == 0
        runs.append(out)
    assert runs[0] == runs[1]
    lines = runs[0].splitlines()
    assert lines[0] == "r,total_time,rate_at_switch"
    assert len(lines) == 202
    assert lines[1].startswith("0,")


def test_sweep_argmin_on_stderr(fig2_file, capsys):
    _, _, err = run(capsys, "sweep", "--instance", fig2_file, "--r-max", "200")
    assert "argmin r=161 rate=1611" in err


def test_simulate_prints_table(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps(FIG2))
    strat = tmp_path / "strat.json"
    strat.write_text(json.dumps({"purchases": [0, 0, 1]}))
    code, out, _ = run(
        capsys, "--exact", "simulate", "--instance", str(inst),
        "--strategy", str(strat),
    )
    assert code == 0
    assert "rate after" in out
    assert "total" in out
    # human-facing labels are 1-based
    assert out.splitlines()[1].split()[1] == "1"


def test_analyze_prints_thresholds(fig2_file, capsys):
    code, out, _ = run(capsys, "--exact", "analyze", "--instance", fig2_file)
    body = json.loads(out)
    assert body["two_item"]["swap_rate"] == 3140


def test_compare_table(fig2_file, capsys):
    code, out, _ = run(
        capsys, "compare", "--instance", fig2_file,
        "--methods", "fixed-dp,greedy-eff",
    )
    assert code == 0
    assert "baseline: fixed-dp" in out
    assert "greedy-eff" in out


def test_reduce_verify_pipeline(tmp_path, capsys):
    src = tmp_path / "src.json"
    src.write_text(json.dumps({"values": [1, 2, 3]}))
    cert_path = tmp_path / "cert.json"
    code, _, _ = run(
        capsys, "--exact", "reduce", "partition-to-rate",
        "--in", str(src), "--out", str(cert_path),
    )
    assert code == 0
    code, out, _ = run(capsys, "verify", "--cert", str(cert_path))
    assert code == 0
    assert json.loads(out)["agree"] is True


def test_discrete_pipeline(tmp_path, capsys):
    inst = tmp_path / "d.json"
    inst.write_text(
        json.dumps(
            {
                "initial_rate": 3,
                "items": [{"x": 2, "y": 3, "alpha": 1000}],
                "goal": {"type": "cookies", "value": 10},
                "deadline": 3,
            }
        )
    )
    code, out, _ = run(capsys, "discrete", "decide", "--instance", str(inst))
    assert code == 0
    body = json.loads(out)
    assert body["answer"] is True
    sched = tmp_path / "sched.json"
    sched.write_text(json.dumps(body["witness"]))
    code, out, _ = run(
        capsys, "discrete", "simulate", "--instance", str(inst),
        "--schedule", str(sched),
    )
    assert code == 0
    assert json.loads(out)["cookies_at_deadline"] >= 10


def test_dump_fixtures(tmp_path, capsys):
    code, _, err = run(capsys, "oracle", "dump-fixtures", "--out", str(tmp_path))
    assert code == 0
    data = json.loads((tmp_path / "oracle_fixtures.json").read_text())
    assert data["one_item_tie"]["expected"]["total_time"] == "9649/252"
