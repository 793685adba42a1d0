import csv
import json
import subprocess
import sys

import pytest

from boxsearch.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_value_commands(capsys):
    code, data = run_json(capsys, "value", "--costs", "1,1", "-k", "2", "--exact")
    assert code == 0 and data["value"] == "8/3"
    code, data = run_json(capsys, "value", "--costs", "3,2,1", "-k", "3", "--variant", "single-regret")
    assert code == 0 and data["value"] == 0
    code, out, _ = run(capsys, "value", "--costs", "10,9,1,1", "-k", "2", "--variant", "multi-regret")
    assert code == 0 and "8.04487" in out and "T_1 - T_{k+1}/T_k" in out


def test_value_without_closed_form_points_to_solve(capsys):
    code, _, err = run(capsys, "value", "--costs", "3,2,1", "-k", "2")
    assert code == 2 and "boxsearch solve" in err


@pytest.mark.parametrize("argv", [
    ["value", "--costs", "1,-1", "-k", "2"],
    ["value", "--costs", "1,1"],
    ["value", "--costs", "1,1", "-k", "3", "--variant", "single-regret"],
    ["solve", "--costs", "a,b", "-k", "1"],
    ["evaluate", "--strategy", "/nonexistent.json", "--costs", "1,1", "-k", "1"],
    ["solve", "--costs", "3,2", "-k", "2", "--normal-only"],
])
def test_invalid_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("boxsearch: error:")


@pytest.mark.parametrize("argv", [
    ["value", "--costs", "1,1", "-k", "1"],
    ["solve", "--costs", "1,1", "-k", "1"],
    ["evaluate", "--strategy", "s.json", "--costs", "1,1", "-k", "1"],
    ["strategy", "--kind", "equal-cost", "--costs", "1,1", "-k", "1"],
    ["verify", "--suite", "oracle"],
    ["reproduce-paper"],
])
def test_only_play_takes_a_seed(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv + ["--seed", "1"])
    assert exc.value.code == 2
    assert "--seed" in capsys.readouterr().err


def test_instance_file_and_variant_override(tmp_path, capsys):
    path = tmp_path / "inst.json"
    path.write_text('{"costs": [100, 10, 1, 0.99], "balls": 2, "variant": "single-regret"}')
    code, data = run_json(capsys, "solve", "--instance", str(path), "--exact")
    assert code == 0
    assert data["value"] == "220780/21989"
    assert [1, 1, 0, 0] in data["equalizing"]["outside_support"]
    assert data["equalizing"]["equalizing"] is True
    code, data = run_json(capsys, "value", "--instance", str(path), "--variant", "multi-regret")
    assert code == 0 and data["instance"]["variant"] == "multi-regret"


def test_strategy_evaluate_round_trip(tmp_path, capsys):
    strat = tmp_path / "s.json"
    code, _, _ = run(capsys, "strategy", "--kind", "multi-regret", "--costs", "10,9,1,1", "-k", "2",
                     "--exact", "--out", str(strat))
    assert code == 0
    table = tmp_path / "t.csv"
    code, data = run_json(capsys, "evaluate", "--strategy", str(strat), "--costs", "10,9,1,1", "-k", "2",
                          "--variant", "multi-regret", "--exact", "--csv", str(table))
    assert code == 0 and data["expected_payoff"] == "1255/156"
    assert {row["payoff"] for row in data["breakdown"]} == {"1255/156"}
    rows = list(csv.DictReader(table.open()))
    assert len(rows) == 10


def test_hider_strategy_and_mixed_evaluation(tmp_path, capsys):
    hider = tmp_path / "h.json"
    searcher = tmp_path / "s.json"
    run(capsys, "strategy", "--kind", "equalizing-multi", "--costs", "10,1", "-k", "2", "--exact", "--out", str(hider))
    run(capsys, "strategy", "--kind", "uniform-adaptive", "--costs", "10,1", "-k", "2", "--out", str(searcher))
    code, data = run_json(capsys, "evaluate", "--strategy", str(searcher), "--hider", str(hider),
                          "--costs", "10,1", "-k", "2", "--exact")
    assert code == 0 and data["expected_payoff"] == "2222/111"
    code, _, err = run(capsys, "evaluate", "--strategy", str(hider), "--costs", "10,1", "-k", "2")
    assert code == 2 and "searcher" in err


def test_normal_strategy_file(tmp_path, capsys):
    path = tmp_path / "n.json"
    run(capsys, "strategy", "--kind", "normal-k2", "--costs", "3,2,1", "-k", "2", "--exact", "--out", str(path))
    data = json.loads(path.read_text())
    assert data["kind"] == "normal" and len(data["sequences"]) == len(data["probabilities"])
    code, data = run_json(capsys, "evaluate", "--strategy", str(path), "--costs", "3,2,1", "-k", "2",
                          "--variant", "multi-regret", "--allocation", "0,1,1", "--exact")
    assert code == 0 and data["expected_payoff"] == "12/5"


def test_play_is_seeded(tmp_path, capsys):
    path = tmp_path / "s.json"
    path.write_text('{"kind": "searcher", "name": "random", "seed": 4}')
    argv = ["play", "--strategy", str(path), "--costs", "2,1", "-k", "2", "--seed", "9", "--trials", "300"]
    a = run_json(capsys, *argv)[1]
    b = run_json(capsys, *argv)[1]
    assert a == b and a["trials"] == 300
    # against the equalizer every policy averages U = 2 T_3 / T_2 = 30/7
    assert abs(a["mean"] - 30 / 7) < 5 * a["standard_error"]


def test_solve_normal_only(capsys):
    code, data = run_json(capsys, "solve", "--costs", "10,9,1", "-k", "2", "--variant", "multi-regret",
                          "--normal-only", "--exact")
    assert code == 0
    assert data["normal_only"]["value"] == data["value"] == data["closed_form"]["value"]


def test_verify_suites(capsys):
    for suite in ("lemma5", "lemma6", "table2", "oracle", "symmetry-k2"):
        code, data = run_json(capsys, "verify", "--suite", suite, "--budget", "2")
        assert code == 0 and data["passed"] and data["checked"] > 0, suite
    code, data = run_json(capsys, "verify", "--suite", "equalizer", "--budget", "100")
    assert code == 0 and data["checked"] == 100 and data["failed"] == 0
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nonsense"])


def test_reproduce_report(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code, data = run_json(capsys, "reproduce-paper", "--csv", str(out))
    assert code == 0 and data["passed"]
    assert len(data["rows"]) == 7
    assert all(r["abs_difference"] <= 5e-5 for r in data["rows"])
    assert len(list(csv.DictReader(out.open()))) == 7
    code, data = run_json(capsys, "reproduce-paper", "--exact")
    computed = {r["instance"]: r["computed"] for r in data["rows"]}
    assert computed["equal costs n=k=2"] == "8/3"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "boxsearch", "value", "--costs", "1,1", "-k", "2", "--exact"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "8/3" in proc.stdout


def test_strategies_by_constructor_name(capsys):
    code, data = run_json(capsys, "evaluate", "--costs", "10,1", "-k", "2", "--strategy", "n2-cost",
                          "--hider", "set-aside-n2", "--exact")
    assert code == 0 and data["expected_payoff"] == "221/11"
    code, _, err = run(capsys, "evaluate", "--costs", "1,1,1", "-k", "2", "--strategy", "n2-cost")
    assert code == 2 and "two boxes" in err
