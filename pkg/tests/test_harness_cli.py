"""Campaign assembly, report determinism and the CLI surface."""

import json

import pytest

from wallspan.cli import main, parse_int_spec
from wallspan.harness import (
    CampaignConfig,
    Tolerances,
    report_to_json,
    run_campaign,
    run_case,
)

SMALL = CampaignConfig(m_values=(1, 2), n_values=(0, 1), samples_per_case=5, seed=7)


# -- config --------------------------------------------------------------------


def test_config_validation():
    with pytest.raises(ValueError):
        CampaignConfig(m_values=())
    with pytest.raises(ValueError):
        CampaignConfig(m_values=(0,))
    with pytest.raises(ValueError):
        CampaignConfig(samples_per_case=0)
    with pytest.raises(ValueError):
        Tolerances(tangency=0.0)


def test_config_hash_sensitivity():
    assert SMALL.config_hash() == SMALL.config_hash()
    other = CampaignConfig(m_values=(1, 2), n_values=(0, 1), samples_per_case=5, seed=8)
    assert SMALL.config_hash() != other.config_hash()


# -- campaign ------------------------------------------------------------------


def test_case_record_has_all_categories():
    record, _ = run_case(1, 1, SMALL)
    for key in ("formulas", "clifford", "signs", "independence", "tangency", "wellDefined", "cohomology"):
        assert key in record
    assert record["seed"] == SMALL.seed
    assert record["configHash"] == SMALL.config_hash()
    assert record["passed"]


def test_campaign_grid_complete_and_deterministic():
    result = run_campaign(SMALL)
    cases = [(c["m"], c["n"]) for c in result.report["cases"]]
    assert cases == [(1, 0), (1, 1), (2, 0), (2, 1)]
    assert result.passed

    again = run_campaign(SMALL)
    assert report_to_json(result.report) == report_to_json(again.report)


# -- CLI -----------------------------------------------------------------------


def test_parse_int_spec():
    assert parse_int_spec("3") == (3,)
    assert parse_int_spec("1:4") == (1, 2, 3, 4)
    assert parse_int_spec("0,2,4") == (0, 2, 4)
    with pytest.raises(ValueError):
        parse_int_spec("4:1")


def test_cli_invariants_smallest(capsys):
    assert main(["invariants", "--m", "1", "--n", "0"]) == 0
    out = capsys.readouterr().out
    assert "delta = 2 nu + m + 1     2" in out
    assert "dim = 2" in out


def test_cli_invariants_json(capsys):
    assert main(["invariants", "--m", "2", "--n", "7", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["delta"] == 9 and obj["nu"] == 3
    assert obj["consistent"]


def test_cli_invariants_even_note(capsys):
    assert main(["invariants", "--m", "2", "--n", "2"]) == 0
    out = capsys.readouterr().out
    assert "span(Q) = 1 < pspan(Q) = 3" in out


def test_cli_invariants_rejects_bad_params(capsys):
    assert main(["invariants", "--m", "0", "--n", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_cohomology(capsys):
    assert main(["cohomology", "--m", "2", "--n", "2", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["swUpperBound"] == 3
    ruled = {e["k"]: e["ruledOut"] for e in obj["ruleOuts"]}
    assert ruled[3] is False and ruled[4] is True
    witnesses = next(e for e in obj["ruleOuts"] if e["k"] == 4)["witnesses"]
    assert witnesses and all(w["failureDegree"] is not None for w in witnesses)


def test_cli_cohomology_smallest(capsys):
    assert main(["cohomology", "--m", "1", "--n", "0"]) == 0
    assert "w(Q(1,0)) = 1 + x" in capsys.readouterr().out


def test_cli_cohomology_k_max_validation(capsys):
    assert main(["cohomology", "--m", "1", "--n", "0", "--k-max", "99"]) == 2


def test_cli_clifford(capsys):
    assert main(["clifford", "--n", "1", "--format", "json"]) == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["matrixCount"] == 3
    assert obj["allPassed"]
    assert obj["predictedSigns"] == [-1, -1, 1]
    assert obj["matrices"][0]["entries"] == [["i", "0"], ["0", "-i"]]


def test_cli_fields_byte_identical(capsys):
    argv = ["fields", "--m", "1", "--n", "0:1", "--samples", "5", "--seed", "11", "--format", "json"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    second = capsys.readouterr().out
    assert first == second
    obj = json.loads(first)
    assert obj["summary"]["allPassed"]


def test_cli_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("WALLSPAN_SEED", "123")
    argv = ["fields", "--m", "1", "--n", "0", "--samples", "2", "--format", "json"]
    assert main(argv) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 123


def test_cli_unknown_command():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_cli_fields_reports_failure_with_absurd_tolerance(capsys):
    argv = ["fields", "--m", "1", "--n", "0", "--samples", "2", "--tol-tangency", "1e-30"]
    assert main(argv) == 1
    out = capsys.readouterr().out
    assert "[FAIL]" in out


def test_cli_rejects_nonpositive_tolerance(capsys):
    argv = ["fields", "--m", "1", "--n", "0", "--samples", "2", "--tol-rank", "0"]
    assert main(argv) == 2


def test_cli_rejects_zero_samples(capsys):
    assert main(["fields", "--m", "1", "--n", "0", "--samples", "0"]) == 2


def test_cli_accept_json_small_grid(capsys):
    argv = ["accept", "--m", "1", "--n", "0:1", "--samples", "5", "--format", "json"]
    assert main(argv) == 0
    obj = json.loads(capsys.readouterr().out)
    assert [c["id"] for c in obj["criteria"]] == list(range(1, 8))
    assert obj["allPassed"]


def test_cli_accept_default_grid(capsys):
    assert main(["accept"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 7
    assert "acceptance: PASS" in out
