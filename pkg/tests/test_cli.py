import json

import pytest

from hurwitzradon import cli
from hurwitzradon.cli import EXIT_OK, EXIT_REFUTED, EXIT_USAGE, run
from hurwitzradon.clifford import symmetric_family
from hurwitzradon.exactmat import RationalMatrix
from hurwitzradon.gmanifold import catalogue_action, estimate_rho_plus
from hurwitzradon.types import CommandResult

I2 = RationalMatrix.identity(2).to_json()
P = RationalMatrix.from_rows([[1, 0], [0, -1]]).to_json()
Q = RationalMatrix.from_rows([[0, 1], [1, 0]]).to_json()


def hr(*argv):
    lines = []
    code = run(list(argv), out=lines.append)
    assert len(lines) <= 1
    return code, (json.loads(lines[0]) if lines else None), (lines[0] if lines else None)


def test_rho():
    code, result, _ = hr("rho", "16")
    assert code == EXIT_OK
    assert (result["n"], result["rho"], result["a"]) == (16, 9, 1)
    assert result["command"] == "rho"
    assert result["certificate"] == "closed_form"
    assert result["seed"] is None
    assert len(result["inputs_digest"]) == 64


def test_envelope_parses_back_into_the_model():
    _, result, _ = hr("rho", "16")
    envelope = CommandResult.model_validate(result)
    assert envelope.command == "rho"
    assert envelope.payload() == {"n": 16, "a": 1, "b": 0, "c": 0, "rho": 9}


def test_table():
    code, result, _ = hr("table", "so(N,N)", "8")
    assert code == EXIT_OK
    assert result["rho1"] == result["rho2"] == 8


def test_table_unknown_kind_is_a_usage_error():
    code, result, _ = hr("table", "e8(N)", "2")
    assert code == EXIT_USAGE
    assert result["command"] == "table"
    assert "Supported kinds" in result["error"]


def test_clifford_family_with_verification():
    code, result, _ = hr("clifford-family", "--n", "3", "--epsilon", "-1", "--verify")
    assert code == EXIT_OK
    assert result["dim"] == 4
    assert len(result["matrices"]) == 3
    assert result["verification"]["ok"]
    assert result["verification"]["checked"] == 9


def test_witness_is_accepted_by_check_witness(tmp_path):
    path = str(tmp_path / "witness.json")
    code, result, _ = hr("witness", "--pair", "so(2,2)", "--n", "2", "--emit", path)
    assert code == EXIT_OK
    assert result["claim"] == "clifford_rho1"

    code, result, _ = hr("check-witness", path)
    assert code == EXIT_OK
    assert result["ok"]
    assert result["membership"] == [True, True]


def test_witness_above_table_value_is_refused():
    code, result, _ = hr("witness", "--pair", "so(N,N)", "--size", "4", "--n", "5")
    assert code == EXIT_REFUTED
    assert result["certificate"] == "table_bound"
    assert (result["pair"], result["rho1"], result["n"]) == ("so(4,4)", 4, 5)


def test_nonsingular_witness_of_odd_sl():
    code, result, _ = hr("witness", "--pair", "sl(5,R)", "--n", "1", "--claim", "rho2")
    assert code == EXIT_OK
    assert result["claim"] == "nonsingular_rho2"


def test_check_witness_reports_bad_family(write_json):
    path = write_json("bad.json", {"pair": "gl(2,R)", "n": 2, "matrices": [I2, I2], "claim": "clifford_rho1"})
    code, result, _ = hr("check-witness", path)
    assert code == EXIT_REFUTED
    assert not result["ok"]
    failure = result["relation"]["failure"]
    assert (failure["i"], failure["j"]) == (1, 2)


def test_pencil_decisions(write_json):
    code, result, _ = hr("pencil", write_json("reflection.json", [I2, P]))
    assert code == EXIT_REFUTED
    assert result["status"] == "refuted"
    assert result["certificate"] == "exact_n2_sturm"

    code, result, _ = hr("pencil", write_json("clifford.json", {"matrices": [P, Q]}))
    assert code == EXIT_OK
    assert result["status"] == "proven_nonsingular"
    assert result["certificate"] == "clifford_certificate"


@pytest.mark.filterwarnings("ignore::hurwitzradon.utils.SamplingOnlyWarning")
def test_output_is_byte_identical_across_runs(write_json):
    a, b, c = symmetric_family(4, 3)
    path = write_json("family.json", [m.to_json() for m in (a * 2, b, c)])
    _, first_result, first = hr("pencil", path, "--seed", "3", "--budget", "150")
    _, _, second = hr("pencil", path, "--seed", "3", "--budget", "150")
    assert first == second
    assert first_result["status"] == "sampled_clean"
    assert first_result["seed"] == 3
    assert first_result["samples"] == 150


def test_seed_comes_from_environment(write_json, monkeypatch):
    monkeypatch.setenv("HURWITZRADON_SEED", "7")
    _, result, _ = hr("pencil", write_json("clifford.json", [P, Q]))
    assert result["seed"] == 7


def test_inputs_digest_tracks_file_contents(write_json):
    _, first, _ = hr("pencil", write_json("one.json", [P, Q]))
    _, second, _ = hr("pencil", write_json("one.json", [Q, P]))
    assert first["inputs_digest"] != second["inputs_digest"]


def test_fields_on_dependent_action():
    code, result, _ = hr("fields", "--pair", "o(4)", "--points", "10", "--budget", "0")
    assert code == EXIT_REFUTED
    assert not result["independent_everywhere_sampled"]
    assert max(result["ranks"]) <= 4


def test_fields_on_clifford_action(write_json):
    path = write_json("action.json", {"dim": 2, "generators": [P, Q]})
    code, result, _ = hr("fields", "--action", path, "--points", "20", "--budget", "50")
    assert code == EXIT_OK
    assert set(result["ranks"]) == {2}


def test_rho_estimate_modes():
    code, result, _ = hr("rho-estimate", "--pair", "so(2,2)", "--mode", "minus")
    assert code == EXIT_OK
    assert (result["mode"], result["value"], result["table_value"]) == ("minus", 2, 2)

    code, result, _ = hr("rho-estimate", "--pair", "so(2,2)", "--budget", "0")
    assert result["value"] == 2

    code, result, _ = hr("rho-estimate", "--pair", "o(4)", "--mode", "plus")
    assert result["value"] == 3


def test_rho_estimate_certificate_lands_in_the_envelope():
    code, result, _ = hr("rho-estimate", "--pair", "o(4)", "--mode", "plus")
    assert code == EXIT_OK
    expected = estimate_rho_plus(catalogue_action("o(4)")).certificate
    assert result["certificate"] == expected
    envelope = CommandResult.model_validate(result)
    assert envelope.command == "rho-estimate"
    assert envelope.payload()["mode"] == "plus"


def test_payload_that_breaks_the_envelope_is_a_usage_error(monkeypatch):
    monkeypatch.setattr(cli, "_rho", lambda args: ({"rho": 1}, None, None, False))
    code, result, _ = hr("rho", "4")
    assert code == EXIT_USAGE
    assert result["command"] == "rho"


def test_rho_estimate_on_complex_action(write_json):
    zero = RationalMatrix.zeros(1).to_json()
    one = RationalMatrix.identity(1).to_json()
    path = write_json(
        "complex.json", {"dim": 1, "generators": [{"real": one, "imag": zero}, {"real": zero, "imag": one}]}
    )
    code, result, _ = hr("rho-estimate", "--action", path, "--mode", "minus")
    assert code == EXIT_OK
    assert result["value"] == 1

    code, result, _ = hr("realify", "--action", path)
    assert code == EXIT_OK
    assert result["dim"] == 2
    assert result["generators"][1]["entries"] == ["0", "-1", "1", "0"]


def test_clifford_structure():
    code, result, _ = hr("clifford-structure", "--pair", "o(4)")
    assert code == EXIT_OK
    assert result["rank"] == 3
    assert len(result["frame_images"]) == 3

    code, result, _ = hr("clifford-structure", "--pair", "so(2,2)")
    assert code == EXIT_REFUTED
    assert result["partial"] == []


def test_clifford_structure_with_metric(write_json):
    t = RationalMatrix.from_rows([[0, -2], ["1/2", 0]]).to_json()
    action = write_json("action.json", {"dim": 2, "generators": [t]})
    metric = write_json("metric.json", RationalMatrix.diag([1, 4]).to_json())
    code, result, _ = hr("clifford-structure", "--action", action, "--metric", metric)
    assert code == EXIT_OK
    assert result["frame_images"] == [t]


def test_schema_lists_every_payload():
    code, result, _ = hr("schema")
    assert code == EXIT_OK
    assert {"envelope", "pencil", "witness", "rho-estimate"} <= set(result["schemas"])


def test_malformed_json_is_a_usage_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    code, result, _ = hr("pencil", str(path))
    assert code == EXIT_USAGE
    assert result == {"command": "pencil", "error": result["error"]}
    assert "not valid JSON" in result["error"]


def test_missing_file_is_a_usage_error(tmp_path):
    code, result, _ = hr("check-witness", str(tmp_path / "missing.json"))
    assert code == EXIT_USAGE
    assert "Could not read" in result["error"]


def test_action_or_pair_is_required():
    code, result, _ = hr("fields")
    assert code == EXIT_USAGE
    assert "--action" in result["error"]


@pytest.mark.parametrize(
    "argv", [["frobnicate"], [], ["clifford-family", "--n", "2", "--epsilon", "2"], ["rho", "sixteen"]]
)
def test_parse_errors_go_to_stderr(argv, capsys):
    code, result, _ = hr(*argv)
    assert code == EXIT_USAGE
    assert result is None
    assert capsys.readouterr().err.startswith("hr: error:")


def test_non_positive_rho_argument():
    code, result, _ = hr("rho", "0")
    assert code == EXIT_USAGE
    assert result["command"] == "rho"
