import io
import json

import pytest

from rescaling.cli import Command, execute, parse_spec, run
from rescaling.cli.reports import dumps, to_jsonable
from rescaling.exceptions import InvalidParameter, SchemaError
from rescaling.models.power_series import PowerSeries

LCS_PROBLEM = {"command": "lcs-ranks", "series": {"coefficients": [1, 2]}}


def invoke(argv, payload=None):
    stdin = io.StringIO(payload if isinstance(payload, str) else json.dumps(payload or {}))
    stdout = io.StringIO()
    code = run(argv, stdin=stdin, stdout=stdout)
    return code, stdout.getvalue()


def test_lcs_ranks_from_stdin():
    code, output = invoke(["--truncate", "8"], LCS_PROBLEM)
    assert code == 0
    report = json.loads(output)
    assert report["command"] == "lcs-ranks"
    assert report["truncation"] == 8
    assert report["result"]["ranks"]["ranks"] == {"1": 2, "2": 1, "3": 2, "4": 3, "5": 6, "6": 9, "7": 18, "8": 30}


def test_output_is_canonical_json():
    code, output = invoke(["-N", "6"], LCS_PROBLEM)
    assert code == 0
    assert dumps(json.loads(output)) == output.strip()
    series = json.loads(output)["result"]["series"]
    assert series["order"] == 6
    assert series["coefficients"][1] == {"n": 2, "d": 1}


def test_rational_coefficients():
    problem = {"command": "loop-poincare", "truncation": 4, "series": {"coefficients": [1, "1/2"]}}
    code, output = invoke([], problem)
    assert code == 0
    loop = json.loads(output)["result"]["loop_poincare"]["coefficients"]
    assert loop[2] == {"n": 1, "d": 2}


def test_non_integral_rank_exits_with_math_error():
    problem = {"command": "lcs-ranks", "series": {"coefficients": [1, {"n": 1, "d": 2}]}}
    code, output = invoke(["-N", "4"], problem)
    assert code == 3
    report = json.loads(output)
    assert report["error"] == "NonIntegralRank"
    assert report["command"] == "lcs-ranks"


@pytest.mark.parametrize(
    "payload",
    [
        "{not json",
        {"command": "nope"},
        {"command": "hilbert"},
        {"command": "lcs-ranks", "series": {"coefficients": [1, "1/0"]}},
        {"command": "link-derivation", "words": {"longitudes": []}},
        {"command": "hilbert", "algebra": {"generators": 2, "relations": [[{"monomial": [1, 3]}]]}},
        {"command": "hilbert", "algebra": {"family": "torus"}},
        {"command": "hilbert", "algebra": {"family": "generic", "n": 3}},
        {"command": "koszul-test", "algebra": {"family": "generic", "ell": 2}},
        {"command": "koszul-test", "mode": "series", "p_max": 2, "algebra": {"family": "torus", "n": 2}},
        {"command": "koszul-test", "mode": "ce", "weight_max": 0, "algebra": {"family": "torus", "n": 2}},
    ],
)
def test_schema_errors_exit_with_two(payload):
    code, output = invoke([], payload)
    assert code == 2
    assert json.loads(output)["error"] == "SchemaError"


def test_ce_cutoffs_reach_the_test():
    problem = {
        "command": "koszul-test",
        "mode": "ce",
        "p_max": 2,
        "weight_max": 3,
        "algebra": {"family": "torus", "n": 2},
    }
    verdict = execute(parse_spec(problem))["result"]["verdicts"][0]
    assert verdict.checked_degree == 3
    assert verdict.note == "upper degree <= 2"
    assert all(row["p"] <= 2 and row["w"] <= 3 for row in verdict.details["homology"])


def test_zero_k_is_a_math_error():
    code, output = invoke(["--k", "0"], LCS_PROBLEM)
    assert code == 3
    assert json.loads(output)["error"] == "InvalidParameter"


def test_unknown_example():
    code, output = invoke(["--example", "no-such-example"])
    assert code == 2
    assert "no-such-example" in json.loads(output)["message"]


def test_bundled_example_by_name():
    code, output = invoke(["--example", "rebracket-sample"])
    assert code == 0
    result = json.loads(output)["result"]
    assert result["dims"] == [3, 3, 6]
    assert result["dropped_degrees"] == [1]


def test_input_file(tmp_path):
    path = tmp_path / "problem.json"
    path.write_text(json.dumps(LCS_PROBLEM), encoding="utf-8")
    code, output = invoke(["--input", str(path), "-N", "3"])
    assert code == 0
    assert json.loads(output)["result"]["ranks"]["ranks"] == {"1": 2, "2": 1, "3": 2}


def test_missing_input_file(tmp_path):
    code, _ = invoke(["--input", str(tmp_path / "missing.json")])
    assert code == 2


def test_table_format():
    code, output = invoke(["-N", "4", "--format", "table"], LCS_PROBLEM)
    assert code == 0
    lines = output.splitlines()
    assert any(line.startswith("result.ranks.ranks.1 ") and line.endswith(" 2") for line in lines)
    assert any(line.startswith("result.series ") and "1 + 2t + O(t^5)" in line for line in lines)


def test_cli_values_override_the_description():
    spec = parse_spec({"command": "lcs-ranks", "truncation": 3, "series": {"coefficients": [1, 2]}})
    assert execute(spec)["truncation"] == 3
    assert execute(spec, truncation=5)["truncation"] == 5
    with pytest.raises(InvalidParameter):
        execute(spec, k=0)


def test_parse_spec_wraps_validation_errors():
    with pytest.raises(SchemaError):
        parse_spec({"command": "bch", "bch": {"n": 2, "x": [{"word": [3]}], "y": [{"word": [1]}]}})
    assert parse_spec(LCS_PROBLEM).command == Command.LCS_RANKS


def test_bch_command():
    problem = {
        "command": "bch",
        "bch": {"n": 2, "r": 2, "x": [{"word": [1]}], "y": [{"word": [2]}]},
    }
    code, output = invoke([], problem)
    assert code == 0
    terms = json.loads(output)["result"]["bch"]["terms"]
    assert {"word": [1, 2], "coefficient": {"n": 1, "d": 2}} in terms


def test_bch_rejects_non_lie_input():
    problem = {
        "command": "bch",
        "bch": {"n": 2, "r": 2, "x": [{"word": [1, 2]}], "y": [{"word": [2]}]},
    }
    code, output = invoke([], problem)
    assert code == 3
    assert json.loads(output)["error"] == "NotPrimitive"


def test_jsonable_rejects_unknown_objects():
    assert to_jsonable(PowerSeries.of([1], 0)) == {"order": 0, "coefficients": [{"n": 1, "d": 1}]}
    with pytest.raises(TypeError):
        to_jsonable(object())
