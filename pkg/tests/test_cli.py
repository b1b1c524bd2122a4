"""CLI surface: spec'd examples, schemas, determinism, and exit codes."""

from __future__ import annotations

import json
import math
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

from stablenorm.cli import jsonify, main, parse_class, parse_norm
from stablenorm.errors import ValidationError
from stablenorm.norms import Ellipse, PNorm

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def run_cli(capsys, *args: str) -> tuple[int, str, str]:
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture(scope="module")
def registry() -> Registry:
    resources = []
    for path in SCHEMA_DIR.glob("*.schema.json"):
        contents = json.loads(path.read_text(encoding="utf-8"))
        jsonschema.Draft7Validator.check_schema(contents)
        resources.append((contents["$id"], Resource.from_contents(contents)))
    reg = Registry().with_resources(resources)
    assert len(resources) == 11
    return reg


def validate_against(registry: Registry, name: str, payload) -> None:
    schema = json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text(encoding="utf-8"))
    jsonschema.Draft7Validator(schema, registry=registry).validate(payload)


class TestSpecdExamples:
    def test_polygon_min_area_k3(self, capsys):
        code, out, err = run_cli(capsys, "polygon-min-area", "--k", "3")
        assert code == 0 and err == ""
        assert json.loads(out) == {
            "k": 3,
            "area": "1/2",
            "witness": [[0, 0], [1, 0], [0, 1]],
            "certified": True,
        }

    def test_graph_epsilon_two_classes(self, capsys):
        # the two-axis Euclidean graph: competitor (1,1) at combined
        # length 2 against norm sqrt(2)
        code, out, _ = run_cli(capsys, "graph-epsilon", "--norm", "euclidean", "--k", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["zeta"] == 0.5
        assert payload["edge_bound"] == 2
        assert payload["epsilon"] == pytest.approx(2 - math.sqrt(2), abs=1e-12)
        assert payload["theta"] == pytest.approx((2 - math.sqrt(2)) / 4, abs=1e-12)
        assert payload["witness_class"] == [1, 1]

    def test_graph_epsilon_three_classes(self, capsys):
        # adding the diagonal tightens the gap: (2,1) via (1,0)+(1,1)
        # costs 1+sqrt(2) against norm sqrt(5)
        code, out, _ = run_cli(capsys, "graph-epsilon", "--norm", "euclidean", "--k", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["epsilon"] == pytest.approx(1 + math.sqrt(2) - math.sqrt(5), abs=1e-12)
        assert payload["witness_class"] in ([2, 1], [1, 2])

    def test_multiplicity_hexagonal_budget_10(self, capsys):
        code, out, _ = run_cli(capsys, "multiplicity", "--norm", "hexagonal", "--budget", "10")
        assert code == 0
        groups = json.loads(out)["groups"]
        assert groups[0]["length"] == 0.0
        assert groups[1]["m"] == 3
        assert groups[1]["n"] == 1


class TestDeterminism:
    def test_spectrum_bytes_stable(self, capsys):
        args = ("canyon-spectrum", "--norm", "euclidean", "--k", "2", "--grid-n", "64")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second
        assert json.loads(first)["spectrum"]["entries"][1]["length"] == 1.0

    def test_enumerate_bytes_stable(self, capsys):
        _, first, _ = run_cli(capsys, "norm-enumerate", "--norm", "pnorm:3", "--count", "12")
        _, second, _ = run_cli(capsys, "norm-enumerate", "--norm", "pnorm:3", "--count", "12")
        assert first == second


SCHEMA_RUNS = [
    ("norm-enumerate", ("--norm", "hexagonal", "--count", "6")),
    ("graph-build", ("--k", "2")),
    ("graph-epsilon", ("--k", "2")),
    ("canyon-spectrum", ("--k", "2", "--grid-n", "64")),
    ("stable-norm", ("--k", "2", "--class", "1,1", "--n-max", "2")),
    ("stable-norm", ("--graph", "uniform", "--grid-n", "8", "--class", "2,1")),
    ("polygon-min-area", ("--k", "4",)),
    ("polygon-min-area", ("--k", "3", "--k-max", "5")),
    ("polygon-symm", ("--two-m", "6", "--prefer-primitive")),
    ("multiplicity", ("--norm", "euclidean", "--budget", "6")),
    ("sharpness", ("--m", "2")),
    ("convergence", ("--ks", "2,3", "--directions", "16", "--n-max", "1")),
]


class TestSchemas:
    @pytest.mark.parametrize("name,flags", SCHEMA_RUNS, ids=lambda v: v if isinstance(v, str) else " ".join(v))
    def test_output_validates(self, registry, capsys, name, flags):
        code, out, err = run_cli(capsys, name, *flags)
        assert code == 0, err
        validate_against(registry, name, json.loads(out))

    def test_norm_payload_validates_alone(self, registry, capsys):
        _, out, _ = run_cli(capsys, "norm-enumerate", "--norm", "ellipse:2,0.5,1")
        validate_against(registry, "norm", json.loads(out)["norm"])


class TestFormats:
    def test_spectrum_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "canyon-spectrum", "--k", "2", "--format", "csv"
        )
        assert code == 0
        lines = out.split("\n")
        assert lines[0] == "a,b,length,multiplicity_group_id"
        assert "\r" not in out
        assert lines[1].startswith("0,0,0.0,")
        assert out.endswith("\n")

    def test_multiplicity_csv_header(self, capsys):
        _, out, _ = run_cli(capsys, "multiplicity", "--budget", "4", "--format", "csv")
        assert out.split("\n")[0] == "position,a,b,length,m,n"

    def test_min_area_table_csv(self, capsys):
        _, out, _ = run_cli(
            capsys, "polygon-min-area", "--k", "3", "--k-max", "4", "--format", "csv"
        )
        rows = [line.split(",") for line in out.strip().split("\n")]
        assert rows[0] == ["k", "A_num", "A_den", "i", "certified"]
        assert rows[1] == ["3", "1", "2", "0", "True"]
        assert rows[2] == ["4", "1", "1", "0", "True"]

    def test_csv_unavailable_for_graph_build(self, capsys):
        code, out, err = run_cli(capsys, "graph-build", "--k", "2", "--format", "csv")
        assert code == 2 and out == ""
        assert json.loads(err)["error"]["type"] == "validation"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "result.json"
        code, out, _ = run_cli(
            capsys, "polygon-min-area", "--k", "3", "--out", str(target)
        )
        assert code == 0 and out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["area"] == "1/2"


class TestScenario:
    def test_scenario_supplies_values(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"norm": "euclidean", "k": 2, "seed": 7}), encoding="utf-8")
        _, from_scenario, _ = run_cli(capsys, "graph-epsilon", "--scenario", str(f))
        _, from_flags, _ = run_cli(capsys, "graph-epsilon", "--norm", "euclidean", "--k", "2")
        assert from_scenario == from_flags

    def test_flags_override_scenario(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"k": 2}), encoding="utf-8")
        _, out, _ = run_cli(capsys, "graph-build", "--scenario", str(f), "--k", "4")
        assert json.loads(out)["k"] == 4

    def test_scenario_norm_object(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(
            json.dumps({"norm": {"variant": "pnorm", "p": 3.0}, "count": 4}),
            encoding="utf-8",
        )
        _, out, _ = run_cli(capsys, "norm-enumerate", "--scenario", str(f))
        payload = json.loads(out)
        assert payload["norm"]["variant"] == "pnorm"
        assert payload["count"] == 4

    def test_unknown_scenario_key_rejected(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text(json.dumps({"grid": 64}), encoding="utf-8")
        code, _, err = run_cli(capsys, "graph-build", "--scenario", str(f))
        assert code == 2
        assert "grid" in json.loads(err)["error"]["message"]

    def test_missing_scenario_file(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "graph-build", "--scenario", str(tmp_path / "absent.json"))
        assert code == 2
        assert json.loads(err)["error"]["type"] == "validation"

    def test_scenario_must_be_object(self, capsys, tmp_path):
        f = tmp_path / "s.json"
        f.write_text("[1, 2]", encoding="utf-8")
        code, _, err = run_cli(capsys, "norm-enumerate", "--scenario", str(f))
        assert code == 2


class TestExitCodes:
    def test_validation_error_is_structured(self, capsys):
        code, out, err = run_cli(capsys, "norm-enumerate", "--norm", "taxicab")
        assert code == 2 and out == ""
        error = json.loads(err)["error"]
        assert error["type"] == "validation"
        assert "taxicab" in error["message"]

    def test_out_of_range_k(self, capsys):
        code, _, err = run_cli(capsys, "polygon-min-area", "--k", "13")
        assert code == 2
        assert json.loads(err)["error"]["type"] == "validation"

    def test_budget_exhaustion_exits_3(self, capsys):
        code, out, err = run_cli(
            capsys, "polygon-min-area", "--k", "8", "--no-prune", "--budget", "1000"
        )
        assert code == 3 and out == ""
        error = json.loads(err)["error"]
        assert error["type"] == "search-budget"
        assert error["budget"] == 1000
        assert error["nodes_expanded"] > 1000

    def test_bad_class_flag(self, capsys):
        code, _, err = run_cli(capsys, "stable-norm", "--class", "one,two")
        assert code == 2

    def test_negative_scale(self, capsys):
        code, _, err = run_cli(capsys, "norm-enumerate", "--scale", "-2")
        assert code == 2


class TestParsing:
    def test_named_and_prefixed_norms(self):
        assert isinstance(parse_norm("euclidean").variant, Ellipse)
        assert isinstance(parse_norm("pnorm:2.5").variant, PNorm)
        e = parse_norm("ellipse:2,0.5,1").variant
        assert (e.q11, e.q12, e.q22) == (2.0, 0.5, 1.0)

    def test_inline_json_norm(self):
        spec = parse_norm('{"variant": "pnorm", "p": 4}')
        assert spec.variant.p == 4.0

    def test_scale_override(self):
        assert parse_norm("euclidean", scale=3.0).scale == 3.0

    @pytest.mark.parametrize("bad", ["ellipse:1,2", "pnorm:x", "l1", "{not json"])
    def test_rejects_malformed(self, bad):
        with pytest.raises(ValidationError):
            parse_norm(bad)

    def test_parse_class_forms(self):
        assert parse_class("2,-1").as_tuple() == (2, -1)
        assert parse_class([0, 3]).as_tuple() == (0, 3)
        for bad in ("2", "a,b", (1, 2, 3), 5):
            with pytest.raises(ValidationError):
                parse_class(bad)

    def test_jsonify_rationals_and_inf(self):
        out = jsonify({"q": Fraction(3, 4), "e": math.inf, "c": (1, 2)})
        assert out == {"q": "3/4", "e": "inf", "c": [1, 2]}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stablenorm", "polygon-min-area", "--k", "3"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["area"] == "1/2"
