from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from pathlib import Path


from foliations.cli import main
from foliations.corpus import fixtures_dir


def run_cli(*argv) -> tuple[int, str]:
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        code = main(list(argv))
    return code, buffer.getvalue()


def fixture(name: str) -> str:
    return str(fixtures_dir() / name)


# ---------------------------------------------------------------------------
# Minimal JSON-schema validation (subset: type/properties/required/items/
# enum/anyOf), enough for the shipped schema files.
# ---------------------------------------------------------------------------

_TYPES = {
    "object": dict, "array": list, "string": str, "boolean": bool,
    "null": type(None), "number": (int, float), "integer": int,
}


def validate(schema: dict, value, path="$"):
    if "enum" in schema:
        assert value in schema["enum"], f"{path}: {value!r} not in enum"
    if "anyOf" in schema:
        errors = []
        for option in schema["anyOf"]:
            try:
                validate(option, value, path)
                break
            except AssertionError as exc:
                errors.append(str(exc))
        else:
            raise AssertionError(f"{path}: no anyOf branch matched ({errors})")
        return
    if "type" in schema:
        kinds = schema["type"]
        if isinstance(kinds, str):
            kinds = [kinds]
        ok = False
        for kind in kinds:
            expected = _TYPES[kind]
            if isinstance(value, expected):
                if kind == "integer" and isinstance(value, bool):
                    continue
                if kind == "number" and isinstance(value, bool):
                    continue
                ok = True
        assert ok, f"{path}: {type(value).__name__} is not {kinds}"
    if isinstance(value, dict):
        for key in schema.get("required", []):
            assert key in value, f"{path}: missing key {key!r}"
        for key, sub in schema.get("properties", {}).items():
            if key in value:
                validate(sub, value[key], f"{path}.{key}")
    if isinstance(value, list) and "items" in schema:
        for i, item in enumerate(value):
            validate(schema["items"], item, f"{path}[{i}]")


def load_schema(name: str) -> dict:
    root = Path(__file__).resolve().parent.parent / "docs" / "schemas"
    return json.loads((root / name).read_text(encoding="utf-8"))


class TestSubcommands:
    def test_parse_round_trip(self):
        code, out = run_cli("parse", fixture("two_integrals.field"))
        assert code == 0
        assert "2*x*y, x^3 + 2*y^2, -2*y*z" in out

    def test_classify_json_schema(self):
        code, out = run_cli("classify", fixture("xabc111.field"))
        assert code == 0
        data = json.loads(out)
        assert data["class"] == "saddle_node" and data["rank"] == 1
        validate(load_schema("singularity_report.schema.json"), data)

    def test_resolve_dim2_json_schema(self):
        code, out = run_cli("resolve", fixture("cusp3.field"))
        assert code == 0
        data = json.loads(out)
        assert data["steps"] == 3
        validate(load_schema("resolution_tree.schema.json"), data)

    def test_resolve_dot(self):
        code, out = run_cli("resolve", fixture("cusp3.field"), "--dot")
        assert code == 0
        assert out.startswith("digraph resolution {")
        assert 'label="E1\\nweight -3"' in out

    def test_resolve_budget_exit_code(self):
        code, out = run_cli("resolve", fixture("sancho_sanz.field"),
                            "--standard-only", "--max-steps", "12")
        assert code == 1
        data = json.loads(out)
        assert data["status"] == "budget_exhausted"
        validate(load_schema("resolution_tree.schema.json"), data)

    def test_resolve_weighted_pipeline(self):
        code, out = run_cli("resolve", fixture("sancho_sanz.field"),
                            "--max-steps", "12")
        assert code == 0
        data = json.loads(out)
        assert data["status"] == "resolved"
        assert data["weighted_steps"] == 1

    def test_blowup(self):
        code, out = run_cli("blowup", fixture("radial2.field"))
        assert code == 0
        data = json.loads(out)
        assert all(entry["dicritical"] for entry in data)
        assert all(entry["divisor_multiplicity"] == 1 for entry in data)
        schema = load_schema("blowup_transform.schema.json")
        for entry in data:
            validate(schema, entry)

    def test_blowup_weighted_pole(self):
        code, out = run_cli("blowup", fixture("pole_example.field"),
                            "--center", "curve:z", "--weights", "2,1",
                            "--chart", "0")
        assert code == 0
        data = json.loads(out)
        assert data["pole_order"] == 1

    def test_integrals_verify(self):
        code, out = run_cli("integrals", fixture("two_integrals.field"),
                            "--verify", "x*z",
                            "--verify", "(y^2 - x^3)*z^2",
                            "--independent", "x*z", "(y^2 - x^3)*z^2")
        assert code == 0
        data = json.loads(out)
        assert all(entry["first_integral"] for entry in data["verify"])
        assert data["independent"] is True
        validate(load_schema("integrals_report.schema.json"), data)

    def test_integrals_negative_exit(self):
        code, out = run_cli("integrals", fixture("radial2.field"),
                            "--verify", "x*y")
        assert code == 1

    def test_integrals_formal(self):
        code, out = run_cli("integrals", fixture("xabc111.field"),
                            "--formal", "--jet-degree", "4")
        assert code == 0
        data = json.loads(out)
        assert data["formal"]["dims_by_degree"] == [1, 2, 3, 4]

    def test_dynamics_holonomy(self):
        code, out = run_cli("dynamics", "holonomy", fixture("saddle13.field"),
                            "--base", "y", "--loop-radius", "0.1")
        assert code == 0
        data = json.loads(out)
        assert abs(data["argument_over_pi"] + 2.0 / 3.0) < 1e-4
        validate(load_schema("dynamics_outputs.schema.json"), data)

    def test_dynamics_semicomplete(self, tmp_path):
        good = tmp_path / "quadratic.field"
        good.write_text("vars: x\nkind: field\nx^2\n", encoding="utf-8")
        code, out = run_cli("dynamics", "semicomplete", str(good))
        assert code == 0
        assert json.loads(out)["verdict"] == "semicomplete"
        bad = tmp_path / "cubic.field"
        bad.write_text("vars: x\nkind: field\nx^3\n", encoding="utf-8")
        code, out = run_cli("dynamics", "semicomplete", str(bad))
        assert code == 1
        assert json.loads(out)["verdict"] == "not_semicomplete"

    def test_dynamics_timeform(self, tmp_path):
        path = tmp_path / "cubic.field"
        path.write_text("vars: x\nkind: field\nx^3\n", encoding="utf-8")
        code, out = run_cli("dynamics", "timeform", str(path),
                            "--path", "half:0.1")
        assert code == 0
        data = json.loads(out)
        assert abs(complex(*data["integral"])) < 1e-9

    def test_dynamics_descent_csv(self, tmp_path):
        path = tmp_path / "linear.field"
        path.write_text("vars: x\nkind: field\nx\n", encoding="utf-8")
        code, out = run_cli("dynamics", "descent", str(path),
                            "--theta", "0.0", "--start", "0.4,0.3",
                            "--t-max", "1.0", "--csv")
        assert code == 0
        assert out.splitlines()[0] == "t,re,im"

    def test_parse_error_exit_code(self, tmp_path):
        path = tmp_path / "bad.field"
        path.write_text("vars: x, y\nx + , y\n", encoding="utf-8")
        code, _ = run_cli("parse", str(path))
        assert code == 2

    def test_missing_file_exit_code(self):
        code, _ = run_cli("classify", "/nonexistent/nowhere.field")
        assert code == 2


class TestCorpusCommand:
    def test_full_run_passes(self):
        code, out = run_cli("corpus")
        assert code == 0
        data = json.loads(out)
        assert data["failures"] == 0
        assert data["total"] >= 20
        validate(load_schema("corpus_report.schema.json"), data)

    def test_filter(self):
        code, out = run_cli("corpus", "--filter", "jouanolou")
        assert code == 0
        data = json.loads(out)
        assert data["total"] == 3
        assert all("jouanolou" in c["name"] for c in data["checks"])

    def test_determinism_byte_identical(self):
        _, first = run_cli("corpus")
        _, second = run_cli("corpus")
        assert first == second

    def test_corrupted_fixture_reported_with_path(self, tmp_path):
        good = fixtures_dir()
        for path in good.glob("*.field"):
            (tmp_path / path.name).write_text(path.read_text(encoding="utf-8"),
                                              encoding="utf-8")
        (tmp_path / "broken.field").write_text("vars: x, y\nx + , y\n",
                                               encoding="utf-8")
        code, out = run_cli("corpus", "--filter", "fixture_files",
                            "--fixtures", str(tmp_path))
        assert code == 1
        data = json.loads(out)
        failing = [c for c in data["checks"] if not c["passed"]]
        assert failing and "broken.field" in failing[0]["details"]


class TestFlagValidation:
    def test_bad_weights_usage_error(self):
        code, _ = run_cli("blowup", fixture("radial2.field"),
                          "--weights", "two,one")
        assert code == 2

    def test_bad_center_usage_error(self):
        code, _ = run_cli("blowup", fixture("radial2.field"),
                          "--center", "sphere")
        assert code == 2

    def test_bad_start_usage_error(self, tmp_path):
        path = tmp_path / "lin.field"
        path.write_text("vars: x\nkind: field\nx\n", encoding="utf-8")
        code, _ = run_cli("dynamics", "descent", str(path), "--start", "oops")
        assert code == 2
