"""Case-file parsing, report serialization and the command-line surface."""

import csv
import json

import pytest

from vofrac.cases import (
    DEFAULT_BATTERY_SPEC,
    default_battery,
    make_grid,
    make_order,
    make_scale,
    parse_case_file,
    parse_cases,
)
from vofrac.cli import main
from vofrac.errors import IoError, ParseError, ValidationError
from vofrac.functions import Interval
from vofrac.report import CSV_COLUMNS, emit_report

GOOD_CASE = {
    "cases": [
        {
            "name": "only",
            "scale": {"form": "identity"},
            "order": {"form": "constant", "value": 0.5},
            "function": {"form": "poly", "coeffs": [0.0, 1.0]},
            "checks": ["eq7"],
            "params": {"xi_const": 0.5},
        }
    ]
}


def test_parse_good_document():
    cases = parse_cases(GOOD_CASE)
    assert len(cases) == 1
    c = cases[0]
    assert c.name == "only"
    assert c.checks == ("eq7",)
    assert c.iv == Interval(0.0, 30.0)
    assert c.xi(0.0, 1.0) == pytest.approx(0.5)


def test_parse_rejects_bad_shapes():
    with pytest.raises(ParseError):
        parse_cases({"not_cases": []})
    with pytest.raises(ParseError):
        parse_cases({"cases": [{"scale": {"form": "identity"}}]})  # no name
    with pytest.raises(ParseError):
        make_scale({"form": "spiral"})
    with pytest.raises(ParseError):
        make_order({"form": "constant"})  # missing value
    with pytest.raises(ParseError):
        make_grid({"points": [[2.0]], "abscissa": 2.0})


def test_order_range_validated_on_dense_grid():
    with pytest.raises(ValidationError):
        make_order({"form": "constant", "value": 1.2})
    # the affine example overruns 1 on a long interval
    with pytest.raises(ValidationError):
        make_order({"form": "affine", "a": 0.3, "b": 0.3}, Interval(0.0, 30.0))
    # mobius stays inside (0, 1) everywhere
    make_order({"form": "mobius", "a": 0.3, "b": 0.4}, Interval(0.0, 30.0))


def test_scale_validation_messages():
    with pytest.raises(ValidationError):
        make_scale({"form": "linear", "c": 0.0})
    with pytest.raises(ValidationError):
        make_scale({"form": "power", "k": 0.5})
    with pytest.raises(ValidationError):
        make_scale({"form": "exp", "c": 0.0})


def test_parse_case_file_diagnostics(tmp_path):
    p = tmp_path / "cases.json"
    p.write_text('{"cases": [\n  {bad json}\n]}')
    with pytest.raises(ParseError) as exc:
        parse_case_file(p)
    assert ":2:" in str(exc.value)  # line number surfaces
    with pytest.raises(ParseError):
        parse_case_file(tmp_path / "missing.json")
    p.write_text(json.dumps(GOOD_CASE))
    assert len(parse_case_file(p)) == 1


def test_default_battery_shape():
    cases = default_battery()
    assert len(cases) == len(DEFAULT_BATTERY_SPEC["cases"])
    names = {c.name for c in cases}
    assert {"eq7_control", "eq22_control", "conv_variable"} <= names


def test_emit_report_refuses_empty(tmp_path):
    with pytest.raises(IoError):
        emit_report([], "csv", tmp_path / "out.csv")


def test_cli_verify_csv_and_json(tmp_path):
    out_csv = tmp_path / "r.csv"
    rc = main(["verify", "--case", "default", "--which", "eq12",
               "--out", str(out_csv), "--format", "csv"])
    assert rc == 0
    with open(out_csv, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == CSV_COLUMNS
    assert len(rows) == 1 + 2 * 8  # two eq12 cases x eight grid points
    verdicts = {(r[0], r[10]) for r in rows[1:]}
    assert ("phi_scaled_identity", "HOLDS") in verdicts
    assert ("phi_scaled_2t", "FAILS") in verdicts

    out_json = tmp_path / "r.json"
    rc = main(["verify", "--case", "default", "--which", "eq12",
               "--out", str(out_json), "--format", "json"])
    assert rc == 0
    doc = json.loads(out_json.read_text())
    assert {r["case_name"]: r["verdict"] for r in doc["reports"]} == {
        "phi_scaled_identity": "HOLDS",
        "phi_scaled_2t": "FAILS",
    }


def test_cli_verify_case_file(tmp_path):
    p = tmp_path / "cases.json"
    p.write_text(json.dumps(GOOD_CASE))
    out = tmp_path / "r.csv"
    rc = main(["verify", "--case", str(p), "--out", str(out)])
    assert rc == 0
    assert out.exists()


def test_cli_exit_codes(tmp_path):
    # usage errors -> 2
    assert main(["verify"]) == 2
    assert main(["--bogus"]) == 2
    assert main(["verify", "--case", "default", "--format", "yaml"]) == 2
    # diagnosed failures -> 1
    assert main(["verify", "--case", str(tmp_path / "nope.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text('{"cases": [{"name": "x", "scale": {"form": "identity"}, '
                   '"order": {"form": "constant", "value": 1.2}, '
                   '"function": {"form": "poly", "coeffs": [0.0, 1.0]}}]}')
    assert main(["verify", "--case", str(bad)]) == 1


def test_cli_operator_and_inverse(tmp_path):
    out = tmp_path / "d.csv"
    rc = main(["deriv", "--case", "default", "--name", "eq7_control",
               "--t", "0.5,1.0", "--out", str(out)])
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["t", "value"] and len(rows) == 3

    out = tmp_path / "i.csv"
    rc = main(["invlaplace", "--transform", "shifted_inverse", "--shift", "1.0",
               "--t", "1.0", "--out", str(out)])
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    import math
    assert float(rows[1][1]) == pytest.approx(math.exp(-1.0), rel=1e-7)

    rc = main(["laplace", "--case", "default", "--name", "eq7_control",
               "--out", str(tmp_path / "l.csv")])
    assert rc == 0
