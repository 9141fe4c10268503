import csv
import io
import json
import math
import subprocess
import sys

import pytest

from picgap import __version__
from picgap.channel import ChannelParams
from picgap.cli import EXIT_CONFIG, EXIT_PRECONDITION, OUTPUT_DIR_ENV, fmt, main, region_from_dict
from picgap.outer import outer_region

BASE = ["--power", "100", "--noise", "1,4,16"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_outer_json_schema(capsys):
    code, out, _ = run(capsys, ["outer", "--type", "1", *BASE, "--out", "json"])
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"type", "P", "N", "constraints", "meta"}
    assert doc["type"] == 1 and doc["P"] == 100.0 and doc["N"] == [1.0, 4.0, 16.0]
    assert len(doc["constraints"]) == 5
    assert set(doc["constraints"][0]) == {"coeffs", "bound_bits", "label"}
    assert doc["meta"]["version"] == __version__


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, ["outer", "--type", "4", *BASE])
    parsed = region_from_dict(json.loads(out))
    ref = outer_region(4, ChannelParams(100.0, (1, 4, 16)))
    assert [c.coeffs for c in parsed.constraints] == [c.coeffs for c in ref.constraints]
    assert [c.label for c in parsed.constraints] == [c.label for c in ref.constraints]
    for a, b in zip(parsed.constraints, ref.constraints):
        assert a.bound == fmt(b.bound)
        assert a.bound == pytest.approx(b.bound, rel=1e-11)


def test_twelve_significant_digits():
    assert fmt(1 / 3) == 0.333333333333
    assert fmt(123456.7890123456) == 123456.789012


@pytest.mark.parametrize(
    "argv",
    [
        ["outer", "--type", "2", *BASE, "--seed", "4"],
        ["inner", "--type", "5", *BASE, "--grid", "8"],
        ["cross-section", "--type", "4", "--power", "1000", "--noise", "1,4,16", "--value", "1.5", "--out", "csv"],
        ["certify", "--type", "3", *BASE, "--samples", "100", "--grid", "8"],
        ["graph-bounds", "--type", "1", *BASE],
        ["appendix", "--type", "5", *BASE],
    ],
)
def test_byte_identical_output(capsys, argv):
    _, a, _ = run(capsys, argv)
    _, b, _ = run(capsys, argv)
    assert a == b and a


def test_cross_section_csv_columns(capsys):
    code, out, _ = run(capsys, ["cross-section", "--type", "1", *BASE, "--value", "1", "--out", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["fixed_axis", "fixed_value_bits", "row_label", "coeff_a", "coeff_b", "bound_bits"]
    r1 = next(r for r in rows if r["row_label"] == "R1+R2'")
    assert r1["fixed_axis"] == "2"
    assert float(r1["bound_bits"]) == pytest.approx(0.5 * math.log2(700 / 3) - 1, rel=1e-11)


def test_graph_bounds_rows(capsys):
    _, out, _ = run(capsys, ["graph-bounds", "--type", "4", *BASE])
    doc = json.loads(out)
    assert doc["graph"] == "{(1|2),(2|3),(3|1)}"
    assert [c["label"] for c in doc["constraints"]] == ["sum(1)", "sum(2)", "sum(3)", "sum(1,2)", "sum(1,3)", "sum(2,3)"]


def test_config_errors(capsys):
    assert run(capsys, ["outer", "--type", "7", *BASE])[0] == EXIT_CONFIG
    assert run(capsys, ["outer", "--type", "1", "--power", "100", "--noise", "4,1,16"])[0] == EXIT_CONFIG
    assert run(capsys, ["outer", "--type", "1", "--power", "100", "--noise", "1,4"])[0] == EXIT_CONFIG
    assert run(capsys, ["bogus"])[0] == EXIT_CONFIG
    assert run(capsys, ["certify", "--type", "1", *BASE, "--samples", "0"])[0] == EXIT_CONFIG
    assert run(capsys, ["appendix", "--type", "2", *BASE])[0] == EXIT_CONFIG


def test_precondition_errors(capsys):
    low = ["--power", "10", "--noise", "1,4,16"]
    assert run(capsys, ["outer", "--type", "1", *low, "--relaxed"])[0] == EXIT_PRECONDITION
    assert run(capsys, ["cross-section", "--type", "1", *low, "--value", "0"])[0] == EXIT_PRECONDITION
    assert run(capsys, ["cross-section", "--type", "1", *BASE, "--value", "9"])[0] == EXIT_PRECONDITION
    assert run(capsys, ["appendix", "--type", "4", *low])[0] == EXIT_PRECONDITION


def test_certify_trivial_case_exits_zero(capsys):
    code, out, _ = run(capsys, ["certify", "--type", "4", "--power", "10", "--noise", "1,4,16", "--samples", "100"])
    doc = json.loads(out)
    assert code == 0 and doc["trivial_case"] is True


def test_certify_example_passes(capsys):
    code, out, _ = run(capsys, ["certify", "--type", "4", "--power", "1000", "--noise", "1,4,16"])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_lattice_verify_small(capsys):
    code, out, _ = run(capsys, ["lattice-verify", "--trials", "300", "--seed", "7"])
    doc = json.loads(out)
    assert code == 0
    assert all(c["passed"] for c in doc["checks"]) and all(m["passed"] for m in doc["mmse"])
    assert doc["meta"]["rng"] == "numpy.PCG64"


def test_output_dir_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    code, out, _ = run(capsys, ["outer", "--type", "3", *BASE, "--output", "sub/o.json"])
    assert code == 0 and out == ""
    doc = json.loads((tmp_path / "sub" / "o.json").read_text())
    assert doc["type"] == 3


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "picgap.cli", "outer", "--type", "5", *BASE, "--out", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout.splitlines()[0] == "row_label,c1,c2,c3,bound_bits"
