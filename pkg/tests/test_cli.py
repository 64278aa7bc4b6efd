import csv
import io
import json
import math
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from hypab import cli
from hypab.validation import CheckResult

SCHEMA = json.loads(resources.files("hypab").joinpath("schema/output.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--format", "json", *argv)
    assert code == 0
    rec = json.loads(out)
    jsonschema.validate(rec, SCHEMA)
    return rec


def parse_csv(text):
    assert text.endswith("\r\n")
    first, rest = text.split("\r\n", 1)
    rows = list(csv.reader(io.StringIO(rest, newline="")))
    return first, rows[0], rows[1:]


COMMANDS = [
    ("spectrum", "landau", "--b", "3"),
    ("spectrum", "higgs", "--omega", "3", "--lmax", "1"),
    ("--R", "100", "spectrum", "coulomb", "--alpha", "1"),
    ("kernel", "--xi", "0.3"),
    ("interference", "--pairs", "0:-1,2:2"),
    ("flatlimit", "--mu", "0,1", "--z", "2", "--nu", "1000"),
    ("validate", "--suite", "specfun"),
]


@pytest.mark.parametrize("argv", COMMANDS)
def test_json_matches_schema(capsys, argv):
    rec = run_json(capsys, *argv)
    assert rec["schema_version"] == cli.SCHEMA_VERSION
    for row in rec["rows"]:
        for v in row.values():
            if isinstance(v, float):
                assert math.isfinite(v)


@pytest.mark.parametrize("argv", COMMANDS)
def test_csv_layout(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    first, header, rows = parse_csv(out)
    command = [a for a in argv if a in ("spectrum", "kernel", "interference", "flatlimit", "validate")][0]
    assert first == f"# {cli.SCHEMA_VERSION},{command}"
    assert len(set(header)) == len(header)
    assert all(len(r) == len(header) for r in rows)


def test_csv_and_json_carry_same_numbers(capsys):
    rec = run_json(capsys, "kernel", "--xi", "0.3", "--mode", "partial-wave")
    _, out, _ = run(capsys, "kernel", "--xi", "0.3", "--mode", "partial-wave")
    _, header, rows = parse_csv(out)
    assert [float(x) for x in rows[0][1:]] == [rec["rows"][0][c] for c in header[1:]]


def test_byte_identical_repeats():
    argv = [sys.executable, "-m", "hypab.cli", "kernel", "--xi", "0.3", "--mode", "both"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and len(a) > 100


def test_spectrum_examples(capsys):
    assert [r["E"] for r in run_json(capsys, "spectrum", "landau", "--b", "3")["rows"]] == pytest.approx([1.5, 3.5, 4.5])
    assert len(run_json(capsys, "spectrum", "higgs", "--omega", "3", "--xi", "0", "--lmax", "0")["rows"]) == 3
    rows = run_json(capsys, "--R", "100", "spectrum", "coulomb", "--alpha", "1", "--xi", "0", "--lmax", "0")["rows"]
    assert len(rows) == 10 and rows[0]["E"] == pytest.approx(-1.99, abs=1e-12)


def test_spectrum_ordering(capsys):
    rows = run_json(capsys, "spectrum", "higgs", "--omega", "4", "--lmax", "2", "--xi", "0.3")["rows"]
    keys = [(r["l"], r["N"]) for r in rows]
    assert keys == sorted(keys)
    assert {r["l"] for r in rows} == {-2, -1, 0, 1, 2}


def test_kernel_both_reports_duality(capsys):
    rows = run_json(capsys, "kernel", "--xi", "0.3", "--beta", "0.5", "--tau1", "1", "--tau2", "1", "--dphi", "0.7")["rows"]
    by = {r["term"]: r for r in rows}
    assert by["duality_residual"]["re"] < 1e-4


def test_kernel_zero_flux_real(capsys):
    rows = run_json(capsys, "kernel", "--xi", "0", "--dphi", "0", "--mode", "partial-wave")["rows"]
    assert abs(rows[0]["im"]) < 1e-12


def test_kernel_winding_listing(capsys):
    rows = run_json(capsys, "kernel", "--mode", "winding", "--nmax", "5")["rows"]
    terms = {r["term"]: r["abs"] for r in rows if r["term"].startswith("n=")}
    assert sorted(int(t[2:]) for t in terms) == list(range(-5, 6))
    for sign in (1, -1):
        mags = [terms[f"n={sign * n}"] for n in range(1, 6)]
        assert all(b < a for a, b in zip(mags, mags[1:]))


def test_interference_examples(capsys):
    rows = run_json(capsys, "interference", "--pairs", "0:-1,2:2", "--xi-start", "0", "--xi-end", "1",
                    "--xi-steps", "5")["rows"]
    assert [r["I[0:-1]"] for r in rows] == pytest.approx([1, 0, -1, 0, 1], abs=1e-12)
    assert len({r["I[2:2]"] for r in rows}) == 1
    later = run_json(capsys, "interference", "--pairs", "0:-1,2:2", "--xi-start", "1", "--xi-end", "2",
                     "--xi-steps", "5")["rows"]
    for a, b in zip(rows, later):
        assert a["I[0:-1]"] == pytest.approx(b["I[0:-1]"], abs=1e-12)


def test_interference_sign_flag(capsys):
    a = run_json(capsys, "interference", "--xi-steps", "1", "--magnitude")["rows"][0]["I[0:-1]"]
    b = run_json(capsys, "interference", "--xi-steps", "1", "--verbatim-sign")["rows"][0]["I[0:-1]"]
    assert b == pytest.approx(-a) and a > 0


def test_validate_limits(capsys):
    rows = run_json(capsys, "validate", "--suite", "limits")["rows"]
    nu1000 = [r for r in rows if r["check"].endswith("nu=1000")]
    assert len(nu1000) == 8 and all(r["residual"] < 1e-2 and r["passed"] for r in nu1000)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "o.csv"
    code, out, _ = run(capsys, "--out", str(target), "spectrum", "landau", "--b", "3")
    assert code == 0 and out == ""
    assert target.read_bytes().startswith(b"# 1.0,spectrum\r\n")


@pytest.mark.parametrize("argv", [
    ["--seedless", "spectrum", "landau"],
    ["spectrum", "square"],
    ["kernel", "--mode", "fast"],
    ["interference", "--pairs", "0-1"],
    ["interference", "--xi-steps", "0"],
    ["flatlimit", "--mu", "a,b"],
    ["--format", "xml", "spectrum", "landau"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.main(argv)
    assert exc.value.code == 2


def test_invalid_value_exit_2(capsys):
    code, _, err = run(capsys, "kernel", "--beta", "-1")
    assert code == 2 and "error" in err


def test_non_convergence_exit_3(capsys):
    code, out, err = run(capsys, "kernel", "--beta", "0.05", "--lmax", "3", "--mode", "partial-wave")
    assert code == 3 and out == "" and "not converged" in err


def test_validation_failure_exit_4(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_suite", lambda name: [CheckResult("specfun", "forced", 1.0, 0.5)])
    code, out, _ = run(capsys, "validate", "--suite", "specfun")
    assert code == 4
    assert "false" in out
