import csv
import io
import json

from cdspec.cli import EXIT_BUDGET, EXIT_INCONSISTENT, EXIT_OK, EXIT_USAGE, main

from conftest import get_ctx


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def test_spectrum_json(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--field", "5^1", "--d", "3", "--c", "-1", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["omega"] == {"0": 2, "1": 1, "2": 2}
    assert payload["uniformity"] == 2
    assert payload["class"] == "APcN"


def test_spectrum_c0_pcn(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--field", "5^1", "--d", "3", "--c", "0", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["class"] == "PcN"
    assert payload["omega"]["1"] == 5


def test_spectrum_rejects_nonprime(capsys):
    code, _, err = run_cli(capsys, "spectrum", "--field", "4^1", "--d", "3", "--c", "0")
    assert code == EXIT_USAGE
    assert "prime" in err


def test_spectrum_budget_exit(capsys):
    code, _, err = run_cli(
        capsys, "spectrum", "--field", "2^12", "--d", "3", "--c", "0",
        "--budget-q", "1024",
    )
    assert code == EXIT_BUDGET


def test_spectrum_named_inverse_d(capsys):
    code, out, _ = run_cli(
        capsys, "spectrum", "--field", "2^4", "--d", "inv", "--c", "0", "--format", "json"
    )
    assert code == EXIT_OK
    assert json.loads(out)["d"] == 14


def test_spectrum_pk1half_requires_k(capsys):
    code, _, err = run_cli(
        capsys, "spectrum", "--field", "5^2", "--d", "pk1half", "--c", "-1"
    )
    assert code == EXIT_USAGE
    code, out, _ = run_cli(
        capsys, "spectrum", "--field", "5^2", "--d", "pk1half", "--k", "1",
        "--c", "-1", "--format", "json",
    )
    assert code == EXIT_OK
    assert json.loads(out)["d"] == 3


def test_c_parsing_forms(capsys):
    # raw encoding and digit vector name the same element of GF(9)
    for cspec in ("e:5", "2,1"):
        code, out, _ = run_cli(
            capsys, "spectrum", "--field", "3^2", "--d", "2", "--c", cspec,
            "--format", "json",
        )
        assert code == EXIT_OK
        assert json.loads(out)["c"] == 5


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def test_verify_match_exit0(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--field", "3^2", "--d", "6", "--c", "-1", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["verdict"] == "MATCH"
    assert payload["eq1"] is True


def test_verify_inconsistent_exit3(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--field", "3^4", "--d", "78", "--c", "-1", "--format", "json"
    )
    assert code == EXIT_INCONSISTENT
    payload = json.loads(out)
    assert payload["verdict"] == "PREDICTOR_INCONSISTENT"
    assert payload["computed"]["omega"]["0"] == 50


def test_verify_char2_witness(capsys):
    ctx = get_ctx(2, 4)
    c = next(x for x in range(2, 16) if ctx.trace(x) == 1 and ctx.trace(ctx.inv(x)) == 1)
    code, out, _ = run_cli(
        capsys, "verify", "--field", "2^4", "--d", "14", "--c", f"e:{c}",
        "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["verdict"] == "MATCH"
    assert payload["computed"]["omega"] == {"0": 6, "1": 4, "2": 6}


def test_verify_csv_schema(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--field", "5^2", "--d", "11", "--c", "-1", "--format", "csv"
    )
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "n", "modulus", "d", "c", "verdict", "uniformity",
                       "omega_json", "eq1", "eq2"]
    assert rows[1][:6] == ["5", "2", "2,0,1", "11", "4", "MATCH"]
    assert json.loads(rows[1][7]) == {"0": 8, "1": 9, "2": 8}


def test_json_roundtrip_byte_identical(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--field", "5^2", "--d", "11", "--c", "-1", "--format", "json"
    )
    payload = json.loads(out)
    assert json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n" == out


def test_text_format_carries_same_numbers(capsys):
    code, out, _ = run_cli(capsys, "verify", "--field", "5^2", "--d", "11", "--c", "-1")
    assert code == EXIT_OK
    assert "MATCH" in out and "0:8" in out and "1:9" in out


# ---------------------------------------------------------------------------
# sweep / scan / gamma / fuzz
# ---------------------------------------------------------------------------

def test_sweep_inverse_char2(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--field", "2^4", "--d", "14", "--format", "json"
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["tallies"]["MATCH"] == 14
    assert payload["tallies"]["NO_PREDICTOR"] == 1  # c = 0


def test_scan_gf25(capsys):
    code, out, _ = run_cli(
        capsys, "scan", "--field", "5^2", "--c", "-1", "--max-uniformity", "2",
        "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert any(row["class"] == [7, 11] for row in payload["rows"])


def test_gamma_n2(capsys):
    code, out, _ = run_cli(capsys, "gamma", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload == {"closed": 6, "direct": 6, "equal": True, "n": 2}


def test_gamma_n3(capsys):
    code, out, _ = run_cli(capsys, "gamma", "--n", "3", "--format", "json")
    payload = json.loads(out)
    assert payload["closed"] == -22 and payload["equal"] is True


def test_fuzz_cli(capsys):
    code, out, _ = run_cli(
        capsys, "fuzz", "--seed", "1", "--count", "10", "--budget-q", "49",
        "--format", "json",
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["passes"] == 10
    assert payload["failures"] == []


def test_out_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "spectrum", "--field", "5^1", "--d", "3", "--c", "-1",
        "--format", "json", "--out", str(target),
    )
    assert code == EXIT_OK
    assert out == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["omega"] == {"0": 2, "1": 1, "2": 2}


def test_usage_error_on_unknown_command(capsys):
    assert main(["bogus"]) == EXIT_USAGE
