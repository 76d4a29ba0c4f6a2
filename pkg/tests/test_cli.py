from __future__ import annotations

import json
import subprocess
import sys

from zpcap.cli import EXIT_MISMATCH, EXIT_OK, EXIT_TRUNCATION, EXIT_USAGE, exact, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_cap_matrix_json(capsys):
    code, out, _ = run(capsys, "cap-matrix", "--p", "3", "--N", "5")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["command"] == "cap-matrix"
    assert set(data) >= {"command", "params", "basis", "matrix", "series", "checks"}
    assert data["matrix"][0][3] == [1, 0, 0]
    assert data["matrix"][3][1] == [0, 2, 0]
    assert all(c["pass"] for c in data["checks"])


def test_p_dividing_n_is_a_usage_error(capsys):
    code, _, err = run(capsys, "cap-matrix", "--p", "3", "--N", "6")
    assert code == EXIT_USAGE
    assert "divides" in err


def test_short_length_bound_is_a_truncation_error(capsys):
    code, _, err = run(capsys, "cap-matrix", "--N", "5", "--L", "12")
    assert code == EXIT_TRUNCATION
    assert "18" in err


def test_non_prime_is_a_usage_error(capsys):
    assert run(capsys, "diagonal-chains", "--p", "4")[0] == EXIT_USAGE
    assert run(capsys, "check-ainfty", "--p", "9")[0] == EXIT_USAGE
    assert run(capsys, "rmatrix", "--epsilon", "2")[0] == EXIT_USAGE


def test_rmatrix_zero_diff(capsys):
    code, out, _ = run(capsys, "rmatrix", "--T", "4", "--epsilon", "1", "--diff-against-paper")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["diff"] == []
    assert data["series"][0][1][1] == {"re": "0/1", "im": "-4/1"}


def test_output_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["qst-series", "--p", "5", "--output", str(a)]) == EXIT_OK
    assert main(["qst-series", "--p", "5", "--output", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["series"][2] == 2
    assert data["c_series"][2] == "1/256"


def test_mismatch_exit_code(capsys):
    # the printed z-action uses td + df; asking to compare the other sign is a mismatch
    code, out, _ = run(capsys, "bside-matrix", "--N", "5", "--sign", "-1", "--diff-against-paper")
    assert code == EXIT_MISMATCH
    assert not all(c["pass"] for c in json.loads(out)["checks"])


def test_mirror_diff_reports_the_convention(capsys):
    code, out, _ = run(capsys, "mirror-diff", "--N", "4")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["matches_by_sign"] == {"td+df": False, "td-df": True}


def test_table_format(capsys):
    code, out, _ = run(capsys, "quadrics-verify", "--format", "table")
    assert code == EXIT_OK
    assert "[PASS] v*v = v" in out
    assert "[FAIL]" not in out


def test_small_commands(capsys):
    assert run(capsys, "check-ainfty", "--p", "5", "--coeffs", "0,1,2")[0] == EXIT_OK
    assert run(capsys, "hh-ranks", "--N", "4")[0] == EXIT_OK
    assert run(capsys, "diagonal-chains", "--p", "5", "--max-i", "4")[0] == EXIT_OK
    code, out, _ = run(capsys, "property-suite", "--instances", "3", "--only", "b squares to zero")
    assert code == EXIT_OK
    assert run(capsys, "property-suite", "--only", "nope")[0] == EXIT_USAGE


def test_exact_serialization():
    from fractions import Fraction
    assert exact([Fraction(1, 3), 2, True]) == ["1/3", 2, True]


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "zpcap.cli", "rmatrix", "--T", "2", "--format", "table"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert "[PASS] intertwining identity" in r.stdout
