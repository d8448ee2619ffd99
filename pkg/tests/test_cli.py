import subprocess
import sys

import pytest

from dgres.cli import main
from dgres.errors import ParseError
from dgres.probfile import parse_expression, parse_problem


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expression_parser():
    terms = parse_expression("3*x^2 - 1/2*y*e")
    assert ({"x": 2}, {"e": 1, "y": 1}) == (terms[0][1], terms[1][1])
    assert str(terms[0][0]) == "3" and str(terms[1][0]) == "-1/2"


def test_expression_parse_error_has_position():
    with pytest.raises(ParseError) as exc:
        parse_expression("x^^2", line_no=4, col_offset=0)
    assert exc.value.line == 4
    assert exc.value.column is not None


def test_problem_parse_errors():
    with pytest.raises(ParseError):
        parse_problem("field rationals\n")  # no [algebra]
    with pytest.raises(ParseError):
        parse_problem("[algebra]\next e 1\n")  # no field
    with pytest.raises(ParseError):
        parse_problem("field rationals\n[algebra]\next e 1\nd e = x^^2\n")


def test_validate_exit_codes(tmp_path, capsys, golden_dir):
    code, out, err = run_cli(["validate", str(golden_dir / "e3.dgres")], capsys)
    assert code == 0 and "verdict: PASS" in out

    bad = tmp_path / "bad.dgres"
    bad.write_text("field rationals\n\n[algebra]\nbase y 2\next e 2\nd e = y\n")
    code, out, err = run_cli(["validate", str(bad)], capsys)
    assert code == 1 and "FAIL" in out

    broken = tmp_path / "broken.dgres"
    broken.write_text("field rationals\n[algebra]\next e 1\nd e = x^^2\n")
    code, out, err = run_cli(["validate", str(broken)], capsys)
    assert code == 2 and "error" in err


def test_classical_bar_requires_cap(capsys, golden_dir):
    code, out, err = run_cli(["bar", str(golden_dir / "e1.dgres")], capsys)
    assert code == 2 and "max-n" in err


def test_missing_module_is_usage_error(capsys, golden_dir):
    code, out, err = run_cli(["lift", str(golden_dir / "e1.dgres")], capsys)
    assert code == 2
    code, out, err = run_cli(["lift", str(golden_dir / "e1.dgres"), "--module", "nope"], capsys)
    assert code == 2


def test_commands_pass_on_fixtures(capsys, golden_dir):
    for args in (
        ["bar", str(golden_dir / "e1.dgres"), "--max-n", "3", "--max-degree", "5"],
        ["bar", str(golden_dir / "e2.dgres"), "--reduced", "--max-degree", "6"],
        ["semifree", str(golden_dir / "e3.dgres"), "--max-degree", "6"],
        ["homology", str(golden_dir / "e3p.dgres"), "--max-degree", "6"],
        ["lift", str(golden_dir / "e1.dgres"), "--module", "CB"],
        ["lift", str(golden_dir / "e2.dgres"), "--module", "K"],
        ["derivations", str(golden_dir / "e1.dgres"), "--max-degree", "5", "--samples", "5", "--seed", "1"],
    ):
        code, out, err = run_cli(args, capsys)
        assert code == 0, (args, out, err)
        assert "verdict: PASS" in out


def test_reports_are_deterministic(capsys, golden_dir):
    for fmt in ("text", "machine"):
        args = ["semifree", str(golden_dir / "e1.dgres"), "--max-degree", "5", "--format", fmt]
        _, out1, _ = run_cli(args, capsys)
        _, out2, _ = run_cli(args, capsys)
        assert out1.encode() == out2.encode()


def test_machine_format_is_json(capsys, golden_dir):
    import json

    code, out, err = run_cli(
        ["validate", str(golden_dir / "e2.dgres"), "--format", "machine"], capsys
    )
    payload = json.loads(out)
    assert payload["verdict"] == "PASS"
    assert payload["command"] == "validate"
    assert "input_sha256" in payload


def test_console_script_entry_point(golden_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "dgres.cli", "validate", str(golden_dir / "e3.dgres")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "verdict: PASS" in proc.stdout


def test_threads_env_var(golden_dir, capsys, monkeypatch):
    monkeypatch.setenv("DGRES_THREADS", "4")
    code, out, err = run_cli(["validate", str(golden_dir / "e2.dgres")], capsys)
    assert code == 0 and "threads=4" in out
    monkeypatch.setenv("DGRES_THREADS", "zero")
    code, out, err = run_cli(["validate", str(golden_dir / "e2.dgres")], capsys)
    assert code == 2
