import json
import math

import pytest

from periodkit.cli import main

TWO_PI = 2 * math.pi


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_period_csv(capsys):
    code, out, _ = run_cli(capsys, ["period", "--lambda", "0", "--xi", "1",
                                    "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "lambda,xi,h,T,T_err,method"
    assert lines[1].startswith("0,1,0.5,6.28318530717958")


def test_period_by_energy_json(capsys):
    code, out, _ = run_cli(capsys, ["period", "--lambda", "1", "--h", "5"])
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["rel_tol"] == 1e-10
    assert payload["samples"][0]["h"] == 5


def test_scan_csv_rows(capsys):
    code, out, _ = run_cli(capsys, ["scan", "--lambda", "0", "--xi-min", "1",
                                    "--xi-max", "2", "--n", "3", "--format", "csv"])
    assert code == 0
    assert len(out.splitlines()) == 4


def test_two_pi_json(capsys):
    code, out, _ = run_cli(capsys, ["two-pi", "--lambda", "1", "--k-max", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["brackets"][0]["k"] == 1
    assert len(payload["two_pi_levels"]) >= 1


def test_critical_csv(capsys):
    code, out, _ = run_cli(capsys, ["critical", "--lambda", "1", "--xi-max",
                                    str(4 * math.pi), "--format", "csv"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "xi_star,h_star,T_star,kind,refine_err"
    assert len(lines) >= 2
    assert lines[1].split(",")[3] in ("max", "min")


def test_bessel_subcommands(capsys):
    code, out, _ = run_cli(capsys, ["bessel", "j1", "--xi", "1"])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(0.44005058574493355, abs=1e-12)

    code, out, _ = run_cli(capsys, ["bessel", "zeros", "--n", "2", "--format", "csv"])
    assert code == 0
    assert out.splitlines()[0] == "k,zero"

    code, out, _ = run_cli(capsys, ["bessel", "identity", "--n", "40"])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_opial_json(capsys):
    code, out, _ = run_cli(capsys, ["opial", "--lambda", "1", "--x-max", "10"])
    assert code == 0
    zeros = json.loads(out)["indicator_zeros"]
    assert any(abs(z - TWO_PI) < 1e-9 for z in zeros)


def test_oracle_with_trace(capsys, tmp_path):
    trace_path = tmp_path / "trace.csv"
    code, out, err = run_cli(capsys, ["oracle", "--lambda", "1", "--xi", "2",
                                      "--tol", "1e-10", "--dump-trace",
                                      str(trace_path), "--format", "csv"])
    assert code == 0
    assert out.splitlines()[1].endswith("ode-oracle")
    assert trace_path.read_text().splitlines()[0] == "t,x,y,H"
    assert "trace written" in err


def test_verify_exit_codes(capsys):
    code, out, err = run_cli(capsys, ["verify", "--lambda", "1", "--k-max", "1"])
    assert code == 0
    assert json.loads(out)["passed"] is True
    assert "[pass]" in err

    code, _, err = run_cli(capsys, ["verify", "--lambda", "0", "--k-max", "1"])
    assert code == 2
    assert "isochronous" in err


def test_verify_failure_maps_to_exit_one(capsys, monkeypatch):
    import periodkit.cli as cli
    from periodkit.report import CheckResult, run_verify

    real = run_verify(1.0, 1)
    checks = dict(real.checks)
    checks["opial"] = CheckResult(False, -1.0, "forced failure")
    import dataclasses
    broken = dataclasses.replace(real, checks=checks)
    monkeypatch.setattr(cli, "run_verify", lambda lam, k, cfg: broken)

    code, out, err = run_cli(capsys, ["verify", "--lambda", "1", "--k-max", "1"])
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "[FAIL] opial" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as excinfo:
        main(["period", "--lambda", "1"])  # neither --xi nor --h
    assert excinfo.value.code == 2


def test_invalid_lambda_is_usage_error(capsys):
    code, _, err = run_cli(capsys, ["period", "--lambda", "-2", "--xi", "1"])
    assert code == 2
    assert "error:" in err


def test_config_file_and_flag_precedence(capsys, tmp_path):
    conf = tmp_path / "conf.json"
    conf.write_text(json.dumps({"rel_tol": 1e-8, "base_nodes": 11}))

    code, out, _ = run_cli(capsys, ["period", "--lambda", "1", "--xi", "1",
                                    "--config", str(conf)])
    assert code == 0
    assert json.loads(out)["config"]["rel_tol"] == 1e-8
    assert json.loads(out)["config"]["base_nodes"] == 11

    code, out, _ = run_cli(capsys, ["period", "--lambda", "1", "--xi", "1",
                                    "--config", str(conf), "--rel-tol", "1e-9"])
    assert code == 0
    assert json.loads(out)["config"]["rel_tol"] == 1e-9

    conf.write_text(json.dumps({"rel_tolerance": 1e-8}))
    code, _, err = run_cli(capsys, ["period", "--lambda", "1", "--xi", "1",
                                    "--config", str(conf)])
    assert code == 2
    assert "unknown config keys" in err


def test_out_files_are_byte_identical(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _, _ = run_cli(capsys, ["two-pi", "--lambda", "1", "--k-max", "1",
                                      "--out", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.json.meta.json").exists()
