"""Command-line front end.

Data goes to stdout (or --out, written atomically); diagnostics go to
stderr.  Exit codes: 0 all requested checks passed, 1 a verification check
failed, 2 usage or configuration error.  Identical invocations produce
byte-identical payloads; when --out is used, run metadata (timestamp, argv)
lands in a separate <out>.meta.json sidecar so the payload stays clean.

Option precedence: explicit flags > --config JSON file > built-in defaults.
The effective quadrature configuration is echoed inside every JSON report.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .analysis import (find_critical_periods, find_two_pi_levels,
                       lam_derivative_at_zero, opial_indicator,
                       opial_sign_changes, scan_period, two_pi_brackets)
from .bessel import j1, j1_zeros, variational_integral
from .errors import (DegenerateIsochronous, NoConvergence, NonMonotoneEnergy,
                     PeriodkitError, SignViolation)
from .model import PotentialSystem
from .oracle import orbit_period, orbit_trace
from .quadrature import QuadratureConfig, period_at_amplitude, period_at_energy
from .report import (_write_atomic, fmt_float, report_to_json, run_verify,
                     samples_to_csv, samples_to_json)

USAGE_ERROR = 2
CHECK_FAILURE = 1


def _common_options() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--rel-tol", type=float, default=None,
                   help="quadrature relative tolerance (default 1e-10)")
    p.add_argument("--max-depth", type=int, default=None,
                   help="adaptive recursion cap (default 40)")
    p.add_argument("--base-nodes", type=int, default=None,
                   help="Gauss-Legendre nodes per panel (default 15)")
    p.add_argument("--config", default=None,
                   help="JSON file with rel_tol / max_depth / base_nodes defaults")
    p.add_argument("--format", choices=("csv", "json"), default=None,
                   help="output format (default json)")
    p.add_argument("--out", default=None, help="write payload to this path")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="periodkit",
        description="Period function of the planar center x'' + x + lam*sin(x) = 0")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("period", parents=[common],
                       help="one period at --xi or --h")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--xi", type=float)
    group.add_argument("--h", type=float)

    p = sub.add_parser("scan", parents=[common],
                       help="uniform amplitude scan of the period function")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--xi-min", type=float, required=True)
    p.add_argument("--xi-max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("critical", parents=[common],
                       help="locate and classify the extrema of T")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--xi-max", type=float, required=True)

    p = sub.add_parser("two-pi", parents=[common],
                       help="bracket pairs and the 2*pi-period energy levels")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--k-max", type=int, required=True)

    p = sub.add_parser("opial", parents=[common],
                       help="zeros of the even-potential monotonicity indicator")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)

    p = sub.add_parser("bessel", parents=[common], help="J1 toolbox")
    p.add_argument("op", choices=("j1", "zeros", "identity"))
    p.add_argument("--xi", type=float, help="argument for j1")
    p.add_argument("--n", type=int, help="zero count / identity grid size")
    p.add_argument("--xi-max", type=float, default=20.0,
                   help="identity sweep upper end (default 20)")

    p = sub.add_parser("verify", parents=[common],
                       help="run the full verification pipeline (JSON report)")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--k-max", type=int, required=True)

    p = sub.add_parser("oracle", parents=[common],
                       help="period by direct ODE integration")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--full-return", action="store_true",
                   help="measure a full loop instead of doubling the half period")
    p.add_argument("--dump-trace", default=None, metavar="PATH",
                   help="write one sampled period as CSV columns t,x,y,H")

    return parser


def _resolve_config(args) -> QuadratureConfig:
    fileconf = {}
    if args.config:
        with open(args.config) as fh:
            fileconf = json.load(fh)
        unknown = set(fileconf) - {"rel_tol", "max_depth", "base_nodes"}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    def pick(flag, key, default):
        if flag is not None:
            return flag
        return fileconf.get(key, default)
    return QuadratureConfig(
        rel_tol=float(pick(args.rel_tol, "rel_tol", 1e-10)),
        max_depth=int(pick(args.max_depth, "max_depth", 40)),
        base_nodes=int(pick(args.base_nodes, "base_nodes", 15)))


def _emit(args, text: str) -> None:
    if args.out:
        _write_atomic(args.out, text)
        meta = {"written": args.out, "timestamp": time.time(),
                "argv": sys.argv[1:]}
        _write_atomic(args.out + ".meta.json", json.dumps(meta, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _json_payload(obj, cfg: QuadratureConfig) -> str:
    wrapped = dict(obj)
    wrapped["config"] = {"rel_tol": cfg.rel_tol, "max_depth": cfg.max_depth,
                         "base_nodes": cfg.base_nodes}
    return json.dumps(wrapped, indent=2) + "\n"


def _csv_table(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(v if isinstance(v, str) else fmt_float(v) for v in row))
    return "\n".join(lines) + "\n"


def _samples_payload(args, cfg, samples) -> str:
    if (args.format or "json") == "csv":
        return samples_to_csv(samples)
    return _json_payload({"samples": json.loads(samples_to_json(samples))}, cfg)


def _run(args) -> int:
    cfg = _resolve_config(args)
    fmt = args.format or "json"

    if args.command == "period":
        sys_ = PotentialSystem(args.lam)
        if args.xi is not None:
            sample = period_at_amplitude(sys_, args.xi, cfg)
        else:
            sample = period_at_energy(sys_, args.h, cfg)
        _emit(args, _samples_payload(args, cfg, [sample]))
        return 0

    if args.command == "scan":
        sys_ = PotentialSystem(args.lam)
        samples = scan_period(sys_, args.xi_min, args.xi_max, args.n, cfg)
        _emit(args, _samples_payload(args, cfg, samples))
        return 0

    if args.command == "critical":
        sys_ = PotentialSystem(args.lam)
        crit = find_critical_periods(sys_, args.xi_max, cfg)
        rows = [[c.xi_star, c.h_star, c.T_star, c.kind, c.refine_err] for c in crit]
        if fmt == "csv":
            _emit(args, _csv_table(["xi_star", "h_star", "T_star", "kind", "refine_err"], rows))
        else:
            _emit(args, _json_payload({"lambda": args.lam, "critical_periods": [
                dict(zip(("xi_star", "h_star", "T_star", "kind", "refine_err"), r))
                for r in rows]}, cfg))
        return 0

    if args.command == "two-pi":
        sys_ = PotentialSystem(args.lam)
        brackets = two_pi_brackets(sys_, args.k_max, cfg)
        levels = [] if args.lam == 0.0 else find_two_pi_levels(sys_, args.k_max, cfg)
        if fmt == "csv":
            rows = [[b.k, b.h_lo, b.h_hi, b.T_lo, b.T_hi, b.sign_lo, b.sign_hi] for b in brackets]
            _emit(args, _csv_table(["k", "h_lo", "h_hi", "T_lo", "T_hi", "sign_lo", "sign_hi"], rows))
        else:
            _emit(args, _json_payload({
                "lambda": args.lam,
                "brackets": [{"k": b.k, "h_lo": b.h_lo, "h_hi": b.h_hi,
                              "T_lo": b.T_lo, "T_hi": b.T_hi,
                              "sign_lo": b.sign_lo, "sign_hi": b.sign_hi,
                              "degenerate": b.degenerate} for b in brackets],
                "two_pi_levels": levels}, cfg))
        return 0

    if args.command == "opial":
        sys_ = PotentialSystem(args.lam)
        zeros = opial_sign_changes(sys_, args.x_max)
        if fmt == "csv":
            _emit(args, _csv_table(["k", "x_zero"],
                                   [[k + 1, z] for k, z in enumerate(zeros)]))
        else:
            _emit(args, _json_payload({"lambda": args.lam, "x_max": args.x_max,
                                       "indicator_zeros": zeros}, cfg))
        return 0

    if args.command == "bessel":
        if args.op == "j1":
            if args.xi is None:
                raise ValueError("bessel j1 needs --xi")
            e = j1(args.xi)
            _emit(args, _json_payload({"xi": e.xi, "value": e.value,
                                       "method": e.method,
                                       "err_bound": e.err_bound}, cfg))
        elif args.op == "zeros":
            if args.n is None:
                raise ValueError("bessel zeros needs --n")
            zeros = j1_zeros(args.n)
            if fmt == "csv":
                _emit(args, _csv_table(["k", "zero"],
                                       [[k + 1, z] for k, z in enumerate(zeros)]))
            else:
                _emit(args, _json_payload({"zeros": zeros}, cfg))
        else:
            n = args.n or 200
            import numpy as np
            grid = np.linspace(0.0, args.xi_max, n)
            worst = max(abs(variational_integral(float(x)) - 2.0 * math.pi * j1(float(x)).value)
                        for x in grid)
            _emit(args, _json_payload({"xi_max": args.xi_max, "grid": n,
                                       "max_identity_gap": worst,
                                       "passed": worst <= 1e-10}, cfg))
            if worst > 1e-10:
                return CHECK_FAILURE
        return 0

    if args.command == "verify":
        report = run_verify(args.lam, args.k_max, cfg)
        _emit(args, report_to_json(report))
        for name, check in report.checks.items():
            status = "pass" if check.passed else "FAIL"
            print(f"[{status}] {name}: margin={check.margin:.3e} {check.detail}",
                  file=sys.stderr)
        return 0 if report.passed else CHECK_FAILURE

    if args.command == "oracle":
        sys_ = PotentialSystem(args.lam)
        sample = orbit_period(sys_, args.xi, tol=args.tol,
                              full_return=args.full_return)
        if args.dump_trace:
            trace = orbit_trace(sys_, args.xi, tol=args.tol)
            rows = [[t, x, y, 0.5 * y * y + float(sys_.G(x))]
                    for t, x, y in trace.samples]
            _write_atomic(args.dump_trace, _csv_table(["t", "x", "y", "H"], rows))
            print(f"trace written to {args.dump_trace} "
                  f"(max energy drift {trace.max_drift:.3e})", file=sys.stderr)
        _emit(args, _samples_payload(args, cfg, [sample]))
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except SignViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CHECK_FAILURE
    except (DegenerateIsochronous, NonMonotoneEnergy, NoConvergence,
            PeriodkitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
