"""Desk-scale verification pipeline and deterministic serialization.

run_verify chains the whole toolkit for one parameter value: center
validation, bracket inequalities, 2*pi-level localization, critical-period
detection with alternation/interleaving checks, the Bessel identity suite,
and spot agreement between the quadrature and ODE routes.  Every check lands
in a named pass/fail map with a numeric margin (positive = slack to spare),
and the report is produced even when a check fails.

Serialized output is deterministic: floats are written in round-trip-exact
shortest decimal form, rows are sorted canonically, and no timestamps enter
the payload (run metadata belongs in a sidecar file, see the CLI).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analysis import (CriticalPeriod, TwoPiBracket, find_critical_periods,
                       find_two_pi_levels, opial_indicator, opial_sign_changes,
                       small_h_check, two_pi_brackets)
from .bessel import j1, j1_integral, j1_series, variational_integral
from .errors import DegenerateIsochronous, SignViolation
from .model import PotentialSystem, energy_to_amplitude, require_valid
from .oracle import orbit_period
from .quadrature import (DEFAULT_CONFIG, PeriodSample, QuadratureConfig,
                         period_at_amplitude, period_at_energy)

TWO_PI = 2.0 * math.pi

CHECK_NAMES = ("isochrony-baseline", "small-h", "opial", "bessel-identity",
               "oracle-agreement", "alternation", "sign-brackets")


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    margin: float
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    lam: float
    k_max: int
    brackets: list[TwoPiBracket]
    two_pi_levels: list[float]
    critical_periods: list[CriticalPeriod]
    checks: dict[str, CheckResult]
    tool_version: str
    config: QuadratureConfig

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _check_isochrony(cfg) -> CheckResult:
    base = PotentialSystem(0.0)
    worst = max(abs(period_at_energy(base, float(h), cfg).T - TWO_PI)
                for h in np.logspace(-6, 6, 9))
    return CheckResult(worst <= 1e-9, 1e-9 - worst,
                       f"max |T - 2*pi| = {worst:.3e} at lam=0")


def _check_small_h(sys, cfg) -> CheckResult:
    rep = small_h_check(sys, [1e-2, 1e-3], cfg)
    if rep.residual[1] == 0.0:
        return CheckResult(True, 0.0, "residuals at machine zero")
    ratio = abs(rep.residual[0] / rep.residual[1])
    margin = min(ratio - 50.0, 200.0 - ratio)
    return CheckResult(50.0 <= ratio <= 200.0, margin,
                       f"residual ratio 1e-2/1e-3 = {ratio:.2f} (expect ~100)")


def _check_opial(sys) -> CheckResult:
    x = np.linspace(1e-3, TWO_PI - 1e-3, 300)
    slack = float(np.min(-np.sign(sys.lam) * opial_indicator(sys, x)))
    zeros = opial_sign_changes(sys, 2.0 * TWO_PI + 0.5)
    dist = max(min(abs(z - TWO_PI) for z in zeros),
               min(abs(z - 2.0 * TWO_PI) for z in zeros))
    margin = min(slack, 1e-10 - dist)
    return CheckResult(slack > 0.0 and dist <= 1e-10, margin,
                       f"one-signed slack on (0, 2*pi) = {slack:.3e}, "
                       f"zero offset at 2k*pi = {dist:.3e}")


def _check_bessel_identity() -> CheckResult:
    worst_id = max(abs(variational_integral(float(x)) - TWO_PI * j1(float(x)).value)
                   for x in np.linspace(0.0, 20.0, 60))
    worst_xm = max(abs(j1_series(float(x)).value - j1_integral(float(x)).value)
                   for x in np.linspace(0.0, 12.0, 60))
    margin = min(1e-10 - worst_id, 1e-12 - worst_xm)
    return CheckResult(worst_id <= 1e-10 and worst_xm <= 1e-12, margin,
                       f"identity gap {worst_id:.3e}, series/integral gap {worst_xm:.3e}")


def _check_oracle(sys, xi_max, cfg) -> CheckResult:
    amps = np.geomspace(0.3, max(1.0, min(33.0, xi_max - 1.0)), 10)
    worst = 0.0
    for xi in amps:
        quad = period_at_amplitude(sys, float(xi), cfg)
        ode = orbit_period(sys, float(xi), tol=1e-11)
        worst = max(worst, abs(quad.T - ode.T) / quad.T)
    return CheckResult(worst <= 1e-7, 1e-7 - worst,
                       f"max rel gap quadrature/ODE = {worst:.3e} on 10 samples")


def _check_alternation(sys, criticals, levels, k_max) -> CheckResult:
    kinds = [c.kind for c in criticals]
    alternates = all(kinds[i] != kinds[i + 1] for i in range(len(kinds) - 1))
    ordered = all(
        (criticals[i].T_star > criticals[i + 1].T_star) == (kinds[i] == "max")
        for i in range(len(criticals) - 1))
    enough = len(criticals) >= max(k_max - 1, 1)

    level_amps = [energy_to_amplitude(sys, h) for h in levels]
    crit_amps = [c.xi_star for c in criticals]
    interleaved = all(
        any(a < x < b for x in crit_amps)
        for a, b in zip(level_amps, level_amps[1:]))

    gaps = [abs(criticals[i].T_star - criticals[i + 1].T_star)
            for i in range(len(criticals) - 1)]
    margin = min(gaps) if gaps else 0.0
    ok = alternates and ordered and enough and interleaved
    return CheckResult(ok, margin if ok else -1.0,
                       f"{len(criticals)} extrema, alternating={alternates}, "
                       f"interleaved with {len(levels)} levels={interleaved}")


def _check_sign_brackets(sys, brackets) -> CheckResult:
    if not brackets:
        return CheckResult(False, -math.inf, "no brackets measured")
    direction = 1.0 if sys.lam > 0.0 else -1.0
    slack = min(min(direction * (br.T_lo - TWO_PI) for br in brackets),
                min(-direction * (br.T_hi - TWO_PI) for br in brackets))
    return CheckResult(slack >= -1e-8, slack + 1e-8,
                       f"worst inequality slack = {slack:.3e} over {len(brackets)} brackets")


def run_verify(lam: float, k_max: int,
               cfg: QuadratureConfig = DEFAULT_CONFIG) -> VerifyReport:
    """Run the whole pipeline for one parameter value.

    lam must be nonzero (the linear center is degenerate for every check
    that hunts sign changes) and validated on the amplitude window the
    brackets need; k_max is capped at 20 to keep desk-scale runtimes.
    """
    if lam == 0.0:
        raise DegenerateIsochronous(
            "lam = 0 is the isochronous linear center; nothing to verify")
    if not (1 <= k_max <= 20):
        raise ValueError(f"k_max must lie in [1, 20], got {k_max}")

    sys = PotentialSystem(lam)
    xi_max = (2.0 * k_max + 1.0) * math.pi
    require_valid(sys, xi_max + 1.0)

    checks: dict[str, CheckResult] = {}

    brackets: list[TwoPiBracket] = []
    levels: list[float] = []
    try:
        brackets = two_pi_brackets(sys, k_max, cfg)
        levels = find_two_pi_levels(sys, k_max, cfg)
        checks["sign-brackets"] = _check_sign_brackets(sys, brackets)
    except SignViolation as exc:
        checks["sign-brackets"] = CheckResult(False, -math.inf, str(exc))

    criticals = find_critical_periods(sys, xi_max, cfg)

    checks["isochrony-baseline"] = _check_isochrony(cfg)
    checks["small-h"] = _check_small_h(sys, cfg)
    checks["opial"] = _check_opial(sys)
    checks["bessel-identity"] = _check_bessel_identity()
    checks["oracle-agreement"] = _check_oracle(sys, xi_max, cfg)
    checks["alternation"] = _check_alternation(sys, criticals, levels, k_max)

    ordered = {name: checks[name] for name in CHECK_NAMES}
    return VerifyReport(lam=lam, k_max=k_max, brackets=brackets,
                        two_pi_levels=levels, critical_periods=criticals,
                        checks=ordered, tool_version=__version__, config=cfg)


# ---------------------------------------------------------------------------
# deterministic serialization

def fmt_float(x: float) -> str:
    """Shortest decimal that round-trips to the same double; integral values
    drop the trailing '.0' (so 2*pi prints as 6.283185307179586)."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".periodkit-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


SAMPLE_FIELDS = ("lambda", "xi", "h", "T", "T_err", "method")


def _sample_row(s: PeriodSample):
    return (s.lam, s.xi, s.h, s.T, s.err_est, s.method)


def samples_to_csv(samples: list[PeriodSample]) -> str:
    rows = [",".join(SAMPLE_FIELDS)]
    for s in sorted(samples, key=lambda s: s.xi):
        vals = _sample_row(s)
        rows.append(",".join([fmt_float(v) for v in vals[:-1]] + [vals[-1]]))
    return "\n".join(rows) + "\n"


def samples_to_json(samples: list[PeriodSample]) -> str:
    payload = [dict(zip(SAMPLE_FIELDS, _sample_row(s)))
               for s in sorted(samples, key=lambda s: s.xi)]
    return json.dumps(payload, indent=2) + "\n"


def export_samples(samples: list[PeriodSample], path: str, format: str = "csv") -> None:
    """Write samples sorted by amplitude, atomically (temp file + rename)."""
    if format == "csv":
        _write_atomic(path, samples_to_csv(samples))
    elif format == "json":
        _write_atomic(path, samples_to_json(samples))
    else:
        raise ValueError(f"unknown format {format!r} (csv or json)")


def report_to_dict(report: VerifyReport) -> dict:
    return {
        "lambda": report.lam,
        "k_max": report.k_max,
        "tool_version": report.tool_version,
        "config": {
            "rel_tol": report.config.rel_tol,
            "max_depth": report.config.max_depth,
            "base_nodes": report.config.base_nodes,
        },
        "passed": report.passed,
        "checks": {
            name: {"passed": c.passed, "margin": c.margin, "detail": c.detail}
            for name, c in report.checks.items()
        },
        "brackets": [
            {"k": b.k, "h_lo": b.h_lo, "h_hi": b.h_hi,
             "T_lo": b.T_lo, "T_hi": b.T_hi,
             "sign_lo": b.sign_lo, "sign_hi": b.sign_hi,
             "degenerate": b.degenerate}
            for b in report.brackets
        ],
        "two_pi_levels": list(report.two_pi_levels),
        "critical_periods": [
            {"xi_star": c.xi_star, "h_star": c.h_star, "T_star": c.T_star,
             "kind": c.kind, "refine_err": c.refine_err}
            for c in report.critical_periods
        ],
    }


def report_to_json(report: VerifyReport) -> str:
    return json.dumps(report_to_dict(report), indent=2) + "\n"
