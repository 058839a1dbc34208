"""Global analysis of the period function along the annulus.

Everything here works in the amplitude coordinate xi (the abscissa of the
orbit's crossing with the positive x-axis, h = G(xi)): since
dT/dxi = g(xi) * dT/dh and g > 0 on the validated window, sign decisions
about T' transfer freely between the two parametrizations.

The analysis rests on two families of distinguished amplitudes:

  * xi = 2k*pi,        energy h_k    = 2 (k*pi)^2,            T >= 2*pi
  * xi = (2k+1)*pi,    energy hbar_k = (2k+1)^2 pi^2/2 + 2*lam, T <= 2*pi

(inequalities as written for lam > 0; both flip for lam in (-1, 0)).  Each
pair brackets at least one energy with T = 2*pi, and between consecutive
sign-changing 2*pi-levels the derivative T' must vanish, which is how the
critical periods are located and counted.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousBracket, DegenerateIsochronous, NoConvergence, SignViolation
from .model import PotentialSystem, energy_to_amplitude, require_valid
from .quadrature import (DEFAULT_CONFIG, PeriodSample, QuadratureConfig,
                         period_at_amplitude, period_derivative_with_error)

TWO_PI = 2.0 * math.pi

SCAN_STEP = math.pi / 8.0          # 2*pi-levels sit ~pi apart at large xi
CRITICAL_REFINE_REL = 1e-8         # bisection target: width <= 1e-8 * xi
LEVEL_TOL = 1e-9                   # |T - 2*pi| target for a located level
SIGN_VIOLATION_FACTOR = 10.0


@dataclass(frozen=True)
class CriticalPeriod:
    """A refined extremum of T: T' changes sign across
    [xi_star - refine_err, xi_star + refine_err]."""

    xi_star: float
    h_star: float
    T_star: float
    kind: str                      # "max" iff T' goes + -> -
    refine_err: float


@dataclass(frozen=True)
class TwoPiBracket:
    """One bracketing pair (h_lo, h_hi) with the measured signs of T - 2*pi
    at the ends; sign_lo * sign_hi <= 0 whenever the center is valid."""

    k: int
    h_lo: float
    h_hi: float
    sign_lo: int
    sign_hi: int
    T_lo: float
    T_hi: float
    err_lo: float
    err_hi: float
    degenerate: bool = False


@dataclass(frozen=True)
class LowEnergyReport:
    """Residuals of T(h) against its expansion at the center,
    T0 + T0'*h, plus empirical convergence orders between consecutive
    energies (expect ~2: the remainder is O(h^2))."""

    lam: float
    h: tuple[float, ...]
    T: tuple[float, ...]
    residual: tuple[float, ...]
    orders: tuple[float, ...]


@dataclass(frozen=True)
class DerivativeEstimate:
    value: float
    err_est: float


def scan_period(sys: PotentialSystem, xi_min: float, xi_max: float, n: int,
                cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[PeriodSample]:
    """n period samples at uniformly spaced amplitudes, ordered by xi.

    Points where the quadrature fails to converge are kept and flagged
    (converged=False) rather than dropped.
    """
    if not (0.0 < xi_min < xi_max):
        raise ValueError("need 0 < xi_min < xi_max")
    if n < 2:
        raise ValueError("need n >= 2")
    require_valid(sys, xi_max)
    samples = []
    for xi in np.linspace(xi_min, xi_max, n):
        try:
            samples.append(period_at_amplitude(sys, float(xi), cfg))
        except NoConvergence as e:
            samples.append(e.sample)
    return samples


def _dT_dxi_sign_data(sys, xi, cfg):
    """(T'(h) value, error) at h = G(xi); the sign equals that of dT/dxi."""
    return period_derivative_with_error(sys, float(sys.G(xi)), cfg)


def find_critical_periods(sys: PotentialSystem, xi_max: float,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[CriticalPeriod]:
    """Locate and classify the extrema of T on (0, xi_max].

    T' is sampled on a grid of step pi/8; each sign change is bisected on
    the sign of T' down to a bracket of width 1e-8 * xi.  Sign changes where
    both endpoint values of T' drown in their own error estimates are
    reported via the AmbiguousBracket warning and skipped.  lam = 0 is the
    isochronous center: the empty list is returned without any zero-hunting.
    """
    if sys.lam == 0.0:
        return []
    if xi_max <= 0.0:
        raise ValueError("xi_max must be positive")
    require_valid(sys, xi_max + 1.0)

    grid = np.arange(SCAN_STEP, xi_max + 1e-12, SCAN_STEP)
    deriv = [_dT_dxi_sign_data(sys, x, cfg) for x in grid]

    found = []
    for i in range(len(grid) - 1):
        d0, e0 = deriv[i]
        d1, e1 = deriv[i + 1]
        if d0 == 0.0 or d1 == 0.0 or d0 * d1 > 0.0:
            continue
        if abs(d0) < e0 and abs(d1) < e1:
            warnings.warn(
                f"T' sign change on [{grid[i]:.6g}, {grid[i+1]:.6g}] is below "
                f"its error estimate at both ends; not refined",
                AmbiguousBracket)
            continue
        lo, hi = float(grid[i]), float(grid[i + 1])
        sign_lo = d0 > 0.0
        while hi - lo > CRITICAL_REFINE_REL * hi:
            mid = 0.5 * (lo + hi)
            dm, _ = _dT_dxi_sign_data(sys, mid, cfg)
            if (dm > 0.0) == sign_lo:
                lo = mid
            else:
                hi = mid
        xi_star = 0.5 * (lo + hi)
        sample = period_at_amplitude(sys, xi_star, cfg)
        found.append(CriticalPeriod(
            xi_star=xi_star, h_star=sample.h, T_star=sample.T,
            kind="max" if d0 > 0.0 else "min", refine_err=hi - lo))
    return sorted(found, key=lambda c: c.xi_star)


def _sign_with_tol(value: float, err: float) -> int:
    if abs(value) <= err:
        return 0
    return 1 if value > 0.0 else -1


def bracket_amplitudes(k: int) -> tuple[float, float]:
    """The distinguished amplitudes (2k*pi, (2k+1)*pi) for index k >= 1."""
    return 2.0 * k * math.pi, (2.0 * k + 1.0) * math.pi


def two_pi_brackets(sys: PotentialSystem, k_max: int,
                    cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[TwoPiBracket]:
    """The first k_max bracketing pairs with measured periods and signs.

    Raises SignViolation if a measured period contradicts the inequality its
    end is supposed to satisfy by more than 10x the quadrature error; that
    means the computation, not the orbit, is wrong.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    require_valid(sys, (2.0 * k_max + 1.0) * math.pi + 1.0)

    direction = 0 if sys.lam == 0.0 else (1 if sys.lam > 0.0 else -1)
    out = []
    for k in range(1, k_max + 1):
        xi_lo, xi_hi = bracket_amplitudes(k)
        h_lo = 2.0 * (k * math.pi) ** 2
        h_hi = 0.5 * ((2 * k + 1) * math.pi) ** 2 + 2.0 * sys.lam
        s_lo = period_at_amplitude(sys, xi_lo, cfg)
        s_hi = period_at_amplitude(sys, xi_hi, cfg)
        dev_lo = s_lo.T - TWO_PI
        dev_hi = s_hi.T - TWO_PI
        if direction != 0:
            if direction * dev_lo < -SIGN_VIOLATION_FACTOR * s_lo.err_est:
                raise SignViolation(
                    f"T(h_{k}) - 2*pi = {dev_lo:.3e} violates its inequality "
                    f"(lam={sys.lam:g}, err={s_lo.err_est:.3e})")
            if direction * dev_hi > SIGN_VIOLATION_FACTOR * s_hi.err_est:
                raise SignViolation(
                    f"T(hbar_{k}) - 2*pi = {dev_hi:.3e} violates its inequality "
                    f"(lam={sys.lam:g}, err={s_hi.err_est:.3e})")
        sign_lo = _sign_with_tol(dev_lo, s_lo.err_est)
        sign_hi = _sign_with_tol(dev_hi, s_hi.err_est)
        out.append(TwoPiBracket(
            k=k, h_lo=h_lo, h_hi=h_hi, sign_lo=sign_lo, sign_hi=sign_hi,
            T_lo=s_lo.T, T_hi=s_hi.T, err_lo=s_lo.err_est, err_hi=s_hi.err_est,
            degenerate=(sign_lo == 0 and sign_hi == 0)))
    return out


def find_two_pi_levels(sys: PotentialSystem, k_max: int,
                       cfg: QuadratureConfig = DEFAULT_CONFIG) -> list[float]:
    """Energies h with T(h) = 2*pi, at least one per bracket.

    Each bracket is scanned at amplitude step pi/8; every sign change of
    T - 2*pi is bisected until |T - 2*pi| <= 1e-9, so extra crossings inside
    a bracket are picked up too.  Levels are returned strictly increasing.
    """
    if sys.lam == 0.0:
        raise DegenerateIsochronous(
            "lam = 0: T is identically 2*pi, every energy is a 2*pi-level")
    brackets = two_pi_brackets(sys, k_max, cfg)
    levels = []
    for br in brackets:
        xi_lo, xi_hi = bracket_amplitudes(br.k)
        grid = np.linspace(xi_lo, xi_hi, 9)
        devs = [br.T_lo - TWO_PI]
        devs += [period_at_amplitude(sys, float(x), cfg).T - TWO_PI for x in grid[1:-1]]
        devs.append(br.T_hi - TWO_PI)
        for i in range(len(grid) - 1):
            if devs[i] == 0.0:
                levels.append(float(sys.G(grid[i])))
                continue
            if devs[i] * devs[i + 1] > 0.0:
                continue
            lo, hi = float(grid[i]), float(grid[i + 1])
            lo_pos = devs[i] > 0.0
            level = None
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                dev = period_at_amplitude(sys, mid, cfg).T - TWO_PI
                if abs(dev) <= LEVEL_TOL:
                    level = mid
                    break
                if (dev > 0.0) == lo_pos:
                    lo = mid
                else:
                    hi = mid
            if level is None:
                level = 0.5 * (lo + hi)
            levels.append(float(sys.G(level)))
    levels.sort()
    return levels


def small_h_check(sys: PotentialSystem, h_list, cfg: QuadratureConfig = DEFAULT_CONFIG) -> LowEnergyReport:
    """Residual of T against the center expansion at each requested energy.

    R(h) = T(h) - T(0+) - T'(0+) h; orders[i] is the empirical exponent from
    (h[i], h[i+1]).  Energies must sit in the expansion's turf (h <= 0.1) and
    the center must be elementary (lam > -1), otherwise T(0+) is not finite.
    """
    if sys.lam <= -1.0:
        raise ValueError("expansion residuals need an elementary center (lam > -1)")
    hs = [float(h) for h in h_list]
    if any(h <= 0.0 or h > 0.1 for h in hs):
        raise ValueError("each energy must lie in (0, 0.1]")
    t0, dt0 = sys.center_asymptotics()
    ts = [period_at_amplitude(sys, energy_to_amplitude(sys, h), cfg).T for h in hs]
    res = [t - (t0 + dt0 * h) for t, h in zip(ts, hs)]
    orders = []
    for i in range(len(hs) - 1):
        if res[i] == 0.0 or res[i + 1] == 0.0 or hs[i] == hs[i + 1]:
            orders.append(math.nan)
        else:
            orders.append(math.log(abs(res[i] / res[i + 1])) / math.log(hs[i] / hs[i + 1]))
    return LowEnergyReport(lam=sys.lam, h=tuple(hs), T=tuple(ts),
                           residual=tuple(res), orders=tuple(orders))


def opial_indicator(sys: PotentialSystem, x):
    """Derivative of G(x)/x^2, the even-potential monotonicity witness:

        lam * (x sin x - 2 + 2 cos x) / x^3,

    with the removable-singularity branch lam*(-x/12 + x^3/180) below 1e-4.
    A monotone period function would force this to keep one sign on all of
    (0, inf); it changes sign, so T cannot be monotone.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("x must be positive")
    small = x < 1e-4
    xs = np.where(small, 1.0, x)
    direct = _indicator_numerator(xs) / xs ** 3
    series = -x / 12.0 + x ** 3 / 180.0
    out = sys.lam * np.where(small, series, direct)
    return float(out) if out.ndim == 0 else out


def _indicator_numerator(x):
    # x sin x - 2 + 2 cos x, with 2 - 2 cos x written as 4 sin(x/2)^2 so the
    # O(x^4) cancellation happens between O(x^2) operands, not around 2
    s = np.sin(0.5 * x)
    return x * np.sin(x) - 4.0 * s * s


def opial_sign_changes(sys: PotentialSystem, x_max: float) -> list[float]:
    """Zeros of the indicator numerator x sin x - 2 + 2 cos x on (0, x_max].

    The set always contains x = 2k*pi (where 1 - cos x and sin x both
    vanish); the remaining zeros solve tan(x/2) = x/2.  lam only scales the
    indicator, so the zero set is parameter-free.
    """
    if x_max <= TWO_PI:
        raise ValueError("x_max must exceed 2*pi")
    step = math.pi / 100.0
    grid = np.arange(step, x_max + step, step)
    grid[-1] = min(grid[-1], x_max)
    vals = _indicator_numerator(grid)
    zeros = []
    for i in range(len(grid) - 1):
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = float(vals[i]), float(vals[i + 1])
        if fa == 0.0:
            zeros.append(a)
            continue
        if fa * fb >= 0.0:
            continue
        for _ in range(100):
            m = 0.5 * (a + b)
            fm = float(_indicator_numerator(np.asarray(m)))
            if fm == 0.0:
                a = b = m
                break
            if (fm > 0.0) == (fa > 0.0):
                a, fa = m, fm
            else:
                b = m
            if b - a <= 1e-13 * max(1.0, b):
                break
        zeros.append(0.5 * (a + b))
    return zeros


def lam_derivative_at_zero(xi: float, eps: float = 1e-5,
                           cfg: QuadratureConfig = DEFAULT_CONFIG) -> DerivativeEstimate:
    """dT/dlam at lam = 0 and fixed amplitude, by central differences.

    The zeros of this function of xi coincide with the positive zeros of J1
    (first-order perturbation of the linear center); the xi -> 0 limit is
    -pi.  eps is capped at 1e-4 so both perturbed systems stay deep inside
    the validated parameter window.
    """
    if xi <= 0.0:
        raise ValueError("xi must be positive")
    if not (1e-8 <= eps <= 1e-4):
        raise ValueError(f"eps must lie in [1e-8, 1e-4], got {eps:g}")
    plus = period_at_amplitude(PotentialSystem(eps), xi, cfg)
    minus = period_at_amplitude(PotentialSystem(-eps), xi, cfg)
    value = (plus.T - minus.T) / (2.0 * eps)
    err = eps * eps * max(1.0, abs(value)) + (plus.err_est + minus.err_est) / (2.0 * eps)
    return DerivativeEstimate(value=value, err_est=err)
