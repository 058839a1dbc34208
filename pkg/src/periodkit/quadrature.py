"""Period of one orbit as a singular integral, and its energy derivative.

The period of the orbit on energy level h is

    T(h) = 2*sqrt(2) * integral_0^xi dx / sqrt(h - G(x)),   h = G(xi),

whose integrand blows up like an inverse square root at the turning point
x = xi.  The substitution x = xi*sin(phi) removes the singularity: at a
simple turning point h - G(x) ~ g(xi)*(xi - x), so the substituted integrand
is analytic on [0, pi/2] and fixed-order Gauss-Legendre panels with adaptive
bisection converge fast.  (A tanh-sinh rule would be the fallback if the
turning point ever degenerated mid-interval; for this family that happens
only at the lam = -1 origin limit, which the same substitution still handles
because the turning point stays simple for every h > 0.)

Writing u = pi/4 - phi/2, the depth of the energy well below the level h is
evaluated in the cancellation-free product form

    h - G(xi*sin(phi)) = (xi*sin(2u))^2 / 2
                         + 2*lam*sin(xi*cos(u)^2)*sin(xi*sin(u)^2),

an exact identity: no subtraction of nearly equal numbers survives, so the
integrand keeps full double precision all the way into the turning point.

T'(h) is computed by Richardson-extrapolated central differences rather than
by differentiating under the integral, which would reintroduce a singular
kernel; the step is tied to h so relative accuracy is uniform across scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NoConvergence, NonMonotoneEnergy, StepUnderflow
from .model import PotentialSystem, energy_to_amplitude, turning_points

SQRT8 = 2.0 * math.sqrt(2.0)

# Below this energy (elementary centers only) quadrature cancellation beats
# the O(h^2) truncation of the local expansion, so the expansion wins.
SMALL_ENERGY_GUARD = 1e-10


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    max_depth: int = 40
    base_nodes: int = 15

    def __post_init__(self):
        if not (1e-15 < self.rel_tol < 1e-2):
            raise ValueError(f"rel_tol must lie in (1e-15, 1e-2), got {self.rel_tol}")
        if self.max_depth < 4:
            raise ValueError(f"max_depth must be >= 4, got {self.max_depth}")
        if self.base_nodes < 2:
            raise ValueError(f"base_nodes must be >= 2, got {self.base_nodes}")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class PeriodSample:
    """One measured period: both orbit coordinates, the value, an absolute
    error estimate and the route that produced it."""

    lam: float
    xi: float
    h: float
    T: float
    err_est: float
    method: str = "quadrature"
    converged: bool = True


@lru_cache(maxsize=8)
def _gauss_rule(n: int):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    return nodes, weights


def _integrand(sys: PotentialSystem, xi: float):
    lam = sys.lam

    def f(phi):
        u = 0.25 * math.pi - 0.5 * phi
        su = np.sin(u)
        cu = np.cos(u)
        s2u = 2.0 * su * cu
        d = 0.5 * (xi * s2u) ** 2 + 2.0 * lam * np.sin(xi * cu * cu) * np.sin(xi * su * su)
        if np.any(d <= 0.0):
            raise NonMonotoneEnergy(
                f"energy level dips below the potential inside (0, {xi:.6g}) "
                f"(lam={lam:g}); the orbit is not centered at the origin")
        return xi * s2u / np.sqrt(d)

    return f


def _adaptive(f, a: float, b: float, cfg: QuadratureConfig):
    """Globally adaptive Gauss-Legendre bisection on [a, b].

    Each pending panel is split; the two-half sum is accepted when it agrees
    with the parent rule to the panel's width-proportional share of the
    relative tolerance.  Returns (value, err_est, converged); err_est is the
    sum of the accepted halving differences.
    """
    nodes, weights = _gauss_rule(cfg.base_nodes)

    def rule(lo, hi):
        lo = np.asarray(lo)
        hi = np.asarray(hi)
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        x = mid[:, None] + half[:, None] * nodes[None, :]
        return half * (f(x) @ weights)

    width = b - a
    q0 = float(rule([a], [b])[0])
    scale = max(abs(q0), 1e-300)

    pend_lo = np.array([a])
    pend_hi = np.array([b])
    pend_q = np.array([q0])
    pend_carry = np.array([math.inf])

    accepted = 0.0
    accepted_err = 0.0

    for _ in range(cfg.max_depth):
        mids = 0.5 * (pend_lo + pend_hi)
        child_lo = np.concatenate([pend_lo, mids])
        child_hi = np.concatenate([mids, pend_hi])
        child_q = rule(child_lo, child_hi)
        n = pend_lo.size
        pair_sum = child_q[:n] + child_q[n:]
        err = np.abs(pair_sum - pend_q)
        tol = cfg.rel_tol * scale * (pend_hi - pend_lo) / width

        ok = err <= tol
        accepted += float(pair_sum[ok].sum())
        accepted_err += float(err[ok].sum())

        keep = ~ok
        if not keep.any():
            return accepted, accepted_err, True
        half_err = 0.5 * err[keep]
        pend_lo = np.concatenate([pend_lo[keep], mids[keep]])
        pend_hi = np.concatenate([mids[keep], pend_hi[keep]])
        pend_q = np.concatenate([child_q[:n][keep], child_q[n:][keep]])
        pend_carry = np.concatenate([half_err, half_err])
        scale = max(scale, abs(accepted + float(pend_q.sum())))

    best = accepted + float(pend_q.sum())
    return best, accepted_err + float(pend_carry.sum()), False


def _half_integral(sys: PotentialSystem, amp: float, cfg: QuadratureConfig):
    """integral_0^amp dx / sqrt(G(amp) - G(x)) for amp > 0."""
    return _adaptive(_integrand(sys, amp), 0.0, 0.5 * math.pi, cfg)


def period_at_amplitude(sys: PotentialSystem, xi: float,
                        cfg: QuadratureConfig = DEFAULT_CONFIG) -> PeriodSample:
    """Period of the orbit through (xi, 0), xi > 0."""
    if xi <= 0.0:
        raise ValueError(f"xi must be positive, got {xi}")
    h = float(sys.G(xi))
    return _period_sample(sys, xi, h, cfg)


def period_at_energy(sys: PotentialSystem, h: float,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> PeriodSample:
    """Period of the orbit on energy level h > 0."""
    xi = energy_to_amplitude(sys, h)
    return _period_sample(sys, xi, h, cfg)


def _period_sample(sys, xi, h, cfg):
    if h < SMALL_ENERGY_GUARD and sys.lam > -1.0:
        t0, dt0 = sys.center_asymptotics()
        return PeriodSample(lam=sys.lam, xi=xi, h=h, T=t0 + dt0 * h,
                            err_est=abs(dt0) * h * h)
    value, err, converged = _half_integral(sys, xi, cfg)
    sample = PeriodSample(lam=sys.lam, xi=xi, h=h, T=SQRT8 * value,
                          err_est=SQRT8 * err, converged=converged)
    if not converged:
        raise NoConvergence(
            f"period quadrature hit max_depth={cfg.max_depth} at xi={xi:.6g}, "
            f"lam={sys.lam:g}", best=sample.T, err_est=sample.err_est, sample=sample)
    return sample


def half_period_integrals(sys: PotentialSystem, h: float,
                          cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """Diagnostic: the two halves sqrt(2)*integral over [x_l, 0] and [0, x_r]
    computed independently from each turning point.  Evenness of G makes them
    equal; their sum is T(h)."""
    tp = turning_points(sys, h)
    left, _, _ = _half_integral(sys, -tp.x_left, cfg)
    right, _, _ = _half_integral(sys, tp.x_right, cfg)
    return math.sqrt(2.0) * left, math.sqrt(2.0) * right


def period_derivative(sys: PotentialSystem, h: float,
                      cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """T'(h) by Richardson-extrapolated central differences."""
    return period_derivative_with_error(sys, h, cfg)[0]


def period_derivative_with_error(sys: PotentialSystem, h: float,
                                 cfg: QuadratureConfig = DEFAULT_CONFIG):
    """(T'(h), error estimate).  Steps delta = h·1e-3 and delta/2; the
    two-level difference bounds the truncation, the propagated quadrature
    error estimates divided by the step bound the noise."""
    if h < 1e-12:
        raise StepUnderflow(f"h={h:g} too small for a relative-step difference")
    delta = 1e-3 * h
    tp1 = period_at_energy(sys, h + delta, cfg)
    tm1 = period_at_energy(sys, h - delta, cfg)
    tp2 = period_at_energy(sys, h + 0.5 * delta, cfg)
    tm2 = period_at_energy(sys, h - 0.5 * delta, cfg)
    d1 = (tp1.T - tm1.T) / (2.0 * delta)
    d2 = (tp2.T - tm2.T) / delta
    value = (4.0 * d2 - d1) / 3.0
    noise = (tp2.err_est + tm2.err_est) / delta
    return value, abs(d2 - d1) / 3.0 + noise
