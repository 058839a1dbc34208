"""Potential family g(x) = x + lam*sin(x) and its energy geometry.

The planar system x' = -y, y' = g(x) has Hamiltonian H = y^2/2 + G(x) with
G(x) = x^2/2 + lam*(1 - cos x).  For lam >= -1 the origin is a center; the
orbit through (xi, 0) lives on the energy level h = G(xi).  This module holds
the closed-form pieces (g, G, derivatives at the origin, local period
asymptotics) and the root-solving glue between energy and amplitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonMonotoneEnergy

ELEMENTARY = "elementary"
NILPOTENT = "nilpotent"

# Inversion accuracy: |G(xi) - h| <= ENERGY_MATCH_TOL * max(1, h).
ENERGY_MATCH_TOL = 1e-13

# Validity scan density; the oscillation scale of g is O(2*pi), so 1e4
# points on a window of a few hundred oversample it by two orders.
VALIDITY_GRID_POINTS = 10_000


@dataclass(frozen=True)
class PotentialSystem:
    """The one-parameter family, lam in [-1, +inf)."""

    lam: float

    def __post_init__(self):
        if not math.isfinite(self.lam) or self.lam < -1.0:
            raise ValueError(f"lam must be finite and >= -1, got {self.lam}")

    def g(self, x):
        """Restoring force x + lam*sin(x); odd, g(0) = 0."""
        return x + self.lam * np.sin(x)

    def G(self, x):
        """Potential energy x^2/2 + lam*(1 - cos x); even, G(0) = 0.

        1 - cos x is evaluated as 2*sin(x/2)^2 to avoid losing digits
        for small x.
        """
        x = np.asarray(x) if not np.isscalar(x) else x
        s = np.sin(np.multiply(x, 0.5))
        return np.multiply(x, x) * 0.5 + self.lam * 2.0 * s * s

    def g_derivatives_at_zero(self) -> tuple[float, float, float]:
        """First three derivatives of g at the origin: (1+lam, 0, -lam)."""
        return (1.0 + self.lam, 0.0, -self.lam)

    def center_asymptotics(self) -> tuple[float, float]:
        """Limit values (T(0+), T'(0+)) of the period function at the center.

        For lam > -1 the center is elementary and

            T(0+)  = 2*pi / sqrt(g'(0))
            T'(0+) = pi * (5*g''(0)^2 - 3*g'(0)*g'''(0)) / (12*g'(0)^(7/2))

        which reduces to (2*pi/sqrt(1+lam), lam*pi/(4*(1+lam)^(5/2))).
        For lam = -1 the center is nilpotent and the period blows up; the
        pair (+inf, -inf) is returned as an explicit sentinel and must not
        be fed into further arithmetic.
        """
        g1, g2, g3 = self.g_derivatives_at_zero()
        if g1 == 0.0:
            return (math.inf, -math.inf)
        t0 = 2.0 * math.pi / math.sqrt(g1)
        dt0 = math.pi * (5.0 * g2 * g2 - 3.0 * g1 * g3) / (12.0 * g1 ** 3.5)
        return (t0, dt0)

    @property
    def center_kind(self) -> str:
        return NILPOTENT if self.lam == -1.0 else ELEMENTARY


@dataclass(frozen=True)
class OrbitCoordinate:
    """One periodic orbit, addressed both ways: amplitude xi > 0 (abscissa
    of the crossing with the positive x-axis) and energy h = G(xi) > 0."""

    xi: float
    h: float


@dataclass(frozen=True)
class TurningPair:
    """Solutions x_left < 0 < x_right of G(x) = h; by evenness
    x_left = -x_right."""

    x_left: float
    x_right: float


@dataclass(frozen=True)
class CenterValidity:
    """Report of the sign/semilinearity probe on (0, x_probe].

    is_global holds when x*g(x) > 0 everywhere on the probe window, i.e. no
    zero of g away from the origin was found.  semilinear_bounds are the
    empirical min/max of g(x)/x over [x_probe/2, x_probe].
    """

    is_global: bool
    first_sign_failure: float | None
    semilinear_bounds: tuple[float, float]
    center_kind: str


def amplitude_to_energy(sys: PotentialSystem, xi: float) -> OrbitCoordinate:
    if xi <= 0.0:
        raise ValueError(f"xi must be positive, got {xi}")
    return OrbitCoordinate(xi=float(xi), h=float(sys.G(xi)))


def energy_to_amplitude(sys: PotentialSystem, h: float, check_monotone: bool = True) -> float:
    """Invert h = G(xi) for xi > 0 by bracketed bisection.

    G(x) <= x^2*(1 + max(lam, 0))/2, so xi0 = sqrt(2h/(1+max(lam,0))) always
    starts at or below the root; the upper end is found by doubling.  G is
    strictly increasing wherever the center is valid, so bisection cannot be
    fooled.  Raises NonMonotoneEnergy if a probe point reveals g(x) <= 0
    inside the bracket.
    """
    if not (h > 0.0) or not math.isfinite(h):
        raise ValueError(f"h must be positive and finite, got {h}")

    def probe(x: float) -> float:
        if check_monotone and x > 0.0 and sys.g(x) <= 0.0:
            raise NonMonotoneEnergy(
                f"g({x:.6g}) <= 0 inside the search bracket (lam={sys.lam:g})", x=x)
        return float(sys.G(x)) - h

    lo = math.sqrt(2.0 * h / (1.0 + max(sys.lam, 0.0)))
    if probe(lo) == 0.0:
        return lo
    hi = 2.0 * lo
    while probe(hi) < 0.0:
        lo = hi
        hi *= 2.0
        if hi > 1e160:
            raise NonMonotoneEnergy("energy bracket expansion ran away", x=hi)

    tol_g = 0.5 * ENERGY_MATCH_TOL * max(1.0, h)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        fm = probe(mid)
        if abs(fm) <= tol_g:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    return 0.5 * (lo + hi)


def turning_points(sys: PotentialSystem, h: float) -> TurningPair:
    """Both solutions of G(x) = h bracketing the center: (-xi, xi)."""
    xi = energy_to_amplitude(sys, h)
    return TurningPair(x_left=-xi, x_right=xi)


def validate_center(sys: PotentialSystem, x_probe: float) -> CenterValidity:
    """Scan (0, x_probe] for a zero of g away from the origin.

    A dense grid is scanned for sign changes of g; the first one found is
    refined by bisection and reported as first_sign_failure.  When no zero
    exists the orbit family through every amplitude in the window is valid
    and is_global is True.  Also reports the empirical bounds of g(x)/x on
    the outer half-window (the semilinearity certificate that keeps T
    bounded for large h).
    """
    if x_probe <= 0.0:
        raise ValueError("x_probe must be positive")

    x = np.linspace(x_probe / VALIDITY_GRID_POINTS, x_probe, VALIDITY_GRID_POINTS)
    gx = sys.g(x)

    failure = None
    bad = np.nonzero(gx <= 0.0)[0]
    if bad.size:
        i = int(bad[0])
        if gx[i] == 0.0:
            failure = float(x[i])
        else:
            # refine the sign change on the preceding grid cell
            a, b = (0.0, x[i]) if i == 0 else (float(x[i - 1]), float(x[i]))
            for _ in range(100):
                m = 0.5 * (a + b)
                if sys.g(m) > 0.0:
                    a = m
                else:
                    b = m
                if b - a <= 1e-12 * max(1.0, b):
                    break
            failure = 0.5 * (a + b)

    outer = x[x >= 0.5 * x_probe]
    ratio = sys.g(outer) / outer
    return CenterValidity(
        is_global=failure is None,
        first_sign_failure=failure,
        semilinear_bounds=(float(ratio.min()), float(ratio.max())),
        center_kind=sys.center_kind,
    )


def require_valid(sys: PotentialSystem, x_max: float) -> None:
    """Guard used by scanning operations: raise unless the center's orbit
    family covers amplitudes up to x_max."""
    v = validate_center(sys, x_max)
    if not v.is_global:
        raise NonMonotoneEnergy(
            f"center for lam={sys.lam:g} is only valid below x="
            f"{v.first_sign_failure:.6g}, needed {x_max:.6g}",
            x=v.first_sign_failure)
