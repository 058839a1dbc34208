"""Tour of the potential family g(x) = x + lam*sin(x).

The planar system x' = -y, y' = g(x) conserves H = y^2/2 + G(x) with
G(x) = x^2/2 + lam*(1 - cos x).  For lam >= -1 the origin is a center and
every orbit is a closed oval G-level; this script walks the basic geometry:
where the family is valid, how energy and amplitude convert, and what the
period does right at the center.
"""

import numpy as np

from periodkit import PotentialSystem, energy_to_amplitude, turning_points, validate_center

# --- the force and the potential ------------------------------------------

sys = PotentialSystem(lam=1.0)
x = np.array([0.0, 0.5, np.pi, 2 * np.pi])
print("g(x) =", sys.g(x))
print("G(x) =", sys.G(x))
print("g is odd, G is even, both vanish at the origin.\n")

# --- validity across the parameter ----------------------------------------
# The center is global while x*g(x) > 0 for all x != 0.  That holds for
# every lam in [-1, ~4.6]; beyond, g picks up extra zeros and a pair of side
# equilibria eats part of the annulus.

for lam in (-1.0, 0.0, 2.0, 4.5, 5.0, 6.0):
    v = validate_center(PotentialSystem(lam), 100.0)
    where = "everywhere" if v.is_global else f"fails near x = {v.first_sign_failure:.4f}"
    print(f"lam = {lam:5.1f}: {'global' if v.is_global else 'NOT global':10s} "
          f"({where}), g(x)/x in [{v.semilinear_bounds[0]:.3f}, {v.semilinear_bounds[1]:.3f}], "
          f"center is {v.center_kind}")

# --- energy <-> amplitude --------------------------------------------------
# Orbits are labelled either by energy h or by the amplitude xi where they
# cross the positive x-axis; h = G(xi) ties them together.

print()
sys = PotentialSystem(1.0)
for h in (0.1, 2 * np.pi**2, 1e4):
    xi = energy_to_amplitude(sys, h)
    tp = turning_points(sys, h)
    print(f"h = {h:12.5g}  ->  xi = {xi:10.6f},  turning points ({tp.x_left:.6f}, {tp.x_right:.6f})")

# --- the period at the center ----------------------------------------------
# T extends analytically to the center for lam > -1:
#   T(0+) = 2*pi/sqrt(1+lam),  T'(0+) = lam*pi/(4*(1+lam)^(5/2)).
# At lam = -1 the linearization degenerates and T blows up instead.

print()
for lam in (0.0, 1.0, 3.0, -1.0):
    t0, dt0 = PotentialSystem(lam).center_asymptotics()
    print(f"lam = {lam:4.1f}:  T(0+) = {t0:.6f},  T'(0+) = {dt0:.6f}")
