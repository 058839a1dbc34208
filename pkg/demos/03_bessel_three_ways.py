"""J1 three ways, and why the period function cares.

The first-order response of the period to the coupling, at fixed amplitude
xi, is the integral  integral_0^{2pi} sin(xi cos s) cos s ds = 2*pi*J1(xi).
So the stationary amplitudes of that response are exactly the zeros of J1,
and there are infinitely many of them.  The toolbox evaluates J1 by power
series, by the periodic integral above, and by the large-argument cosine
form, each with an error bound, so no external special-function table is
needed anywhere.
"""

import math

import numpy as np

from periodkit import (j1, j1_asymptotic, j1_integral, j1_series, j1_zeros,
                       lam_derivative_at_zero, variational_integral)
from periodkit.bessel import ode_residual

TWO_PI = 2 * math.pi

# --- three routes, one number ------------------------------------------------

for xi in (0.2, 1.0, 5.0, 11.0):
    s = j1_series(xi)
    i = j1_integral(xi)
    a = j1_asymptotic(xi) if xi >= 1.0 else None
    line = f"xi = {xi:5.2f}: series {s.value:+.15f}   integral {i.value:+.15f}"
    if a is not None:
        line += f"   asymptotic {a.value:+.9f} (bound {a.err_bound:.1e})"
    print(line)
print()

# --- the identity tying the variational integral to J1 ------------------------

worst = max(abs(variational_integral(float(x)) - TWO_PI * j1(float(x)).value)
            for x in np.linspace(0.0, 20.0, 100))
print(f"max |integral - 2*pi*J1| on [0, 20]: {worst:.2e}\n")

# --- zeros from the asymptotic cosine, refined by bisection -------------------

zeros = j1_zeros(6)
print("first zeros of J1:", ", ".join(f"{z:.6f}" for z in zeros))
print("gaps:", ", ".join(f"{b - a:.4f}" for a, b in zip(zeros, zeros[1:])),
      " -> pi =", f"{math.pi:.4f}\n")

# --- J1 satisfies its differential equation -----------------------------------

for xi in (1.0, zeros[0], 20.0):
    print(f"Bessel-equation residual at xi = {xi:9.6f}: {ode_residual(xi):+.2e}")
print()

# --- and the period function feels it ------------------------------------------
# dT/dlam at lam = 0 equals -2*pi*J1(xi)/xi: it vanishes exactly at the J1
# zeros, which is what seeds one critical period per oscillation.

print(" xi      dT/dlam (measured)   -2*pi*J1(xi)/xi")
for xi in (1.0, 2.0, zeros[0], 5.0, zeros[1]):
    est = lam_derivative_at_zero(xi)
    print(f"{xi:7.4f}   {est.value:+.8f}        {-TWO_PI * j1(xi).value / xi:+.8f}")
