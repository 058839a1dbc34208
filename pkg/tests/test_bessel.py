import math
from fractions import Fraction

import numpy as np
import pytest

import periodkit.bessel as bessel
from periodkit.bessel import (BesselEval, asymptotic_error_constant, j1,
                              j1_asymptotic, j1_integral, j1_series, j1_zeros,
                              ode_residual, variational_integral)
from periodkit.errors import BracketFailure, RangeExceeded

PI = math.pi
TWO_PI = 2 * PI


def j1_exact(x: float, terms: int = 80) -> float:
    """Independent oracle: the power series summed in exact rational
    arithmetic (x enters exactly via its binary expansion)."""
    half = Fraction(x) / 2
    q = half * half
    term = half
    total = term
    for m in range(terms):
        term = -term * q / ((m + 1) * (m + 2))
        total += term
    return float(total)


def test_series_reference_values():
    assert j1_series(0.0).value == 0.0
    assert j1_series(0.2).value == pytest.approx(0.0995008326392360, abs=1e-15)
    # leading partial sums per the term recurrence: 0.1 - 0.0005 + 8.333e-7
    assert j1_series(0.2).value == pytest.approx(0.1 - 0.0005 + 0.2**5 / 384, abs=1e-9)


@pytest.mark.parametrize("x", np.linspace(0.1, 14.0, 29))
def test_series_against_exact_arithmetic(x):
    e = j1_series(float(x))
    gap = abs(e.value - j1_exact(float(x)))
    assert gap <= e.err_bound
    if x <= 12.0:
        assert gap <= 1e-12


def test_series_range_guard():
    with pytest.raises(RangeExceeded):
        j1_series(14.5)


def test_cross_method_agreement():
    grid = np.linspace(0.0, 12.0, 500)
    worst = max(abs(j1_series(float(x)).value - j1_integral(float(x)).value)
                for x in grid)
    assert worst <= 1e-12


def test_integral_basics():
    assert j1_integral(0.0).value == 0.0
    assert j1_integral(0.2).value == pytest.approx(j1_series(0.2).value, abs=1e-13)
    e30 = j1_integral(30.0)
    assert abs(e30.value) <= math.sqrt(2 / (PI * 30)) + 0.01
    with pytest.raises(ValueError):
        j1_integral(1.0, n=8)


def test_dispatch_branch_consistency():
    assert abs(j1_series(12.0).value - j1_integral(12.0).value) <= 1e-11
    assert j1(11.0).method == "series"
    assert j1(13.0).method == "integral"
    assert abs(j1(3.83171).value) <= 1e-5


def test_global_bound():
    for x in np.linspace(0.0, 80.0, 161):
        e = j1(float(x))
        assert abs(e.value) <= 0.6
        assert e.err_bound >= 0.0


def test_asymptotic_at_phase_peak():
    # cosine argument vanishes at xi = 3*pi/4
    e = j1_asymptotic(3 * PI / 4)
    assert e.value == pytest.approx(math.sqrt(8 / (3 * PI**2)), rel=1e-15)


def test_asymptotic_error_bound_holds():
    c = asymptotic_error_constant()
    assert c > 0.0
    for x in (10.0, 25.0, 50.0, 75.0):
        gap = abs(j1_asymptotic(x).value - j1(x).value)
        assert gap <= c * x**-1.5


def test_asymptotic_order_of_accuracy():
    # phase-windowed maxima average out the oscillating next-order term;
    # the window-to-window decay then shows the xi^(-3/2) order
    def window_max(lo):
        return max(abs(j1_asymptotic(float(x)).value - j1(float(x)).value)
                   for x in np.linspace(lo, lo + TWO_PI, 60))

    ratio = window_max(40.0) / window_max(10.0)
    assert 1 / 24 <= ratio <= 3 / 8
    # the advertised bounds decay at exactly that order
    assert j1_asymptotic(40.0).err_bound / j1_asymptotic(10.0).err_bound == pytest.approx(
        (10 / 40) ** 1.5, rel=1e-12)


def test_zeros_basic():
    z = j1_zeros(1)
    assert z[0] == pytest.approx(3.831706, abs=1e-5)
    assert PI < z[0] < 1.5 * PI + 1.0


def test_zeros_structure():
    zeros = j1_zeros(5)
    assert all(b > a for a, b in zip(zeros, zeros[1:]))
    gaps = np.diff(zeros)
    assert abs(gaps[-1] - PI) <= 0.05
    assert zeros[1] == pytest.approx(7.015587, abs=1e-5)
    for z in zeros:
        assert j1(z - 1e-6).value * j1(z + 1e-6).value < 0.0


def test_zero_bracket_failure(monkeypatch):
    # a sign-definite function defeats both the initial and widened brackets
    def always_positive(x):
        return BesselEval(xi=x, value=1.0, method="series", err_bound=0.0)

    monkeypatch.setattr(bessel, "j1", always_positive)
    with pytest.raises(BracketFailure):
        bessel.j1_zeros(1)


def test_variational_integral_values():
    assert variational_integral(0.0) == 0.0
    assert variational_integral(1.0) == pytest.approx(
        TWO_PI * j1_series(1.0).value, abs=1e-12)
    z1 = j1_zeros(1)[0]
    assert abs(variational_integral(z1)) <= 1e-10


def test_identity_sweep():
    grid = np.linspace(0.0, 20.0, 120)
    worst = max(abs(variational_integral(float(x)) - TWO_PI * j1(float(x)).value)
                for x in grid)
    assert worst <= 1e-10


def test_small_argument_ratio():
    e = j1(1e-4)
    assert abs(e.value / 1e-4 - 0.5) <= 1e-8


def test_envelope():
    c = asymptotic_error_constant()
    for x in np.linspace(5.0, 100.0, 96):
        assert abs(j1(float(x)).value) <= math.sqrt(2 / (PI * x)) + c * x**-1.5


@pytest.mark.parametrize("x,cap", [(1.0, 2e-6), (3.831706, 1e-5 * (1 + 3.831706**2)),
                                   (20.0, 1e-5 * 401)])
def test_ode_residual(x, cap):
    assert abs(ode_residual(x)) <= cap


def test_ode_residual_general_bound():
    for x in np.linspace(0.5, 30.0, 31):
        assert abs(ode_residual(float(x))) <= 1e-5 * (1 + x * x)
