import warnings

import numpy as np
import pytest
import sympy

from tprf.analytic import (AnalyticParams, OutOfValidityWarning, analytic_flux, analytic_g2zero,
                           g2max_point)
from tprf.correlations import flux, g2_zero
from tprf.dressed import line_operators
from tprf.ladder import mhz, to_mhz
from tprf.lindblad import liouvillian, steady_state

from conftest import ALPHA, GAMMA, params3

R = GAMMA / abs(ALPHA)


def numeric_tprf(eps, delta=0.0):
    p = params3(eps, delta)
    rho = steady_state(liouvillian(p))
    _, ops = line_operators(p)
    return flux(rho, ops["TPRF"]), g2_zero(rho, ops["TPRF"])


def test_flux_vanishes_without_drive():
    assert analytic_flux(AnalyticParams(0.0, R), GAMMA) == 0.0


def test_flux_leading_order():
    e, r = sympy.symbols("e r", positive=True)
    expr = e**2 * (55 * e**4 - 450 * e**6 + 4 * r**2) / (4 * r**2 + 9 * e**4)
    series = sympy.series(expr, e, 0, 4).removeO()
    assert sympy.simplify(series - e**2) == 0
    for eps in (1e-3, 3e-3):
        assert analytic_flux(AnalyticParams(eps, R), GAMMA) / (GAMMA * eps**2) == pytest.approx(1, abs=1e-3)


def test_flux_at_reference_point_matches_pipeline():
    numeric, _ = numeric_tprf(0.1)
    assert GAMMA * numeric == pytest.approx(analytic_flux(AnalyticParams(0.1, R), GAMMA), rel=0.05)


def test_flux_negative_beyond_validity_is_not_clipped():
    with pytest.warns(OutOfValidityWarning):
        value = analytic_flux(AnalyticParams(0.4, R), GAMMA)
    assert value < 0


def test_no_warning_inside_window():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        analytic_flux(AnalyticParams(0.2, R), GAMMA)


def test_g2_limits():
    assert analytic_g2zero(0.0, ALPHA, GAMMA) == 1.0
    assert analytic_g2zero(1e3 * abs(ALPHA), ALPHA, GAMMA) == pytest.approx(9 * 479 / 55**2, rel=1e-9)
    omegas = np.linspace(1e-3, 0.2, 200) * abs(ALPHA)
    assert np.all(analytic_g2zero(omegas, ALPHA, GAMMA) > 1)


def test_g2_matches_pipeline_at_20mhz():
    omega = mhz(20.0)
    _, numeric = numeric_tprf(omega / abs(ALPHA))
    assert numeric == pytest.approx(analytic_g2zero(omega, ALPHA, GAMMA), rel=0.05)


def test_g2max_point_against_brute_force():
    omega_star, g2_star = g2max_point(ALPHA, GAMMA)
    grid = np.linspace(0.05, 5.0, 400001) * np.sqrt(abs(ALPHA) * GAMMA)
    values = analytic_g2zero(grid, ALPHA, GAMMA)
    i = np.argmax(values)
    assert omega_star == pytest.approx(grid[i], rel=1e-4)
    assert g2_star == pytest.approx(values[i], rel=1e-9)
    assert g2_star == pytest.approx(2.831, rel=5e-4)
    # the formula's maximum: Omega* = 0.5367 sqrt(|alpha| Gamma), 12.95 MHz here
    assert omega_star / np.sqrt(abs(ALPHA) * GAMMA) == pytest.approx(0.53674, abs=1e-4)
    assert to_mhz(omega_star) == pytest.approx(12.95, abs=0.01)


def test_g2max_point_exact_stationarity():
    u = sympy.symbols("u", positive=True)
    g = (4 + 9 * u**2) * (4 + 479 * u**2) / (4 + 55 * u**2) ** 2
    roots = [r for r in sympy.solve(sympy.diff(g, u), u) if r.is_real and r > 0]
    assert len(roots) == 1
    omega_star, _ = g2max_point(1.0, 1.0)
    assert omega_star**2 == pytest.approx(float(roots[0]), rel=1e-8)


def test_g2max_point_scaling():
    w1, g1 = g2max_point(ALPHA, GAMMA)
    w2, g2 = g2max_point(ALPHA, 2 * GAMMA)
    w3, g3 = g2max_point(3 * ALPHA, GAMMA)
    assert w2 / w1 == pytest.approx(np.sqrt(2), rel=1e-6)
    assert w3 / w1 == pytest.approx(np.sqrt(3), rel=1e-6)
    assert g1 == pytest.approx(g2, rel=1e-9) and g1 == pytest.approx(g3, rel=1e-9)


@pytest.mark.parametrize("eps", [0.05, 0.10, 0.15, 0.20])
def test_oracles_agree_with_pipeline(eps):
    n, g2 = numeric_tprf(eps)
    assert n == pytest.approx(analytic_flux(AnalyticParams(eps, R), GAMMA) / GAMMA, rel=0.05)
    assert g2 == pytest.approx(analytic_g2zero(eps * abs(ALPHA), ALPHA, GAMMA), rel=0.05)


def test_blue_detuning_increases_bunching():
    _, g2_res = numeric_tprf(0.15)
    _, g2_blue = numeric_tprf(0.15, 2 * GAMMA)
    assert g2_blue > g2_res


def test_params_helpers():
    p = AnalyticParams.from_rates(0.1 * abs(ALPHA), ALPHA, GAMMA)
    assert p.epsilon == pytest.approx(0.1)
    assert p.gamma_over_alpha == pytest.approx(R)
    assert p.in_validity_window and not AnalyticParams(0.25, R).in_validity_window
