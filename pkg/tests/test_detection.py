import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tprf.correlations import CorrelationTrace, correlation_g2, delay_grid, emission_spectrum
from tprf.detection import (FilterKernel, PowerCalibration, boxcar_kernel, delta_kernel, filter_g2,
                            fit_calibration, load_kernel, mollow_splitting, omega_from_power,
                            raised_cosine_kernel)
from tprf.dressed import line_operators
from tprf.errors import GridError, KernelError, UnderdeterminedError
from tprf.ladder import LadderParams, lowering_operator, mhz
from tprf.lindblad import liouvillian, steady_state

from conftest import ALPHA, GAMMA, params3

DELAYS = delay_grid(GAMMA)
DT = DELAYS[1] - DELAYS[0]


def g2_trace(p, F):
    L = liouvillian(p)
    rho = steady_state(L)
    return correlation_g2(L, rho, F, delay_grid(p.gamma))


@pytest.fixture(scope="module")
def antibunched():
    p = LadderParams(2, ALPHA, -ALPHA / 2, mhz(20.0), GAMMA)
    return g2_trace(p, lowering_operator(2))


@pytest.fixture(scope="module")
def superbunched():
    p = params3(0.06)
    return g2_trace(p, line_operators(p)[1]["TPRF"])


def brute_filter(values, sq):
    # oracle: explicit sums over the mirrored, edge-held trace
    n = values.size
    h = sq.size // 2

    def at(x, i):
        return x[min(max(i, 0), x.size - 1)]

    mirrored = np.concatenate([values[:0:-1], values])
    pad = 3 * sq.size
    ext = np.concatenate([np.full(pad, mirrored[0]), mirrored, np.full(pad, mirrored[-1])])
    once = np.array([sum(sq[j] * at(ext, i + h - j) for j in range(sq.size)) for i in range(ext.size)])
    twice = np.array([sum(sq[j] * at(once, i + h - j) for j in range(sq.size)) for i in range(ext.size)])
    return twice[pad + n - 1: pad + 2 * n - 1]


def test_kernel_normalized():
    k = FilterKernel([1.0, 2.0, 1.0], 1e-9)
    assert k.taps.sum() == pytest.approx(1, abs=1e-12)
    assert k.squared().sum() == pytest.approx(1, abs=1e-12)
    with pytest.raises(KernelError):
        FilterKernel([1.0, -1.0], 1e-9)
    with pytest.raises(KernelError):
        FilterKernel([], 1e-9)


def test_boxcar_width():
    k = boxcar_kernel(12e6, DT)
    assert k.taps.size % 2 == 1
    assert k.taps.size * DT == pytest.approx(1 / 12e6, rel=0.01)
    assert raised_cosine_kernel(12e6, DT).taps.size % 2 == 1


def test_delta_kernel_is_identity(superbunched):
    out = filter_g2(superbunched, delta_kernel(DT))
    assert np.max(np.abs(out.values - superbunched.values)) <= 1e-12


def test_constant_stays_constant():
    tr = CorrelationTrace(DELAYS, np.ones(DELAYS.size), "normalized")
    for k in (boxcar_kernel(12e6, DT), raised_cosine_kernel(12e6, DT)):
        np.testing.assert_allclose(filter_g2(tr, k).values, 1.0, atol=1e-12)


def test_matches_brute_force():
    d = np.linspace(0, 60e-9, 61)
    rng = np.random.default_rng(3)
    tr = CorrelationTrace(d, 1 + 0.3 * np.exp(-d / 10e-9) * np.cos(d / 7e-9) + 0.01 * rng.random(d.size))
    k = FilterKernel([0.2, 1.0, 0.7, 1.0, 0.2], 1e-9)
    np.testing.assert_allclose(filter_g2(tr, k).values, brute_filter(tr.values, k.squared()), atol=1e-13)


def test_double_equals_self_convolved(superbunched):
    k = boxcar_kernel(12e6, DT)
    sq = k.squared()
    kern = np.convolve(sq, sq)
    v = superbunched.values
    mirrored = np.concatenate([v[:0:-1], v])
    pad = 2 * kern.size
    ext = np.pad(mirrored, pad, mode="edge")
    single = np.convolve(ext, kern, mode="same")[pad:-pad][v.size - 1:]
    np.testing.assert_allclose(filter_g2(superbunched, k).values, single, atol=1e-10)


def test_washout(antibunched, superbunched):
    k = boxcar_kernel(12e6, DT)
    a = filter_g2(antibunched, k)
    s = filter_g2(superbunched, k)
    assert a.values[0] > antibunched.values[0]
    assert s.values[0] < superbunched.values[0]
    for raw, out in ((antibunched, a), (superbunched, s)):
        assert abs(out.values[-1] - raw.values[-1]) <= 1e-6


def test_kernel_sampled_finer_than_grid():
    d = np.linspace(0, 100e-9, 101)
    tr = CorrelationTrace(d, 1 - np.exp(-d / 20e-9))
    fine = FilterKernel(np.ones(9), 0.5e-9)
    # fine taps at offsets -2..2 ns, each landing on the nearest 1 ns grid delay
    equivalent = FilterKernel(np.sqrt([2, 2, 1, 2, 2]), 1e-9)
    np.testing.assert_allclose(filter_g2(tr, fine).values, filter_g2(tr, equivalent).values, atol=1e-14)
    with pytest.raises(GridError):
        filter_g2(tr, FilterKernel(np.ones(3), 0.3e-9))


def test_kernel_too_wide():
    d = np.linspace(0, 10e-9, 11)
    with pytest.raises(KernelError):
        filter_g2(CorrelationTrace(d, np.ones(11)), FilterKernel(np.ones(15), 1e-9))


def test_non_uniform_trace():
    with pytest.raises(GridError):
        filter_g2(CorrelationTrace(np.array([0, 1, 3.0]), np.ones(3)), delta_kernel(1.0))


def test_load_kernel(tmp_path):
    path = tmp_path / "taps.txt"
    path.write_text("# boxcar\n1\n1\n1\n")
    k = load_kernel(path, DT, 12e6)
    np.testing.assert_allclose(k.taps, [1 / 3] * 3)
    assert k.bandwidth_hint == 12e6


@settings(max_examples=40, deadline=None)
@given(
    x=arrays(float, 40, elements=st.floats(0, 10)),
    y=arrays(float, 40, elements=st.floats(-10, 10)),
    taps=arrays(float, st.integers(1, 9), elements=st.floats(0.01, 1)),
    a=st.floats(-3, 3),
)
def test_linear_and_positive(x, y, taps, a):
    d = np.arange(40) * 1e-9
    k = FilterKernel(taps, 1e-9)
    fx = filter_g2(CorrelationTrace(d, x), k).values
    fy = filter_g2(CorrelationTrace(d, y), k).values
    fxy = filter_g2(CorrelationTrace(d, x + a * y), k).values
    np.testing.assert_allclose(fxy, fx + a * fy, atol=1e-9)
    assert np.all(fx >= -1e-12)


def test_omega_from_power():
    cal = PowerCalibration(k=2.0e9, reference_attenuation=60.0)
    assert omega_from_power(0.0, cal) == 0.0
    assert omega_from_power(2e-9, cal) / omega_from_power(1e-9, cal) == pytest.approx(np.sqrt(2))
    assert omega_from_power(1e-9, cal) == pytest.approx(2.0e9 * np.sqrt(1e-15))
    with pytest.raises(ValueError):
        omega_from_power(-1.0, cal)
    with pytest.raises(ValueError):
        PowerCalibration(k=0.0)


def test_fit_exact_points():
    k = 3.3e10
    powers = np.array([1e-12, 4e-12, 9e-12, 2e-11])
    cal = fit_calibration(np.column_stack([powers, k * np.sqrt(powers)]))
    assert cal.k == pytest.approx(k, rel=1e-12)
    assert cal.residual_norm <= 1e-12 * k


def test_fit_noisy_points():
    rng = np.random.default_rng(7)
    k = 3.3e10
    powers = np.geomspace(1e-13, 1e-10, 20)
    omegas = k * np.sqrt(powers) * (1 + 0.01 * rng.normal(size=powers.size))
    assert fit_calibration(np.column_stack([powers, omegas])).k == pytest.approx(k, rel=0.02)


def test_fit_underdetermined():
    with pytest.raises(UnderdeterminedError):
        fit_calibration([(1e-12, 1e6)])
    with pytest.raises(UnderdeterminedError):
        fit_calibration([(1e-12, 1e6), (1e-12, 2e6)])


def test_fit_scale_equivariance():
    pts = np.array([(1e-12, 1.0e6), (3e-12, 1.9e6), (8e-12, 2.7e6)])
    c = 5.0
    k1 = fit_calibration(pts).k
    k2 = fit_calibration(np.column_stack([pts[:, 0] * c, pts[:, 1]])).k
    assert k2 == pytest.approx(k1 / np.sqrt(c), rel=1e-12)


def test_calibration_from_mollow_spectra():
    # synthetic dataset: spectra at known drive, splitting read off the peaks
    k_true = mhz(20.0) / np.sqrt(1e-12)
    points = []
    for power in (0.5e-12, 1e-12, 2e-12):
        omega = k_true * np.sqrt(power)
        p = LadderParams(2, ALPHA, -ALPHA / 2, omega, GAMMA)
        L = liouvillian(p)
        rho = steady_state(L)
        spec = emission_spectrum(L, rho, np.sqrt(GAMMA) * lowering_operator(2), delay_grid(GAMMA))
        points.append((power, mollow_splitting(spec)))
    cal = fit_calibration(points)
    assert cal.k == pytest.approx(k_true, rel=0.05)
    for power, observed in points:
        assert observed == pytest.approx(omega_from_power(power, cal), rel=0.05)
