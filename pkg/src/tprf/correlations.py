"""Two-time correlation functions and emission spectra.

Correlations follow the quantum regression theorem::

    g1(tau) = Tr[F+ exp(L tau)(F rho_st)]
    g2(tau) = Tr[F+ F exp(L tau)(F rho_st F+)]

Spectra are the Fourier transform of ``g1`` of the fluctuation field
``dF = F - <F>``, so that only inelastic scattering is kept. With
``S(w) = int g1(tau) exp(-i w tau) dtau`` over the real line, positive ``w``
is emission above the drive frequency and ``int S dw/2pi = g1(0)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.signal

from .errors import (DegenerateNormalizationError, ElasticContaminationError, GridError,
                     StaleStateError)
from .lindblad import propagator, vec

DEFAULT_TAU_MAX_GAMMAS = 20.0
DEFAULT_N_DELAYS = 4096


@dataclass(frozen=True)
class CorrelationTrace:
    delays: np.ndarray
    values: np.ndarray
    normalization: str = "raw"

    @property
    def is_uniform(self):
        return _is_uniform(self.delays)


@dataclass(frozen=True)
class Spectrum:
    """PSD on a grid of angular frequencies measured from the drive."""

    frequencies: np.ndarray
    psd: np.ndarray

    def integrated(self, band=None):
        """``int S dw / 2pi``, optionally restricted to ``|w| <= band``."""
        dw = self.frequencies[1] - self.frequencies[0]
        psd = self.psd if band is None else self.psd[np.abs(self.frequencies) <= band]
        return float(np.sum(psd) * dw / (2.0 * np.pi))


def delay_grid(gamma, tau_max_gammas=DEFAULT_TAU_MAX_GAMMAS, n=DEFAULT_N_DELAYS):
    """Uniform delays from 0 to ``tau_max_gammas / gamma``."""
    return np.linspace(0.0, tau_max_gammas / gamma, n)


def _is_uniform(delays, rtol=1e-9):
    d = np.diff(delays)
    return d.size > 0 and np.all(d > 0) and np.ptp(d) <= rtol * d.mean()


def _check_delays(delays):
    delays = np.asarray(delays, dtype=float)
    if delays.ndim != 1 or delays.size == 0:
        raise GridError("delays must be a non-empty 1-D array")
    if delays[0] < 0 or np.any(np.diff(delays) <= 0):
        raise GridError("delays must be non-negative and strictly increasing")
    return delays


def _check_steady(L, rho_st, rtol=1e-8):
    resid = np.linalg.norm(L @ vec(rho_st))
    if resid > rtol * max(np.linalg.norm(L, 2), 1.0):
        raise StaleStateError(f"rho_st is not stationary under L (||L rho|| = {resid:.3e})")


def evolve_on_grid(L, x0, delays):
    """``exp(L tau) x0`` for every delay, as rows of a (len(delays), n**2) array.

    A uniform grid reuses one propagator for every step.
    """
    delays = _check_delays(delays)
    out = np.empty((delays.size, x0.size), dtype=complex)
    x = propagator(L, delays[0]) @ x0 if delays[0] > 0 else np.array(x0, dtype=complex)
    out[0] = x
    if delays.size == 1:
        return out
    if _is_uniform(delays):
        step = propagator(L, delays[1] - delays[0])
        for i in range(1, delays.size):
            x = step @ x
            out[i] = x
    else:
        for i in range(1, delays.size):
            x = propagator(L, delays[i] - delays[i - 1]) @ x
            out[i] = x
    return out


def _trace_against(op, rows):
    # Tr[op X] = sum_ij op_ji X_ij = vec(op^T) . vec(X)
    return rows @ vec(np.asarray(op).T)


def correlation_g1(L, rho_st, F, delays):
    """First-order correlation ``Tr[F+ exp(L tau)(F rho_st)]``."""
    _check_steady(L, rho_st)
    delays = _check_delays(delays)
    F = np.asarray(F)
    rows = evolve_on_grid(L, vec(F @ rho_st), delays)
    return CorrelationTrace(delays, _trace_against(F.conj().T, rows), "raw")


def correlation_g2(L, rho_st, F, delays, normalize=True, *, min_flux=1e-14):
    """Second-order correlation ``Tr[F+ F exp(L tau)(F rho_st F+)]``.

    With ``normalize`` the trace is divided by ``<F+ F>^2`` in the steady state.
    """
    _check_steady(L, rho_st)
    delays = _check_delays(delays)
    F = np.asarray(F)
    Fd = F.conj().T
    flux = np.trace(Fd @ F @ rho_st).real
    if normalize and flux < min_flux:
        raise DegenerateNormalizationError(f"<F+F> = {flux:.3e} is too small to normalize g2")
    rows = evolve_on_grid(L, vec(F @ rho_st @ Fd), delays)
    values = _trace_against(Fd @ F, rows).real
    if normalize:
        return CorrelationTrace(delays, values / flux**2, "normalized")
    return CorrelationTrace(delays, values, "raw")


def flux(rho, F):
    """Steady-state photon flux ``<F+ F>``."""
    F = np.asarray(F)
    return float(np.trace(F.conj().T @ F @ rho).real)


def g2_zero(rho, F, *, min_flux=1e-14):
    """Equal-time normalized correlation ``<F+ F+ F F> / <F+ F>^2``."""
    F = np.asarray(F)
    Fd = F.conj().T
    n = flux(rho, F)
    if n < min_flux:
        raise DegenerateNormalizationError(f"<F+F> = {n:.3e} is too small to normalize g2")
    return float(np.trace(Fd @ Fd @ F @ F @ rho).real / n**2)


def fluctuation(F, rho):
    """``F - <F> 1`` and the subtracted mean."""
    F = np.asarray(F)
    mean = np.trace(F @ rho)
    return F - mean * np.eye(F.shape[0]), mean


def power_spectrum(g1_trace, mean_field=0.0, *, window=None, pad_factor=2, tail=None,
                   elastic_tol=1e-10):
    """PSD from a one-sided ``g1`` trace of a fluctuation field.

    The trace is extended as ``g1(-tau) = g1(tau)*`` and transformed with an
    FFT after zero padding to ``pad_factor`` times its length.

    Parameters
    ----------
    g1_trace : CorrelationTrace
        ``g1`` on a uniform grid starting at ``tau = 0``.
    mean_field : complex
        Steady-state mean of the field the trace was computed for. It must be
        negligible (``|mean|^2 <= elastic_tol * g1(0)``), otherwise the
        coherent part would leave a delta peak at the drive frequency.
    window : None or "hann"
        Optional one-sided Hann taper.
    tail : complex array, optional
        ``sum_{m >= N} g1(m dt) exp(-i w m dt)`` at the FFT frequencies (in
        FFT order), added to the sum over the sampled grid.
    """
    delays = np.asarray(g1_trace.delays, dtype=float)
    g = np.asarray(g1_trace.values, dtype=complex)
    if delays.size < 2 or not _is_uniform(delays) or delays[0] != 0.0:
        raise GridError("power_spectrum needs a uniform delay grid starting at 0")
    g0 = g[0].real
    residual = abs(mean_field) ** 2 / g0 if g0 > 0 else abs(mean_field)
    if residual > elastic_tol:
        raise ElasticContaminationError(
            f"field mean {mean_field} was not subtracted (relative elastic weight {residual:.3e})"
        )
    if window == "hann":
        g = g * np.cos(0.5 * np.pi * delays / delays[-1]) ** 2
    elif window not in (None, "none"):
        raise ValueError(f"unknown window {window!r}")
    dt = delays[1] - delays[0]
    m = pad_factor * delays.size
    padded = np.zeros(m, dtype=complex)
    padded[: delays.size] = g
    padded[0] *= 0.5
    one_sided = np.fft.fft(padded)
    if tail is not None:
        one_sided = one_sided + tail
    psd = 2.0 * dt * one_sided.real
    w = 2.0 * np.pi * np.fft.fftfreq(m, dt)
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], psd[order])


def _tail_sum(L, A, x0, n, dt, w, stationary_tol=1e-9):
    """``sum_{m >= n} Tr[A exp(L m dt) x0] exp(-i w m dt)`` via the eigenmodes of ``L``.

    The stationary mode is skipped; for a fluctuation field its weight is zero.
    """
    lam, V = np.linalg.eig(L)
    amp = (vec(np.asarray(A).T) @ V) * np.linalg.solve(V, x0)
    keep = np.abs(lam) > stationary_tol * np.max(np.abs(lam))
    z = np.exp(lam[keep] * dt)
    phase = np.exp(-1j * np.outer(w, np.ones(keep.sum())) * dt)
    terms = amp[keep] * z**n * phase**n / (1.0 - z * phase)
    return terms.sum(axis=1)


def emission_spectrum(L, rho_st, F, delays, *, window=None, pad_factor=2):
    """Inelastic spectrum of ``F``: subtract ``<F>``, compute ``g1``, transform.

    Without a window the part of ``g1`` beyond the last delay is summed
    exactly, so the result is the transform of the full correlation sampled
    on the grid and stays non-negative.
    """
    dF, _ = fluctuation(F, rho_st)
    trace = correlation_g1(L, rho_st, dF, delays)
    tail = None
    if window in (None, "none") and _is_uniform(trace.delays):
        dt = trace.delays[1] - trace.delays[0]
        w = 2.0 * np.pi * np.fft.fftfreq(pad_factor * trace.delays.size, dt)
        tail = _tail_sum(L, dF.conj().T, vec(dF @ rho_st), trace.delays.size, dt, w)
    return power_spectrum(trace, np.trace(dF @ rho_st), window=window, pad_factor=pad_factor,
                          tail=tail)


def spectral_peaks(spectrum, rel_prominence=1e-3):
    """Frequencies of local maxima with prominence above ``rel_prominence * max``."""
    psd = spectrum.psd
    idx, _ = scipy.signal.find_peaks(psd, prominence=rel_prominence * psd.max())
    return spectrum.frequencies[idx], psd[idx]

