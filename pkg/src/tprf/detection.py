"""Finite detection bandwidth and drive-power calibration.

The measured ``g2`` is compared with theory by convolving the calculated
trace twice with the squared impulse response of the digital filter, an
approximation that holds at low signal-to-noise ratio. Kernels are treated
as zero-phase: tap ``(len - 1) / 2`` sits at zero delay.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .correlations import CorrelationTrace, spectral_peaks
from .errors import GridError, KernelError, UnderdeterminedError


@dataclass(frozen=True)
class FilterKernel:
    """Filter impulse response sampled every ``sample_period`` seconds.

    Taps are rescaled on construction to unit DC gain.
    """

    taps: np.ndarray
    sample_period: float
    bandwidth_hint: float | None = None

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=float).ravel()
        if taps.size == 0:
            raise KernelError("kernel has no taps")
        if self.sample_period <= 0:
            raise KernelError("sample_period must be positive")
        total = taps.sum()
        if total == 0:
            raise KernelError("kernel taps sum to zero; cannot normalize to unit DC gain")
        object.__setattr__(self, "taps", taps / total)

    def squared(self):
        """Elementwise-squared taps renormalized to unit sum."""
        sq = self.taps**2
        return sq / sq.sum()


def delta_kernel(sample_period):
    return FilterKernel(np.ones(1), sample_period)


def boxcar_kernel(bandwidth, sample_period):
    """Moving average of duration ``1/bandwidth`` (two-sided bandwidth in Hz).

    The tap count is rounded to the nearest odd number so the kernel is
    centered on a sample.
    """
    n = _odd(1.0 / (bandwidth * sample_period))
    return FilterKernel(np.ones(n), sample_period, bandwidth)


def raised_cosine_kernel(bandwidth, sample_period):
    """Hann-shaped impulse response with the same equivalent duration as the boxcar."""
    n = _odd(2.0 / (bandwidth * sample_period))
    taps = np.hanning(n + 2)[1:-1] if n > 1 else np.ones(1)
    return FilterKernel(taps, sample_period, bandwidth)


def load_kernel(path, sample_period, bandwidth_hint=None):
    """Read taps from a text file with one number per line."""
    taps = np.loadtxt(path, dtype=float, ndmin=1, comments="#")
    return FilterKernel(taps, sample_period, bandwidth_hint)


def _kernel_on_grid(kernel, dt):
    ratio = dt / kernel.sample_period
    m = int(round(ratio))
    if m < 1 or abs(ratio - m) > 1e-9 * ratio:
        raise GridError(
            f"kernel sample period {kernel.sample_period:.6g} s does not divide the grid step {dt:.6g} s"
        )
    sq = kernel.squared()
    if m > 1:
        # each fine tap goes to the nearest grid delay, ties away from zero,
        # so symmetric kernels stay centered
        x = (np.arange(sq.size) - 0.5 * (sq.size - 1)) / m
        offsets = (np.sign(x) * np.floor(np.abs(x) + 0.5)).astype(int)
        half = np.max(np.abs(offsets))
        binned = np.zeros(2 * half + 1)
        np.add.at(binned, offsets + half, sq)
        sq = binned
    return sq / sq.sum()


def _odd(n):
    n = max(1, int(round(n)))
    return n if n % 2 else n + 1


def filter_g2(trace, kernel):
    """Apply the detection filter to a normalized ``g2`` trace.

    The trace is mirrored to negative delays, convolved twice with the
    squared kernel, and the non-negative half is returned. Values beyond the
    ends of the trace are held constant.
    """
    delays = np.asarray(trace.delays, dtype=float)
    values = np.asarray(trace.values, dtype=float)
    if delays.size < 2 or delays[0] != 0.0:
        raise GridError("filter_g2 needs a trace starting at zero delay")
    d = np.diff(delays)
    if np.ptp(d) > 1e-9 * d.mean():
        raise GridError("filter_g2 needs a uniform delay grid")
    k = _kernel_on_grid(kernel, d.mean())
    if k.size > delays.size:
        raise KernelError(f"kernel spans {k.size} samples, wider than half the mirrored trace ({delays.size})")
    mirrored = np.concatenate([values[:0:-1], values])
    pad = 2 * k.size
    ext = np.pad(mirrored, pad, mode="edge")
    out = np.convolve(np.convolve(ext, k, mode="same"), k, mode="same")[pad:-pad]
    return CorrelationTrace(delays.copy(), out[delays.size - 1:], trace.normalization)


@dataclass(frozen=True)
class PowerCalibration:
    """``Omega = k sqrt(P_in 10^(-attenuation/10))``."""

    k: float
    reference_attenuation: float = 0.0
    residual_norm: float = field(default=0.0, compare=False)

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"calibration slope must be positive, got {self.k}")


def omega_from_power(p_in, cal):
    """Rabi rate (rad/s) for an input power ``p_in`` in watts."""
    p_in = np.asarray(p_in, dtype=float)
    if np.any(p_in < 0):
        raise ValueError("input power must be non-negative")
    omega = cal.k * np.sqrt(p_in * 10.0 ** (-cal.reference_attenuation / 10.0))
    return float(omega) if omega.ndim == 0 else omega


def fit_calibration(points, reference_attenuation=0.0):
    """Least-squares slope of ``Omega`` against ``sqrt(P_in)`` through the origin.

    Parameters
    ----------
    points : sequence of (P_in, Omega)
        Input powers in watts and observed Rabi rates in rad/s.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] < 2 or np.unique(pts[:, 0]).size < 2:
        raise UnderdeterminedError("need at least two points at distinct powers")
    x = np.sqrt(pts[:, 0] * 10.0 ** (-reference_attenuation / 10.0))
    y = pts[:, 1]
    k = float(x @ y / (x @ x))
    return PowerCalibration(k, reference_attenuation, float(np.linalg.norm(y - k * x)))


def mollow_splitting(spectrum, rel_prominence=1e-3):
    """Sideband offset of a Mollow triplet: half the distance between the outer peaks."""
    w, _ = spectral_peaks(spectrum, rel_prominence)
    if w.size < 2:
        raise ValueError("spectrum does not show resolved sidebands")
    return 0.5 * (w.max() - w.min())
