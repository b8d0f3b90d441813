"""Truncated transmon ladder: operators and the rotating-frame Hamiltonian.

All frequencies handled here are angular (rad/s). The conversion from the
``value/2pi`` MHz numbers used in configuration files happens only through
:func:`mhz` and :func:`to_mhz`.

Basis ordering is fixed: index 0 = g, 1 = e, 2 = f, 3 = h.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError

TWO_PI = 2.0 * np.pi
ALLOWED_LEVELS = (2, 3, 4)


def mhz(value):
    """Convert an ordinary frequency in MHz (``f = omega/2pi``) to rad/s."""
    return np.multiply(value, TWO_PI * 1e6)


def to_mhz(value):
    """Convert an angular frequency in rad/s to an ordinary frequency in MHz."""
    return np.divide(value, TWO_PI * 1e6)


@dataclass(frozen=True)
class LadderParams:
    """Physical configuration of the driven, damped ladder.

    Attributes
    ----------
    n_levels : int
        Hilbert-space truncation, 2, 3 or 4.
    alpha : float
        Anharmonicity ``omega_ef - omega_ge`` (rad/s), negative for a transmon.
    delta : float
        Drive detuning from the two-photon transition,
        ``omega_d - omega_gf/2`` (rad/s).
    omega : float
        Drive strength (Rabi rate), rad/s.
    gamma : float
        Radiative decay rate of the g-e transition, rad/s.
    """

    n_levels: int
    alpha: float
    delta: float
    omega: float
    gamma: float

    def __post_init__(self):
        if self.n_levels not in ALLOWED_LEVELS:
            raise InvalidDimensionError(f"n_levels must be one of {ALLOWED_LEVELS}, got {self.n_levels}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if self.omega < 0:
            raise ValueError(f"omega must be non-negative, got {self.omega}")
        if self.alpha >= 0:
            warnings.warn(
                f"alpha={self.alpha} is not negative; dressed-state labels assume a transmon-like ladder",
                stacklevel=3,
            )

    @classmethod
    def from_mhz(cls, n_levels, alpha, delta, omega, gamma):
        """Build from ordinary frequencies given in MHz."""
        return cls(int(n_levels), mhz(alpha), mhz(delta), mhz(omega), mhz(gamma))

    @property
    def epsilon(self):
        """Normalized drive strength ``omega/|alpha|``."""
        return self.omega / abs(self.alpha)

    def with_(self, **changes):
        fields = dict(n_levels=self.n_levels, alpha=self.alpha, delta=self.delta,
                      omega=self.omega, gamma=self.gamma)
        fields.update(changes)
        return LadderParams(**fields)


def lowering_operator(n_levels):
    """Truncated annihilation operator with ``<k-1|b|k> = sqrt(k)``."""
    if n_levels < 2:
        raise InvalidDimensionError(f"need at least two levels, got {n_levels}")
    return np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), k=1).astype(complex)


def number_operator(n_levels):
    return np.diag(np.arange(n_levels, dtype=float)).astype(complex)


def hamiltonian(params):
    """Rotating-frame Hamiltonian of the driven Kerr ladder (units of rad/s).

    ``H = -(delta + alpha/2) n + (alpha/2) b+ b+ b b + i (Omega/2)(b - b+)``
    """
    b = lowering_operator(params.n_levels)
    bd = b.conj().T
    n = bd @ b
    h = (-(params.delta + params.alpha / 2.0) * n
         + (params.alpha / 2.0) * (bd @ bd @ b @ b)
         + 0.5j * params.omega * (b - bd))
    # remove rounding asymmetry so H == H^dagger bit for bit
    return 0.5 * (h + h.conj().T)


def output_field(params):
    """Output-line field operator ``sqrt(Gamma) b``."""
    return np.sqrt(params.gamma) * lowering_operator(params.n_levels)
