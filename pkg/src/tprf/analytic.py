"""Closed-form two-photon fluorescence results at two-photon resonance.

Valid for three levels, ``delta = 0``, ``Gamma << |alpha|, Omega`` and small
``epsilon = Omega/|alpha|``; in practice up to ``epsilon ~ 0.2``. Outside that
window the functions still return a value but emit
:class:`OutOfValidityWarning`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.optimize

VALIDITY_EPSILON = 0.2


class OutOfValidityWarning(UserWarning):
    pass


@dataclass(frozen=True)
class AnalyticParams:
    epsilon: float
    gamma_over_alpha: float

    @classmethod
    def from_rates(cls, omega, alpha, gamma):
        return cls(omega / abs(alpha), gamma / abs(alpha))

    @property
    def in_validity_window(self):
        return self.epsilon <= VALIDITY_EPSILON


def _warn_if_outside(p):
    if not p.in_validity_window:
        warnings.warn(
            f"epsilon = {p.epsilon:.3g} exceeds {VALIDITY_EPSILON}; perturbative expression is unreliable",
            OutOfValidityWarning,
            stacklevel=3,
        )


def analytic_flux(p, gamma):
    """Integrated photon flux ``Gamma <T+ T>`` of the two-photon line (1/s)."""
    _warn_if_outside(p)
    e2 = p.epsilon**2
    r2 = p.gamma_over_alpha**2
    return gamma * e2 * (55.0 * e2**2 - 450.0 * e2**3 + 4.0 * r2) / (4.0 * r2 + 9.0 * e2**2)


def analytic_g2zero(omega, alpha, gamma):
    """Zero-delay normalized autocorrelation of the two-photon line."""
    a = 4.0 * alpha**2 * gamma**2
    o4 = omega**4
    return (a + 9.0 * o4) * (a + 479.0 * o4) / (a + 55.0 * o4) ** 2


def g2max_point(alpha, gamma):
    """Drive strength maximizing :func:`analytic_g2zero`, and the maximum.

    The expression depends on ``u = Omega^2 / (|alpha| Gamma)`` only, so the
    golden-section search runs over ``log u`` and the result is rescaled.
    """
    def neg(log_u):
        return -analytic_g2zero(np.exp(0.5 * log_u), 1.0, 1.0)

    res = scipy.optimize.minimize_scalar(neg, bracket=(-6.0, 0.0, 6.0), method="golden",
                                         tol=1e-12)
    omega_star = np.sqrt(np.exp(res.x) * abs(alpha) * gamma)
    return float(omega_star), float(-res.fun)
