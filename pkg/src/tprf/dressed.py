"""Dressed states of the driven three-level ladder and the secular split of b.

Labels follow the level scheme of two-photon resonance fluorescence:

* ``xi_1 = |->``   the g/f hybrid nearer in energy to the e-like state
  (at two-photon resonance it sits exactly at zero),
* ``xi_2 = |+~>``  the other g/f hybrid,
* ``xi_3 = |e~>``  the state with the largest e population.

For a transmon (alpha < 0) and ``|delta| < |alpha|/2`` these labels are the
ones obtained by following each state adiabatically from zero drive, because
the three levels never cross as the drive grows.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AmbiguousGroupingError, ShapeError
from .ladder import hamiltonian, lowering_operator

LABELS = ("TPRF", "GE", "EF")


@dataclass(frozen=True)
class DressedBasis:
    """Eigen-decomposition of a three-level rotating-frame Hamiltonian.

    Attributes
    ----------
    eigenvalues : (3,) float array
        ``(lambda_1, lambda_2, lambda_3)`` in label order, not sorted.
    vectors : (3, 3) complex array
        Column ``j`` is ``|xi_j>`` in the bare basis.
    alpha : float
        Anharmonicity read off the Hamiltonian diagonal, ``H_ff - 2 H_ee``.
    """

    eigenvalues: np.ndarray
    vectors: np.ndarray
    alpha: float

    @property
    def coefficients(self):
        """``c_ij`` with ``|i> = sum_j c_ij |xi_j>``, i.e. ``c_ij = <xi_j|i>``."""
        return self.vectors.conj()

    def to_dressed(self, op):
        return self.vectors.conj().T @ op @ self.vectors

    def to_bare(self, op):
        return self.vectors @ op @ self.vectors.conj().T

    def populations(self, rho):
        """Diagonal of ``rho`` in the dressed basis, in label order."""
        return np.real(np.diag(self.to_dressed(rho)))


def _fix_phases(V):
    V = V.copy()
    for j in range(V.shape[1]):
        k = np.argmax(np.abs(V[:, j]))
        V[:, j] *= abs(V[k, j]) / V[k, j]
    return V


def diagonalize(H3, *, hermitian_tol=1e-12):
    """Dressed states and frequencies of a 3x3 Hermitian Hamiltonian.

    Each eigenvector is scaled so that its largest-magnitude component is
    real and positive.
    """
    H3 = np.asarray(H3, dtype=complex)
    if H3.shape != (3, 3):
        raise ShapeError(f"expected a 3x3 Hamiltonian, got {H3.shape}")
    scale = max(np.max(np.abs(H3)), np.finfo(float).tiny)
    if np.max(np.abs(H3 - H3.conj().T)) > hermitian_tol * scale:
        raise ShapeError("Hamiltonian is not Hermitian")
    w, V = np.linalg.eigh(H3)
    ie = int(np.argmax(np.abs(V[1, :])))
    pair = sorted((j for j in range(3) if j != ie), key=lambda j: abs(w[j] - w[ie]))
    order = [pair[0], pair[1], ie]
    alpha = float(H3[2, 2].real - 2.0 * H3[1, 1].real)
    return DressedBasis(eigenvalues=w[order], vectors=_fix_phases(V[:, order]), alpha=alpha)


def resonant_dressed_frequencies(alpha, omega):
    """Closed-form ``(lambda_1, lambda_2, lambda_3)`` at ``delta = 0``."""
    root = np.sqrt(alpha**2 + 12.0 * omega**2)
    return 0.0, 0.25 * (-root - alpha), 0.25 * (root - alpha)


def approximate_dressed_frequencies(alpha, omega):
    """Second-order expansion of :func:`resonant_dressed_frequencies` in ``omega/|alpha|``."""
    shift = 1.5 * omega**2 / abs(alpha)
    return 0.0, -shift, -alpha / 2.0 + shift


@dataclass(frozen=True)
class LineOperator:
    """Part of the decay operator emitting around one spectral line.

    ``center_frequency`` is the Bohr frequency ``lambda_k - lambda_j`` around
    which the grouped terms ``|xi_j><xi_k|`` oscillate.
    """

    label: str
    center_frequency: float
    matrix: np.ndarray
    basis: DressedBasis

    @property
    def bare(self):
        return self.basis.to_bare(self.matrix)


def group_centers(alpha):
    return {"TPRF": 0.0, "GE": -alpha / 2.0, "EF": alpha / 2.0}


def decompose(b, basis, grouping_tolerance=None):
    """Partition ``b`` into the TPRF, GE and EF line operators.

    Every dressed-basis term ``<xi_j|b|xi_k> |xi_j><xi_k|`` goes to the group
    whose center is nearest to its Bohr frequency. Terms farther than
    ``grouping_tolerance`` (default ``|alpha|/4``) from every center raise
    :class:`AmbiguousGroupingError`.

    Returns
    -------
    dict mapping label to :class:`LineOperator`, in the order TPRF, GE, EF.
    """
    b = np.asarray(b)
    if b.shape != (3, 3):
        raise ShapeError("the secular decomposition is defined for three levels only")
    if grouping_tolerance is None:
        grouping_tolerance = abs(basis.alpha) / 4.0
    centers = group_centers(basis.alpha)
    bd = basis.to_dressed(b)
    parts = {label: np.zeros((3, 3), dtype=complex) for label in LABELS}
    lam = basis.eigenvalues
    for j in range(3):
        for k in range(3):
            bohr = lam[k] - lam[j]
            label = min(LABELS, key=lambda name: abs(bohr - centers[name]))
            if abs(bohr - centers[label]) > grouping_tolerance:
                raise AmbiguousGroupingError(
                    f"term |xi_{j + 1}><xi_{k + 1}| at Bohr frequency {bohr:.6g} rad/s is more than "
                    f"{grouping_tolerance:.6g} rad/s from every group center {centers}"
                )
            parts[label][j, k] = bd[j, k]
    return {label: LineOperator(label, centers[label], parts[label], basis) for label in LABELS}


def line_operators(params, grouping_tolerance=None):
    """Dressed basis and line operators (bare basis) for three-level ``params``."""
    if params.n_levels != 3:
        raise ShapeError("line operators are defined for n_levels = 3 only")
    basis = diagonalize(hamiltonian(params))
    lines = decompose(lowering_operator(3), basis, grouping_tolerance)
    return basis, {label: op.bare for label, op in lines.items()}
