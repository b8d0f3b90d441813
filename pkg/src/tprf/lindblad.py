"""Liouvillian superoperators, steady states and time propagation.

Density matrices are vectorized by column stacking, ``vec(rho)[i + n*j] =
rho[i, j]``, so that ``vec(A X B) = (B^T kron A) vec(X)``.
"""
from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import (InvalidRateError, InvalidTimeError, NonUniqueSteadyStateError,
                     NotPhysicalError, ShapeError)
from .ladder import hamiltonian, lowering_operator

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = -1e-9


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v, dim=None):
    v = np.asarray(v)
    if dim is None:
        dim = int(round(np.sqrt(v.size)))
    return v.reshape(dim, dim, order="F")


def _square(m, name):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def dissipator_apply(A, rho):
    """Lindblad damping term ``A rho A+ - 1/2 {A+ A, rho}``."""
    A = _square(A, "A")
    rho = _square(rho, "rho")
    if A.shape != rho.shape:
        raise ShapeError(f"shape mismatch: A {A.shape} vs rho {rho.shape}")
    Ad = A.conj().T
    AdA = Ad @ A
    return A @ rho @ Ad - 0.5 * (AdA @ rho + rho @ AdA)


def commutator_superop(H):
    """Matrix of ``rho -> -i[H, rho]``."""
    H = _square(H, "H")
    eye = np.eye(H.shape[0])
    return -1j * (np.kron(eye, H) - np.kron(H.T, eye))


def dissipator_superop(A):
    """Matrix of ``rho -> D[A] rho`` under column stacking."""
    A = _square(A, "A")
    eye = np.eye(A.shape[0])
    AdA = A.conj().T @ A
    return np.kron(A.conj(), A) - 0.5 * np.kron(eye, AdA) - 0.5 * np.kron(AdA.T, eye)


def liouvillian_matrix(H, collapse=()):
    """Superoperator of ``rho -> -i[H, rho] + sum_k rate_k D[A_k] rho``.

    Parameters
    ----------
    H : (n, n) array
        Hamiltonian in angular-frequency units.
    collapse : iterable of (rate, A)
        Decay channels. Rates must be non-negative.

    Returns
    -------
    (n**2, n**2) complex array acting on column-stacked density matrices.
    """
    H = _square(H, "H")
    L = commutator_superop(H)
    for rate, A in collapse:
        if rate < 0:
            raise InvalidRateError(f"collapse rate must be non-negative, got {rate}")
        A = _square(A, "collapse operator")
        if A.shape != H.shape:
            raise ShapeError(f"collapse operator shape {A.shape} does not match H {H.shape}")
        L = L + rate * dissipator_superop(A)
    return L


def liouvillian(params):
    """Liouvillian of the driven ladder with radiative decay ``Gamma D[b]``."""
    b = lowering_operator(params.n_levels)
    return liouvillian_matrix(hamiltonian(params), [(params.gamma, b)])


def check_density_matrix(rho, *, herm_tol=HERMITIAN_TOL, trace_tol=TRACE_TOL,
                         positivity_tol=POSITIVITY_TOL):
    """Raise :class:`NotPhysicalError` unless ``rho`` is a valid state."""
    rho = _square(rho, "rho")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > herm_tol:
        raise NotPhysicalError(f"not Hermitian: max |rho - rho^+| = {herm:.3e}")
    tr = np.trace(rho)
    if abs(tr - 1.0) > trace_tol:
        raise NotPhysicalError(f"trace is {tr}, expected 1")
    lam = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()
    if lam < positivity_tol:
        raise NotPhysicalError(f"negative eigenvalue {lam:.3e}")
    return rho


def steady_state(L, *, null_tol=1e-9):
    """Unique fixed point of ``d rho/dt = L rho``.

    The null vector is the right-singular vector belonging to the smallest
    singular value of ``L``; it is Hermitized and trace normalized. A second
    singular value below ``null_tol * ||L||`` means the attractor is not unique.
    """
    L = _square(L, "L")
    dim = int(round(np.sqrt(L.shape[0])))
    if dim * dim != L.shape[0]:
        raise ShapeError(f"superoperator size {L.shape[0]} is not a perfect square")
    _, s, vh = np.linalg.svd(L)
    scale = s[0] if s[0] > 0 else 1.0
    if s[-2] <= null_tol * scale:
        raise NonUniqueSteadyStateError(
            f"null space has dimension > 1 (singular values {s[-1]:.3e}, {s[-2]:.3e}; ||L|| = {scale:.3e})"
        )
    rho = unvec(vh[-1].conj(), dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real
    return check_density_matrix(rho)


def propagator(L, t):
    """``exp(L t)`` by scaling and squaring with a Pade approximant."""
    if t < 0:
        raise InvalidTimeError(f"t must be non-negative, got {t}")
    return scipy.linalg.expm(np.asarray(L) * t)


def propagate(L, rho0, t):
    """Evolve ``rho0`` for a time ``t`` under the Liouvillian ``L``."""
    rho0 = _square(rho0, "rho0")
    if t < 0:
        raise InvalidTimeError(f"t must be non-negative, got {t}")
    if t == 0:
        return rho0.copy()
    return unvec(propagator(L, t) @ vec(rho0), rho0.shape[0])


def expect(op, rho):
    """``Tr[op rho]``."""
    return np.trace(np.asarray(op) @ np.asarray(rho))
