"""Dense complex matrix kernel.

Hermitian eigendecomposition, singular values, the modulus ``|T| = sqrt(T^* T)``,
the unitary exponential ``X -> exp(iX)`` and its principal inverse.  Every routine
takes and returns plain ``numpy`` arrays of dtype ``complex128`` (or ``float64``
for spectra); the ``as_*`` helpers are the input gates used by the rest of the
package.
"""

import numpy as np
import scipy.linalg

from .exceptions import ConvergenceFailure, DimensionMismatch, NotHermitian, NotUnitary

#: Relative symmetry defect tolerated by :func:`as_hermitian`.
HERMITIAN_TOL = 1e-8
#: Per-entry-scale unitarity tolerance; the check is ``||U^*U - I||_F <= n * UNITARY_TOL``.
UNITARY_TOL = 1e-8
#: Eigenphases within this distance of ``-pi`` are reported as ``+pi``.
BRANCH_SNAP = 1e-12


def as_matrix(T):
    """Return ``T`` as a square, finite ``complex128`` array."""
    T = np.asarray(T, dtype=np.complex128)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise ValueError("matrix has non-finite entries")
    return T


def as_hermitian(A):
    """Validate ``A`` as Hermitian and return its exact symmetrization ``(A + A^*)/2``."""
    A = as_matrix(A)
    defect = np.linalg.norm(A - A.conj().T)
    if defect > HERMITIAN_TOL * (1.0 + np.linalg.norm(A)):
        raise NotHermitian(f"||A - A^*||_F = {defect:.3e} exceeds tolerance")
    return 0.5 * (A + A.conj().T)


def as_unitary(U):
    U = as_matrix(U)
    n = U.shape[0]
    defect = np.linalg.norm(U.conj().T @ U - np.eye(n))
    if defect > n * UNITARY_TOL:
        raise NotUnitary(f"||U^*U - I||_F = {defect:.3e} exceeds tolerance")
    return U


def same_size(*mats):
    n = mats[0].shape[0]
    for M in mats[1:]:
        if M.shape[0] != n:
            raise DimensionMismatch(f"dimension mismatch: {n} vs {M.shape[0]}")
    return n


def _fix_phases(V):
    # make the first non-negligible component of each column real positive
    idx = np.argmax(np.abs(V) > 1e-10 * np.abs(V).max(axis=0), axis=0)
    lead = V[idx, np.arange(V.shape[1])]
    return V * (np.abs(lead) / lead).conj()


def hermitian_eig(A):
    """Eigendecomposition ``A = V diag(w) V^*`` with ``w`` non-increasing.

    Ties keep the solver's order, and every eigenvector is phase-normalized so
    that its first non-negligible entry is real and positive.
    """
    A = as_hermitian(A)
    try:
        w, V = np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    order = np.argsort(-w, kind="stable")
    return w[order], _fix_phases(V[:, order])


def singular_values(T):
    """Singular values of ``T`` in non-increasing order."""
    T = as_matrix(T)
    try:
        return np.linalg.svd(T, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def modulus(T):
    """``|T| = sqrt(T^* T)``, computed from the SVD ``T = W diag(s) V^*`` as ``V diag(s) V^*``."""
    T = as_matrix(T)
    try:
        _, s, Vh = np.linalg.svd(T)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    M = (Vh.conj().T * s) @ Vh
    return 0.5 * (M + M.conj().T)


def spectral_norm(T):
    return float(singular_values(T)[0])


def exp_i(X):
    """The unitary ``exp(iX)`` of a Hermitian ``X``."""
    X = as_hermitian(X)
    try:
        w, V = np.linalg.eigh(X)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return (V * np.exp(1j * w)) @ V.conj().T


def eigenphases(U):
    """Schur-based spectral data of a unitary: ``U = Q diag(exp(i*theta)) Q^*``.

    Phases lie in ``(-pi, pi]``; a phase within :data:`BRANCH_SNAP` of ``-pi`` is
    moved to ``+pi``.
    """
    U = as_matrix(U)
    try:
        T, Q = scipy.linalg.schur(U, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(str(exc)) from exc
    d = np.diag(T)
    # only the argument matters; normalizing guards |d| = 1 + O(eps)
    d = d / np.maximum(np.abs(d), np.finfo(float).tiny)
    theta = np.arctan2(d.imag, d.real)
    theta[theta <= -np.pi + BRANCH_SNAP] = np.pi
    return theta, Q


def principal_log(U):
    """Hermitian ``Z`` with spectrum in ``(-pi, pi]`` and ``exp(iZ) = U``.

    When ``-1`` is an eigenvalue the whole eigenspace is assigned the phase
    ``+pi``, so ``||Z|| = pi`` there.
    """
    U = as_unitary(U)
    theta, Q = eigenphases(U)
    Z = (Q * theta) @ Q.conj().T
    return 0.5 * (Z + Z.conj().T)
