"""Orthogonal projections, direct rotations, principal angles and angular metrics.

A point of the Grassmannian ``G_{m,n}`` is stored as its orthogonal projection
(an ``n x n`` Hermitian idempotent of trace ``m``).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    BoundaryNonUnique,
    ConvergenceFailure,
    NotCodiagonal,
    NotOrthonormal,
    NotProjection,
    RankMismatch,
    RankTooLarge,
)
from .lagrangian import gauge_eval, induced_psi
from .matcore import as_hermitian, exp_i, singular_values

IDEMPOTENT_TOL = 1e-8
TRACE_TOL = 1e-6
CODIAGONAL_TOL = 1e-8
#: ``||P - Q||`` at or above ``1 - BOUNDARY_TOL`` flags a non-unique direct rotation.
BOUNDARY_TOL = 1e-9


def _eigh(A):
    try:
        return np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def projection_rank(P):
    return int(round(np.trace(P).real))


def as_projection(P):
    """Validate an orthogonal projection of rank ``1 <= m <= n - 1`` and return it symmetrized."""
    P = as_hermitian(P)
    n = P.shape[0]
    w = _eigh(P)[0]
    if np.any((w > 0.1) & (w < 0.9)):
        raise NotProjection("eigenvalues far from {0, 1}")
    defect = np.linalg.norm(P @ P - P)
    if defect > IDEMPOTENT_TOL:
        raise NotProjection(f"||P^2 - P||_F = {defect:.3e}")
    m = int(np.sum(w > 0.5))
    if abs(np.trace(P).real - m) > TRACE_TOL:
        raise NotProjection("trace does not match the rank")
    if not 1 <= m <= n - 1:
        raise NotProjection(f"rank {m} outside 1..{n - 1}")
    return P


def projection_from_basis(B):
    """``P = B B^*`` for an ``n x m`` matrix with orthonormal columns."""
    B = np.asarray(B, dtype=np.complex128)
    if B.ndim == 1:
        B = B[:, None]
    if B.ndim != 2 or B.shape[1] > B.shape[0]:
        raise NotOrthonormal(f"expected an n x m basis with m <= n, got shape {B.shape}")
    gram = B.conj().T @ B
    if np.linalg.norm(gram - np.eye(B.shape[1])) > 1e-8:
        raise NotOrthonormal("basis columns are not orthonormal")
    P = B @ B.conj().T
    return as_projection(0.5 * (P + P.conj().T))


def range_basis(P):
    """Orthonormal bases ``(B, B_perp)`` of the range and kernel of ``P``."""
    w, V = _eigh(P)
    m = int(np.sum(w > 0.5))
    return V[:, ::-1][:, :m], V[:, ::-1][:, m:]


def to_symmetry(P):
    """The symmetry ``S_P = 2P - I`` (Hermitian, unitary, involutive)."""
    P = as_projection(P)
    return 2.0 * P - np.eye(P.shape[0])


def _pair(P, Q):
    P, Q = as_projection(P), as_projection(Q)
    if P.shape != Q.shape:
        raise RankMismatch(f"projections of different size: {P.shape[0]} vs {Q.shape[0]}")
    m, mq = projection_rank(P), projection_rank(Q)
    if m != mq:
        raise RankMismatch(f"projections of different rank: {m} vs {mq}")
    return P, Q, m


def _cs_data(P, Q):
    """Cosine-sine data of the pair ``(R(P), R(Q))``.

    Returns ``(c, s, theta, X_vecs, Y_vecs)`` with ``c`` non-increasing, where
    the columns of ``X_vecs`` are principal vectors in ``R(P)`` and
    ``Y_vecs = B_perp S V`` holds the ``N(P)``-components of the matching
    principal vectors in ``R(Q)`` (column norms ``s``).
    """
    B, Bp = range_basis(P)
    Bq, _ = range_basis(Q)
    C = B.conj().T @ Bq
    try:
        W, c, Vh = np.linalg.svd(C)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    Y = Bp @ (Bp.conj().T @ Bq @ Vh.conj().T)
    s = np.linalg.norm(Y, axis=0)
    c = np.clip(c, 0.0, 1.0)
    theta = np.arctan2(s, c)
    return c, s, theta, B @ W, Y


def principal_angles(P, Q):
    """Principal angles between ``R(P)`` and ``R(Q)``, non-increasing, in ``[0, pi/2]``.

    Cosines are the ``m`` largest singular values of ``PQ``; each angle is
    evaluated as ``atan2(sin, cos)`` so that small angles keep full relative
    accuracy.
    """
    P, Q, _ = _pair(P, Q)
    theta = _cs_data(P, Q)[2]
    return np.sort(theta)[::-1]


def direct_rotation(P, Q):
    """The direct rotation from ``P`` to ``Q``.

    A ``P``-codiagonal Hermitian ``X`` with ``||X|| <= pi/2`` and
    ``exp(iX) P exp(-iX) = Q``; away from the boundary it is the unique such
    matrix and satisfies ``exp(2iX) = S_Q S_P``.  It is assembled from the
    principal vectors: each pair ``x_i in R(P)``, ``u_i in N(P)`` at angle
    ``theta_i`` contributes ``theta_i * i (x_i u_i^* - u_i x_i^*)``.

    When ``||P - Q|| >= 1 - BOUNDARY_TOL`` some angle equals pi/2, the pairing
    inside that block is arbitrary, and :class:`BoundaryNonUnique` is emitted.
    """
    P, Q, _ = _pair(P, Q)
    c, s, theta, Xv, Y = _cs_data(P, Q)
    tiny = np.finfo(float).eps
    # theta / s, continued by 1/c where s vanishes
    ratio = np.where(s > tiny, theta / np.maximum(s, tiny), 1.0 / np.maximum(c, tiny))
    K = (Xv * ratio) @ Y.conj().T
    X = 1j * (K - K.conj().T)
    X = 0.5 * (X + X.conj().T)
    if np.max(s, initial=0.0) >= 1.0 - BOUNDARY_TOL:
        warnings.warn("||P - Q|| = 1: the direct rotation is not unique",
                      BoundaryNonUnique, stacklevel=2)
    return X


def codiagonal_defect(P, X):
    I = np.eye(P.shape[0])
    return float(np.linalg.norm(P @ X @ P) + np.linalg.norm((I - P) @ X @ (I - P)))


def grassmann_geodesic(P, X, t):
    """Point ``exp(itX) P exp(-itX)`` of the geodesic at ``P`` with codiagonal direction ``X``."""
    P = as_projection(P)
    X = as_hermitian(X)
    if codiagonal_defect(P, X) > CODIAGONAL_TOL * (1.0 + np.linalg.norm(X)):
        raise NotCodiagonal("direction is not P-codiagonal")
    U = exp_i(t * X)
    G = U @ P @ U.conj().T
    return 0.5 * (G + G.conj().T)


def angular_metric(phi, P, Q):
    """``rho_phi(P, Q) = phi(theta_1, ..., theta_m, 0, ..., 0)``."""
    theta = principal_angles(P, Q)
    return gauge_eval(phi, theta, n=np.shape(P)[0])


def grassmann_distance(phi, P, Q):
    """Rectifiable distance ``||X||_phi`` with ``X`` the direct rotation from ``P`` to ``Q``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryNonUnique)
        X = direct_rotation(P, Q)
    return gauge_eval(phi, singular_values(X))


@dataclass(frozen=True)
class PsiEquivalence:
    d_psi: float
    rho_phi: float
    gap: float


def psi_distance_equivalence(phi, P, Q):
    """Compare the induced psi-distance with the angular metric ``rho_phi``.

    Requires ``2m <= n``; for larger ranks pass the complementary projections
    ``I - P`` and ``I - Q`` explicitly.
    """
    P, Q, m = _pair(P, Q)
    n = P.shape[0]
    if 2 * m > n:
        raise RankTooLarge(f"needs 2m <= n, got m={m}, n={n}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BoundaryNonUnique)
        X = direct_rotation(P, Q)
    d_psi = gauge_eval(induced_psi(phi, m, n), singular_values(X))
    rho = angular_metric(phi, P, Q)
    return PsiEquivalence(d_psi, rho, abs(d_psi - rho))
