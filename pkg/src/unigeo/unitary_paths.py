"""Curves in U(n): geodesic segments, polygonal paths, actions and rectifiable distances."""

import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ._optimize import golden_section
from .exceptions import (
    DimensionMismatch,
    GapTooLarge,
    NondegeneracyRequired,
    NonUniqueWarning,
    OutOfDomain,
)
from .lagrangian import gauge_eval
from .matcore import as_hermitian, as_unitary, eigenphases, exp_i, principal_log, same_size, singular_values

#: Exponents with spectral norm within this distance of pi are on the non-uniqueness boundary.
BOUNDARY_TOL = 1e-9
_NORM_SLACK = 1e-10


def _check_exponent(X):
    if singular_values(X)[0] > math.pi + _NORM_SLACK:
        raise ValueError("segment exponent has spectral norm larger than pi")


@dataclass(frozen=True)
class GeodesicSegment:
    """``gamma(t) = U exp(i t Z / b)`` on ``[0, b]``."""

    U: np.ndarray
    Z: np.ndarray
    b: float = 1.0
    non_unique: bool = False

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"time horizon must be positive, got {self.b}")
        _check_exponent(self.Z)

    def __call__(self, t):
        if not 0.0 <= t <= self.b:
            raise OutOfDomain(f"t={t} outside [0, {self.b}]")
        return self.U @ exp_i((t / self.b) * self.Z)

    @property
    def end(self):
        return self.U @ exp_i(self.Z)

    def as_polygonal(self, pieces=1):
        """The same curve as a polygonal path with ``pieces`` collinear segments."""
        times = np.linspace(0.0, self.b, pieces + 1)
        return PolygonalPath(self.U, times, [self.Z / pieces] * pieces)


class PolygonalPath:
    """Broken geodesic ``P(t) = U e^{iX_1} ... e^{iX_{j-1}} e^{i s X_j}`` on ``[t_{j-1}, t_j]``.

    ``s = (t - t_{j-1}) / (t_j - t_{j-1})``.  Every exponent must have spectral
    norm at most pi.
    """

    def __init__(self, start, breakpoints, exponents, validate=True):
        self.start = as_unitary(start) if validate else np.asarray(start, dtype=complex)
        t = np.asarray(breakpoints, dtype=float)
        if t.ndim != 1 or t.size < 2 or t[0] != 0.0 or np.any(np.diff(t) <= 0):
            raise ValueError("breakpoints must be strictly increasing and start at 0")
        if len(exponents) != t.size - 1:
            raise ValueError(f"{t.size - 1} segments need as many exponents, got {len(exponents)}")
        X = [as_hermitian(x) for x in exponents] if validate else [np.asarray(x) for x in exponents]
        n = self.start.shape[0]
        for x in X:
            if x.shape[0] != n:
                raise DimensionMismatch(f"exponent of size {x.shape[0]} on a path in U({n})")
            if validate:
                _check_exponent(x)
        self.breakpoints = t
        self.exponents = X
        # left endpoints of each segment, U e^{iX_1} ... e^{iX_{j-1}}
        nodes = [self.start]
        for x in X:
            nodes.append(nodes[-1] @ exp_i(x))
        self._nodes = nodes

    @property
    def n(self):
        return self.start.shape[0]

    @property
    def b(self):
        return float(self.breakpoints[-1])

    @property
    def durations(self):
        return np.diff(self.breakpoints)

    @property
    def end(self):
        return self._nodes[-1]

    @property
    def nodes(self):
        return list(self._nodes)

    def __len__(self):
        return len(self.exponents)

    def __call__(self, t):
        return eval_polygonal(self, t)

    def velocity(self, t):
        """Left-trivialized velocity ``P(t)^* P'(t) = i X_j / (t_j - t_{j-1})`` (right-continuous)."""
        j = self._segment(t)
        return 1j * self.exponents[j] / self.durations[j]

    def _segment(self, t):
        j = int(np.searchsorted(self.breakpoints, t, side="right")) - 1
        return min(max(j, 0), len(self.exponents) - 1)

    def __repr__(self):
        return f"PolygonalPath(n={self.n}, segments={len(self)}, b={self.b:g})"


@dataclass(frozen=True)
class SampledCurve:
    """A curve in U(n) known only at ``times``."""

    times: np.ndarray
    points: list

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size != len(self.points) or t.size < 2:
            raise ValueError("need at least two samples with matching times")
        if np.any(np.diff(t) <= 0):
            raise ValueError("sample times must be strictly increasing")


def eval_polygonal(P, t):
    """Evaluate ``P`` at ``t`` in ``[0, b]``."""
    if not 0.0 <= t <= P.b:
        raise OutOfDomain(f"t={t} outside [0, {P.b}]")
    j = P._segment(t)
    s = (t - P.breakpoints[j]) / P.durations[j]
    return P._nodes[j] @ exp_i(s * P.exponents[j])


def geodesic_between(U, V, b=1.0):
    """The geodesic segment from ``U`` to ``V`` over ``[0, b]`` with exponent ``principal_log(U^* V)``.

    Sets ``non_unique`` and emits :class:`NonUniqueWarning` when the exponent
    has spectral norm within :data:`BOUNDARY_TOL` of pi.
    """
    U, V = as_unitary(U), as_unitary(V)
    n = same_size(U, V)
    # identical inputs: U^* U is only I up to rounding, so skip the log
    Z = np.zeros((n, n), dtype=complex) if np.array_equal(U, V) else principal_log(U.conj().T @ V)
    boundary = singular_values(Z)[0] >= math.pi - BOUNDARY_TOL
    if boundary:
        warnings.warn("endpoints are antipodal in some direction; geodesic is not unique",
                      NonUniqueWarning, stacklevel=2)
    return GeodesicSegment(U, Z, float(b), non_unique=bool(boundary))


def action(L, P):
    """Action of ``L`` along a polygonal path: ``sum_j dt_j * L(X_j / dt_j)``.

    A :class:`GeodesicSegment` is accepted too and gives ``b * L(Z / b)``.
    """
    if isinstance(P, GeodesicSegment):
        P = P.as_polygonal()
    if L.n is not None and L.n != P.n:
        raise DimensionMismatch(f"Lagrangian for n={L.n}, path in U({P.n})")
    total = 0.0
    for x, dt in zip(P.exponents, P.durations):
        total += dt * L.from_singular_values(singular_values(x) / dt)
    return total


def length_phi(phi, P):
    """Finsler length ``sum_j ||X_j||_phi`` of a polygonal path."""
    if isinstance(P, GeodesicSegment):
        P = P.as_polygonal()
    return sum(gauge_eval(phi, singular_values(x), n=P.n) for x in P.exponents)


def distance_phi(phi, U, V):
    """Rectifiable distance ``d_phi(U, V) = ||principal_log(U^* V)||_phi``.

    Only singular values of the exponent enter, so the value does not depend
    on the branch chosen for eigenvalues at ``-1``.
    """
    U, V = as_unitary(U), as_unitary(V)
    n = same_size(U, V)
    if np.array_equal(U, V):
        return 0.0
    theta, _ = eigenphases(U.conj().T @ V)
    if np.abs(theta).max() >= math.pi - BOUNDARY_TOL:
        warnings.warn("endpoints are antipodal in some direction; geodesic is not unique",
                      NonUniqueWarning, stacklevel=2)
    return gauge_eval(phi, np.abs(theta), n=n)


def polygonal_from_samples(C):
    """Polygonal path through the samples of ``C`` joined by principal-log segments.

    Raises :class:`GapTooLarge` when a consecutive pair is (nearly) antipodal,
    since the connecting segment is then not unique.
    """
    pts = [as_unitary(p) for p in C.points]
    same_size(*pts)
    exps = []
    for k, (A, B) in enumerate(zip(pts[:-1], pts[1:])):
        theta, Q = eigenphases(A.conj().T @ B)
        if np.abs(theta).max() >= math.pi - BOUNDARY_TOL:
            raise GapTooLarge(f"samples {k} and {k + 1} are too far apart for a unique segment")
        X = (Q * theta) @ Q.conj().T
        exps.append(0.5 * (X + X.conj().T))
    t = np.asarray(C.times, dtype=float)
    return PolygonalPath(pts[0], t - t[0], exps)


@dataclass(frozen=True)
class Alignment:
    """Outcome of :func:`check_alignment`.

    ``gap = d(U,W) + d(W,V) - d(U,V)``.  ``t0``/``X0`` are only set for an
    additive triple with ``||X0|| < pi``; ``aligned`` records whether ``W`` was
    actually located on the segment ``t -> U exp(i t X0)``.
    """

    additive: bool
    gap: float
    t0: Optional[float] = None
    X0: Optional[np.ndarray] = None
    residual: Optional[float] = None
    aligned: bool = False


def check_alignment(phi, U, W, V, tol=1e-8):
    """Test whether ``W`` lies on the ``phi``-geodesic from ``U`` to ``V``.

    Additivity of ``d_phi`` is decided at absolute tolerance ``tol``.  For an
    additive triple ``t0`` is recovered by golden-section minimization of
    ``t -> ||W - U exp(i t X0)||_F`` over ``[0, 1]``, and the triple counts as
    aligned when that residual is at most ``1e-6 * sqrt(n)``.
    """
    if not phi.nondegenerate:
        raise NondegeneracyRequired(f"gauge {phi.label} is not flagged nondegenerate")
    U, W, V = as_unitary(U), as_unitary(W), as_unitary(V)
    n = same_size(U, W, V)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonUniqueWarning)
        duv = distance_phi(phi, U, V)
        duw = distance_phi(phi, U, W)
        dwv = distance_phi(phi, W, V)
    gap = duw + dwv - duv
    if abs(gap) > tol:
        return Alignment(False, float(gap))
    X0 = principal_log(U.conj().T @ V)
    if singular_values(X0)[0] >= math.pi - BOUNDARY_TOL:
        return Alignment(True, float(gap))
    w, Q = np.linalg.eigh(X0)
    UQ = U @ Q

    def residual(t):
        return np.linalg.norm(W - (UQ * np.exp(1j * t * w)) @ Q.conj().T)

    t0, res = golden_section(residual, 0.0, 1.0, tol=1e-10)
    aligned = res <= 1e-6 * math.sqrt(n)
    return Alignment(True, float(gap), float(t0), X0, float(res), bool(aligned))
