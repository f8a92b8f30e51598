"""Symmetric gauge functions, unitarily invariant norms and symmetric Lagrangians.

A :class:`GaugeFunction` acts on real vectors; a :class:`Lagrangian` acts on
matrices, always through their singular values, which makes every Lagrangian
built here unitarily invariant by construction.
"""

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .exceptions import DimensionMismatch, InvalidGauge, RankTooLarge
from .matcore import as_hermitian, as_matrix, singular_values

_REAL = re.compile(r"^[+]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")
_INT = re.compile(r"^[+]?\d+$")


@dataclass(frozen=True)
class GaugeFunction:
    """A symmetric gauge function ``phi`` on ``R^n``.

    Use the factories :func:`schatten`, :func:`ky_fan`, :func:`custom_gauge`
    and :func:`induced_psi` rather than building instances directly.
    """

    kind: str
    param: object = None
    label: str = ""
    nondegenerate: bool = False
    n: Optional[int] = None
    evaluator: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __call__(self, x, n=None):
        return gauge_eval(self, x, n=n)

    def matrix_norm(self, T):
        """``||T||_phi = phi(s(T))``."""
        return gauge_eval(self, singular_values(T))

    def __str__(self):
        return self.label


def _schatten_value(a, p):
    top = a.max(initial=0.0)
    if top == 0.0:
        return 0.0
    if math.isinf(p):
        return float(top)
    # scaling by the max keeps large p from overflowing
    return float(top * np.sum((a / top) ** p) ** (1.0 / p))


def _psi_value(phi, m, s):
    s = np.sort(s)[::-1]
    if 2 * m > s.size:
        raise RankTooLarge(f"induced psi-norm needs 2m <= n, got m={m}, n={s.size}")
    paired = 0.5 * (s[0 : 2 * m : 2] + s[1 : 2 * m : 2])
    return gauge_eval(phi, paired, n=s.size)


def gauge_eval(phi, x, n=None):
    """Evaluate ``phi`` on ``x``, zero-padding ``x`` on the right to length ``n``."""
    a = np.abs(np.asarray(x, dtype=float).ravel())
    if not np.all(np.isfinite(a)):
        raise ValueError("gauge argument has non-finite entries")
    n = n if n is not None else phi.n
    if n is not None:
        if a.size > n:
            raise DimensionMismatch(f"vector of length {a.size} exceeds n={n}")
        a = np.concatenate([a, np.zeros(n - a.size)])
    if phi.kind == "schatten":
        return _schatten_value(a, phi.param)
    if phi.kind == "ky_fan":
        k = phi.param
        if k > a.size:
            raise InvalidGauge(f"ky_fan({k}) applied to a vector of length {a.size}")
        return float(np.sum(np.sort(a)[::-1][:k]))
    if phi.kind == "psi":
        base, m = phi.param
        return _psi_value(base, m, a)
    return float(phi.evaluator(a))


def schatten(p):
    """Schatten ``p``-gauge ``(sum |x_i|^p)^(1/p)``; ``p = inf`` gives the max."""
    p = float(p)
    if not p >= 1.0:
        raise InvalidGauge(f"Schatten exponent must be >= 1, got {p}")
    label = "schatten:inf" if math.isinf(p) else f"schatten:{p:g}"
    return GaugeFunction("schatten", p, label, nondegenerate=1.0 < p < math.inf)


def ky_fan(k):
    """Ky Fan ``k``-gauge: the sum of the ``k`` largest ``|x_i|``."""
    if int(k) != k or k < 1:
        raise InvalidGauge(f"Ky Fan index must be a positive integer, got {k}")
    return GaugeFunction("ky_fan", int(k), f"kyfan:{int(k)}")


def spectral():
    return ky_fan(1)


def trace_norm():
    return schatten(1)


def frobenius():
    return schatten(2)


def check_gauge_samples(fn, n, trials=200, rng=None, atol=1e-9):
    """Raise :class:`InvalidGauge` if ``fn`` visibly fails a gauge-function axiom.

    Checks positivity, ``fn(0) = 0``, permutation and sign invariance,
    absolute homogeneity and the triangle inequality on random samples.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    if abs(fn(np.zeros(n))) > atol:
        raise InvalidGauge("gauge must vanish at 0")
    for _ in range(trials):
        x = rng.standard_normal(n)
        y = rng.standard_normal(n)
        t = rng.standard_normal()
        fx, fy = fn(np.abs(x)), fn(np.abs(y))
        scale = atol * (1.0 + abs(fx) + abs(fy))
        if not fx > 0:
            raise InvalidGauge("gauge must be positive off the origin")
        if abs(fn(np.abs(rng.permutation(x))) - fx) > scale:
            raise InvalidGauge("gauge is not permutation invariant")
        if abs(fn(np.abs(-x)) - fx) > scale:
            raise InvalidGauge("gauge is not sign invariant")
        if abs(fn(np.abs(t * x)) - abs(t) * fx) > scale * (1 + abs(t)):
            raise InvalidGauge("gauge is not absolutely homogeneous")
        if fn(np.abs(x + y)) > fx + fy + scale:
            raise InvalidGauge("gauge violates the triangle inequality")


def custom_gauge(fn, n, label="custom", nondegenerate=False, trials=200, rng=None):
    """Register a user gauge ``fn`` (called with ``|x|``), validated by sampling in dimension ``n``."""
    check_gauge_samples(fn, n, trials=trials, rng=rng)
    return GaugeFunction("custom", None, label, nondegenerate=nondegenerate, n=n, evaluator=fn)


def induced_psi(phi, m, n=None):
    """The psi-gauge ``s -> phi(((s1+s2)/2, ..., (s_{2m-1}+s_{2m})/2, 0, ..., 0))``.

    ``s`` is sorted non-increasingly before pairing.  When the matrix dimension
    ``n`` is known it is recorded and ``2m <= n`` is checked immediately.
    """
    if int(m) != m or m < 1:
        raise InvalidGauge(f"rank must be a positive integer, got {m}")
    if n is not None and 2 * m > n:
        raise RankTooLarge(f"induced psi-norm needs 2m <= n, got m={m}, n={n}")
    return GaugeFunction("psi", (phi, int(m)), f"psi[{phi.label},m={int(m)}]", n=n)


def parse_gauge(spec):
    """Parse ``schatten:<p>`` (``p`` a decimal real or ``inf``) or ``kyfan:<k>``."""
    name, _, arg = spec.strip().partition(":")
    if name == "schatten":
        if arg == "inf":
            return schatten(math.inf)
        if not _REAL.match(arg):
            raise InvalidGauge(f"bad Schatten exponent in {spec!r}")
        return schatten(float(arg))
    if name == "kyfan":
        if not _INT.match(arg):
            raise InvalidGauge(f"bad Ky Fan index in {spec!r}")
        return ky_fan(int(arg))
    raise InvalidGauge(f"unknown gauge specifier {spec!r}")


@dataclass(frozen=True)
class Lagrangian:
    """A symmetric Lagrangian ``L(A) = f(s(A))``.

    ``strictly_convex`` and ``nondegenerate`` are declared metadata, not
    computed properties.
    """

    kind: str
    gauge: Optional[GaugeFunction] = None
    label: str = ""
    strictly_convex: bool = False
    nondegenerate: bool = False
    n: Optional[int] = None
    evaluator: Optional[Callable] = field(default=None, repr=False, compare=False)

    def __call__(self, A):
        return lagrangian_eval(self, A)

    def from_singular_values(self, s):
        s = np.asarray(s, dtype=float)
        if self.kind == "norm":
            return gauge_eval(self.gauge, s)
        if self.kind == "energy":
            return float(np.dot(s, s))
        return float(self.evaluator(s))

    @property
    def is_norm(self):
        return self.kind == "norm"

    def __str__(self):
        return self.label


def lagrangian_eval(L, A):
    A = as_matrix(A)
    if L.n is not None and A.shape[0] != L.n:
        raise DimensionMismatch(f"Lagrangian configured for n={L.n}, got {A.shape[0]}")
    return L.from_singular_values(singular_values(A))


def energy(n=None):
    """Kinetic energy ``E(A) = ||A||_F^2``."""
    return Lagrangian("energy", None, "energy", strictly_convex=True, nondegenerate=True, n=n)


def norm_lagrangian(phi, n=None):
    return Lagrangian("norm", phi, phi.label, nondegenerate=phi.nondegenerate, n=n)


def custom_lagrangian(fn, n=None, label="custom", strictly_convex=False, nondegenerate=False):
    """Lagrangian ``A -> fn(s(A))`` for a user function of the singular-value vector."""
    if n is not None and abs(fn(np.zeros(n))) > 1e-12:
        raise InvalidGauge("a symmetric Lagrangian must vanish at 0")
    return Lagrangian(
        "custom", None, label, strictly_convex=strictly_convex,
        nondegenerate=nondegenerate or strictly_convex, n=n, evaluator=fn,
    )


def parse_lagrangian(spec):
    """``energy`` or any gauge specifier (read as the corresponding norm)."""
    if spec.strip() == "energy":
        return energy()
    return norm_lagrangian(parse_gauge(spec))


@dataclass(frozen=True)
class ConvexityWitness:
    equality_gap: float
    parallel: bool


def _on_common_ray(A, B, rtol=1e-8):
    nA, nB = np.linalg.norm(A), np.linalg.norm(B)
    scale = max(nA, nB)
    if scale == 0.0:
        return True
    for P, Q, nQ in ((A, B, nB), (B, A, nA)):
        if nQ == 0.0:
            continue
        s = np.vdot(Q, P).real / nQ**2
        if s >= -rtol and np.linalg.norm(P - s * Q) <= rtol * scale:
            return True
    return False


def check_nondegenerate_witness(L, A, B, lam):
    """Convexity defect of ``L`` along the chord ``[B, A]`` at weight ``lam``.

    ``equality_gap = lam L(A) + (1-lam) L(B) - L(lam A + (1-lam) B)``.  A zero
    gap with ``parallel = False`` certifies that ``L`` is degenerate.
    """
    A, B = as_hermitian(A), as_hermitian(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes differ: {A.shape} vs {B.shape}")
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lam must lie in (0, 1), got {lam}")
    gap = lam * L(A) + (1 - lam) * L(B) - L(lam * A + (1 - lam) * B)
    return ConvexityWitness(float(gap), _on_common_ray(A, B))
