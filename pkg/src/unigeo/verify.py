"""Seeded randomized verification suites.

Each suite draws its trials from an independent Philox substream keyed by
``(seed, suite_index, trial_index)``, so reports do not depend on execution
order.  A trial passes when every checked quantity stays within the
configured tolerance; failing trials keep a serialized, replayable witness.
"""

import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from ._optimize import coordinate_descent, golden_section
from .exceptions import BoundaryNonUnique, NonUniqueWarning
from .grassmann import (
    direct_rotation,
    principal_angles,
    projection_from_basis,
    psi_distance_equivalence,
    to_symmetry,
)
from .io import matrix_to_json
from .lagrangian import parse_gauge, parse_lagrangian
from .matcore import exp_i, principal_log, singular_values
from .unitary_paths import PolygonalPath, action, distance_phi

DEFAULT_GAUGES = ("schatten:1", "schatten:2", "schatten:3", "schatten:inf", "kyfan:2")
DEFAULT_LAGRANGIANS = ("energy", "schatten:2", "schatten:1", "kyfan:1")

SUITES = ("thompson", "minimality", "uniqueness", "grassmann")

#: Midpoint recovery threshold for the descent trials.
MIDPOINT_TOL = 1e-5
#: Equal-action threshold for the degenerate (negative control) witness search.
CONTROL_ACTION_TOL = 1e-9


@dataclass(frozen=True)
class TrialConfig:
    n: int = 4
    trials: int = 100
    seed: int = 0
    tolerance: float = 1e-9
    gauges: tuple = DEFAULT_GAUGES
    lagrangians: tuple = DEFAULT_LAGRANGIANS
    spectral_cap: float = 0.9 * math.pi
    m: int = 2
    factors: tuple = (2, 3, 4)
    max_intermediates: int = 4
    perturbation: float = 1e-2

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0.0 < self.spectral_cap <= math.pi:
            raise ValueError("spectral_cap must lie in (0, pi]")
        if self.tolerance < 0:
            raise ValueError("tolerance must be non-negative")
        if not self.factors or min(self.factors) < 2:
            raise ValueError("factor counts must be >= 2")
        # fail fast on bad specifiers
        for g in self.gauges:
            parse_gauge(g)
        for lag in self.lagrangians:
            parse_lagrangian(lag)

    def to_dict(self):
        d = asdict(self)
        for key in ("gauges", "lagrangians", "factors"):
            d[key] = list(d[key])
        return d


@dataclass
class SuiteReport:
    """Outcome of one suite.

    ``passed + failed + inconclusive`` equals the number of trials run;
    ``inconclusive`` is non-zero only for stalled descents.
    ``worst_violation`` is the largest ``measured - bound`` over all checks
    (negative means every check held with margin).
    """

    suite: str
    config: dict
    passed: int = 0
    failed: int = 0
    inconclusive: int = 0
    worst_violation: float = -math.inf
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.failed == 0

    def record(self, violations, tol, witness):
        worst = max(violations) if violations else -math.inf
        self.worst_violation = max(self.worst_violation, worst)
        if worst <= tol:
            self.passed += 1
        else:
            self.failed += 1
            self.witnesses.append(witness)

    def to_dict(self):
        worst = self.worst_violation if math.isfinite(self.worst_violation) else 0.0
        return {
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "failed": self.failed,
            "inconclusive": self.inconclusive,
            "worst_violation": float(worst),
            "witnesses": self.witnesses,
            "details": self.details,
        }

    def summary(self):
        status = "PASS" if self.ok else "FAIL"
        return (f"{self.suite}: {status} passed={self.passed} failed={self.failed} "
                f"inconclusive={self.inconclusive} worst_violation={self.to_dict()['worst_violation']:.3e}")


def substream(seed, suite_index, trial_index):
    """Independent Philox generator for one trial of one suite."""
    ss = np.random.SeedSequence(int(seed) % 2**64, spawn_key=(suite_index, trial_index))
    return np.random.Generator(np.random.Philox(ss))


def sample_haar_unitary(n, rng):
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of ``diag(R)`` removed."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def _unit_hermitian(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = 0.5 * (g + g.conj().T)
    return H / np.linalg.norm(H, 2)


def sample_hermitian_ball(n, radius, rng):
    """Hermitian matrix with spectral norm uniform in ``[0, radius]`` and a GUE direction."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    return radius * rng.uniform() * _unit_hermitian(n, rng)


def sample_projection(n, m, rng):
    """Rank-``m`` projection onto the span of the first ``m`` columns of a Haar unitary."""
    if not 1 <= m <= n - 1:
        raise ValueError(f"rank must lie in 1..{n - 1}")
    return projection_from_basis(sample_haar_unitary(n, rng)[:, :m])


def _norm(phi, A, n):
    return phi(singular_values(A), n=n)


def suite_thompson(cfg, suite_index=0):
    """``||log(e^{iX_1} ... e^{iX_k})||_phi <= sum_j ||X_j||_phi`` for every configured gauge."""
    gauges = [parse_gauge(g) for g in cfg.gauges]
    report = SuiteReport("thompson", cfg.to_dict())
    n = cfg.n
    for trial in range(cfg.trials):
        rng = substream(cfg.seed, suite_index, trial)
        k = int(rng.choice(cfg.factors))
        budget = 0.95 * math.pi * rng.uniform()
        weights = rng.dirichlet(np.ones(k))
        Xs = [budget * w * _unit_hermitian(n, rng) for w in weights]
        prod = np.eye(n, dtype=complex)
        for X in Xs:
            prod = prod @ exp_i(X)
        Z = principal_log(prod)
        violations = [_norm(phi, Z, n) - sum(_norm(phi, X, n) for X in Xs) for phi in gauges]
        report.record(violations, cfg.tolerance, {
            "trial": trial,
            "factors": [matrix_to_json(X) for X in Xs],
            "violations": dict(zip(cfg.gauges, violations)),
        })
    return report


def _random_breakpoints(rng, pieces, b):
    inner = np.sort(rng.uniform(0.05, 0.95, size=pieces - 1)) * b
    t = np.concatenate([[0.0], inner, [b]])
    if np.any(np.diff(t) <= 1e-9 * b):
        t = np.linspace(0.0, b, pieces + 1)
    return t


def suite_minimality(cfg, suite_index=1):
    """Polygonal competitors never beat the geodesic: ``S(P) >= b L(Z/b)``.

    Each trial builds the geodesic split into collinear pieces (equality case)
    and one competitor through ``q`` random intermediate points
    ``U exp(iM)``, ``||M|| <= pi/2``, for every ``q = 1..max_intermediates``.
    """
    lagrangians = [parse_lagrangian(s) for s in cfg.lagrangians]
    report = SuiteReport("minimality", cfg.to_dict())
    n = cfg.n
    min_margin = math.inf
    for trial in range(cfg.trials):
        rng = substream(cfg.seed, suite_index, trial)
        U = sample_haar_unitary(n, rng)
        Z = sample_hermitian_ball(n, cfg.spectral_cap, rng)
        V = U @ exp_i(Z)
        b = float(rng.uniform(0.5, 2.0))
        pieces = int(rng.integers(2, 5))
        t = _random_breakpoints(rng, pieces, b)
        competitors = [PolygonalPath(U, t, [Z * dt / b for dt in np.diff(t)], validate=False)]
        for q in range(1, cfg.max_intermediates + 1):
            nodes = [U] + [U @ exp_i(sample_hermitian_ball(n, math.pi / 2, rng)) for _ in range(q)] + [V]
            exps = [principal_log(A.conj().T @ B) for A, B in zip(nodes[:-1], nodes[1:])]
            competitors.append(PolygonalPath(U, _random_breakpoints(rng, q + 1, b), exps, validate=False))
        violations = []
        for L in lagrangians:
            geo = b * L.from_singular_values(singular_values(Z) / b)
            for j, P in enumerate(competitors):
                gap = action(L, P) - geo
                violations.append(-gap)
                if j > 0:
                    min_margin = min(min_margin, gap)
        report.record(violations, cfg.tolerance, {
            "trial": trial,
            "U": matrix_to_json(U),
            "Z": matrix_to_json(Z),
            "b": b,
            "worst": max(violations),
        })
    report.details["min_competitor_margin"] = float(min_margin)
    return report


def _hermitian_coords(M):
    n = M.shape[0]
    iu = np.triu_indices(n, 1)
    return np.concatenate([M.diagonal().real, M[iu].real, M[iu].imag])


def _hermitian_from_coords(c, n):
    c = np.asarray(c, dtype=float)
    iu = np.triu_indices(n, 1)
    k = len(iu[0])
    M = np.diag(c[:n]).astype(complex)
    M[iu] = c[n : n + k] + 1j * c[n + k :]
    M[(iu[1], iu[0])] = np.conj(M[iu])
    return M


def two_segment_action(L, M, Z, b=1.0, expZ=None):
    """Action of the polygonal ``I -> e^{iM} -> e^{iZ}`` with its breakpoint at ``b/2``.

    Only spectra are needed: ``s(M) = |eig(M)|`` and the second exponent
    ``log(e^{-iM} e^{iZ})`` has singular values equal to the moduli of the
    eigenphases of that product.
    """
    w, V = np.linalg.eigh(M)
    expZ = exp_i(Z) if expZ is None else expZ
    prod = (V * np.exp(-1j * w)) @ V.conj().T @ expZ
    phases = np.abs(np.angle(np.linalg.eigvals(prod)))
    h = 0.5 * b
    sM = np.sort(np.abs(w))[::-1]
    sY = np.sort(phases)[::-1]
    return h * L.from_singular_values(sM / h) + h * L.from_singular_values(sY / h)


def distance_to_geodesic(W, Z):
    """``min_r ||W - exp(irZ)||_F`` over ``r`` in ``[0, 1]``."""
    w, Q = np.linalg.eigh(Z)
    QhW = Q.conj().T @ W @ Q

    def f(r):
        return np.linalg.norm(QhW - np.diag(np.exp(1j * r * w)))

    r, d = golden_section(f, 0.0, 1.0, tol=1e-12)
    return r, d


def _descent_trial(L, U, Z, start, perturbation):
    n = Z.shape[0]
    midpoint = exp_i(0.5 * Z)
    expZ = exp_i(Z)
    c, _, sweeps, stalled = coordinate_descent(
        lambda c: two_segment_action(L, _hermitian_from_coords(c, n), Z, expZ=expZ),
        _hermitian_coords(start),
        step=max(2.0 * perturbation, 1e-6),
        tol=1e-11,
    )
    W = exp_i(_hermitian_from_coords(c, n))
    if L.strictly_convex:
        err = float(np.linalg.norm(U @ W - U @ midpoint))
    else:
        err = distance_to_geodesic(W, Z)[1]
    return err, sweeps, stalled


def _degenerate_witness(L, Z, rng):
    """Search for a midpoint off the geodesic whose two-segment action equals the geodesic action.

    Candidates keep the eigenbasis of ``Z`` and move each eigenvalue fraction
    away from 1/2 by a small signed amount, which leaves Ky Fan and trace-norm
    actions unchanged whenever the eigenvalue order is preserved.
    """
    w, Q = np.linalg.eigh(Z)
    geo = L.from_singular_values(singular_values(Z))
    for eps in (0.2, 0.05, 0.01, 1e-3):
        for _ in range(8):
            r = 0.5 + eps * rng.choice([-1.0, 1.0], size=w.size)
            M = (Q * (r * w)) @ Q.conj().T
            gap = abs(two_segment_action(L, M, Z) - geo)
            off = distance_to_geodesic(exp_i(M), Z)[1]
            if gap <= CONTROL_ACTION_TOL and off >= 1e-4:
                return M, gap, off
    return None


def suite_uniqueness_descent(cfg, suite_index=2):
    """Local descent over two-segment midpoints returns to the geodesic.

    Strictly convex Lagrangians must recover ``U exp(iZ/2)`` itself;
    nondegenerate norms must land on the geodesic (any reparametrization).
    Lagrangians flagged neither are negative controls: the suite must exhibit
    a second midpoint, off the geodesic, with the same action.
    """
    lagrangians = [(s, parse_lagrangian(s)) for s in cfg.lagrangians]
    report = SuiteReport("uniqueness", cfg.to_dict())
    n = cfg.n
    for label, L in lagrangians:
        role = "descent" if (L.strictly_convex or L.nondegenerate) else "negative_control"
        stats = {"role": role, "passed": 0, "failed": 0, "inconclusive": 0, "worst_error": 0.0}
        for trial in range(cfg.trials):
            rng = substream(cfg.seed, suite_index, trial)
            U = sample_haar_unitary(n, rng)
            Z = sample_hermitian_ball(n, cfg.spectral_cap, rng)
            witness = {"trial": trial, "lagrangian": label, "U": matrix_to_json(U), "Z": matrix_to_json(Z)}
            if role == "descent":
                kick = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
                kick = 0.5 * (kick + kick.conj().T)
                kick *= cfg.perturbation / np.linalg.norm(kick)
                err, sweeps, stalled = _descent_trial(L, U, Z, 0.5 * Z + kick, cfg.perturbation)
                stats["worst_error"] = float(max(stats["worst_error"], err))
                violation = err - MIDPOINT_TOL
                if err <= MIDPOINT_TOL:
                    outcome = "passed"
                elif stalled:
                    outcome = "inconclusive"
                else:
                    outcome = "failed"
                witness.update({"start": matrix_to_json(0.5 * Z + kick), "error": err, "sweeps": sweeps})
            else:
                found = _degenerate_witness(L, Z, rng)
                outcome = "passed" if found is not None else "failed"
                violation = -1.0 if found is not None else 1.0
                if found is not None:
                    stats.setdefault("example", {"trial": trial, "action_gap": float(found[1]), "off_geodesic": float(found[2])})
            report.worst_violation = max(report.worst_violation, violation)
            stats[outcome] += 1
            if outcome == "passed":
                report.passed += 1
            elif outcome == "inconclusive":
                report.inconclusive += 1
            else:
                report.failed += 1
                report.witnesses.append(witness)
        report.details[label] = stats
    return report


def suite_grassmann(cfg, suite_index=3):
    """Grassmannian identities on random pairs of rank-``m`` projections.

    Per trial and gauge: ``|d_psi - rho_phi|``; the direct-rotation spectrum
    against ``{+-theta_i} u {0}``; ``d_phi(S_P, S_Q) - 2 ||X||_phi``; and the
    conjugation residual ``||e^{iX} P e^{-iX} - Q||_F``.
    """
    n, m = cfg.n, cfg.m
    if 2 * m > n:
        raise ValueError(f"grassmann suite needs 2m <= n, got m={m}, n={n}")
    gauges = [parse_gauge(g) for g in cfg.gauges]
    report = SuiteReport("grassmann", cfg.to_dict())
    maxima = {"psi_gap": 0.0, "davis_kahan": 0.0, "factor_two": 0.0, "conjugation": 0.0}
    for trial in range(cfg.trials):
        rng = substream(cfg.seed, suite_index, trial)
        P = sample_projection(n, m, rng)
        Q = sample_projection(n, m, rng)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", (BoundaryNonUnique, NonUniqueWarning))
            X = direct_rotation(P, Q)
            theta = principal_angles(P, Q)
            SP, SQ = to_symmetry(P), to_symmetry(Q)
            E = exp_i(X)
            checks = {
                "conjugation": float(np.linalg.norm(E @ P @ E.conj().T - Q)),
                "davis_kahan": float(np.max(np.abs(
                    np.sort(np.linalg.eigvalsh(X))
                    - np.sort(np.concatenate([theta, -theta, np.zeros(n - 2 * m)]))))),
                "psi_gap": 0.0,
                "factor_two": 0.0,
            }
            for phi in gauges:
                checks["psi_gap"] = max(checks["psi_gap"], psi_distance_equivalence(phi, P, Q).gap)
                two = 2.0 * phi(singular_values(X), n=n)
                checks["factor_two"] = max(checks["factor_two"], abs(distance_phi(phi, SP, SQ) - two))
        for key, val in checks.items():
            maxima[key] = max(maxima[key], val)
        report.record(list(checks.values()), cfg.tolerance, {
            "trial": trial,
            "P": matrix_to_json(P),
            "Q": matrix_to_json(Q),
            "checks": checks,
        })
    report.details["max"] = maxima
    return report


_SUITE_FUNCS = {
    "thompson": suite_thompson,
    "minimality": suite_minimality,
    "uniqueness": suite_uniqueness_descent,
    "grassmann": suite_grassmann,
}


def run_suite(name, cfg):
    if name not in _SUITE_FUNCS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _SUITE_FUNCS[name](cfg, suite_index=SUITES.index(name))


def run_all(cfg):
    """Run every suite in a fixed order; each suite gets its own substream family."""
    return [run_suite(name, cfg) for name in SUITES]
