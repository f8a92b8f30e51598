"""Acceptance criteria, one test each, at the stated tolerances and runtime budgets.

Every test prints one ``[criterion k] PASS|FAIL ...`` line; the lines are also
collected in an "acceptance criteria" section of the pytest terminal summary.
"""

import io as stdio
import math
import time
import warnings

import numpy as np
import pytest
from conftest import record_acceptance

from unigeo.cli import main
from unigeo.exceptions import NonUniqueWarning
from unigeo.lagrangian import energy, ky_fan, norm_lagrangian, parse_gauge, schatten
from unigeo.matcore import exp_i, principal_log, singular_values
from unigeo.unitary_paths import GeodesicSegment, action, check_alignment, distance_phi
from unigeo.verify import (
    TrialConfig,
    run_suite,
    sample_haar_unitary,
    sample_hermitian_ball,
    substream,
)

THOMPSON_GAUGES = ("schatten:1", "schatten:2", "schatten:3", "schatten:inf", "kyfan:2")
LAGRANGIANS = ("energy", "schatten:2", "schatten:1", "kyfan:1")


def verdict(k, name, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    limit = "" if budget is None else f" (budget {budget:g} s)"
    record_acceptance(f"[criterion {k}] {status} {name}: {detail}; {elapsed:.1f} s{limit}")
    assert ok, detail
    assert within, f"runtime {elapsed:.1f} s exceeds {budget} s"


def test_criterion_1_thompson():
    t0 = time.perf_counter()
    failed, worst, runs = 0, -math.inf, 0
    for n in range(2, 9):
        for k in (2, 3, 4):
            r = run_suite("thompson", TrialConfig(n=n, trials=1000, seed=1, tolerance=1e-9,
                                                  gauges=THOMPSON_GAUGES, factors=(k,)))
            failed += r.failed
            worst = max(worst, r.worst_violation)
            runs += r.passed + r.failed
    elapsed = time.perf_counter() - t0
    verdict(1, "Thompson triangle inequality", failed == 0 and runs == 21 * 1000,
            f"{runs} trials, {failed} violations, worst excess {worst:.2e} (tol 1e-9)", elapsed, 60)


def test_criterion_2_minimality():
    t0 = time.perf_counter()
    failed, worst = 0, -math.inf
    for n in (2, 3, 4):
        r = run_suite("minimality", TrialConfig(n=n, trials=200, seed=2, tolerance=1e-9,
                                                lagrangians=LAGRANGIANS, max_intermediates=4))
        failed += r.failed
        worst = max(worst, r.worst_violation)
    elapsed = time.perf_counter() - t0
    verdict(2, "geodesic minimality", failed == 0,
            f"600 trials x 4 Lagrangians x 5 competitors, {failed} failures, "
            f"worst action deficit {worst:.2e} (tol 1e-9)", elapsed, 60)


def test_criterion_3_distance_law():
    t0 = time.perf_counter()
    gauges = [parse_gauge(g) for g in THOMPSON_GAUGES]
    worst = {"bi_invariance": 0.0, "symmetry": 0.0, "triangle": -math.inf}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonUniqueWarning)
        for trial in range(500):
            rng = substream(3, 0, trial)
            n = int(rng.integers(2, 7))
            U, V, W = (sample_haar_unitary(n, rng) for _ in range(3))
            A, B = sample_haar_unitary(n, rng), sample_haar_unitary(n, rng)
            for phi in gauges:
                d = distance_phi(phi, U, V)
                worst["bi_invariance"] = max(worst["bi_invariance"],
                                             abs(distance_phi(phi, A @ U @ B, A @ V @ B) - d))
                worst["symmetry"] = max(worst["symmetry"], abs(distance_phi(phi, V, U) - d))
                worst["triangle"] = max(worst["triangle"],
                                        d - distance_phi(phi, U, W) - distance_phi(phi, W, V))
    elapsed = time.perf_counter() - t0
    ok = all(v <= 1e-9 for v in worst.values())
    detail = ", ".join(f"{k} {v:.2e}" for k, v in worst.items())
    verdict(3, "distance law", ok, f"500 triples x 5 gauges: {detail} (tol 1e-9)", elapsed, 30)


def test_criterion_4_log_round_trip():
    t0 = time.perf_counter()
    worst = 0.0
    for trial in range(1000):
        rng = substream(4, 0, trial)
        n = int(rng.integers(1, 9))
        X = sample_hermitian_ball(n, 0.9 * math.pi, rng)
        worst = max(worst, np.linalg.norm(principal_log(exp_i(X)) - X))
    elapsed = time.perf_counter() - t0
    verdict(4, "principal-log round trip", worst <= 1e-9,
            f"1000 samples, max Frobenius error {worst:.2e} (tol 1e-9)", elapsed, 10)


def test_criterion_5_uniqueness_descent():
    t0 = time.perf_counter()
    r = run_suite("uniqueness", TrialConfig(n=3, trials=50, seed=5, perturbation=1e-2,
                                            lagrangians=("energy", "schatten:1")))
    elapsed = time.perf_counter() - t0
    e = r.details["energy"]
    c = r.details["schatten:1"]
    ok = (e["passed"] >= 48 and e["inconclusive"] <= 2 and e["failed"] == 0
          and c["role"] == "negative_control" and c["passed"] >= 1
          and c["example"]["action_gap"] <= 1e-9)
    detail = (f"energy recovered {e['passed']}/50 (stalls {e['inconclusive']}, wrong minimizer "
              f"{e['failed']}, worst error {e['worst_error']:.1e}, tol 1e-5); schatten:1 control "
              f"found {c['passed']} equal-action off-geodesic midpoints, "
              f"e.g. gap {c.get('example', {}).get('action_gap', float('nan')):.1e}")
    verdict(5, "uniqueness descent", ok, detail, elapsed, 120)


def test_criterion_6_alignment():
    t0 = time.perf_counter()
    phi = schatten(2)
    worst_t0, aligned_ok = 0.0, 0
    for trial in range(100):
        rng = substream(6, 0, trial)
        n = int(rng.integers(2, 6))
        U = sample_haar_unitary(n, rng)
        X0 = sample_hermitian_ball(n, 0.9 * math.pi, rng)
        t_true = float(rng.uniform(0.05, 0.95))
        res = check_alignment(phi, U, U @ exp_i(t_true * X0), U @ exp_i(X0))
        if res.additive and res.aligned:
            aligned_ok += 1
            worst_t0 = max(worst_t0, abs(res.t0 - t_true))
        else:
            worst_t0 = math.inf
    generic_ok, min_gap = 0, math.inf
    for trial in range(100):
        rng = substream(6, 1, trial)
        n = int(rng.integers(2, 6))
        U, W, V = (sample_haar_unitary(n, rng) for _ in range(3))
        res = check_alignment(phi, U, W, V)
        min_gap = min(min_gap, res.gap)
        generic_ok += (not res.additive) and res.gap >= 1e-6
    elapsed = time.perf_counter() - t0
    ok = aligned_ok == 100 and worst_t0 <= 1e-8 and generic_ok == 100
    verdict(6, "alignment", ok,
            f"aligned recovered {aligned_ok}/100 with max t0 error {worst_t0:.1e} (tol 1e-8); "
            f"generic non-additive {generic_ok}/100 with min gap {min_gap:.2e} (need >= 1e-6)",
            elapsed, 30)


def test_criterion_7_grassmann():
    t0 = time.perf_counter()
    gauges = ("schatten:1", "schatten:2", "schatten:3", "schatten:inf", "kyfan:1", "kyfan:2")
    limits = {"psi_gap": 1e-8, "davis_kahan": 1e-8, "factor_two": 1e-9, "conjugation": 1e-9}
    worst = dict.fromkeys(limits, 0.0)
    for n, m in [(4, 1), (4, 2), (6, 2), (8, 3)]:
        r = run_suite("grassmann", TrialConfig(n=n, m=m, trials=200, seed=7, tolerance=1e-8, gauges=gauges))
        assert r.passed + r.failed == 200
        for key in limits:
            worst[key] = max(worst[key], r.details["max"][key])
    elapsed = time.perf_counter() - t0
    ok = all(worst[k] <= limits[k] for k in limits)
    detail = ", ".join(f"{k} {worst[k]:.1e} (tol {limits[k]:g})" for k in limits)
    verdict(7, "Grassmann identities", ok, f"4 shapes x 200 pairs: {detail}", elapsed, 60)


def _oracle_lagrangian(label, s):
    """Lagrangian values from batched singular values, written out independently."""
    if label == "energy":
        return np.sum(s**2, axis=-1)
    if label == "schatten:2":
        return np.sqrt(np.sum(s**2, axis=-1))
    if label == "schatten:1":
        return np.sum(s, axis=-1)
    if label == "kyfan:1":
        return np.max(s, axis=-1)
    raise KeyError(label)


def test_criterion_8_action_formula():
    t0 = time.perf_counter()
    lagr = {"energy": energy(), "schatten:2": norm_lagrangian(schatten(2)),
            "schatten:1": norm_lagrangian(schatten(1)), "kyfan:1": norm_lagrangian(ky_fan(1))}
    N = 10_000
    worst = 0.0
    for trial in range(100):
        rng = substream(8, 0, trial)
        n = int(rng.integers(2, 6))
        U = sample_haar_unitary(n, rng)
        Z = sample_hermitian_ball(n, math.pi, rng)
        b = float(rng.uniform(0.25, 4.0))
        label = LAGRANGIANS[trial % 4]
        closed = action(lagr[label], GeodesicSegment(U, Z, b))
        # sample gamma(t) = U exp(itZ/b) on a uniform grid, difference quotients, midpoint sum
        w, Q = np.linalg.eigh(Z)
        t = np.linspace(0.0, b, N + 1)
        pts = np.einsum("ij,tj,kj->tik", U @ Q, np.exp(1j * np.outer(t, w) / b), Q.conj())
        dt = b / N
        vel = (pts[1:] - pts[:-1]) / dt
        s = np.linalg.svd(vel, compute_uv=False)
        quad = float(np.sum(dt * _oracle_lagrangian(label, s)))
        rel = abs(quad - closed) / max(abs(closed), 1e-300)
        worst = max(worst, rel)
    elapsed = time.perf_counter() - t0
    verdict(8, "action formula", worst <= 1e-4,
            f"100 geodesics vs {N}-point quadrature, max relative error {worst:.1e} (tol 1e-4)",
            elapsed, 30)


def test_criterion_9_determinism(tmp_path):
    t0 = time.perf_counter()
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    codes = []
    for p in paths:
        argv = ["verify", "--suite", "all", "--seed", "123", "--trials", "10", "--n", "4", "--report", str(p)]
        codes.append(main(argv, out=stdio.StringIO(), err=stdio.StringIO()))
    a, b = (p.read_bytes() for p in paths)
    elapsed = time.perf_counter() - t0
    verdict(9, "determinism", a == b and codes == [0, 0],
            f"two 'verify --suite all --seed 123' reports {'identical' if a == b else 'differ'} "
            f"({len(a)} bytes), exit codes {codes}", elapsed)
