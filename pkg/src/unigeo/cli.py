"""Command-line front end.

Exit codes: 0 success, 1 usage / parse / validation error, 2 a verification
property was violated.
"""

import argparse
import math
import os
import sys
import warnings

import numpy as np

from . import io
from .exceptions import BoundaryNonUnique, NonUniqueWarning, UnigeoError
from .grassmann import angular_metric, direct_rotation, grassmann_distance, principal_angles
from .lagrangian import parse_gauge, parse_lagrangian
from .matcore import as_unitary, singular_values
from .unitary_paths import action, distance_phi, geodesic_between
from .verify import DEFAULT_GAUGES, DEFAULT_LAGRANGIANS, SUITES, TrialConfig, run_all, run_suite

SEED_ENV = "UNIGEO_SEED"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x):
    """15 significant digits; ``-0`` is printed as ``0``."""
    return f"{float(x) + 0.0:.15g}"


def _load_unitary(path):
    return as_unitary(io.matrix_from_json(io.load_json(path)))


def _load_projection(path):
    return io.projection_from_json(io.load_json(path))


def cmd_dist(args, out):
    phi = parse_gauge(args.norm)
    U, V = _load_unitary(args.U), _load_unitary(args.V)
    d = distance_phi(phi, U, V)
    Z = geodesic_between(U, V).Z
    print(f"distance {fmt(d)}", file=out)
    print(f"spectral_norm_Z {fmt(singular_values(Z)[0])}", file=out)


def cmd_geodesic(args, out):
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    if not args.b > 0:
        raise UsageError("--b must be positive")
    seg = geodesic_between(_load_unitary(args.U), _load_unitary(args.V), args.b)
    path = seg.as_polygonal(args.samples)
    text = io.dump_json(io.path_to_json(path))
    if args.output:
        io.write_atomic(args.output, text)
    else:
        out.write(text)


def cmd_action(args, out):
    L = parse_lagrangian(args.lagrangian)
    path = io.path_from_json(io.load_json(args.path))
    print(f"action {fmt(action(L, path))}", file=out)


def cmd_angles(args, out):
    P, Q = _load_projection(args.P), _load_projection(args.Q)
    theta = principal_angles(P, Q)
    scale = 180.0 / math.pi if args.degrees else 1.0
    print("theta " + " ".join(fmt(scale * t) for t in theta), file=out)
    for spec in args.norm or ["schatten:2"]:
        print(f"rho[{spec}] {fmt(angular_metric(parse_gauge(spec), P, Q))}", file=out)


def cmd_rotation(args, out):
    P, Q = _load_projection(args.P), _load_projection(args.Q)
    X = direct_rotation(P, Q)
    doc = {
        "X": io.matrix_to_json(X),
        "eigenvalues": [float(w) for w in np.sort(np.linalg.eigvalsh(X))[::-1]],
    }
    text = io.dump_json(doc)
    if args.output:
        io.write_atomic(args.output, text)
    else:
        out.write(text)


def cmd_grassdist(args, out):
    phi = parse_gauge(args.norm)
    P, Q = _load_projection(args.P), _load_projection(args.Q)
    print(f"distance {fmt(grassmann_distance(phi, P, Q))}", file=out)


def _default_seed():
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def cmd_verify(args, out):
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        cfg = TrialConfig(
            n=args.n, m=args.m, trials=args.trials, seed=seed, tolerance=args.tol,
            gauges=tuple(args.gauge or DEFAULT_GAUGES),
            lagrangians=tuple(args.lagrangian or DEFAULT_LAGRANGIANS),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.suite == "all":
        if 2 * cfg.m > cfg.n:
            raise UsageError("grassmann suite needs 2m <= n")
        reports = run_all(cfg)
    elif args.suite in SUITES:
        if args.suite == "grassmann" and 2 * cfg.m > cfg.n:
            raise UsageError("grassmann suite needs 2m <= n")
        reports = [run_suite(args.suite, cfg)]
    else:
        raise UsageError(f"unknown suite {args.suite!r}")
    doc = [r.to_dict() for r in reports]
    if args.report:
        io.write_atomic(args.report, io.dump_json(doc))
    for r in reports:
        print(r.summary(), file=out)
    return 0 if all(r.ok for r in reports) else 2


def build_parser():
    p = _Parser(prog="unigeo", description="Geodesics, distances and angles on U(n) and the Grassmannian.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("dist", help="rectifiable distance d_phi(U, V)")
    s.add_argument("U")
    s.add_argument("V")
    s.add_argument("--norm", default="schatten:2")
    s.set_defaults(func=cmd_dist)

    s = sub.add_parser("geodesic", help="sample the geodesic from U to V as a polygonal path")
    s.add_argument("U")
    s.add_argument("V")
    s.add_argument("--b", type=float, default=1.0)
    s.add_argument("--samples", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_geodesic)

    s = sub.add_parser("action", help="action of a polygonal path")
    s.add_argument("path")
    s.add_argument("--lagrangian", default="energy")
    s.set_defaults(func=cmd_action)

    s = sub.add_parser("angles", help="principal angles and angular metrics")
    s.add_argument("P")
    s.add_argument("Q")
    s.add_argument("--norm", action="append")
    s.add_argument("--degrees", action="store_true")
    s.set_defaults(func=cmd_angles)

    s = sub.add_parser("rotation", help="direct rotation from P to Q")
    s.add_argument("P")
    s.add_argument("Q")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_rotation)

    s = sub.add_parser("grassdist", help="rectifiable distance on the Grassmannian")
    s.add_argument("P")
    s.add_argument("Q")
    s.add_argument("--norm", default="schatten:2")
    s.set_defaults(func=cmd_grassdist)

    s = sub.add_parser("verify", help="run randomized verification suites")
    s.add_argument("--suite", default="all")
    s.add_argument("--n", type=int, default=4)
    s.add_argument("--m", type=int, default=2)
    s.add_argument("--trials", type=int, default=50)
    s.add_argument("--seed", type=int)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--gauge", action="append", help="gauge specifier (repeatable)")
    s.add_argument("--lagrangian", action="append", help="Lagrangian specifier (repeatable)")
    s.add_argument("--report")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", NonUniqueWarning)
            warnings.simplefilter("always", BoundaryNonUnique)
            code = args.func(args, out)
        for w in caught:
            if issubclass(w.category, (NonUniqueWarning, BoundaryNonUnique)):
                print(f"warning: {w.message}", file=err)
        return code or 0
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (UnigeoError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
