"""Derivative-free 1-D and coordinate-wise minimization."""

import math

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_section(f, a, b, tol=1e-10, maxiter=200):
    """Minimize a unimodal ``f`` on ``[a, b]`` by golden-section search.

    Returns ``(x, f(x))`` where ``x`` is the best point evaluated; the final
    bracket is narrower than ``tol``.
    """
    if b < a:
        a, b = b, a
    h = b - a
    c = a + INVPHI2 * h
    d = a + INVPHI * h
    fc, fd = f(c), f(d)
    best = min((f(a), a), (f(b), b), (fc, c), (fd, d))
    for _ in range(maxiter):
        if h <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = INVPHI * h
            c = a + INVPHI2 * h
            fc = f(c)
            best = min(best, (fc, c))
        else:
            a, c, fc = c, d, fd
            h = INVPHI * h
            d = a + INVPHI * h
            fd = f(d)
            best = min(best, (fd, d))
    return best[1], best[0]


def coordinate_descent(f, x0, step, tol=1e-10, max_sweeps=50, stall_limit=200):
    """Cyclic coordinate-wise golden-section minimization of ``f`` from ``x0``.

    Each coordinate is searched on ``[x_i - r_i, x_i + r_i]``; the radius is
    doubled while the minimizer lands on the bracket edge and otherwise shrinks
    towards the last move.  Stops once a full sweep moves no coordinate by more
    than ``tol``.

    Returns ``(x, f(x), sweeps, stalled)``; ``stalled`` is set when
    ``stall_limit`` consecutive coordinate searches fail to lower ``f``
    before convergence.
    """
    x = [float(v) for v in x0]
    fx = f(x)
    radius = [float(step)] * len(x)
    idle = 0
    for sweep in range(1, max_sweeps + 1):
        biggest = 0.0
        for i in range(len(x)):
            base = x[i]

            def g(t, i=i):
                x[i] = t
                return f(x)

            while True:
                r = radius[i]
                t, ft = golden_section(g, base - r, base + r, tol=max(tol, r * 1e-4))
                if abs(t - base) < 0.99 * r or r > 1e3 * step:
                    break
                radius[i] = 2.0 * r
            if ft < fx:
                x[i], fx = t, ft
                idle = 0
            else:
                x[i] = base
                idle += 1
            move = abs(x[i] - base)
            biggest = max(biggest, move)
            radius[i] = max(4.0 * move, 10.0 * tol)
        if biggest <= tol:
            return x, fx, sweep, False
        if idle >= stall_limit:
            return x, fx, sweep, True
    return x, fx, max_sweeps, False
