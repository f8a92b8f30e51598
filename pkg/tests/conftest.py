import numpy as np
import pytest


def haar(n, rng):
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def rand_hermitian(n, rng, norm=None):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = 0.5 * (g + g.conj().T)
    if norm is not None:
        H *= norm / np.linalg.norm(H, 2)
    return H


def rand_complex(n, rng):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def rand_projection(n, m, rng):
    B = haar(n, rng)[:, :m]
    return B @ B.conj().T


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE_LINES = []


def record_acceptance(line):
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
