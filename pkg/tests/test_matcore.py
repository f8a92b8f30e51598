import numpy as np
import pytest
import scipy.linalg
from conftest import haar, rand_complex, rand_hermitian

from unigeo.exceptions import NotHermitian, NotUnitary
from unigeo.matcore import (
    as_hermitian,
    as_unitary,
    exp_i,
    hermitian_eig,
    modulus,
    principal_log,
    singular_values,
)


def test_as_hermitian_symmetrizes_exactly():
    A = np.array([[1.0, 2 + 1e-12j], [2, 3]])
    H = as_hermitian(A)
    assert np.array_equal(H, H.conj().T)


def test_as_hermitian_rejects_non_hermitian():
    with pytest.raises(NotHermitian):
        as_hermitian([[0, 1], [0, 0]])


def test_as_unitary_rejects():
    with pytest.raises(NotUnitary):
        as_unitary(2 * np.eye(2))


def test_eig_zero_matrix():
    w, V = hermitian_eig(np.zeros((3, 3)))
    assert np.array_equal(w, np.zeros(3))
    np.testing.assert_allclose(V, np.eye(3), atol=1e-15)


def test_eig_diagonal():
    w, V = hermitian_eig(np.diag([1.0, 5.0, -2.0]))
    np.testing.assert_allclose(w, [5, 1, -2])
    np.testing.assert_allclose(np.abs(V), [[0, 1, 0], [1, 0, 0], [0, 0, 1]], atol=1e-15)


def test_eig_reconstruction(rng):
    for n in range(1, 9):
        A = rand_hermitian(n, rng)
        w, V = hermitian_eig(A)
        assert np.all(np.diff(w) <= 0)
        np.testing.assert_allclose(V.conj().T @ V, np.eye(n), atol=1e-12)
        assert np.linalg.norm((V * w) @ V.conj().T - A) <= 1e-12 * np.linalg.norm(A)


def test_eig_phase_convention(rng):
    _, V = hermitian_eig(rand_hermitian(4, rng))
    for col in V.T:
        lead = col[np.argmax(np.abs(col) > 1e-10)]
        assert lead.real > 0 and abs(lead.imag) < 1e-14


def test_singular_values_trivial():
    np.testing.assert_allclose(singular_values(np.eye(2)), [1, 1])
    np.testing.assert_allclose(singular_values(np.diag([3, -4j])), [4, 3])


def test_singular_values_gram_oracle(rng):
    for n in (2, 5, 8):
        T = rand_complex(n, rng)
        gram = np.linalg.eigvalsh(T.conj().T @ T)[::-1]
        np.testing.assert_allclose(singular_values(T), np.sqrt(np.clip(gram, 0, None)), atol=1e-10)


def test_singular_values_unitary_invariance(rng):
    T = rand_complex(5, rng)
    U, V = haar(5, rng), haar(5, rng)
    np.testing.assert_allclose(singular_values(U @ T @ V), singular_values(T), atol=1e-10)


def test_modulus_trivial(rng):
    np.testing.assert_allclose(modulus(haar(4, rng)), np.eye(4), atol=1e-12)
    np.testing.assert_allclose(modulus(np.diag([-2, 3j])), np.diag([2, 3]), atol=1e-15)


def test_modulus_properties(rng):
    T = rand_complex(6, rng)
    M = modulus(T)
    w = np.linalg.eigvalsh(M)
    assert w.min() >= -1e-12
    np.testing.assert_allclose(M @ M, T.conj().T @ T, rtol=1e-10, atol=1e-10 * np.linalg.norm(T) ** 2)
    np.testing.assert_allclose(w[::-1], singular_values(T), atol=1e-10)


def test_exp_i_trivial():
    np.testing.assert_allclose(exp_i(np.zeros((3, 3))), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(
        exp_i(np.diag([np.pi / 2, -np.pi / 3])), np.diag([1j, np.exp(-1j * np.pi / 3)]), atol=1e-15
    )


def test_exp_i_matches_expm_and_inverse(rng):
    for n in (1, 3, 7):
        X = rand_hermitian(n, rng)
        E = exp_i(X)
        np.testing.assert_allclose(E, scipy.linalg.expm(1j * X), atol=1e-12)
        assert np.linalg.norm(E @ exp_i(-X) - np.eye(n)) <= 1e-10
        np.testing.assert_allclose(modulus(E), np.eye(n), atol=1e-12)


def test_principal_log_trivial():
    np.testing.assert_allclose(principal_log(np.eye(3)), 0, atol=1e-15)
    U = np.diag([np.exp(1j * np.pi / 2), np.exp(-1j * np.pi / 3)])
    np.testing.assert_allclose(principal_log(U), np.diag([np.pi / 2, -np.pi / 3]), atol=1e-14)


def test_principal_log_minus_identity_uses_plus_pi():
    Z = principal_log(-np.eye(2))
    np.testing.assert_allclose(np.linalg.eigvalsh(Z), [np.pi, np.pi], atol=1e-14)


def test_principal_log_boundary_with_roundoff():
    # -1 reached through a rotation, so the computed eigenvalue carries round-off
    U = exp_i(np.diag([np.pi, 0.3]))
    w = np.linalg.eigvalsh(principal_log(U))
    np.testing.assert_allclose(w, [0.3, np.pi], atol=1e-12)


def test_principal_log_round_trip(rng):
    for n in (1, 2, 4, 8):
        for _ in range(20):
            X = rand_hermitian(n, rng, norm=0.9 * np.pi * rng.uniform())
            Z = principal_log(exp_i(X))
            assert np.linalg.norm(Z - X) <= 1e-9
            assert np.linalg.norm(Z, 2) <= np.pi + 1e-12


def test_principal_log_of_random_unitary(rng):
    for n in (2, 5):
        U = haar(n, rng)
        Z = principal_log(U)
        w = np.linalg.eigvalsh(Z)
        assert w.min() > -np.pi and w.max() <= np.pi
        assert np.linalg.norm(exp_i(Z) - U) <= 1e-10 * np.sqrt(n)


def test_principal_log_repeated_eigenvalues(rng):
    # a degenerate spectrum must still produce a Hermitian log
    V = haar(4, rng)
    U = (V * np.exp(1j * np.array([0.7, 0.7, -1.1, -1.1]))) @ V.conj().T
    Z = principal_log(U)
    np.testing.assert_allclose(Z, Z.conj().T, atol=0)
    np.testing.assert_allclose(np.sort(np.linalg.eigvalsh(Z)), [-1.1, -1.1, 0.7, 0.7], atol=1e-12)
