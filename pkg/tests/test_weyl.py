import numpy as np
import pytest

from mubforge import fp
from mubforge.weyl import (
    all_displacements,
    cluster_eigenvalues,
    cmatrix_from_json,
    cmatrix_to_json,
    commutation_check,
    displacement_matrix,
    equal_up_to_phase,
    is_unitary,
    phase_modulus,
    product_phase,
    random_unitary,
    root_of_unity,
    unitary_error_basis_check,
)

SMALL = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]  # d <= 9
UP_TO_16 = SMALL + [(11, 1), (13, 1), (2, 4)]


def test_single_party_operators():
    X = displacement_matrix([1, 0], 3)
    Z = displacement_matrix([0, 1], 3)
    w = root_of_unity(3)
    assert np.allclose(X @ np.eye(3)[:, 0], np.eye(3)[:, 1])  # X|j> = |j+1>
    assert np.allclose(Z @ np.eye(3)[:, 1], w * np.eye(3)[:, 1])  # Z|j> = w^j |j>
    assert np.allclose(Z @ X, w * X @ Z)


@pytest.mark.parametrize("p,n", SMALL)
def test_commutation_identity_exhaustive(p, n):
    """D_mu D_nu D_mu^dag D_nu^dag = w^{<mu, nu>} for every pair of labels."""
    D = all_displacements(p, n)
    V = fp.all_vectors(p, 2 * n)
    J = fp.symplectic_form(n, p)
    sym = (V @ J @ V.T) % p
    Dd = np.conj(np.transpose(D, (0, 2, 1)))
    d = p**n
    for a in range(len(V)):
        lhs = np.einsum("ij,bjk,kl,blm->bim", D[a], D, Dd[a], Dd)
        rhs = root_of_unity(p, sym[a])[:, None, None] * np.eye(d)
        assert np.max(np.abs(lhs - rhs)) < 1e-9
    assert commutation_check(V[1], V[-1], p, n)


@pytest.mark.parametrize("p,n", UP_TO_16)
def test_unitary_error_basis(p, n):
    assert unitary_error_basis_check(p, n)


@pytest.mark.parametrize("p,n", UP_TO_16)
def test_pauli_expansion_of_random_unitary(p, n, rng):
    """sum_mu |tr(D_mu U)|^2 = d^2 for any unitary U."""
    d = p**n
    U = random_unitary(d, rng)
    D = all_displacements(p, n)
    total = np.sum(np.abs(np.einsum("kij,ji->k", D, U)) ** 2)
    assert abs(total - d * d) < 1e-8 * d * d


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_product_phase(p, n, rng):
    N = phase_modulus(p)
    for _ in range(50):
        mu, nu = rng.integers(0, p, size=(2, 2 * n))
        lhs = displacement_matrix(mu, p, n) @ displacement_matrix(nu, p, n)
        rhs = root_of_unity(N, product_phase(mu, nu, p)) * displacement_matrix((mu + nu) % p, p, n)
        assert np.allclose(lhs, rhs)


def test_helpers(rng):
    U = random_unitary(4, rng)
    assert is_unitary(U)
    assert equal_up_to_phase(1j * U, U) and not equal_up_to_phase(U @ U, U)
    cl = cluster_eigenvalues([1, 1 + 1e-10, -1])
    assert sorted(m for _, m in cl) == [1, 2]
    text = cmatrix_to_json(U, 2, 2)
    U2, header = cmatrix_from_json(text)
    assert np.allclose(U, U2) and header["d"] == 4


def test_bad_label_length():
    with pytest.raises(ValueError):
        displacement_matrix([1, 0, 1], 2, 2)
