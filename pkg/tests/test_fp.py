import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubforge import fp
from mubforge.clifford import sp_generators, sp_order
from mubforge.groups import enumerate_sp

PRIMES = [2, 3, 5, 7]


def brute_rank(M, p):
    """Rank as log_p of the size of the row space, by listing every combination."""
    M = np.asarray(M) % p
    seen = {tuple((np.array(c) @ M) % p) for c in itertools.product(range(p), repeat=len(M))}
    return round(np.log(len(seen)) / np.log(p))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_rank_matches_row_space_count(p, rng):
    for _ in range(40):
        M = rng.integers(0, p, size=(rng.integers(1, 4), rng.integers(1, 5)))
        assert fp.rank(M, p) == brute_rank(M, p)


@pytest.mark.parametrize("p", PRIMES)
def test_inverse_and_nullspace(p, rng):
    for _ in range(30):
        M = rng.integers(0, p, size=(4, 4))
        if fp.rank(M, p) == 4:
            Mi = fp.inverse(M, p)
            assert np.array_equal((M @ Mi) % p, np.eye(4, dtype=np.int64))
        else:
            with pytest.raises(ValueError):
                fp.inverse(M, p)
        N = fp.nullspace(M, p)
        assert len(N) == 4 - fp.rank(M, p)
        assert not np.any((M @ N.T) % p)


def test_rref_is_canonical(rng):
    p = 3
    M = rng.integers(0, p, size=(3, 5))
    A = rng.integers(0, p, size=(3, 3))
    while fp.rank(A, p) < 3:
        A = rng.integers(0, p, size=(3, 3))
    R1, piv1 = fp.rref(M, p)
    R2, piv2 = fp.rref((A @ M) % p, p)
    assert piv1 == piv2 and np.array_equal(R1, R2)


@pytest.mark.parametrize("p", PRIMES)
def test_symplectic_form_properties_random(p, rng):
    """Antisymmetry, alternation and bilinearity on 10^4 random triples."""
    n = 2
    J = fp.symplectic_form(n, p)
    k = 10_000
    a, b, c = (rng.integers(0, p, size=(k, 2 * n)) for _ in range(3))
    s, t = rng.integers(0, p, size=(2, k, 1))
    form = lambda x, y: np.einsum("ki,ij,kj->k", x, J, y) % p
    assert np.all((form(a, b) + form(b, a)) % p == 0)
    assert np.all(form(a, a) == 0)
    lhs = form((s * a + t * b) % p, c)
    assert np.all(lhs == (s[:, 0] * form(a, c) + t[:, 0] * form(b, c)) % p)
    # agrees with the coordinate formula z_mu . x_nu - x_mu . z_nu
    coord = (np.sum(a[:, n:] * b[:, :n], axis=1) - np.sum(a[:, :n] * b[:, n:], axis=1)) % p
    assert np.array_equal(form(a, b), coord)


def test_symplectic_product_scalar():
    assert fp.symplectic_product([1, 0], [0, 1], 3) == 2  # z_mu x_nu - x_mu z_nu = -1
    assert fp.symplectic_product([0, 1], [1, 0], 3) == 1
    with pytest.raises(ValueError):
        fp.symplectic_product([1, 0, 0], [0, 1, 0], 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_sp2_order_by_brute_force(p):
    brute = sum(
        1
        for a, b, c, d in itertools.product(range(p), repeat=4)
        if (a * d - b * c) % p == 1
    )
    assert brute == p * (p * p - 1) == sp_order(p, 1)
    assert len(enumerate_sp(p, 1)) == brute


def test_sp4_2_order():
    assert len(enumerate_sp(2, 2)) == sp_order(2, 2) == 720


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)])
def test_generators_are_symplectic(p, n):
    for F in sp_generators(p, n):
        assert fp.is_symplectic(F, p)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 2), (3, 2), (5, 1), (2, 3)]), st.lists(st.integers(0, 100), min_size=1, max_size=12))
def test_random_symplectic_words(pn, word):
    p, n = pn
    gens = sp_generators(p, n)
    F = np.eye(2 * n, dtype=np.int64)
    for w in word:
        F = (F @ gens[w % len(gens)]) % p
    assert fp.is_symplectic(F, p)
    assert np.array_equal(fp.inverse(F, p), (-fp.symplectic_form(n, p) @ F.T @ fp.symplectic_form(n, p)) % p)


def test_vector_indexing_round_trip():
    V = fp.all_vectors(3, 4)
    assert np.array_equal(fp.vector_indices(V, 3), np.arange(81))
    assert fp.vector_index([0, 0, 0, 1], 3) == 1
    assert fp.vector_index([1, 0, 0, 0], 3) == 27


def test_linear_permutation_is_permutation(rng):
    F = sp_generators(3, 2)[0]
    perm = fp.linear_permutation(F, 3)
    assert sorted(perm.tolist()) == list(range(81)) and perm[0] == 0


def test_subspace_operations():
    S = fp.Subspace.span([[1, 0, 1, 0], [0, 1, 0, 1]], 2)
    assert S.dim == 2 and len(S.members()) == 4
    assert S.contains([1, 1, 1, 1]) and not S.contains([1, 0, 0, 0])
    T = fp.Subspace.span([[1, 0, 0, 0], [0, 1, 0, 0]], 2)
    assert S.intersection_dim(T) == 0
    assert not S.is_isotropic() or S.is_isotropic()  # well defined
    assert fp.Subspace.span([[0, 0, 1, 0], [0, 0, 0, 1]], 2).is_isotropic()


def test_invariant_subspace_detection():
    assert fp.has_invariant_subspace(np.eye(2, dtype=np.int64), 2)
    assert not fp.has_invariant_subspace(np.array([[0, 1], [1, 1]]), 2)  # x^2 + x + 1 irreducible


def test_matrix_json_round_trip():
    M = np.array([[1, 2], [0, 4]])
    text = fp.matrix_to_json(M, 5)
    M2, p = fp.matrix_from_json(text)
    assert p == 5 and np.array_equal(M2, M)
    with pytest.raises(ValueError):
        fp.matrix_from_json('{"p": 4, "rows": [[1]]}')


def test_check_prime():
    assert fp.check_prime(7) == 7
    for bad in (1, 4, 9, 2.0):
        with pytest.raises(ValueError):
            fp.check_prime(bad)
