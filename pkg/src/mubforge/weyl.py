"""
Heisenberg-Weyl displacement operators and dense unitary utilities.

D_mu = prod_j X_j^{mu_j} Z_j^{mu_{n+j}} with Z|r> = w^r |r>, X|r> = |r+1>,
w = exp(2 pi i / p).  Party 1 is the leftmost tensor factor.

Exact phase bookkeeping uses integers modulo ``phase_modulus(p)``: p for odd
p and 4 for p = 2 (where Clifford conjugation phases can be +-i).
"""

from __future__ import annotations

import json
from functools import lru_cache

import numpy as np

from . import fp

TOL_NUM = 1e-9
TOL_MUB = 1e-8
EIG_CLUSTER_TOL = 1e-7


def phase_modulus(p: int) -> int:
    return 4 if p == 2 else p


def root_of_unity(N: int, k=1):
    return np.exp(2j * np.pi * np.asarray(k) / N)


@lru_cache(maxsize=None)
def _single(p: int) -> tuple[np.ndarray, np.ndarray]:
    X = np.roll(np.eye(p), 1, axis=0).astype(complex)
    Z = np.diag(root_of_unity(p, np.arange(p))).astype(complex)
    return X, Z


def displacement_matrix(mu, p: int, n: int | None = None) -> np.ndarray:
    mu = np.asarray(mu, dtype=np.int64) % p
    if n is None:
        n = len(mu) // 2
    if len(mu) != 2 * n:
        raise ValueError("label length must be 2n")
    X, Z = _single(p)
    out = np.ones((1, 1), dtype=complex)
    for j in range(n):
        factor = np.linalg.matrix_power(X, int(mu[j])) @ np.linalg.matrix_power(Z, int(mu[n + j]))
        out = np.kron(out, factor)
    return out


@lru_cache(maxsize=None)
def all_displacements(p: int, n: int) -> np.ndarray:
    """Array of shape (p^{2n}, d, d), ordered by vector index."""
    V = fp.all_vectors(p, 2 * n)
    D = np.array([displacement_matrix(v, p, n) for v in V])
    D.setflags(write=False)
    return D


# exact phased displacement arithmetic ---------------------------------------

def product_phase(mu, nu, p: int) -> np.ndarray:
    """k with D_mu D_nu = w_N^k D_{mu+nu}, N = phase_modulus(p); vectorised over rows."""
    mu = np.asarray(mu, dtype=np.int64)
    nu = np.asarray(nu, dtype=np.int64)
    n = mu.shape[-1] // 2
    # Z^b X^c = w^{bc} X^c Z^b on each party
    k = np.sum(mu[..., n:] * nu[..., :n], axis=-1) % p
    return (k * (phase_modulus(p) // p)) % phase_modulus(p)


def phased_mul(a, b, p: int):
    """(k1, v1) * (k2, v2) for phased displacements w_N^k D_v."""
    k1, v1 = a
    k2, v2 = b
    N = phase_modulus(p)
    return ((k1 + k2 + product_phase(v1, v2, p)) % N, (np.asarray(v1) + np.asarray(v2)) % p)


def commutator_phase(mu, nu, p: int) -> int:
    """Exponent of w in D_mu D_nu D_mu^dag D_nu^dag."""
    return fp.symplectic_product(mu, nu, p)


# numeric helpers ----------------------------------------------------------

def dagger(U: np.ndarray) -> np.ndarray:
    return U.conj().T


def max_abs(A) -> float:
    return float(np.max(np.abs(A))) if np.size(A) else 0.0


def is_unitary(U: np.ndarray, tol: float = TOL_NUM) -> bool:
    return max_abs(dagger(U) @ U - np.eye(U.shape[0])) <= tol


def proportionality(A: np.ndarray, B: np.ndarray):
    """Phase c with A = c B when it exists (|c| = 1 for unitaries), else None."""
    k = np.unravel_index(np.argmax(np.abs(B)), B.shape)
    if abs(B[k]) < 1e-12:
        return None
    return A[k] / B[k]


def equal_up_to_phase(A: np.ndarray, B: np.ndarray, tol: float = TOL_NUM) -> bool:
    c = proportionality(A, B)
    return c is not None and abs(abs(c) - 1) <= tol and max_abs(A - c * B) <= tol


def commutation_check(mu, nu, p: int, n: int | None = None, tol: float = TOL_NUM) -> bool:
    Dm = displacement_matrix(mu, p, n)
    Dn = displacement_matrix(nu, p, n)
    lhs = Dm @ Dn @ dagger(Dm) @ dagger(Dn)
    w = root_of_unity(p, commutator_phase(mu, nu, p))
    return max_abs(lhs - w * np.eye(len(lhs))) <= tol


def unitary_error_basis_check(p: int, n: int, tol: float = TOL_NUM) -> bool:
    d = p**n
    if d > 16:
        raise ValueError("unitary error basis check limited to d <= 16")
    D = all_displacements(p, n)
    flat = D.reshape(len(D), -1)
    gram = flat.conj() @ flat.T
    return max_abs(gram - d * np.eye(len(D))) <= tol * d


def eigenvalues(U: np.ndarray) -> np.ndarray:
    """Eigenvalues of a normal matrix via complex Schur form."""
    from scipy.linalg import schur

    T, _ = schur(U, output="complex")
    return np.diag(T)


def cluster_eigenvalues(vals, tol: float = EIG_CLUSTER_TOL) -> list[tuple[complex, int]]:
    """Group numerically equal eigenvalues; returns (representative, multiplicity)."""
    vals = list(vals)
    clusters: list[list[complex]] = []
    for v in vals:
        for c in clusters:
            if abs(c[0] - v) <= tol:
                c.append(v)
                break
        else:
            clusters.append([v])
    return [(complex(np.mean(c)), len(c)) for c in clusters]


def is_nondegenerate(U: np.ndarray, tol: float = EIG_CLUSTER_TOL) -> bool:
    return all(m == 1 for _, m in cluster_eigenvalues(eigenvalues(U), tol))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(A)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def cmatrix_to_json(U: np.ndarray, p: int | None = None, n: int | None = None) -> str:
    header = {"d": int(U.shape[0])}
    if p is not None:
        header.update(p=int(p), n=int(n))
    entries = [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(U)]
    return json.dumps({"header": header, "entries": entries})


def cmatrix_from_json(text: str) -> tuple[np.ndarray, dict]:
    obj = json.loads(text)
    E = np.array(obj["entries"], dtype=float)
    return E[..., 0] + 1j * E[..., 1], obj["header"]
