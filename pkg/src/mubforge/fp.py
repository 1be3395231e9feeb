"""
Exact linear algebra over the prime field F_p.

Vectors and matrices are plain integer numpy arrays whose entries live in
[0, p); the modulus is passed alongside.  The symplectic space is F_p^{2n}
with the form <mu, nu> = mu^T J nu, J = [[0, -1], [1, 0]] (n x n blocks).
Vector coordinates are ordered (x_1..x_n, z_1..z_n).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"modulus must be prime, got {p!r}")
    return int(p)


def asmat(M, p: int) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) % p


@lru_cache(maxsize=None)
def _form(n: int) -> np.ndarray:
    J = np.zeros((2 * n, 2 * n), dtype=np.int64)
    J[:n, n:] = -np.eye(n, dtype=np.int64)
    J[n:, :n] = np.eye(n, dtype=np.int64)
    J.setflags(write=False)
    return J


def symplectic_form(n: int, p: int | None = None) -> np.ndarray:
    """The 2n x 2n form matrix J, reduced mod p when p is given."""
    J = _form(n)
    return J % p if p is not None else J.copy()


def symplectic_product(mu, nu, p: int) -> int:
    mu = np.asarray(mu, dtype=np.int64)
    nu = np.asarray(nu, dtype=np.int64)
    if mu.shape != nu.shape or mu.ndim != 1 or len(mu) % 2:
        raise ValueError("symplectic_product needs two vectors of equal even length")
    n = len(mu) // 2
    # mu^T J nu = -x_mu . z_nu + z_mu . x_nu
    return int((mu[n:] @ nu[:n] - mu[:n] @ nu[n:]) % p)


def _check_square(F: np.ndarray) -> int:
    if F.ndim != 2 or F.shape[0] != F.shape[1] or F.shape[0] % 2:
        raise ValueError(f"expected a 2n x 2n matrix, got shape {F.shape}")
    return F.shape[0] // 2


def form_scale(F, p: int) -> np.ndarray:
    """F^T J F mod p."""
    F = asmat(F, p)
    n = _check_square(F)
    return (F.T @ _form(n) @ F) % p


def is_symplectic(F, p: int) -> bool:
    F = asmat(F, p)
    n = _check_square(F)
    return bool(np.array_equal(form_scale(F, p), _form(n) % p))


def is_antisymplectic(F, p: int) -> bool:
    F = asmat(F, p)
    n = _check_square(F)
    return bool(np.array_equal(form_scale(F, p), (-_form(n)) % p))


def rref(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Pivots are taken left to right, using the topmost nonzero entry of each
    column, so the result is the canonical representative of the row space.
    """
    R = asmat(M, p).copy()
    if R.ndim != 2:
        raise ValueError("rref expects a 2D array")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, p)) % p
        others = np.nonzero(R[:, c])[0]
        for i in others:
            if i != r:
                R[i] = (R[i] - R[i, c] * R[r]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, p: int) -> int:
    return len(rref(M, p)[1])


def inverse(M, p: int) -> np.ndarray:
    M = asmat(M, p)
    m = M.shape[0]
    if M.shape != (m, m):
        raise ValueError("inverse of a non-square matrix")
    R, piv = rref(np.hstack([M, np.eye(m, dtype=np.int64)]), p)
    if piv[:m] != list(range(m)):
        raise ValueError("matrix is singular mod p")
    return R[:, m:]


def nullspace(M, p: int) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0} over F_p."""
    M = asmat(M, p)
    R, piv = rref(M, p)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, c in enumerate(piv):
            basis[k, c] = (-R[i, f]) % p
    return basis


def matrix_power(M, e: int, p: int) -> np.ndarray:
    M = asmat(M, p)
    out = np.eye(M.shape[0], dtype=np.int64)
    base = M
    while e:
        if e & 1:
            out = (out @ base) % p
        base = (base @ base) % p
        e >>= 1
    return out


def matrix_order(M, p: int, limit: int = 10**6) -> int:
    M = asmat(M, p)
    eye = np.eye(M.shape[0], dtype=np.int64)
    A = M.copy()
    for k in range(1, limit + 1):
        if np.array_equal(A, eye):
            return k
        A = (A @ M) % p
    raise ValueError("matrix order exceeds limit")


@lru_cache(maxsize=None)
def all_vectors(p: int, m: int) -> np.ndarray:
    """All p^m vectors of F_p^m; row k has base-p digits of k, most significant first."""
    idx = np.arange(p**m, dtype=np.int64)
    digits = np.empty((p**m, m), dtype=np.int64)
    for j in range(m):
        digits[:, m - 1 - j] = (idx // p**j) % p
    digits.setflags(write=False)
    return digits


def place_values(p: int, m: int) -> np.ndarray:
    return p ** np.arange(m - 1, -1, -1, dtype=np.int64)


def vector_index(v, p: int) -> int:
    v = np.asarray(v, dtype=np.int64) % p
    return int(v @ place_values(p, len(v)))


def vector_indices(V, p: int) -> np.ndarray:
    V = np.asarray(V, dtype=np.int64) % p
    return V @ place_values(p, V.shape[-1])


def linear_permutation(F, p: int) -> np.ndarray:
    """Permutation of vector indices induced by v -> F v."""
    F = asmat(F, p)
    V = all_vectors(p, F.shape[1])
    return vector_indices(V @ F.T, p)


def is_invariant_subspace(F, S: "Subspace") -> bool:
    return S.image(F) == S


def has_invariant_subspace(F, p: int) -> bool:
    """True if some proper nonzero subspace is F-invariant (exhaustive for small spaces)."""
    F = asmat(F, p)
    m = F.shape[0]
    # any invariant subspace contains a cyclic one generated by a single vector
    for v in all_vectors(p, m)[1:]:
        K = [v]
        for _ in range(m - 1):
            K.append((F @ K[-1]) % p)
        if rank(np.array(K), p) < m:
            return True
    return False


@dataclass(frozen=True)
class Subspace:
    """Row space over F_p, stored by its canonical RREF rows."""

    p: int
    ambient: int
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def span(cls, vectors, p: int, ambient: int | None = None) -> "Subspace":
        V = np.asarray(vectors, dtype=np.int64)
        if V.ndim == 1:
            V = V.reshape(1, -1)
        if ambient is None:
            ambient = V.shape[1]
        if V.size == 0:
            return cls(p, ambient, ())
        R, piv = rref(V, p)
        return cls(p, ambient, tuple(tuple(int(x) for x in row) for row in R[: len(piv)]))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.dim, self.ambient)

    def members(self) -> np.ndarray:
        """All p^dim vectors of the subspace, sorted by index."""
        coeffs = all_vectors(self.p, self.dim)
        V = (coeffs @ self.matrix()) % self.p
        return V[np.argsort(vector_indices(V, self.p))]

    def member_indices(self) -> np.ndarray:
        return np.sort(vector_indices(self.members(), self.p))

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        return rank(np.vstack([self.matrix(), v]), self.p) == self.dim

    def image(self, F) -> "Subspace":
        return type(self).span((self.matrix() @ asmat(F, self.p).T) % self.p, self.p, self.ambient)

    def intersection_dim(self, other: "Subspace") -> int:
        if (self.p, self.ambient) != (other.p, other.ambient):
            raise ValueError("subspaces live in different ambient spaces")
        joint = rank(np.vstack([self.matrix(), other.matrix()]), self.p)
        return self.dim + other.dim - joint

    def is_isotropic(self) -> bool:
        n = self.ambient // 2
        M = self.matrix()
        return not np.any((M @ _form(n) @ M.T) % self.p)


def matrix_to_json(M, p: int) -> str:
    return json.dumps({"p": int(p), "rows": asmat(M, p).tolist()})


def matrix_from_json(text: str) -> tuple[np.ndarray, int]:
    obj = json.loads(text)
    p = check_prime(obj["p"])
    return asmat(obj["rows"], p), p
