"""
Extended Clifford group modulo phases, represented exactly.

An element A (unitary, or antiunitary with eps = -1) is stored by its action
on displacement operators,

    A D_mu A^{-1} = w_N^{c(mu)} D_{F mu},     N = phase_modulus(p),

i.e. by the induced map F (symplectic, or antisymplectic when eps = -1) and
the phase table c over all p^{2n} labels.  Two elements agree modulo phases
exactly when (F, c, eps) agree, and composition is

    (a b): F = F_a F_b,  c(mu) = eps_a c_b(mu) + c_a(F_b mu).

Complex conjugation K in the computational basis has F = diag(1_n, -1_n)
and c = 0.
"""

from __future__ import annotations

import json
from functools import lru_cache

import numpy as np

from . import fp
from .weyl import (
    TOL_NUM,
    all_displacements,
    dagger,
    max_abs,
    phase_modulus,
    phased_mul,
    product_phase,
    root_of_unity,
)


class SynthesisError(RuntimeError):
    """A label could not be realised as a matrix (internal defect)."""


def conjugation_matrix(n: int, p: int) -> np.ndarray:
    K = np.eye(2 * n, dtype=np.int64)
    K[n:, n:] *= -1
    return K % p


class CliffordLabel:
    """Extended Clifford element modulo phases."""

    __slots__ = ("p", "n", "F", "perm", "phases", "eps", "_key", "_hash")

    def __init__(self, p: int, n: int, F, phases, eps: int = 1, perm=None):
        self.p, self.n = p, n
        self.F = fp.asmat(F, p)
        self.phases = np.asarray(phases, dtype=np.int64) % phase_modulus(p)
        self.eps = int(eps)
        self.perm = fp.linear_permutation(self.F, p) if perm is None else perm
        self._key = None
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def identity(cls, p: int, n: int) -> "CliffordLabel":
        return cls(p, n, np.eye(2 * n, dtype=np.int64), np.zeros(p ** (2 * n), dtype=np.int64))

    @classmethod
    def displacement(cls, mu, p: int, n: int | None = None) -> "CliffordLabel":
        mu = np.asarray(mu, dtype=np.int64) % p
        n = len(mu) // 2 if n is None else n
        V = fp.all_vectors(p, 2 * n)
        # D_mu D_nu D_mu^dag = w^{<mu, nu>} D_nu
        J = fp.symplectic_form(n)
        c = (V @ (J.T @ mu)) % p * (phase_modulus(p) // p)
        return cls(p, n, np.eye(2 * n, dtype=np.int64), c)

    @classmethod
    def conjugation(cls, p: int, n: int) -> "CliffordLabel":
        return cls(p, n, conjugation_matrix(n, p), np.zeros(p ** (2 * n), dtype=np.int64), eps=-1)

    @classmethod
    def from_symplectic(cls, F, p: int, n: int | None = None, eps: int = 1) -> "CliffordLabel":
        """Standard lift U_F (times K when eps = -1) of a (anti)symplectic map."""
        F = fp.asmat(F, p)
        n = F.shape[0] // 2 if n is None else n
        if eps == -1:
            G = (F @ conjugation_matrix(n, p)) % p
            return cls.from_symplectic(G, p, n) * cls.conjugation(p, n)
        if not fp.is_symplectic(F, p):
            raise ValueError("matrix is not symplectic")
        return cls(p, n, F, _standard_phases(F.tobytes(), p, n))

    @classmethod
    def from_label(cls, F, mu, eps: int, p: int) -> "CliffordLabel":
        """The element D_mu U_F (K)."""
        F = fp.asmat(F, p)
        n = F.shape[0] // 2
        return cls.displacement(mu, p, n) * cls.from_symplectic(F, p, n, eps)

    @classmethod
    def from_matrix(cls, U, p: int, n: int, antiunitary: bool = False, tol: float = 1e-6):
        """Read the label off a unitary U (the antiunitary U K when ``antiunitary``)."""
        U = np.asarray(U, dtype=complex)
        d = p**n
        D = all_displacements(p, n)
        N = phase_modulus(p)
        if antiunitary:
            src = D.conj()
        else:
            src = D
        conj = np.einsum("ij,kjl,ml->kim", U, src, U.conj())
        overlaps = np.einsum("aij,bij->ab", D.conj(), conj) / d  # tr(D_a^dag A D_b A^-1)/d
        perm = np.argmax(np.abs(overlaps), axis=0)
        best = overlaps[perm, np.arange(len(D))]
        if np.max(np.abs(np.abs(best) - 1)) > tol:
            raise ValueError("matrix does not normalise the Heisenberg-Weyl group")
        k = np.angle(best) * N / (2 * np.pi)
        kr = np.rint(k)
        if np.max(np.abs(k - kr)) > tol * N:
            raise ValueError("conjugation phases are not N-th roots of unity")
        V = fp.all_vectors(p, 2 * n)
        F = V[perm[fp.vector_indices(np.eye(2 * n, dtype=np.int64), p)]].T
        lab = cls(p, n, F, kr.astype(np.int64), eps=-1 if antiunitary else 1)
        if not np.array_equal(lab.perm, perm):
            raise ValueError("induced label map is not linear")
        return lab

    # group law -------------------------------------------------------------
    def __mul__(self, other: "CliffordLabel") -> "CliffordLabel":
        if (self.p, self.n) != (other.p, other.n):
            raise ValueError("labels from different (p, n) contexts")
        return CliffordLabel(
            self.p,
            self.n,
            (self.F @ other.F) % self.p,
            self.eps * other.phases + self.phases[other.perm],
            self.eps * other.eps,
            perm=self.perm[other.perm],
        )

    compose = __mul__

    def inverse(self) -> "CliffordLabel":
        inv = np.argsort(self.perm)
        return CliffordLabel(
            self.p, self.n, fp.inverse(self.F, self.p), -self.eps * self.phases[inv], self.eps, perm=inv
        )

    def __pow__(self, e: int) -> "CliffordLabel":
        if e < 0:
            return self.inverse() ** (-e)
        out = CliffordLabel.identity(self.p, self.n)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def order(self, limit: int = 100000) -> int:
        x = self
        for k in range(1, limit + 1):
            if x.is_identity():
                return k
            x = x * self
        raise ValueError("element order exceeds limit")

    def conj_by(self, g: "CliffordLabel") -> "CliffordLabel":
        return g * self * g.inverse()

    # predicates ----------------------------------------------------------
    @property
    def q(self) -> int:
        return self.p**self.n

    @property
    def antiunitary(self) -> bool:
        return self.eps == -1

    def is_identity(self) -> bool:
        return self.eps == 1 and not self.phases.any() and np.array_equal(self.F, np.eye(2 * self.n))

    def is_displacement(self) -> bool:
        return self.eps == 1 and np.array_equal(self.F, np.eye(2 * self.n))

    def key(self) -> bytes:
        if self._key is None:
            self._key = (
                bytes([self.eps & 0xFF])
                + self.F.astype(np.uint8).tobytes()
                + self.phases.astype(np.uint8).tobytes()
            )
        return self._key

    def __eq__(self, other):
        return isinstance(other, CliffordLabel) and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"CliffordLabel(p={self.p}, n={self.n}, F={self.F.tolist()}, mu={self.mu.tolist()}, eps={self.eps})"

    # coordinates ----------------------------------------------------------
    @property
    def mu(self) -> np.ndarray:
        """Displacement part: self = D_mu * standard lift of (F, eps)."""
        p, n = self.p, self.n
        std = CliffordLabel.from_symplectic(self.F, p, n, self.eps)
        delta = (self.phases - std.phases) % phase_modulus(p)
        if np.any(delta % (phase_modulus(p) // p)):
            raise SynthesisError("phase table inconsistent with its standard lift")
        delta //= phase_modulus(p) // p
        Finv = fp.inverse(self.F, p)
        E = np.eye(2 * n, dtype=np.int64)
        # delta(F^{-1} e_k) = <mu, e_k>, and <mu, e_k> = mu_{n+k} (k < n), -mu_{k-n} (k >= n)
        vals = delta[fp.vector_indices((Finv @ E).T, p)]
        mu = np.empty(2 * n, dtype=np.int64)
        mu[n:] = vals[:n]
        mu[:n] = -vals[n:]
        return mu % p

    def to_json(self) -> str:
        return json.dumps({"p": self.p, "n": self.n, "F": self.F.tolist(), "mu": self.mu.tolist(), "eps": self.eps})

    @classmethod
    def from_json(cls, text: str) -> "CliffordLabel":
        obj = json.loads(text)
        return cls.from_label(obj["F"], obj["mu"], obj["eps"], obj["p"])

    # matrices --------------------------------------------------------------
    def matrix(self) -> tuple[np.ndarray, bool]:
        """A unitary V with self = V (unitary) or self = V K (antiunitary); the flag says which."""
        if self.eps == -1:
            V = self * CliffordLabel.conjugation(self.p, self.n)
            return V.matrix()[0], True
        return synthesize_unitary(self), False


@lru_cache(maxsize=4096)
def _standard_phases(Fbytes: bytes, p: int, n: int) -> np.ndarray:
    m = 2 * n
    F = np.frombuffer(Fbytes, dtype=np.int64).reshape(m, m)
    N = phase_modulus(p)
    V = fp.all_vectors(p, m)
    # images W_k = w_N^{s_k} D_{F e_k}, with s_k making W_k of order p
    powers = []
    for k in range(m):
        v = F[:, k]
        s = 0
        if p == 2:
            s = int(product_phase(v, v, p)) // 2
        Wk = (s, v)
        pw = [(0, np.zeros(m, dtype=np.int64))]
        for _ in range(p - 1):
            pw.append(phased_mul(pw[-1], Wk, p))
        powers.append(pw)
    # D_mu = D_{e_1}^{mu_1} ... D_{e_2n}^{mu_2n} exactly, so conjugate factor by factor
    acc_k = np.zeros(len(V), dtype=np.int64)
    acc_v = np.zeros((len(V), m), dtype=np.int64)
    for k in range(m):
        ks = np.array([pw[0] for pw in powers[k]])[V[:, k]]
        vs = np.array([pw[1] for pw in powers[k]])[V[:, k]]
        acc_k, acc_v = phased_mul((acc_k, acc_v), (ks, vs), p)
    if not np.array_equal(acc_v % p, (V @ F.T) % p):
        raise SynthesisError("ordered product did not reproduce F")
    out = acc_k % N
    out.setflags(write=False)
    return out


def synthesize_unitary(label: CliffordLabel, tol: float = TOL_NUM) -> np.ndarray:
    """Unitary with the given conjugation action, by twirling a probe matrix.

    sum_mu (U D_mu U^dag) R D_mu^dag = q tr(U^dag R) U for any R, so the sum
    over the known images reproduces U whenever tr(U^dag R) != 0.
    """
    if label.eps != 1:
        raise ValueError("synthesize_unitary needs a unitary label")
    p, n = label.p, label.n
    d = p**n
    if d > 16:
        raise ValueError("matrix synthesis limited to d <= 16")
    D = all_displacements(p, n)
    images = root_of_unity(phase_modulus(p), label.phases)[:, None, None] * D[label.perm]
    Ddag = np.conj(np.transpose(D, (0, 2, 1)))
    U = None
    for i in range(d):
        for j in range(d):
            M = np.einsum("kab,kc->ac", images[:, :, [i]], Ddag[:, j, :])
            nrm = np.sqrt(abs(np.vdot(M[:, 0], M[:, 0])))
            if nrm > 1e-6 * d:
                U = M / nrm
                break
        if U is not None:
            break
    if U is None:
        raise SynthesisError("twirl vanished for every probe")
    flat = U.ravel()
    k = np.argmax(np.abs(flat) > 1e-9)
    U = U * (abs(flat[k]) / flat[k])
    # verify on the generators
    for k in range(2 * n):
        mu = fp.vector_index(np.eye(2 * n, dtype=np.int64)[k], p)
        lhs = U @ D[mu] @ dagger(U)
        if max_abs(lhs - images[mu]) > tol * 10:
            raise SynthesisError("synthesised matrix has the wrong conjugation action")
    if max_abs(dagger(U) @ U - np.eye(d)) > tol * 10:
        raise SynthesisError("synthesised matrix is not unitary")
    return U


def synthesize_matrix(label: CliffordLabel) -> tuple[np.ndarray, bool]:
    return label.matrix()


def apply(label_matrix: tuple[np.ndarray, bool], psi: np.ndarray) -> np.ndarray:
    V, conj = label_matrix
    return V @ (np.conj(psi) if conj else psi)


def matrix_compose(a: tuple[np.ndarray, bool], b: tuple[np.ndarray, bool]) -> tuple[np.ndarray, bool]:
    """(V_a K^x)(V_b K^y) as (V, flag)."""
    Va, ca = a
    Vb, cb = b
    return Va @ (np.conj(Vb) if ca else Vb), ca != cb


# standard symplectic generators ------------------------------------------

def fourier_symplectic(n: int, j: int, p: int) -> np.ndarray:
    """x_j -> z_j, z_j -> -x_j (X_j -> Z_j under conjugation)."""
    F = np.eye(2 * n, dtype=np.int64)
    F[j, j] = F[n + j, n + j] = 0
    F[n + j, j] = 1
    F[j, n + j] = -1
    return F % p


def phase_symplectic(n: int, j: int, p: int) -> np.ndarray:
    """x_j -> x_j + z_j (X_j -> X_j Z_j up to phase)."""
    F = np.eye(2 * n, dtype=np.int64)
    F[n + j, j] = 1
    return F % p


def cnot_symplectic(n: int, j: int, k: int, p: int) -> np.ndarray:
    """block diag(A, A^{-T}) with A = 1 + E_{kj}."""
    A = np.eye(n, dtype=np.int64)
    A[k, j] = 1
    F = np.zeros((2 * n, 2 * n), dtype=np.int64)
    F[:n, :n] = A
    F[n:, n:] = fp.inverse(A, p).T
    return F % p


def sp_generators(p: int, n: int) -> list[np.ndarray]:
    gens = []
    for j in range(n):
        gens.append(fourier_symplectic(n, j, p))
        gens.append(phase_symplectic(n, j, p))
    for j in range(n):
        for k in range(n):
            if j != k:
                gens.append(cnot_symplectic(n, j, k, p))
    return gens


def clifford_generators(p: int, n: int, antiunitary: bool = False) -> list[CliffordLabel]:
    gens = [CliffordLabel.from_symplectic(F, p, n) for F in sp_generators(p, n)]
    gens += [CliffordLabel.displacement(e, p, n) for e in np.eye(2 * n, dtype=np.int64)]
    if antiunitary:
        gens.append(CliffordLabel.conjugation(p, n))
    return gens


def sp_order(p: int, n: int) -> int:
    out = p ** (n * n)
    for i in range(1, n + 1):
        out *= p ** (2 * i) - 1
    return out


def clifford_order(p: int, n: int) -> int:
    return p ** (2 * n) * sp_order(p, n)
