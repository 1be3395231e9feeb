"""
Stabilizer bases and stabilizer MUBs as concrete vectors.

Each basis state is also given an exact label: its eigenvalue exponents
chi(mu) (D_mu psi = w_N^{chi(mu)} psi) over the vectors mu of its
Lagrangian.  Group actions on states are computed on these labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import fp
from .spreads import Lagrangian, Spread
from .weyl import (
    TOL_MUB,
    TOL_NUM,
    all_displacements,
    dagger,
    displacement_matrix,
    max_abs,
    phase_modulus,
)

SEED = 0x5EED
MIN_GAP = 1e-6


class DegenerateBasisError(RuntimeError):
    """Joint eigenspaces did not split into lines."""


@dataclass(frozen=True, eq=False)
class StabilizerBasis:
    lagrangian: Lagrangian
    vectors: np.ndarray  # columns
    characters: np.ndarray  # (d, q) eigenvalue exponents over lagrangian.member_indices()

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    def projectors(self) -> np.ndarray:
        V = self.vectors
        return np.einsum("ik,jk->kij", V, V.conj())

    def is_orthonormal(self, tol: float = TOL_NUM) -> bool:
        return max_abs(dagger(self.vectors) @ self.vectors - np.eye(self.d)) <= tol

    def is_stabilized(self, tol: float = TOL_NUM) -> bool:
        p = self.lagrangian.p
        D = all_displacements(p, self.lagrangian.n)
        for mu in self.lagrangian.member_indices():
            W = D[mu] @ self.vectors
            lam = np.sum(self.vectors.conj() * W, axis=0)
            if max_abs(W - self.vectors * lam) > tol:
                return False
        return True


def _split(mats: list[np.ndarray], rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    d = mats[0].shape[0]
    H = np.zeros((d, d), dtype=complex)
    for M in mats:
        c, c2 = rng.normal(size=2)
        H += c * (M + dagger(M)) + 1j * c2 * (M - dagger(M))
    return np.linalg.eigh(H)


def set_seed(seed: int):
    """Seed for the random Hermitian combinations that split joint eigenspaces."""
    global SEED
    if seed != SEED:
        SEED = int(seed)
        _basis_cached.cache_clear()


@lru_cache(maxsize=None)
def _basis_cached(p: int, rows) -> StabilizerBasis:
    n = len(rows)
    L = Lagrangian(p, 2 * n, rows)
    mats = [displacement_matrix(r, p, n) for r in L.matrix()]
    rng = np.random.default_rng(SEED)
    for _ in range(20):
        w, V = _split(mats, rng)
        if np.min(np.diff(w)) >= MIN_GAP:
            break
    else:
        raise DegenerateBasisError("could not separate the joint eigenspaces")
    D = all_displacements(p, n)
    members = L.member_indices()
    N = phase_modulus(p)
    # <v| D_mu |v> = w_N^{chi}
    expect = np.einsum("ik,mij,jk->km", V.conj(), D[members], V)
    chi = np.rint(np.angle(expect) * N / (2 * np.pi)).astype(np.int64) % N
    if max_abs(np.abs(expect) - 1) > 1e-8:
        raise DegenerateBasisError("basis vectors are not joint eigenvectors")
    V.setflags(write=False)
    chi.setflags(write=False)
    return StabilizerBasis(L, V, chi)


def stabilizer_basis(L: Lagrangian) -> StabilizerBasis:
    if L.p ** L.n > 16:
        raise ValueError("stabilizer bases limited to d <= 16")
    return _basis_cached(L.p, L.rows)


def overlaps(B1: StabilizerBasis, B2: StabilizerBasis) -> np.ndarray:
    """|<b|c>|^2 for all pairs."""
    if B1.d != B2.d:
        raise ValueError("bases of different dimension")
    return np.abs(dagger(B1.vectors) @ B2.vectors) ** 2


def is_mutually_unbiased(B1: StabilizerBasis, B2: StabilizerBasis, tol: float = TOL_MUB) -> bool:
    return max_abs(overlaps(B1, B2) - 1 / B1.d) <= tol


@dataclass(frozen=True, eq=False)
class MUBSet:
    spread: Spread
    bases: tuple[StabilizerBasis, ...]

    @property
    def d(self) -> int:
        return self.bases[0].d

    def state_vectors(self) -> np.ndarray:
        """All q(q+1) states as columns, basis-major."""
        return np.hstack([B.vectors for B in self.bases])

    def max_bias(self) -> float:
        return max(max_abs(overlaps(a, b) - 1 / self.d) for a, b in combinations(self.bases, 2))

    def is_valid(self, tol: float = TOL_MUB) -> bool:
        return (
            all(B.is_orthonormal() and B.is_stabilized() for B in self.bases)
            and self.max_bias() <= tol
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.spread.p,
                "n": self.spread.n,
                "spread": [[list(r) for r in L.rows] for L in self.spread.members],
                "bases": [
                    [[[float(z.real), float(z.imag)] for z in col] for col in B.vectors.T] for B in self.bases
                ],
            }
        )


def build_mub(spread: Spread) -> MUBSet:
    bases = tuple(stabilizer_basis(L) for L in spread.members)
    return MUBSet(spread, bases)


def bloch_vectors(mub: MUBSet) -> np.ndarray:
    """Bloch vectors of the qubit MUB states (d = 2 only)."""
    if mub.d != 2:
        raise ValueError("Bloch vectors need d = 2")
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1, -1])
    psi = mub.state_vectors()
    return np.array([[np.real(v.conj() @ s @ v) for s in (sx, sy, sz)] for v in psi.T])


def check_mub_data(obj: dict, tol: float = TOL_MUB) -> tuple[bool, str]:
    """Validate a MUB JSON object: orthonormal bases that are pairwise unbiased."""
    try:
        bases = [np.array(b, dtype=float) for b in obj["bases"]]
        bases = [(b[..., 0] + 1j * b[..., 1]).T for b in bases]
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        return False, f"malformed MUB file: {exc}"
    if not bases:
        return False, "no bases"
    d = bases[0].shape[0]
    for k, B in enumerate(bases):
        if B.shape != (d, d):
            return False, f"basis {k} has shape {B.shape}"
        if max_abs(dagger(B) @ B - np.eye(d)) > tol:
            return False, f"basis {k} is not orthonormal"
    worst = 0.0
    for a, b in combinations(bases, 2):
        worst = max(worst, max_abs(np.abs(dagger(a) @ b) ** 2 - 1 / d))
    if worst > tol:
        return False, f"bases are not mutually unbiased (max deviation {worst:.2e})"
    return True, f"{len(bases)} bases in dimension {d}, max deviation {worst:.2e}"


def computational_lagrangian(p: int, n: int) -> Lagrangian:
    """The Z-type Lagrangian, whose stabilizer basis is the computational basis."""
    rows = np.zeros((n, 2 * n), dtype=np.int64)
    rows[:, n:] = np.eye(n, dtype=np.int64)
    return Lagrangian.span(rows, p, 2 * n)


def state_index_for(mub: MUBSet, psi: np.ndarray, tol: float = TOL_MUB) -> int:
    """Index of the MUB state equal to psi up to phase, or -1."""
    ov = np.abs(mub.state_vectors().conj().T @ psi) ** 2
    k = int(np.argmax(ov))
    return k if abs(ov[k] - 1) <= tol else -1


def lagrangian_vectors(L: Lagrangian) -> np.ndarray:
    return fp.all_vectors(L.p, 2 * L.n)[L.member_indices()]
