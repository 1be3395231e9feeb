"""
Trace-sum bounds and irreducibility tests.

For a group G of unitaries modulo phases, (1/|G|) sum |tr V|^2 is the sum of
squared multiplicities of its inequivalent irreducible components, so it is 1
exactly when G is irreducible.  The bounds below are lower estimates of that
sum for a hypothetical sharply covariant group; a bound that overshoots what
the group can have is a contradiction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .groups import LabelGroup
from .numtheory import factorize
from .weyl import TOL_NUM, dagger, max_abs

VARIANTS = ("basic", "strengthened", "antiunitary", "antiunitary_strengthened", "subgroup")


@dataclass(frozen=True)
class TraceBound:
    variant: str
    q: int
    n: int
    a: int
    value: Fraction  # the lower bound on the normalised trace sum
    allowed: Fraction  # what the trace sum must equal for a sharply covariant group
    fires: bool  # the bound contradicts sharp covariance
    saturated: bool

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "q": self.q,
            "n": self.n,
            "a": self.a,
            "value": str(self.value),
            "allowed": str(self.allowed),
            "fires": self.fires,
            "saturated": self.saturated,
        }


def _check_q(q: int, n: int) -> int:
    f = factorize(q)
    if len(f) != 1 or next(iter(f.values())) != n:
        raise ValueError(f"q = {q} is not p^{n} for a prime p")
    return next(iter(f))


def trace_bound_certificate(q: int, n: int, a: int = 1, variant: str = "strengthened",
                            h_order: int | None = None) -> TraceBound:
    """Exact value of one of the trace-sum lower bounds.

    basic:                    (q^2 + a q) / (q(q+1))           against 1
    strengthened:             (q^2 + q + (q - 2n)) / (q(q+1))  against 1
    antiunitary:              (2q^2 + a q) / (q(q+1))          against 2
    antiunitary_strengthened: (2q^2 + q + 2(q - 2n)) / (q(q+1)) against 2
    subgroup:                 (q^2 + q) / |H|, which the trace sum of H must
                              strictly exceed; it equals 1 or 2 when H has
                              index 1 or 2, so the bound always fires.

    ``a`` is the index of the centraliser of a Zsigmondy unitary in a Singer
    group and must divide q + 1.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    _check_q(q, n)
    if a < 1 or (q + 1) % a:
        raise ValueError(f"a = {a} does not divide q + 1 = {q + 1}")
    den = q * (q + 1)
    if variant == "basic":
        value, allowed = Fraction(q * q + a * q, den), Fraction(1)
    elif variant == "strengthened":
        value, allowed = Fraction(q * q + q + (q - 2 * n), den), Fraction(1)
    elif variant == "antiunitary":
        value, allowed = Fraction(2 * q * q + a * q, den), Fraction(2)
    elif variant == "antiunitary_strengthened":
        value, allowed = Fraction(2 * q * q + q + 2 * (q - 2 * n), den), Fraction(2)
    else:
        if h_order is None or den % h_order or den // h_order not in (1, 2):
            raise ValueError("subgroup variant needs |H| = q(q+1) or q(q+1)/2")
        value = Fraction(den, h_order)
        allowed = Fraction(den // h_order)  # trace sum of H when irreducible or two inequivalent parts
        # strict inequality: trace sum > value is needed, but the trace sum is exactly `allowed`
        return TraceBound(variant, q, n, a, value, allowed, value >= allowed, False)
    return TraceBound(variant, q, n, a, value, allowed, value > allowed, value == allowed)


# trace sums and invariant subspaces -----------------------------------------

@dataclass(frozen=True)
class CharacterSum:
    value: float
    rounded: int
    residual: float
    unitary_order: int

    @property
    def irreducible(self) -> bool:
        return self.rounded == 1

    def to_dict(self) -> dict:
        return {"value": self.value, "rounded": self.rounded, "residual": self.residual,
                "unitary_order": self.unitary_order}


class CharacterSumError(ArithmeticError):
    """Trace sum too far from an integer."""


def unitary_matrices(G: LabelGroup) -> list[np.ndarray]:
    return [g.matrix()[0] for g in G if g.eps == 1]


def irreducibility_character_sum(G: LabelGroup, max_residual: float = 1e-4) -> CharacterSum:
    """(1/|H|) sum_{V in H} |tr V|^2 over the unitary part H of G."""
    mats = unitary_matrices(G)
    val = float(sum(abs(np.trace(U)) ** 2 for U in mats) / len(mats))
    r = int(round(val))
    res = abs(val - r)
    if res >= max_residual:
        raise CharacterSumError(f"trace sum {val} is not close to an integer")
    return CharacterSum(val, r, res, len(mats))


def commutant(mats: list[np.ndarray], tol: float = 1e-8) -> np.ndarray:
    """Basis (k, d, d) of matrices commuting with every matrix in ``mats``."""
    d = mats[0].shape[0]
    eye = np.eye(d)
    # row-major vec: vec(U X) = (U kron 1) vec X, vec(X U) = (1 kron U^T) vec X;
    # the common null space is that of the summed normal equations
    M = np.zeros((d * d, d * d), dtype=complex)
    for U in mats:
        A = np.kron(U, eye) - np.kron(eye, U.T)
        M += dagger(A) @ A
    w, V = scipy.linalg.eigh(M)
    ns = V[:, w < tol * len(mats)]
    return ns.T.reshape(-1, d, d)


def invariant_projectors(mats: list[np.ndarray], seed: int = 0x5EED, tol: float = 1e-6) -> list[np.ndarray]:
    """Spectral projectors of a generic Hermitian element of the commutant.

    For a group whose irreducible components are pairwise inequivalent these
    are the projectors onto the components.
    """
    C = commutant(mats)
    rng = np.random.default_rng(seed)
    H = np.zeros(C.shape[1:], dtype=complex)
    for X in C:
        c, c2 = rng.normal(size=2)
        H += c * (X + dagger(X)) + 1j * c2 * (X - dagger(X))
    w, V = np.linalg.eigh(H)
    out = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > tol:
            B = V[:, start:i]
            out.append(B @ dagger(B))
            start = i
    return out


@dataclass
class Reducibility:
    commutant_dim: int
    ranks: list[int]
    antiunitary_preserves: bool | None  # None when the group is unitary
    projectors: list[np.ndarray]

    @property
    def unitary_part_irreducible(self) -> bool:
        return self.commutant_dim == 1

    @property
    def irreducible(self) -> bool:
        """Irreducibility of the whole group, antiunitary elements included."""
        if self.commutant_dim == 1:
            return True
        if self.antiunitary_preserves is None:
            return False
        return not self.antiunitary_preserves and len(self.projectors) == 2


def reducibility(G: LabelGroup, tol: float = TOL_NUM * 1e3) -> Reducibility:
    """Invariant projectors of the unitary part, and whether the antiunitary coset keeps them.

    An antiunitary A = V K acts on a projector by P -> V conj(P) V^dag.
    """
    mats = unitary_matrices(G)
    C = commutant(mats)
    P = invariant_projectors(mats)
    ranks = [int(round(np.trace(x).real)) for x in P]
    anti = [g for g in G if g.eps == -1]
    keeps = None
    if anti:
        keeps = True
        for g in anti[:4]:
            V, _ = g.matrix()
            for x in P:
                if max_abs(V @ x.conj() @ dagger(V) - x) > tol:
                    keeps = False
    return Reducibility(len(C), ranks, keeps, P)
