"""
Singer and Zsigmondy cycles of Sp(2n, p) and their Clifford lifts.

The Singer cycle is multiplication by an element of norm 1 and order q + 1
in F_{q^2}, q = p^n, viewed as an F_p-linear map preserving the alternating
form Tr(delta * x * y^q) and then moved to the standard form J.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd

import numpy as np

from . import fp
from .clifford import CliffordLabel, clifford_order, sp_order
from .groups import LabelGroup, batch_orders_equal, cyclic, enumerate_sp
from .numtheory import euler_phi, prime_divisors, zsigmondy_primes
from .report import Report
from .weyl import TOL_NUM, cluster_eigenvalues, eigenvalues, phase_modulus


class NoZsigmondyPrime(ValueError):
    """p^{2n} - 1 has no Zsigmondy prime."""


# finite field model -------------------------------------------------------

def companion(coeffs, p: int) -> np.ndarray:
    """Companion matrix of the monic x^m + c_{m-1} x^{m-1} + ... + c_0 (coeffs = c_0..c_{m-1})."""
    m = len(coeffs)
    C = np.zeros((m, m), dtype=np.int64)
    C[1:, :-1] = np.eye(m - 1, dtype=np.int64)
    C[:, -1] = -np.asarray(coeffs)
    return C % p


@lru_cache(maxsize=None)
def primitive_polynomial(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically first primitive polynomial of degree m (low coefficients first)."""
    order = p**m - 1
    eye = np.eye(m, dtype=np.int64)
    for coeffs in product(range(p), repeat=m):
        if coeffs[0] == 0:
            continue
        C = companion(coeffs, p)
        if not np.array_equal(fp.matrix_power(C, order, p), eye):
            continue
        if all(not np.array_equal(fp.matrix_power(C, order // r, p), eye) for r in prime_divisors(order)):
            return coeffs
    raise ValueError("no primitive polynomial found")


def symplectic_basis(G: np.ndarray, p: int) -> np.ndarray:
    """Columns P with P^T G P = J for a nondegenerate alternating Gram matrix G."""
    m = G.shape[0]
    n = m // 2
    rest = [np.eye(m, dtype=np.int64)[i] for i in range(m)]
    us, ws = [], []
    B = lambda a, b: int(a @ G @ b) % p  # noqa: E731
    while rest:
        u = rest.pop(0)
        k = next(i for i, v in enumerate(rest) if B(u, v))
        w = rest.pop(k)
        # want B(u, w) = -1, as for (e_j, e_{n+j}) under J
        w = (w * (-pow(B(u, w), -1, p))) % p
        new_rest = []
        for v in rest:
            # remove the components along u and w
            v = (v + B(v, w) * u - B(v, u) * w) % p
            new_rest.append(v)
        rest = [v for v in new_rest if v.any()]
        # keep a spanning set of the complement
        if rest:
            R, piv = fp.rref(np.array(rest), p)
            rest = [r for r in R[: len(piv)]]
        us.append(u)
        ws.append(w)
    P = np.array(us + ws).T % p
    J = fp.symplectic_form(n, p)
    if not np.array_equal((P.T @ G @ P) % p, J):
        raise RuntimeError("symplectic Gram-Schmidt failed")
    return P


@lru_cache(maxsize=None)
def _singer_cycle(p: int, n: int) -> bytes:
    m = 2 * n
    q = p**n
    C = companion(primitive_polynomial(p, m), p)
    full = q * q - 1
    powers = [np.eye(m, dtype=np.int64)]
    for _ in range(full - 1):
        powers.append((powers[-1] @ C) % p)
    tr = np.array([int(np.trace(A)) % p for A in powers])
    e_delta = 0 if p == 2 else (q + 1) // 2
    # Gram matrix of B(x^i, x^j) = Tr(delta x^i x^{jq})
    G = np.array([[tr[(e_delta + i + j * q) % full] for j in range(m)] for i in range(m)])
    P = symplectic_basis(G, p)
    M = powers[q - 1]  # multiplication by x^{q-1}, norm 1, order q + 1
    F = (fp.inverse(P, p) @ M @ P) % p
    return F.tobytes()


def singer_cycle(p: int, n: int) -> np.ndarray:
    fp.check_prime(p)
    if p**n > 16:
        raise ValueError("Singer construction limited to p^n <= 16")
    m = 2 * n
    F = np.frombuffer(_singer_cycle(p, n), dtype=np.int64).reshape(m, m).copy()
    return F


def singer_unitary(p: int, n: int) -> CliffordLabel:
    return CliffordLabel.from_symplectic(singer_cycle(p, n), p, n)


def zsigmondy_prime(p: int, n: int) -> int:
    res = zsigmondy_primes(p, 2 * n)
    if not res.primes:
        raise NoZsigmondyPrime(f"{p}^{2 * n} - 1 has no Zsigmondy prime")
    return max(res.primes)


def zsigmondy_unitary(p: int, n: int) -> CliffordLabel:
    r = zsigmondy_prime(p, n)
    q = p**n
    return singer_unitary(p, n) ** ((q + 1) // r)


def is_irreducible(F, p: int) -> bool:
    return not fp.has_invariant_subspace(F, p)


# centralisers and normalisers of irreducible cyclic groups ------------------

def intertwiners(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Basis of {X : X A = B X} as a stack of matrices."""
    m = A.shape[0]
    eye = np.eye(m, dtype=np.int64)
    # row-major vec: vec(X A) = (I kron A^T) vec X, vec(B X) = (B kron I) vec X
    M = (np.kron(eye, A.T) - np.kron(B, eye)) % p
    return fp.nullspace(M, p).reshape(-1, m, m)


def _span_all(basis: np.ndarray, p: int, limit: int = 200_000) -> np.ndarray:
    k = len(basis)
    if p**k > limit:
        raise ValueError("solution space too large to enumerate; generator is not irreducible")
    coeffs = fp.all_vectors(p, k)
    return np.einsum("ck,kij->cij", coeffs, basis) % p


def cyclic_normalizer(g: CliffordLabel, extended: bool = False, centralizer: bool = False) -> LabelGroup:
    """Normaliser (or centraliser) of <g> in the Clifford group, by linear algebra.

    Needs the induced map of g to be irreducible, so that every solution space
    of X S = S^k X is small.
    """
    p, n = g.p, g.n
    N = phase_modulus(p)
    J = fp.symplectic_form(n, p)
    order = g.order()
    powers = [CliffordLabel.identity(p, n)]
    for _ in range(order - 1):
        powers.append(powers[-1] * g)
    V = fp.all_vectors(p, 2 * n)
    ks = [1] if centralizer else [k for k in range(1, order) if gcd(k, order) == 1]
    signs = (1, -1) if extended else (1,)
    found = []
    for k in ks:
        target = powers[k]
        sols = _span_all(intertwiners(g.F, target.F, p), p)
        for X in sols:
            if fp.rank(X, p) < 2 * n:
                continue
            scale = (X.T @ J @ X) % p
            for eps in signs:
                if not np.array_equal(scale, (eps * J) % p):
                    continue
                V0 = CliffordLabel.from_symplectic(X, p, n, eps)
                h = g.conj_by(V0)
                # D_nu h D_nu^-1 has phases c_h(mu) + <nu, (F_h - 1) mu>
                diff = (V @ (h.F - np.eye(2 * n, dtype=np.int64)).T) % p
                sym = (V @ J @ diff.T) % p * (N // p)
                ok = np.all((h.phases[None, :] + sym) % N == target.phases[None, :], axis=1)
                for idx in np.nonzero(ok)[0]:
                    found.append(CliffordLabel.displacement(V[idx], p, n) * V0)
    return LabelGroup(list(dict.fromkeys(found)))


def cyclic_centralizer(g: CliffordLabel, extended: bool = False) -> LabelGroup:
    return cyclic_normalizer(g, extended=extended, centralizer=True)


@lru_cache(maxsize=None)
def _sp_elements(p: int, n: int) -> np.ndarray:
    return enumerate_sp(p, n)


def count_sp_elements_of_order(p: int, n: int, order: int, chunk: int = 100_000) -> int:
    S = _sp_elements(p, n)
    total = 0
    for i in range(0, len(S), chunk):
        total += int(batch_orders_equal(S[i : i + chunk], order, p).sum())
    return total


def _conjugacy_checks(report: Report, g: CliffordLabel, label: str, sp_normalizer_order: int):
    """All cyclic subgroups of Sp(2n, p) of the order of g's image are conjugate, and so are the lifts."""
    p, n = g.p, g.n
    r = fp.matrix_order(g.F, p)
    count = count_sp_elements_of_order(p, n, r)
    n_sub = count // euler_phi(r)
    orbit = sp_order(p, n) // sp_normalizer_order
    # all order-r elements here are irreducible, so these are the subgroups in question
    report.add(
        f"{label}: cyclic subgroups of order {r} in Sp form one conjugacy class",
        n_sub == orbit,
        f"{n_sub} subgroups, orbit of one has {orbit}",
    )
    V = fp.all_vectors(p, 2 * n)
    lifts = {(CliffordLabel.displacement(v, p, n) * g).key() for v in V}
    conj = {g.conj_by(CliffordLabel.displacement(v, p, n)).key() for v in V}
    report.add(f"{label}: all q^2 lifts conjugate under displacements", lifts == conj, f"{len(conj)} lifts")


def _exhaustive_clifford(p: int, n: int) -> LabelGroup | None:
    if clifford_order(p, n) > 20000:
        return None
    from .clifford import clifford_generators

    return LabelGroup.generate(clifford_generators(p, n))


def verify_singer_lemma(p: int, n: int, conjugacy: bool | None = None, tol: float = TOL_NUM) -> Report:
    q = p**n
    rep = Report(f"Singer lemma, p={p}, n={n}")
    if conjugacy is None:
        conjugacy = q <= 9
    S = singer_cycle(p, n)
    V = singer_unitary(p, n)
    rep.data["singer_cycle"] = S.tolist()

    # 1. Singer unitary <=> Singer cycle
    orderF = fp.matrix_order(S, p)
    irr = is_irreducible(S, p)
    one_minus = fp.rank((np.eye(2 * n, dtype=np.int64) - S) % p, p) == 2 * n
    rep.add("cycle: order q+1, irreducible, 1-F invertible", orderF == q + 1 and irr and one_minus,
            f"order {orderF}, irreducible={irr}, 1-F invertible={one_minus}")
    G = cyclic(V)
    no_disp = not any(x.is_displacement() for x in G.elements[1:])
    rep.add("unitary: label order q+1, no nontrivial power is a displacement", G.order == q + 1 and no_disp,
            f"order {G.order}")
    lift_orders = {(CliffordLabel.displacement(v, p, n) * V).order() for v in fp.all_vectors(p, 2 * n)}
    rep.add("every lift D_mu U_F of the Singer cycle is a Singer unitary", lift_orders == {q + 1}, str(sorted(lift_orders)))
    full = _exhaustive_clifford(p, n)
    if full is not None:
        bad = [x for x in full if x.order() == q + 1 and not (fp.matrix_order(x.F, p) == q + 1 and is_irreducible(x.F, p))]
        bad += [x for x in full if fp.matrix_order(x.F, p) == q + 1 and x.order() != q + 1]
        rep.add("converse over the whole Clifford group", not bad, f"{len(full)} elements scanned")
    else:
        rep.skip("converse over the whole Clifford group", "group too large to scan")

    # 3, 4. centraliser and normaliser
    C = cyclic_centralizer(V)
    rep.add("centralizer of the Singer unitary group is itself", C.key() == G.key(), f"order {C.order}")
    Nn = cyclic_normalizer(V)
    rep.add("normalizer order 2n(q+1)", Nn.order == 2 * n * (q + 1), f"{Nn.order} vs {2 * n * (q + 1)}")
    Ne = cyclic_normalizer(V, extended=True)
    rep.data["normalizer_order"] = Nn.order
    rep.data["extended_normalizer_order"] = Ne.order
    if full is not None:
        rep.add("centralizer/normalizer agree with exhaustive scan",
                full.centralizer(G).key() == C.key() and full.normalizer(G).key() == Nn.key())

    # 2. conjugacy
    if conjugacy:
        _conjugacy_checks(rep, V, "Singer", Nn.order)
    else:
        rep.skip("Singer subgroups conjugate", "restricted to q <= 9")

    # 5, 6. traces and spectrum
    U = V.matrix()[0]
    traces = []
    W = np.eye(q, dtype=complex)
    for _ in range(q):
        W = W @ U
        traces.append(abs(np.trace(W)) ** 2)
    dev = max(abs(t - 1) for t in traces)
    rep.add("|tr U|^2 = 1 on nontrivial elements", dev <= tol, f"max deviation {dev:.2e}")
    clusters = cluster_eigenvalues(eigenvalues(U))
    rep.add("eigenvalues nondegenerate", all(m == 1 for _, m in clusters), f"{len(clusters)} distinct of {q}")
    return rep


def verify_zsigmondy_lemma(p: int, n: int, conjugacy: bool | None = None, tol: float = TOL_NUM) -> Report:
    q = p**n
    r = zsigmondy_prime(p, n)  # raises NoZsigmondyPrime
    rep = Report(f"Zsigmondy lemma, p={p}, n={n}, r={r}")
    if conjugacy is None:
        conjugacy = q <= 9
    U = zsigmondy_unitary(p, n)
    G = cyclic(U)
    rep.add("Zsigmondy unitary has order r", G.order == r, f"order {G.order}")
    rep.add("induced map irreducible", is_irreducible(U.F, p))
    C = cyclic_centralizer(U)
    singer_like = C.order == q + 1 and any(x.order() == q + 1 for x in C) and G.issubgroup(C)
    rep.add("centralizer is a Singer unitary group", singer_like, f"order {C.order}")
    if conjugacy:
        Nz = cyclic_normalizer(U)
        _conjugacy_checks(rep, U, "Zsigmondy", Nz.order)
    else:
        rep.skip("Zsigmondy subgroups conjugate", "restricted to q <= 9")
    M = U.matrix()[0]
    W = np.eye(q, dtype=complex)
    dev = 0.0
    for _ in range(r - 1):
        W = W @ M
        dev = max(dev, abs(abs(np.trace(W)) ** 2 - 1))
    rep.add("|tr U|^2 = 1", dev <= tol, f"max deviation {dev:.2e}")
    return rep
