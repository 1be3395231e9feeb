"""
Per-dimension verification suites.

Each function returns a ``Report``; failures are report lines, never
exceptions.  ``verify_theorems`` strings all of them together.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import fp
from .certificates import irreducibility_character_sum, reducibility, trace_bound_certificate
from .clifford import CliffordLabel, clifford_generators
from .covariance import (
    INCONCLUSIVE,
    NOT_SHARP,
    SHARP,
    NotASymmetry,
    PermAction,
    SymmetryGroup,
    clifford_orbit_on_spreads,
    has_unitary_index2,
    is_fiducial_for_all,
    is_regular,
    regular_subgroup_search,
    sharp_search,
)
from .groups import LabelGroup, PermGroup, cyclic
from .mub import build_mub, computational_lagrangian
from .numtheory import zsigmondy_primes
from .report import Report
from .singer import (
    NoZsigmondyPrime,
    cyclic_normalizer,
    is_irreducible,
    singer_unitary,
    verify_singer_lemma,
    verify_zsigmondy_lemma,
    zsigmondy_prime,
    zsigmondy_unitary,
)
from .spreads import enumerate_lagrangians, enumerate_spreads, lagrangian_count, lagrangian_table
from .weyl import TOL_MUB, TOL_NUM, dagger, eigenvalues, equal_up_to_phase, max_abs

D8_BUDGET = 1800.0

# the order-20 group in dimension 4 and its antiunitary companion
U1 = 0.5 * np.array(
    [[1j, 1, 1j, -1], [1j, -1, 1j, 1], [1j, 1, -1j, 1], [1j, -1, -1j, -1]], dtype=complex
)
U2 = np.array([[0, 0, 0, 1j], [1j, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]])
U3_V = np.kron(SIGMA_Y, np.eye(2))  # U3 = U3_V K


def _cycle_type(perm) -> list[int]:
    perm = list(perm)
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        out.append(k)
    return sorted(out, reverse=True)


# order-20 group -------------------------------------------------------------

def verify_order20_group(tol: float = TOL_NUM) -> Report:
    """Checks on the order-20 group in dimension 4 generated by U1 and U2, and on U3."""
    rep = Report("order-20 sharply covariant group, d = 4")
    I4 = np.eye(4)
    rep.add("U1^5 = 1", max_abs(np.linalg.matrix_power(U1, 5) - I4) <= tol)
    rep.add("U2^4 = 1", max_abs(np.linalg.matrix_power(U2, 4) - I4) <= tol)
    rep.add("U2 U1 U2^dag = U1^2", max_abs(U2 @ U1 @ dagger(U2) - U1 @ U1) <= tol)
    rep.add("entries of U1 have modulus 1/2", max_abs(np.abs(U1) - 0.5) <= tol)

    g1 = CliffordLabel.from_matrix(U1, 2, 2)
    g2 = CliffordLabel.from_matrix(U2, 2, 2)
    g3 = CliffordLabel.from_matrix(U3_V, 2, 2, antiunitary=True)
    rep.add("U1 is a Singer unitary (order 5, irreducible cycle)", g1.order() == 5 and is_irreducible(g1.F, 2))
    # the MUB containing the computational basis that U1 and U2 preserve
    Z = lagrangian_table(2, 2).lookup(computational_lagrangian(2, 2))
    hosts = []
    for i, s in enumerate(enumerate_spreads(2, 2)):
        act = PermAction(s)
        if Z not in act.lag_ids:
            continue
        try:
            act.basis_permutation(g1)
            act.basis_permutation(g2)
        except NotASymmetry:
            continue
        hosts.append((i, act))
    rep.add("exactly one MUB with the computational basis is invariant under U1, U2", len(hosts) == 1,
            f"spreads {[h[0] for h in hosts]}")
    if not hosts:
        return rep
    idx, act = hosts[0]
    rep.data["spread"] = idx
    q = 4
    bz = act.basis_of[Z]
    p1 = act.checked_permutation(g1)
    p2 = act.checked_permutation(g2)
    rep.add("U1 cycles the five bases", _cycle_type(act.basis_permutation(g1)) == [5])
    comp = p2[bz * q : (bz + 1) * q]
    on_comp = [int(x) - bz * q for x in comp]
    rep.add("U2 cycles the four computational states",
            all(0 <= x < q for x in on_comp) and _cycle_type(on_comp) == [4])
    G = PermGroup([p1, p2])
    transitive = len(set(G.perms[:, 0].tolist())) == 20
    rep.add("<U1, U2> has order 20 and acts regularly on the 20 states", G.order == 20 and transitive,
            f"order {G.order}")
    H = LabelGroup.generate([g1, g2])
    rep.add("label group <U1, U2> has order 20", H.order == 20)
    fid = all(len(set(G.perms[:, bz * q + j].tolist())) == 20 for j in range(q))
    rep.add("every computational state is a fiducial (orbit of size 20)", fid)
    cs = irreducibility_character_sum(H)
    rep.add("<U1, U2> is irreducible (trace sum 1)", cs.rounded == 1, f"{cs.value:.12f}")

    def conj3(U):
        return U3_V @ U.conj() @ dagger(U3_V)

    rep.add("U3 centralizes <U1, U2> up to phase",
            equal_up_to_phase(conj3(U1), U1, tol) and equal_up_to_phase(conj3(U2), U2, tol)
            and g1.conj_by(g3) == g1 and g2.conj_by(g3) == g2)
    g23 = g2 * g3
    A = PermGroup([p1, act.checked_permutation(g23)], signs=[1, -1])
    anti = bool(np.any(A.signs == -1))
    transitive = len(set(A.perms[:, 0].tolist())) == 20
    rep.add("<U1, U2 U3> is an antiunitary group of order 20 acting regularly",
            A.order == 20 and anti and transitive and int((A.signs == 1).sum()) == 10, f"order {A.order}")
    return rep


# prime dimensions --------------------------------------------------------------

def parity_argument_check(p: int) -> Report:
    if p not in (3, 5, 7):
        raise ValueError("parity argument checked for p in {3, 5, 7}")
    rep = Report(f"parity argument, d = {p}")
    spread = enumerate_spreads(p, 1)[0]
    act = PermAction(spread)
    P = np.zeros((p, p))
    for r in range(p):
        P[(-r) % p, r] = 1
    par = CliffordLabel.from_matrix(P, p, 1)
    rep.add("parity induces -1", np.array_equal(par.F, (-np.eye(2, dtype=np.int64)) % p))
    fixes = np.array_equal(act.basis_permutation(par), np.arange(p + 1))
    num = True
    for B in act.mub.bases:
        ov = np.abs(dagger(B.vectors) @ (P @ B.vectors)) ** 2
        num &= max_abs(np.sort(ov, axis=0)[-1] - 1) <= TOL_MUB
    rep.add(f"parity fixes each of the {p + 1} bases setwise", fixes and num)
    G = LabelGroup.generate(clifford_generators(p, 1))
    rep.data["clifford_order"] = G.order
    invols = [g for g in G if g.order() == 2]
    cls = {par.conj_by(g) for g in G}
    rep.add("every order-2 label is conjugate to the parity", set(invols) <= cls and len(cls) == len(invols),
            f"{len(invols)} involutions, class size {len(cls)}")
    all_fix = all(np.array_equal(act.basis_permutation(g), np.arange(p + 1)) for g in invols)
    rep.add("every order-2 label fixes every basis", all_fix)
    # a group of order p(p+1) contains an involution; if transitive on the
    # p+1 bases its basis stabilizers have odd order p, yet contain it
    rep.add("obstruction: p(p+1) even, basis stabilizer order p odd", (p * (p + 1)) % 2 == 0 and p % 2 == 1)
    return rep


# dimension 8 ---------------------------------------------------------------------

def _mat_closure(gens, p, maxsize=None):
    m = gens[0].shape[0]
    I = np.eye(m, dtype=np.int64)
    seen = {I.tobytes(): I}
    bdy = [I]
    while bdy:
        nxt = []
        for a in bdy:
            for g in gens:
                c = (a @ g) % p
                k = c.tobytes()
                if k not in seen:
                    seen[k] = c
                    nxt.append(c)
                    if maxsize is not None and len(seen) > maxsize:
                        return None
        bdy = nxt
    return list(seen.values())


def _keyset(els) -> frozenset:
    return frozenset(x.tobytes() for x in els)


def _is_power_of(m: int, r: int) -> bool:
    while m % r == 0:
        m //= r
    return m == 1


def dimension8_suite(budget: float | None = D8_BUDGET, search: bool = True) -> Report:
    p, n, q = 2, 3, 8
    rep = Report("dimension 8")
    spread = enumerate_spreads(p, n)[0]
    sym = SymmetryGroup(spread)
    rep.add("symmetry group order 96768", sym.order == 96768, str(sym.order))
    B = sym.sp_stabilizer
    rep.add("|B| = 1512", len(B) == 1512, str(len(B)))
    Bl = [np.ascontiguousarray(x) for x in B]
    orders = np.array([fp.matrix_order(x, p) for x in Bl])
    # derived subgroup: normal closure of the generator commutators
    gens = [np.ascontiguousarray(x) for x in _sp_gens_of(sym)]
    comm = [(fp.inverse(a, p) @ fp.inverse(b, p) @ a @ b) % p for a in gens for b in gens]
    Dg = _normal_closure(_distinct(comm), gens, p)
    rep.add("derived subgroup has order 504, index 3", len(Dg) == 504, str(len(Dg)))

    # Sylow 3-subgroup, greedily
    threes = [x for x, o in zip(Bl, orders) if o in (3, 9)]
    E = [np.eye(6, dtype=np.int64)]
    Egens = []
    for x in sorted(threes, key=lambda y: -fp.matrix_order(y, p)):
        if x.tobytes() in _keyset(E):
            continue
        K = _mat_closure(Egens + [x], p, maxsize=27)
        if K is not None and _is_power_of(len(K), 3):
            E, Egens = K, Egens + [x]
        if len(E) == 27:
            break
    rep.add("Sylow 3-subgroup E has order 27", len(E) == 27, str(len(E)))
    eord = [fp.matrix_order(x, p) for x in E]
    rep.add("E has exponent 9", max(eord) == 9)
    Ekeys = _keyset(E)
    Z = [z for z in E if all(np.array_equal((z @ x) % p, (x @ z) % p) for x in E)]
    rep.add("|Z(E)| = 3", len(Z) == 3, str(len(Z)))
    Zk = _keyset(Z)
    cubes_central = all(fp.matrix_power(x, 3, p).tobytes() in Zk for x in E)
    comms_central = all(((fp.inverse(a, p) @ fp.inverse(b, p) @ a @ b) % p).tobytes() in Zk for a in E for b in E)
    rep.add("E/Z(E) elementary abelian", cubes_central and comms_central)
    derived_is_center = len(_mat_closure(_distinct(
        [(fp.inverse(a, p) @ fp.inverse(b, p) @ a @ b) % p for a in E for b in E]), p)) == 3
    rep.add("E is extraspecial (E' = Z(E) of order 3)", derived_is_center and len(Z) == 3)

    # order-9 subgroups of E
    subs9 = {}
    for a, b in combinations(E, 2):
        K = _mat_closure([a, b], p, maxsize=9)
        if K is not None and len(K) == 9:
            subs9[_keyset(K)] = K
    for a in E:
        if fp.matrix_order(a, p) == 9:
            K = _mat_closure([a], p)
            subs9[_keyset(K)] = K
    noncyc = [K for K in subs9.values() if max(fp.matrix_order(x, p) for x in K) == 3]
    rep.add("unique non-cyclic order-9 subgroup P", len(noncyc) == 1,
            f"{len(subs9)} order-9 subgroups, {len(noncyc)} non-cyclic")
    # action on the nine bases
    table = lagrangian_table(p, n)
    lag_ids = list(sym.action.lag_ids)

    def basis_perm(F):
        perm = fp.linear_permutation(F, p)
        return [lag_ids.index(table.image(perm, l)) for l in lag_ids]

    Eperm = [basis_perm(x) for x in E]
    orbit0 = {bp[0] for bp in Eperm}
    rep.add("E is transitive on the 9 bases", len(orbit0) == 9)
    Pk = _keyset(noncyc[0]) if noncyc else frozenset()
    stab_ok = True
    for b in range(9):
        st = [x for x, bp in zip(E, Eperm) if bp[b] == b]
        stab_ok &= len(st) == 3 and all(x.tobytes() in Pk for x in st)
    rep.add("basis stabilizers in E have order 3 and lie in P", stab_ok)

    # Sylow-3 obstruction for every Sylow subgroup: every non-cyclic order-9
    # subgroup of B meets every basis stabilizer nontrivially
    Pconj = {Pk: noncyc[0]} if noncyc else {}
    frontier = list(Pconj.values())
    while frontier:
        nxt = []
        for K in frontier:
            for g in gens:
                gi = fp.inverse(g, p)
                img = [(g @ x @ gi) % p for x in K]
                k = _keyset(img)
                if k not in Pconj:
                    Pconj[k] = img
                    nxt.append(img)
        frontier = nxt
    obstruction = bool(Pconj)
    for K in Pconj.values():
        perms = [basis_perm(x) for x in K]
        obstruction &= all(sum(bp[b] == b for bp in perms) % 3 == 0 for b in range(9))
    rep.add("Sylow-3 obstruction: each non-cyclic order-9 subgroup of B has basis stabilizers of order divisible by 3",
            obstruction, f"{len(Pconj)} conjugates of P")
    nine = [x for x, o in zip(Bl, orders) if o == 9]
    rep.add("every order-9 element of B is a Singer cycle", all(is_irreducible(x, p) for x in nine),
            f"{len(nine)} elements")
    Ns = cyclic_normalizer(singer_unitary(p, n))
    rep.add("normalizer of a Singer unitary group has order 54", Ns.order == 54, str(Ns.order))
    rep.add("a Singer group cannot be normal in a group of order 72 or 36",
            54 % 72 != 0 and 54 % 36 != 0 and Ns.order == 54)
    for h in (72, 36):
        c = trace_bound_certificate(q, n, variant="subgroup", h_order=h)
        rep.add(f"trace bound contradiction for |H| = {h}", c.fires, f"bound {c.value} vs {c.allowed}")

    if search:
        for ext in (False, True):
            label = "antiunitary" if ext else "unitary"
            s = sym if not ext else SymmetryGroup(spread, extended=True)
            res = regular_subgroup_search(s, budget=budget)
            status = INCONCLUSIVE if not res.complete else (SHARP if res.groups else NOT_SHARP)
            rep.data[f"search_{label}"] = {"groups": len(res.groups), "complete": res.complete,
                                          "nodes": res.nodes}
            rep.add(f"order-72 regular subgroups ({label} allowed): none found",
                    not res.groups, f"{len(res.groups)} groups, status {status}")
    rep.data["verdict"] = NOT_SHARP if rep.ok else "MISMATCH"
    return rep


def _normal_closure(seeds, gens, p):
    H = _mat_closure(seeds, p)
    while True:
        keys = _keyset(H)
        extra = _distinct([(g @ h @ fp.inverse(g, p)) % p for g in gens for h in seeds])
        extra = [x for x in extra if x.tobytes() not in keys]
        if not extra:
            return H
        seeds = seeds + extra
        H = _mat_closure(seeds, p)


def _distinct(mats):
    out = {}
    for x in mats:
        out.setdefault(np.ascontiguousarray(x).tobytes(), np.ascontiguousarray(x))
    return list(out.values())


def _sp_gens_of(sym: SymmetryGroup):
    return [g.F for g in sym.generators if not g.is_displacement()]


# dimension 16 ---------------------------------------------------------------------

def dimension16_suite() -> Report:
    p, n, q = 2, 4, 16
    rep = Report("dimension 16")
    S = singer_unitary(p, n)
    G = cyclic(S)
    rep.add("Singer unitary group has order 17", G.order == 17)
    N = cyclic_normalizer(S, extended=True)
    Nu = N.unitary_part()
    rep.add("normalizer in the Clifford group has order 136", Nu.order == 136, str(Nu.order))
    rep.add("normalizer in the extended Clifford group has order 272", N.order == 272, str(N.order))
    rep.add("272 = q(q+1)", N.order == q * (q + 1))
    cs = irreducibility_character_sum(N)
    rep.add("trace sum of the unitary part is 2", cs.rounded == 2 and cs.residual < 1e-4,
            f"{cs.value:.10f}, residual {cs.residual:.1e}")
    red = reducibility(N)
    rep.data["component_ranks"] = red.ranks
    rep.add("two invariant projectors of rank 8", len(red.projectors) == 2 and red.ranks == [8, 8],
            f"commutant dim {red.commutant_dim}, ranks {red.ranks}")
    rep.add("the antiunitary coset preserves each component (group reducible)",
            red.antiunitary_preserves is True and not red.irreducible)
    c = trace_bound_certificate(q, n, variant="strengthened")
    rep.add("unitary groups excluded by the strengthened bound", c.fires, f"{c.value}")
    c2 = trace_bound_certificate(q, n, variant="antiunitary_strengthened")
    rep.add("antiunitary bound does not exclude q = 16 (needs this suite)", not c2.fires, f"{c2.value}")
    verdict = NOT_SHARP if rep.ok else "MISMATCH"
    rep.data["verdict"] = verdict
    rep.add("verdict NOT_SHARPLY_COVARIANT", verdict == NOT_SHARP)
    return rep


# spectrum of a Zsigmondy unitary -------------------------------------------------

def canonical_zsigmondy_matrix(p: int, n: int) -> tuple[np.ndarray, int]:
    """Zsigmondy unitary with U^r = 1 and eigenvalue 1 of multiplicity (q+1)/r - 1."""
    q = p**n
    r = zsigmondy_prime(p, n)
    M = zsigmondy_unitary(p, n).matrix()[0]
    W = np.linalg.matrix_power(M, r)
    lam = W[0, 0]
    base = M * np.exp(-1j * np.angle(lam) / r)
    want = (q + 1) // r - 1
    for k in range(r):
        U = base * np.exp(2j * np.pi * k / r)
        ev = eigenvalues(U)
        if int(np.sum(np.abs(ev - 1) < 1e-6)) == want:
            return U, r
    raise ArithmeticError("no phase gives the expected multiplicity of eigenvalue 1")


def zsigmondy_spectrum_check(p: int, n: int, tol: float = 1e-8) -> Report:
    if (p, n) not in ((2, 2), (2, 4)):
        raise ValueError("spectrum check implemented for (p, n) in {(2, 2), (2, 4)}")
    q = p**n
    rep = Report(f"Zsigmondy spectrum, p={p}, n={n}")
    U, r = canonical_zsigmondy_matrix(p, n)
    ev = eigenvalues(U)
    k = np.rint(np.angle(ev) * r / (2 * np.pi)).astype(int) % r
    close = max_abs(ev - np.exp(2j * np.pi * k / r)) <= tol
    counts = np.bincount(k, minlength=r)
    want = [(q + 1) // r - 1] + [(q + 1) // r] * (r - 1)
    rep.add("eigenvalues are r-th roots of unity with the expected multiplicities",
            close and counts.tolist() == want, f"r = {r}, multiplicities {counts.tolist()}")
    tr = np.trace(U)
    rep.add("tr U = -1", abs(tr + 1) <= tol, f"{tr:.3e}")
    if (p, n) == (2, 4):
        N = cyclic_normalizer(singer_unitary(p, n)).unitary_part()
        red = reducibility(N)
        if len(red.projectors) == 2:
            t1, t2 = (np.trace(P @ U) for P in red.projectors)
            rep.add("component traces differ on U (components inequivalent)", abs(t1 - t2) > 1e-6,
                    f"t1 = {t1:.6f}, t2 = {t2:.6f}")
            rep.add("t1 + t2 = -1", abs(t1 + t2 + 1) <= 1e-7)
        else:
            rep.add("component traces differ on U (components inequivalent)", False, "no two components found")
    return rep


# everything ---------------------------------------------------------------------------

LEMMA_CASES = ((2, 1), (3, 1), (2, 2), (5, 1), (3, 2), (2, 3), (2, 4))


def verify_theorems(d8_budget: float | None = D8_BUDGET, d8_search: bool = True) -> list[Report]:
    out = []

    rep = Report("spreads and Lagrangians")
    for (p, n), want in zip(((2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (2, 4)), (3, 4, 15, 6, 135, 2295)):
        got = len(enumerate_lagrangians(p, n))
        rep.add(f"Lagrangians ({p},{n}) = {want}", got == want == lagrangian_count(p, n), str(got))
    for (p, n), want in zip(((2, 1), (3, 1), (2, 2), (5, 1), (2, 3)), (1, 1, 6, 1, 960)):
        got = len(enumerate_spreads(p, n))
        rep.add(f"spreads d={p**n}: {want}", got == want, str(got))
    o4 = clifford_orbit_on_spreads(2, 2)
    rep.add("d=4: one Clifford orbit of 6 spreads, acted on as S6",
            o4.orbit_sizes == [6] and o4.image_order == 720, str(o4.to_dict()))
    o8 = clifford_orbit_on_spreads(2, 3)
    rep.add("d=8: one Clifford orbit of 960 spreads", o8.orbit_sizes == [960])
    out.append(rep)

    rep = Report("mutual unbiasedness")
    for p, n in ((2, 1), (3, 1), (2, 2), (5, 1), (2, 3)):
        worst = max(build_mub(s).max_bias() for s in enumerate_spreads(p, n))
        rep.add(f"d={p**n}: all spreads unbiased within 1e-8", worst <= TOL_MUB, f"max deviation {worst:.1e}")
    out.append(rep)

    rep = Report("symmetry groups")
    s2 = SymmetryGroup(enumerate_spreads(2, 1)[0])
    rep.add("d=2: order 24", s2.order == 24)
    s4 = SymmetryGroup(enumerate_spreads(2, 2)[0])
    rep.add("d=4: order 1920, quotient 120 acting as S5 on the bases",
            s4.order == 1920 and s4.quotient_order() == 120 and s4.basis_action_order() == 120)
    s8 = SymmetryGroup(enumerate_spreads(2, 3)[0])
    rep.add("d=8: order 96768, quotient 1512", s8.order == 96768 and s8.quotient_order() == 1512)
    out.append(rep)

    rep = Report("sharp covariance searches")
    expect = {(2, 1): (4, 4), (3, 1): (0, 0), (2, 2): (96, 96), (5, 1): (0, 0)}
    nonempty = set()
    for (p, n), (wu, wa) in expect.items():
        v = sharp_search(p, n, antiunitary=True)
        u, a = len(v.unitary_regular_groups), len(v.antiunitary_regular_groups)
        if u + a:
            nonempty.add(p**n)
        rep.add(f"d={p**n}: {wu} unitary + {wa} antiunitary regular groups", (u, a) == (wu, wa), f"{u} + {a}")
        if (p, n) == (2, 2):
            rep.add("d=4: unitary groups form one conjugacy class", [len(c) for c in v.unitary_classes] == [96])
        sym = v.symmetry
        regs = v.unitary_regular_groups + v.antiunitary_regular_groups
        rep.add(f"d={p**n}: every group regular, every state fiducial",
                all(is_regular(sym, R) and is_fiducial_for_all(sym, R) for R in regs))
        rep.add(f"d={p**n}: antiunitary groups have a unitary subgroup of index 2",
                all(has_unitary_index2(sym, R) for R in v.antiunitary_regular_groups))
    out.append(rep)
    out.append(verify_order20_group())
    for p in (3, 5, 7):
        out.append(parity_argument_check(p))

    for p, n in LEMMA_CASES:
        out.append(verify_singer_lemma(p, n))
        try:
            out.append(verify_zsigmondy_lemma(p, n))
        except NoZsigmondyPrime:
            r = Report(f"Zsigmondy lemma, p={p}, n={n}")
            r.add("no Zsigmondy prime of p^(2n) - 1", not zsigmondy_primes(p, 2 * n).primes)
            out.append(r)

    rep = Report("trace-bound certificates")
    c = trace_bound_certificate(4, 2, variant="strengthened")
    rep.add("q=4: strengthened bound saturates at exactly 1", c.saturated and c.value == 1)
    for q, n in ((8, 3), (9, 2), (16, 4), (25, 2), (27, 3), (32, 5)):
        c = trace_bound_certificate(q, n, variant="strengthened")
        rep.add(f"q={q}: strengthened bound exceeds 1", c.fires, str(c.value))
    for n in range(5, 11):
        c = trace_bound_certificate(2**n, n, variant="antiunitary_strengthened")
        rep.add(f"q=2^{n}: antiunitary bound exceeds 2", c.fires, str(c.value))
    out.append(rep)

    d8 = dimension8_suite(d8_budget, d8_search)
    out.append(d8)
    d16 = dimension16_suite()
    out.append(d16)
    out.append(zsigmondy_spectrum_check(2, 2))
    out.append(zsigmondy_spectrum_check(2, 4))

    rep = Report("classification")
    rep.add("sharply covariant dimensions among 2, 3, 4, 5 (searched) and 8, 16 (suites) are exactly 2, 4",
            nonempty == {2, 4} and d8.data.get("verdict") == NOT_SHARP and d16.data.get("verdict") == NOT_SHARP,
            f"searched nonempty: {sorted(nonempty)}")
    out.append(rep)
    return out


def reports_markdown(reports: list[Report]) -> str:
    total = sum(len(r.checks) for r in reports)
    failed = sum(c.status == "FAIL" for r in reports for c in r.checks)
    head = f"# Verification report\n\n{total - failed} of {total} checks passed.\n\n"
    return head + "\n".join(r.to_markdown() for r in reports)
