"""
Symmetry groups of stabilizer MUBs and the search for sharply covariant groups.

Everything here happens at the level of exact labels.  A label acts on the
q(q+1) states of a MUB by permuting them, and each permutation is computed
twice, once exactly from the state characters and once by applying the
synthesised matrix to the stored vectors.  The two have to agree.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import fp
from .clifford import CliffordLabel, sp_generators
from .groups import LabelGroup, PermGroup, _pack, enumerate_sp
from .mub import MUBSet, build_mub
from .spreads import Spread, lagrangian_table, spread_index_sets
from .weyl import TOL_MUB, phase_modulus

SHARP = "SHARPLY_COVARIANT"
NOT_SHARP = "NOT_SHARPLY_COVARIANT"
INCONCLUSIVE = "INCONCLUSIVE"


class NotASymmetry(ValueError):
    """The label does not map the MUB to itself."""


# action on states ---------------------------------------------------------

class PermAction:
    """Action of extended Clifford labels on the bases and states of one MUB.

    Points are the q(q+1) states, numbered basis-major (basis b, state j is
    point b*q + j) in the order of ``mub.bases``.
    """

    def __init__(self, spread: Spread, mub: MUBSet | None = None):
        self.spread = spread
        self.p, self.n, self.q = spread.p, spread.n, spread.q
        self.mub = mub if mub is not None else build_mub(spread)
        self.table = lagrangian_table(self.p, self.n)
        self.lag_ids = spread.indices(self.table)
        self.basis_of = {l: b for b, l in enumerate(self.lag_ids)}
        q = self.q
        nvec = q * q
        self.members = [self.table.members[l] for l in self.lag_ids]
        self.where = np.full((q + 1, nvec), -1, dtype=np.int64)
        for b, mem in enumerate(self.members):
            self.where[b, mem] = np.arange(q)
        self.keys = {}
        for b, B in enumerate(self.mub.bases):
            for j in range(q):
                self.keys[(b, np.ascontiguousarray(B.characters[j], dtype=np.int64).tobytes())] = b * q + j
        self.m = q * (q + 1)
        self._vectors = self.mub.state_vectors()
        self._cache: dict[bytes, np.ndarray] = {}

    def basis_permutation(self, g: CliffordLabel) -> np.ndarray:
        out = np.empty(self.q + 1, dtype=np.int64)
        for b, mem in enumerate(self.members):
            img = frozenset(g.perm[mem].tolist())
            l2 = self.table.index[img]
            if l2 not in self.basis_of:
                raise NotASymmetry("label moves a basis outside the MUB")
            out[b] = self.basis_of[l2]
        return out

    def permutation(self, g: CliffordLabel) -> np.ndarray:
        """Exact state permutation: D_{F mu} (g psi) = w^{eps chi(mu) - c(mu)} (g psi)."""
        k = g.key()
        if k in self._cache:
            return self._cache[k]
        q, N = self.q, phase_modulus(self.p)
        bperm = self.basis_permutation(g)
        out = np.empty(self.m, dtype=np.int32)
        for b, mem in enumerate(self.members):
            b2 = int(bperm[b])
            chi = self.mub.bases[b].characters
            new = (g.eps * chi - g.phases[mem][None, :]) % N
            pos = self.where[b2][g.perm[mem]]
            moved = np.empty_like(new)
            moved[:, pos] = new
            for j in range(q):
                out[b * q + j] = self.keys[(b2, np.ascontiguousarray(moved[j]).tobytes())]
        self._cache[k] = out
        return out

    def numeric_permutation(self, g: CliffordLabel, tol: float = TOL_MUB) -> np.ndarray:
        """State permutation by applying the synthesised matrix and matching projectors."""
        V, conj = g.matrix()
        psi = self._vectors
        img = V @ (psi.conj() if conj else psi)
        ov = np.abs(psi.conj().T @ img) ** 2
        perm = np.argmax(ov, axis=0)
        if np.max(np.abs(ov[perm, np.arange(self.m)] - 1)) > tol:
            raise NotASymmetry("image state is not a MUB state")
        return perm.astype(np.int32)

    def checked_permutation(self, g: CliffordLabel) -> np.ndarray:
        a = self.permutation(g)
        b = self.numeric_permutation(g)
        if not np.array_equal(a, b):
            raise RuntimeError("exact and numerical state actions disagree")
        return a


# Sp-level orbit of spreads ------------------------------------------------

def sp_inverse(F: np.ndarray, p: int) -> np.ndarray:
    n = F.shape[0] // 2
    J = fp.symplectic_form(n, p)
    return (-J @ F.T @ J) % p


def _key(F: np.ndarray, p: int) -> int:
    return int(_pack(F[None], p)[0])


class SpreadOrbits:
    """Action of the symplectic generators on all spreads of (p, n)."""

    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.table = lagrangian_table(p, n)
        self.spreads = spread_index_sets(p, n)
        self.index = {s: i for i, s in enumerate(self.spreads)}
        self.gens = sp_generators(p, n)
        self.lag_perms = [
            np.array([self.table.image(fp.linear_permutation(F, p), i) for i in range(len(self.table))])
            for F in self.gens
        ]
        self.spread_perms = [self.spread_image(lp) for lp in self.lag_perms]

    def spread_image(self, lag_perm: np.ndarray) -> np.ndarray:
        return np.array([self.index[tuple(sorted(lag_perm[list(s)].tolist()))] for s in self.spreads])

    def orbit(self, start: int):
        """Orbit of spread ``start`` and a transversal {i: F with F(start) = i}."""
        m = 2 * self.n
        trans = {start: np.eye(m, dtype=np.int64)}
        queue = [start]
        for x in queue:
            for g, sp in zip(self.gens, self.spread_perms):
                y = int(sp[x])
                if y not in trans:
                    trans[y] = (g @ trans[x]) % self.p
                    queue.append(y)
        return queue, trans

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for i in range(len(self.spreads)):
            if i not in seen:
                orb, _ = self.orbit(i)
                seen.update(orb)
                out.append(sorted(orb))
        return out

    def stabilizer(self, start: int):
        """Stabilizer of a spread in Sp(2n, p): (elements, generators) via Schreier generators."""
        p = self.p
        orb, trans = self.orbit(start)
        m = 2 * self.n
        chosen: list[np.ndarray] = []
        elements = np.eye(m, dtype=np.int64)[None]
        keys = {_key(elements[0], p)}
        for x in orb:
            for g, sp in zip(self.gens, self.spread_perms):
                y = int(sp[x])
                s = (sp_inverse(trans[y], p) @ g @ trans[x]) % p
                if _key(s, p) in keys:
                    continue
                chosen.append(s)
                elements = enumerate_sp(p, self.n, generators=chosen)
                keys = set(_pack(elements, p).tolist())
        return elements, chosen


@lru_cache(maxsize=None)
def spread_orbits(p: int, n: int) -> SpreadOrbits:
    if p**n > 8:
        raise ValueError("spread orbits need p^n <= 8")
    return SpreadOrbits(p, n)


@dataclass
class OrbitResult:
    p: int
    n: int
    orbit_sizes: list[int]
    image_order: int | None  # order of the induced permutation group on spreads, when computed

    @property
    def orbit_count(self) -> int:
        return len(self.orbit_sizes)

    def to_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "orbits": self.orbit_count, "orbit_sizes": self.orbit_sizes,
                "image_order": self.image_order}


def clifford_orbit_on_spreads(p: int, n: int, image: bool | None = None) -> OrbitResult:
    """Orbits of the Clifford group on spreads (it acts through Sp(2n, p))."""
    so = spread_orbits(p, n)
    sizes = [len(o) for o in so.orbits()]
    if image is None:
        image = len(so.spreads) <= 10
    order = PermGroup(so.spread_perms).order if image else None
    return OrbitResult(p, n, sizes, order)


# symmetry group -------------------------------------------------------------

class SymmetryGroup:
    """Labels mapping a stabilizer MUB to itself, as a faithful permutation group on its states."""

    def __init__(self, spread: Spread, extended: bool = False, action: PermAction | None = None):
        p, n = spread.p, spread.n
        if spread.q > 8:
            raise ValueError("exhaustive symmetry groups need p^n <= 8")
        self.spread = spread
        self.extended = extended
        self.action = action if action is not None else PermAction(spread)
        so = spread_orbits(p, n)
        self.spread_index = so.index[tuple(sorted(self.action.lag_ids))]
        elements, chosen = so.stabilizer(self.spread_index)
        self.sp_stabilizer = elements
        gens = [CliffordLabel.from_symplectic(F, p, n) for F in chosen]
        gens += [CliffordLabel.displacement(e, p, n) for e in np.eye(2 * n, dtype=np.int64)]
        self.antiunitary_element = None
        if extended:
            K = CliffordLabel.conjugation(p, n)
            klag = np.array([so.table.image(K.perm, i) for i in range(len(so.table))])
            ks = so.index[tuple(sorted(klag[list(so.spreads[self.spread_index])].tolist()))]
            _, trans = so.orbit(self.spread_index)
            if ks in trans:
                a = CliffordLabel.from_symplectic(sp_inverse(trans[ks], p), p, n) * K
                self.antiunitary_element = a
                gens.append(a)
        self.generators = gens
        perms = [self.action.checked_permutation(g) for g in gens]
        self.perms = PermGroup(perms, signs=[g.eps for g in gens])

    @property
    def order(self) -> int:
        return self.perms.order

    @property
    def sp_stabilizer_order(self) -> int:
        return len(self.sp_stabilizer)

    @property
    def q(self) -> int:
        return self.spread.q

    def label(self, i: int) -> CliffordLabel:
        return self.perms.lift(i, self.generators, CliffordLabel.identity(self.spread.p, self.spread.n))

    def label_group(self) -> LabelGroup:
        return LabelGroup([self.label(i) for i in range(self.order)], self.generators)

    def unitary_indices(self) -> np.ndarray:
        return np.nonzero(self.perms.signs == 1)[0]

    def quotient_order(self) -> int:
        """Order modulo the displacement labels."""
        return self.order // self.q**2

    def basis_action_order(self) -> int:
        """Order of the induced permutation group on the q+1 bases."""
        q = self.q
        return PermGroup([g[::q] // q for g in self.perms.gens]).order


def spread_symmetry_group(spread: Spread, extended: bool = False) -> SymmetryGroup:
    return SymmetryGroup(spread, extended)


# regular subgroups -------------------------------------------------------------

def _cycle_data(P: np.ndarray, max_order: int):
    """Element orders (0 if above max_order) and semiregularity of every row of P."""
    G, m = P.shape
    ident = np.arange(m, dtype=P.dtype)
    order = np.zeros(G, dtype=np.int64)
    semireg = np.ones(G, dtype=bool)
    Q = P.copy()
    active = np.arange(G)
    for k in range(1, max_order + 1):
        Qa = Q[active]
        isid = np.all(Qa == ident, axis=1)
        order[active[isid]] = k
        rest = ~isid
        fixed = np.any(Qa[rest] == ident, axis=1)
        semireg[active[rest][fixed]] = False
        active = active[rest]
        if not len(active):
            break
        Q[active] = np.take_along_axis(P[active], Q[active], axis=1)
    semireg[order == 0] = False
    return order, semireg


@dataclass
class RegularGroup:
    """A regular subgroup of a symmetry group, by element indices."""

    elements: tuple[int, ...]
    generators: tuple[int, ...]
    antiunitary: bool

    def labels(self, sym: SymmetryGroup) -> list[CliffordLabel]:
        return [sym.label(i) for i in self.elements]

    def label_group(self, sym: SymmetryGroup) -> LabelGroup:
        return LabelGroup(self.labels(sym), [sym.label(i) for i in self.generators])


@dataclass
class SearchResult:
    groups: list[RegularGroup]
    complete: bool
    nodes: int
    elapsed: float
    candidates: int


def regular_subgroup_search(sym: SymmetryGroup, order: int | None = None, budget: float | None = None) -> SearchResult:
    """All subgroups of ``sym`` acting regularly on the MUB states.

    A regular group has exactly one element taking state 0 to each state, so
    it is built by repeatedly adding an element that takes state 0 to the
    least state not yet reached.  Each regular group is met along exactly one
    path.  Closures that repeat an image of state 0, contain an element with a
    fixed point, or outgrow ``order`` are pruned.
    """
    G = sym.perms
    P = G.perms
    m = G.m
    order = m if order is None else order
    if order != m:
        raise ValueError("a regular subgroup has order equal to the number of states")
    t0 = time.monotonic()
    deadline = None if budget is None else t0 + budget
    orders, semireg = _cycle_data(P, m)
    cand = semireg & (m % np.maximum(orders, 1) == 0) & (orders > 1)
    img0 = P[:, 0]
    by_point: dict[int, list[int]] = {}
    for g in np.nonzero(cand)[0]:
        by_point.setdefault(int(img0[g]), []).append(int(g))
    index = G.index
    found: dict[frozenset, RegularGroup] = {}
    nodes = 0
    complete = True

    def closure(H: list[int], gens: list[int]):
        S = set(H)
        hit = {int(img0[h]) for h in H}
        elems = list(H)
        frontier = list(H)
        while frontier:
            nxt = []
            for a in frontier:
                pa = P[a]
                for b in gens:
                    c = index[pa[P[b]].tobytes()]
                    if c in S:
                        continue
                    if not cand[c]:
                        return None
                    x = int(img0[c])
                    if x in hit:
                        return None
                    S.add(c)
                    hit.add(x)
                    elems.append(c)
                    if len(elems) > m:
                        return None
                    nxt.append(c)
            frontier = nxt
        if m % len(elems):
            return None
        return elems, hit

    class _Stop(Exception):
        pass

    def rec(H: list[int], hit: set, gens: list[int]):
        nonlocal nodes
        nodes += 1
        if deadline is not None and (nodes == 1 or nodes % 64 == 0) and time.monotonic() > deadline:
            raise _Stop
        if len(H) == m:
            key = frozenset(H)
            if key not in found:
                anti = bool(np.any(G.signs[H] == -1))
                found[key] = RegularGroup(tuple(sorted(H)), tuple(gens), anti)
            return
        x = next(i for i in range(m) if i not in hit)
        for g in by_point.get(x, ()):
            res = closure(H, gens + [g])
            if res is not None:
                rec(res[0], res[1], gens + [g])

    try:
        rec([0], {0}, [])
    except _Stop:
        complete = False
    groups = sorted(found.values(), key=lambda r: r.elements)
    return SearchResult(groups, complete, nodes, time.monotonic() - t0, int(cand.sum()))


def is_regular(sym: SymmetryGroup, R: RegularGroup) -> bool:
    """Independent check: R is closed, |R| = number of states, and R is transitive."""
    G = sym.perms
    els = list(R.elements)
    S = set(els)
    if len(els) != G.m:
        return False
    if any(G.mul(a, b) not in S for a in R.generators for b in els):
        return False
    return bool(np.all(np.sort(G.perms[els][:, 0]) == np.arange(G.m)))


def is_fiducial_for_all(sym: SymmetryGroup, R: RegularGroup) -> bool:
    """Every single state generates the whole MUB under R."""
    sub = sym.perms.perms[list(R.elements)]
    return bool(np.all(np.sort(sub, axis=0) == np.arange(sym.perms.m)[:, None]))


def has_unitary_index2(sym: SymmetryGroup, R: RegularGroup) -> bool:
    signs = sym.perms.signs[list(R.elements)]
    return int((signs == 1).sum()) * 2 == len(signs)


def conjugacy_classes(sym: SymmetryGroup, groups: list[RegularGroup], unitary_only: bool = True) -> list[list[int]]:
    """Classes of the found groups under conjugation by the (unitary) symmetry group."""
    G = sym.perms
    key = {frozenset(R.elements): i for i, R in enumerate(groups)}
    gen_idx = [G.find(g) for g, s in zip(G.gens, sym.generators) if not unitary_only or s.eps == 1]
    gen_inv = [G.inv(g) for g in gen_idx]
    parent = list(range(len(groups)))

    def root(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, R in enumerate(groups):
        for g, gi in zip(gen_idx, gen_inv):
            img = frozenset(G.mul(G.mul(g, r), gi) for r in R.elements)
            if img not in key:
                raise RuntimeError("conjugate of a regular group missing from the search results")
            a, b = root(i), root(key[img])
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes: dict[int, list[int]] = {}
    for i in range(len(groups)):
        classes.setdefault(root(i), []).append(i)
    return sorted(classes.values())


@dataclass
class CovarianceVerdict:
    p: int
    n: int
    spread_index: int
    unitary_regular_groups: list[RegularGroup]
    antiunitary_regular_groups: list[RegularGroup]
    status: str
    antiunitary_search: bool
    symmetry_order: int
    elapsed: float
    nodes: int
    unitary_classes: list[list[int]] = field(default_factory=list)
    symmetry: SymmetryGroup | None = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return self.p**self.n

    def to_dict(self, with_labels: bool = True) -> dict:
        def desc(R: RegularGroup):
            out = {"order": len(R.elements), "antiunitary": R.antiunitary}
            if with_labels and self.symmetry is not None:
                out["generators"] = [json.loads(self.symmetry.label(i).to_json()) for i in R.generators]
            return out

        return {
            "dimension": self.dimension,
            "p": self.p,
            "n": self.n,
            "spread": self.spread_index,
            "antiunitary_search": self.antiunitary_search,
            "symmetry_group_order": self.symmetry_order,
            "status": self.status,
            "unitary_count": len(self.unitary_regular_groups),
            "antiunitary_count": len(self.antiunitary_regular_groups),
            "unitary_conjugacy_classes": [len(c) for c in self.unitary_classes],
            "search_nodes": self.nodes,
            "unitary_regular_groups": [desc(R) for R in self.unitary_regular_groups],
            "antiunitary_regular_groups": [desc(R) for R in self.antiunitary_regular_groups],
        }


def sharp_search(p: int, n: int, spread_index: int = 0, antiunitary: bool = False,
                 budget: float | None = None) -> CovarianceVerdict:
    """Search one stabilizer MUB for sharply covariant groups."""
    from .spreads import enumerate_spreads

    spreads = enumerate_spreads(p, n)
    if not 0 <= spread_index < len(spreads):
        raise IndexError(f"spread index {spread_index} out of range (0..{len(spreads) - 1})")
    sym = SymmetryGroup(spreads[spread_index], extended=antiunitary)
    res = regular_subgroup_search(sym, budget=budget)
    uni = [R for R in res.groups if not R.antiunitary]
    anti = [R for R in res.groups if R.antiunitary]
    if res.groups:
        status = SHARP
    else:
        status = NOT_SHARP if res.complete else INCONCLUSIVE
    classes = conjugacy_classes(sym, uni) if res.complete else []
    return CovarianceVerdict(p, n, spread_index, uni, anti, status, antiunitary, sym.order,
                             res.elapsed, res.nodes, classes, sym)
