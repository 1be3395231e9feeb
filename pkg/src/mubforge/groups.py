"""Finite group closures: label groups, permutation groups, and Sp(2n, p)."""

from __future__ import annotations

import numpy as np

from . import fp
from .clifford import CliffordLabel, sp_generators


def mulclose(gens, identity=None, maxsize: int | None = None) -> list:
    """All products of ``gens``; elements need __mul__ and hashing."""
    gens = list(gens)
    seen = {}
    if identity is not None:
        seen[identity] = identity
    for g in gens:
        seen.setdefault(g, g)
    bdy = list(seen)
    while bdy:
        nxt = []
        for a in bdy:
            for g in gens:
                c = a * g
                if c not in seen:
                    seen[c] = c
                    nxt.append(c)
                    if maxsize is not None and len(seen) > maxsize:
                        raise OverflowError("closure exceeded maxsize")
        bdy = nxt
    return list(seen)


class LabelGroup:
    """Explicit finite group of Clifford labels."""

    def __init__(self, elements, generators=None):
        self.elements = list(elements)
        self.index = {g: i for i, g in enumerate(self.elements)}
        self.generators = list(generators) if generators is not None else list(self.elements)
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")

    @classmethod
    def generate(cls, gens, maxsize: int | None = None) -> "LabelGroup":
        gens = list(gens)
        g0 = gens[0]
        ident = CliffordLabel.identity(g0.p, g0.n)
        return cls(mulclose(gens, ident, maxsize), gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.index

    def is_closed(self) -> bool:
        return all(a * b in self.index for a in self.generators for b in self.elements) and all(
            g.inverse() in self.index for g in self.generators
        )

    def issubgroup(self, other: "LabelGroup") -> bool:
        return all(g in other for g in self.elements)

    def unitary_part(self) -> "LabelGroup":
        return LabelGroup([g for g in self.elements if g.eps == 1])

    def has_antiunitary(self) -> bool:
        return any(g.eps == -1 for g in self.elements)

    def centralizer(self, sub: "LabelGroup") -> "LabelGroup":
        if not sub.issubgroup(self):
            raise ValueError("centralizer needs a subgroup")
        gens = sub.generators
        return LabelGroup([g for g in self.elements if all(g * h == h * g for h in gens)])

    def normalizer(self, sub: "LabelGroup") -> "LabelGroup":
        if not sub.issubgroup(self):
            raise ValueError("normalizer needs a subgroup")
        gens = sub.generators
        return LabelGroup([g for g in self.elements if all(h.conj_by(g) in sub for h in gens)])

    def center(self) -> "LabelGroup":
        return self.centralizer(self)

    def key(self) -> frozenset:
        return frozenset(g.key() for g in self.elements)


def cyclic(g: CliffordLabel) -> LabelGroup:
    els = [CliffordLabel.identity(g.p, g.n)]
    x = g
    while not x.is_identity():
        els.append(x)
        x = x * g
    return LabelGroup(els, [g])


# permutation groups ------------------------------------------------------

class PermGroup:
    """Closure of permutation generators, stored as an (order, m) array.

    Each element remembers (parent, generator) so that a word for it, and
    hence any faithful lift, can be rebuilt.
    """

    def __init__(self, gens, signs=None, maxsize: int | None = None, deadline=None):
        import time

        gens = [np.asarray(g, dtype=np.int32) for g in gens]
        m = len(gens[0])
        ident = np.arange(m, dtype=np.int32)
        self.m = m
        self.gens = gens
        gsign = list(signs) if signs is not None else [1] * len(gens)
        rows = [ident]
        sign = [1]
        self.parent = [-1]
        self.via = [-1]
        self.index = {ident.tobytes(): 0}
        bdy = [0]
        while bdy:
            nxt = []
            for i in bdy:
                a = rows[i]
                for gi, g in enumerate(gens):
                    c = g[a]  # apply a then g
                    k = c.tobytes()
                    if k not in self.index:
                        self.index[k] = len(rows)
                        rows.append(c)
                        sign.append(sign[i] * gsign[gi])
                        self.parent.append(i)
                        self.via.append(gi)
                        nxt.append(len(rows) - 1)
                        if maxsize is not None and len(rows) > maxsize:
                            raise OverflowError("permutation closure exceeded maxsize")
            if deadline is not None and time.monotonic() > deadline:
                raise TimeoutError("permutation closure exceeded its time budget")
            bdy = nxt
        self.perms = np.array(rows, dtype=np.int32)
        self.signs = np.array(sign, dtype=np.int8)

    @property
    def order(self) -> int:
        return len(self.perms)

    def __len__(self):
        return len(self.perms)

    def find(self, perm) -> int:
        return self.index.get(np.asarray(perm, dtype=np.int32).tobytes(), -1)

    def mul(self, i: int, j: int) -> int:
        """Index of (element i) after (element j), as maps: x -> P_i[P_j[x]]."""
        return self.index[self.perms[i][self.perms[j]].tobytes()]

    def inv(self, i: int) -> int:
        return self.index[np.argsort(self.perms[i]).astype(np.int32).tobytes()]

    def word(self, i: int) -> list[int]:
        """Generator indices g_1, ..., g_k with element = g_k o ... o g_1."""
        out = []
        while self.parent[i] >= 0:
            out.append(self.via[i])
            i = self.parent[i]
        return out[::-1]

    def lift(self, i: int, images: list, identity):
        """Evaluate the word of element i in another faithful representation."""
        x = identity
        for gi in self.word(i):
            x = images[gi] * x
        return x


def perm_closure_order(gens) -> int:
    return PermGroup(gens).order


# Sp(2n, p) --------------------------------------------------------------

def _pack(M: np.ndarray, p: int) -> np.ndarray:
    flat = M.reshape(M.shape[0], -1)
    return flat @ (p ** np.arange(flat.shape[1] - 1, -1, -1, dtype=np.int64))


def enumerate_sp(p: int, n: int, generators=None, max_order: int = 3_000_000) -> np.ndarray:
    """All elements of the group generated by ``generators`` (default: Sp(2n, p)).

    Vectorised breadth-first closure; returns an array (order, 2n, 2n).
    """
    m = 2 * n
    if p ** (m * m) >= 2**63:
        raise ValueError("packing limit exceeded")
    gens = np.array(generators if generators is not None else sp_generators(p, n), dtype=np.int64)
    frontier = np.eye(m, dtype=np.int64)[None]
    seen_keys = _pack(frontier, p)
    chunks = [frontier]
    while len(frontier):
        prods = np.einsum("gij,kjl->gkil", gens, frontier).reshape(-1, m, m) % p
        keys = _pack(prods, p)
        keys, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(keys, seen_keys, assume_unique=True)
        frontier = prods[first[fresh]]
        seen_keys = np.union1d(seen_keys, keys[fresh])
        chunks.append(frontier)
        if len(seen_keys) > max_order:
            raise OverflowError("group larger than max_order")
    return np.concatenate(chunks)


def batch_power_is_identity(M: np.ndarray, e: int, p: int) -> np.ndarray:
    """Boolean mask: M_k^e == I for a stack of matrices."""
    m = M.shape[-1]
    out = np.broadcast_to(np.eye(m, dtype=np.int64), M.shape).copy()
    base = M.copy()
    while e:
        if e & 1:
            out = np.einsum("kij,kjl->kil", out, base) % p
        base = np.einsum("kij,kjl->kil", base, base) % p
        e >>= 1
    return np.all(out == np.eye(m, dtype=np.int64), axis=(1, 2))


def batch_orders_equal(M: np.ndarray, order: int, p: int) -> np.ndarray:
    """Mask of matrices whose multiplicative order is exactly ``order``."""
    from .numtheory import prime_divisors

    mask = batch_power_is_identity(M, order, p)
    for r in prime_divisors(order):
        mask &= ~batch_power_is_identity(M, order // r, p)
    return mask
