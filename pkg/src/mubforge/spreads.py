"""
Lagrangian subspaces of F_p^{2n} and symplectic spreads.

A Lagrangian labels a stabilizer basis; a spread (q + 1 Lagrangians meeting
pairwise in 0) labels a stabilizer MUB.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import fp


class ResourceLimitError(RuntimeError):
    """Input is outside the sizes the exhaustive routines are meant for."""


@dataclass(frozen=True)
class Lagrangian(fp.Subspace):
    def __post_init__(self):
        if self.ambient != 2 * self.dim:
            raise ValueError("a Lagrangian has dimension n in F_p^{2n}")
        if not self.is_isotropic():
            raise ValueError("subspace is not isotropic")

    @property
    def n(self) -> int:
        return self.dim

    def key(self):
        return self.rows


def _lagrangians_raw(p: int, n: int) -> list[tuple[tuple[int, ...], ...]]:
    m = 2 * n
    J = fp.symplectic_form(n)
    found = []
    for pivots in combinations(range(m), n):
        pivset = set(pivots)
        frees = [[c for c in range(piv + 1, m) if c not in pivset] for piv in pivots]

        def extend(i, rows):
            if i == n:
                found.append(tuple(tuple(int(x) for x in r) for r in rows))
                return
            free = frees[i]
            cand = np.zeros((p ** len(free), m), dtype=np.int64)
            cand[:, pivots[i]] = 1
            if free:
                cand[:, free] = fp.all_vectors(p, len(free))
            if rows:
                prev = np.array(rows)
                ok = ~np.any((cand @ J @ prev.T) % p, axis=1)
                cand = cand[ok]
            for row in cand:
                extend(i + 1, rows + [row])

        extend(0, [])
    return sorted(found)


@lru_cache(maxsize=None)
def _lagrangians_cached(p: int, n: int) -> tuple[Lagrangian, ...]:
    return tuple(Lagrangian(p, 2 * n, rows) for rows in _lagrangians_raw(p, n))


def enumerate_lagrangians(p: int, n: int) -> list[Lagrangian]:
    """All Lagrangians of F_p^{2n}, sorted by canonical form."""
    fp.check_prime(p)
    if p**n > 16:
        raise ResourceLimitError(f"exhaustive Lagrangian enumeration limited to p^n <= 16, got {p**n}")
    return list(_lagrangians_cached(p, n))


def lagrangian_count(p: int, n: int) -> int:
    out = 1
    for i in range(1, n + 1):
        out *= p**i + 1
    return out


class LagrangianTable:
    """Lagrangians of (p, n) indexed by position, with their member-index sets."""

    def __init__(self, p: int, n: int):
        self.p, self.n = p, n
        self.q = p**n
        self.lagrangians = enumerate_lagrangians(p, n)
        self.members = [L.member_indices() for L in self.lagrangians]
        self.index = {frozenset(m.tolist()): i for i, m in enumerate(self.members)}
        self.masks = [sum(1 << int(v) for v in m if v) for m in self.members]

    def __len__(self):
        return len(self.lagrangians)

    def image(self, perm: np.ndarray, i: int) -> int:
        """Index of the image of Lagrangian i under the vector permutation ``perm``."""
        return self.index[frozenset(perm[self.members[i]].tolist())]

    def lookup(self, L: fp.Subspace) -> int:
        return self.index[frozenset(L.member_indices().tolist())]


@lru_cache(maxsize=None)
def lagrangian_table(p: int, n: int) -> LagrangianTable:
    return LagrangianTable(p, n)


@dataclass(frozen=True)
class Spread:
    p: int
    n: int
    members: tuple[Lagrangian, ...]

    @classmethod
    def of(cls, members) -> "Spread":
        members = sorted(members, key=lambda L: L.rows)
        L0 = members[0]
        return cls(L0.p, L0.n, tuple(members))

    @property
    def q(self) -> int:
        return self.p**self.n

    def key(self):
        return tuple(L.rows for L in self.members)

    def image(self, F) -> "Spread":
        return Spread.of([L.image(F) for L in self.members])

    def indices(self, table: LagrangianTable | None = None) -> tuple[int, ...]:
        table = table or lagrangian_table(self.p, self.n)
        return tuple(table.lookup(L) for L in self.members)

    def to_json(self) -> str:
        return json.dumps(
            {"p": self.p, "n": self.n, "members": [[list(r) for r in L.rows] for L in self.members]}
        )

    @classmethod
    def from_json(cls, text: str) -> "Spread":
        obj = json.loads(text)
        p, n = obj["p"], obj["n"]
        return cls.of([Lagrangian.span(rows, p, 2 * n) for rows in obj["members"]])


def is_spread(candidate) -> bool:
    candidate = list(candidate)
    if not candidate:
        return False
    p, ambient = candidate[0].p, candidate[0].ambient
    if any((L.p, L.ambient) != (p, ambient) for L in candidate):
        raise ValueError("Lagrangians from different ambient spaces")
    q = p ** (ambient // 2)
    if len(candidate) != q + 1:
        return False
    return all(a.intersection_dim(b) == 0 for a, b in combinations(candidate, 2))


def _spread_index_sets(p: int, n: int, time_budget: float | None):
    table = lagrangian_table(p, n)
    nvec = p ** (2 * n)
    full = (1 << nvec) - 2  # every nonzero vector
    containing = [[] for _ in range(nvec)]
    for i, m in enumerate(table.members):
        for v in m[1:]:
            containing[int(v)].append(i)
    masks = table.masks
    out: list[tuple[int, ...]] = []
    deadline = None if time_budget is None else time.monotonic() + time_budget

    def search(covered, chosen):
        if covered == full:
            out.append(tuple(sorted(chosen)))
            return
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("spread enumeration exceeded its time budget")
        free = ~covered & full
        v = (free & -free).bit_length() - 1  # least uncovered nonzero vector
        for i in containing[v]:
            if masks[i] & covered == 0:
                chosen.append(i)
                search(covered | masks[i], chosen)
                chosen.pop()

    search(0, [])
    return table, sorted(out)


@lru_cache(maxsize=None)
def spread_index_sets(p: int, n: int) -> tuple[tuple[int, ...], ...]:
    """Spreads as sorted tuples of Lagrangian indices (see ``lagrangian_table``)."""
    return tuple(_spread_index_sets(p, n, None)[1])


def enumerate_spreads(p: int, n: int, time_budget: float | None = None) -> list[Spread]:
    """All symplectic spreads of F_p^{2n}, canonically sorted."""
    fp.check_prime(p)
    if p**n > 8:
        raise ResourceLimitError(f"exhaustive spread enumeration limited to p^n <= 8, got {p**n}")
    if time_budget is None:
        sets = spread_index_sets(p, n)
    else:
        sets = _spread_index_sets(p, n, time_budget)[1]
    table = lagrangian_table(p, n)
    spreads = [Spread.of([table.lagrangians[i] for i in s]) for s in sets]
    return sorted(spreads, key=Spread.key)
