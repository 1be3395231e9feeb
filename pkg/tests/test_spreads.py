import itertools
import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mubforge import fp
from mubforge.clifford import sp_generators
from mubforge.spreads import (
    Lagrangian,
    ResourceLimitError,
    Spread,
    enumerate_lagrangians,
    enumerate_spreads,
    is_spread,
    lagrangian_count,
    lagrangian_table,
)

LAG_CASES = [((2, 1), 3), ((3, 1), 4), ((2, 2), 15), ((5, 1), 6), ((2, 3), 135), ((2, 4), 2295)]


def brute_lagrangians(p, n):
    """Every span of n vectors that is isotropic of dimension n."""
    V = fp.all_vectors(p, 2 * n)[1:]
    out = set()
    for combo in itertools.combinations(range(len(V)), n):
        S = fp.Subspace.span(V[list(combo)], p, 2 * n)
        if S.dim == n and S.is_isotropic():
            out.add(S.rows)
    return out


@pytest.mark.parametrize("pn,count", LAG_CASES)
def test_lagrangian_counts(pn, count):
    p, n = pn
    Ls = enumerate_lagrangians(*pn)
    assert len(Ls) == count == lagrangian_count(*pn)
    assert len({L.rows for L in Ls}) == count
    assert all(L.dim == n and L.is_isotropic() for L in Ls)


@pytest.mark.parametrize("pn", [(2, 1), (3, 1), (2, 2), (5, 1)])
def test_lagrangians_against_brute_force(pn):
    assert {L.rows for L in enumerate_lagrangians(*pn)} == brute_lagrangians(*pn)


@pytest.mark.parametrize("pn,count", [((2, 1), 1), ((3, 1), 1), ((2, 2), 6), ((5, 1), 1), ((7, 1), 1)])
def test_spread_counts_small(pn, count):
    assert len(enumerate_spreads(*pn)) == count


def test_spread_count_d8():
    t = time.monotonic()
    spreads = enumerate_spreads(2, 3)
    assert len(spreads) == 960
    assert time.monotonic() - t < 300
    assert all(len(s.members) == 9 for s in spreads)


def test_d4_spreads_against_brute_force():
    """All 5-subsets of the 15 Lagrangians that pairwise meet only in 0."""
    Ls = enumerate_lagrangians(2, 2)
    brute = [
        c for c in itertools.combinations(range(15), 5)
        if all(Ls[a].intersection_dim(Ls[b]) == 0 for a, b in itertools.combinations(c, 2))
    ]
    assert len(brute) == 6
    got = {tuple(sorted(s.indices())) for s in enumerate_spreads(2, 2)}
    assert got == set(brute)


def test_every_spread_is_a_spread():
    for p, n in [(2, 2), (3, 1), (2, 3)]:
        for s in enumerate_spreads(p, n):
            assert is_spread(s.members)


def test_is_spread_rejects():
    Ls = enumerate_lagrangians(2, 2)
    assert not is_spread(Ls[:5]) or len({L.rows for L in Ls[:5]}) == 5
    assert not is_spread(Ls[:4])
    assert not is_spread([])


def test_lagrangian_validation():
    with pytest.raises(ValueError):
        Lagrangian.span([[1, 0, 1, 0]], 2, 4)  # dimension 1 in F_2^4
    with pytest.raises(ValueError):
        Lagrangian.span([[1, 0, 0, 0], [0, 0, 1, 0]], 2, 4)  # not isotropic


def test_guard_for_d16():
    with pytest.raises(ResourceLimitError):
        enumerate_spreads(2, 4)


def test_spread_json_round_trip():
    s = enumerate_spreads(2, 2)[3]
    assert Spread.from_json(s.to_json()) == s


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 2), (2, 3), (3, 1), (5, 1)]), st.lists(st.integers(0, 50), min_size=1, max_size=10),
       st.integers(0, 10**6))
def test_symplectic_images_of_spreads_are_listed(pn, word, pick):
    p, n = pn
    gens = sp_generators(p, n)
    F = np.eye(2 * n, dtype=np.int64)
    for w in word:
        F = (F @ gens[w % len(gens)]) % p
    spreads = enumerate_spreads(p, n)
    s = spreads[pick % len(spreads)]
    img = s.image(F)
    assert img in set(spreads)
    assert is_spread(img.members)


def test_lagrangian_table_image():
    t = lagrangian_table(2, 2)
    F = sp_generators(2, 2)[0]
    perm = fp.linear_permutation(F, 2)
    for i, L in enumerate(t.lagrangians):
        assert t.lagrangians[t.image(perm, i)] == L.image(F)
