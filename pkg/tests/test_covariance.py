import numpy as np
import pytest

from mubforge.clifford import CliffordLabel, clifford_generators
from mubforge.covariance import (
    INCONCLUSIVE,
    NOT_SHARP,
    SHARP,
    PermAction,
    SymmetryGroup,
    clifford_orbit_on_spreads,
    conjugacy_classes,
    has_unitary_index2,
    is_fiducial_for_all,
    is_regular,
    regular_subgroup_search,
    sharp_search,
    spread_symmetry_group,
)
from mubforge.spreads import enumerate_spreads


@pytest.mark.parametrize("p,n,order,ext", [(2, 1, 24, 48), (3, 1, 216, 432), (5, 1, 3000, 6000), (2, 2, 1920, 3840)])
def test_symmetry_orders(p, n, order, ext):
    s = enumerate_spreads(p, n)[0]
    assert spread_symmetry_group(s).order == order
    assert SymmetryGroup(s, extended=True).order == ext


def test_d4_quotient_is_s5():
    sym = SymmetryGroup(enumerate_spreads(2, 2)[0])
    assert sym.quotient_order() == 120 and sym.basis_action_order() == 120


def test_d2_symmetry_is_whole_clifford_group():
    sym = SymmetryGroup(enumerate_spreads(2, 1)[0])
    from mubforge.groups import LabelGroup

    full = LabelGroup.generate(clifford_generators(2, 1))
    assert sym.label_group().key() == full.key()


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_exact_action_matches_numerics(p, n, rng):
    act = PermAction(enumerate_spreads(p, n)[0])
    sym = SymmetryGroup(enumerate_spreads(p, n)[0], extended=True)
    for _ in range(8):
        g = sym.label(int(rng.integers(sym.order)))
        assert np.array_equal(act.permutation(g), act.numeric_permutation(g))


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_action_is_homomorphism(p, n, rng):
    sym = SymmetryGroup(enumerate_spreads(p, n)[0], extended=True)
    act = sym.action
    for _ in range(8):
        a = sym.label(int(rng.integers(sym.order)))
        b = sym.label(int(rng.integers(sym.order)))
        assert np.array_equal(act.permutation(a * b), act.permutation(a)[act.permutation(b)])


def test_non_symmetry_rejected():
    from mubforge.covariance import NotASymmetry

    s = enumerate_spreads(2, 2)
    act = PermAction(s[0])
    # some Clifford element moves spread 0 to another spread
    gens = clifford_generators(2, 2)
    with pytest.raises(NotASymmetry):
        for g in gens:
            act.permutation(g)


def _brute_regular(sym):
    """Oracle: every regular subgroup is generated by two of its elements."""
    G = sym.perms
    P, m = G.perms, G.m
    fixed_free = [i for i in range(len(P)) if i == 0 or np.all(P[i] != np.arange(m))]
    out = set()
    for a in fixed_free:
        for b in fixed_free:
            if b < a:
                continue
            H = {0}
            frontier = [0]
            ok = True
            while frontier and ok:
                nxt = []
                for x in frontier:
                    for g in (a, b):
                        y = G.mul(g, x)
                        if y not in H:
                            H.add(y)
                            nxt.append(y)
                            if len(H) > m:
                                ok = False
                frontier = nxt
            if ok and len(H) == m and sorted(P[list(H)][:, 0].tolist()) == list(range(m)):
                out.add(frozenset(H))
    return out


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1)])
def test_search_matches_brute_force(p, n):
    sym = SymmetryGroup(enumerate_spreads(p, n)[0], extended=True)
    res = regular_subgroup_search(sym)
    assert res.complete
    assert {frozenset(R.elements) for R in res.groups} == _brute_regular(sym)


def test_d2_verdict():
    v = sharp_search(2, 1, antiunitary=True)
    assert v.status == SHARP
    assert len(v.unitary_regular_groups) == 4 and len(v.antiunitary_regular_groups) == 4
    for R in v.unitary_regular_groups + v.antiunitary_regular_groups:
        assert is_regular(v.symmetry, R) and is_fiducial_for_all(v.symmetry, R)
    for R in v.antiunitary_regular_groups:
        assert has_unitary_index2(v.symmetry, R)
    assert [len(c) for c in v.unitary_classes] == [4]


def test_d2_regular_groups_give_the_mub():
    """The orbit of one state under a unitary regular group is the whole MUB, numerically."""
    from mubforge.mub import build_mub, state_index_for

    v = sharp_search(2, 1)
    mub = build_mub(enumerate_spreads(2, 1)[0])
    psi = mub.state_vectors()[:, 0]
    for R in v.unitary_regular_groups:
        hits = set()
        for g in R.labels(v.symmetry):
            V, _ = g.matrix()
            hits.add(state_index_for(mub, V @ psi))
        assert hits == set(range(6))


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1)])
def test_odd_prime_not_sharp(p, n):
    for anti in (False, True):
        v = sharp_search(p, n, antiunitary=anti)
        assert v.status == NOT_SHARP
        assert not v.unitary_regular_groups and not v.antiunitary_regular_groups


def test_d4_verdict():
    v = sharp_search(2, 2, antiunitary=True)
    assert v.status == SHARP
    assert len(v.unitary_regular_groups) == 96 and len(v.antiunitary_regular_groups) == 96
    assert [len(c) for c in v.unitary_classes] == [96]
    assert all(is_regular(v.symmetry, R) for R in v.unitary_regular_groups[:5])


def test_tiny_budget_is_inconclusive():
    v = sharp_search(2, 2, antiunitary=True, budget=0.0)
    assert v.status == INCONCLUSIVE and not v.unitary_classes
    sym = SymmetryGroup(enumerate_spreads(3, 1)[0])
    assert not regular_subgroup_search(sym, budget=0.0).complete
    assert regular_subgroup_search(sym, budget=60.0).complete


def test_bad_spread_index():
    with pytest.raises(IndexError):
        sharp_search(2, 2, spread_index=6)


def test_verdict_dict():
    d = sharp_search(2, 1).to_dict()
    assert d["unitary_count"] == 4 and d["status"] == SHARP
    assert "elapsed" not in d


@pytest.mark.parametrize("p,n,sizes", [(2, 1, [1]), (3, 1, [1]), (2, 2, [6])])
def test_orbits(p, n, sizes):
    r = clifford_orbit_on_spreads(p, n)
    assert sorted(r.orbit_sizes) == sizes


def test_conjugacy_classes_trivial_input():
    sym = SymmetryGroup(enumerate_spreads(2, 1)[0])
    assert conjugacy_classes(sym, []) == []
