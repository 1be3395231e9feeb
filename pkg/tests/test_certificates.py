from fractions import Fraction

import numpy as np
import pytest

from mubforge.certificates import (
    CharacterSumError,
    commutant,
    invariant_projectors,
    irreducibility_character_sum,
    reducibility,
    trace_bound_certificate,
)
from mubforge.clifford import CliffordLabel
from mubforge.groups import LabelGroup, cyclic
from mubforge.singer import cyclic_normalizer, singer_unitary


def test_strengthened_bound_saturates_only_at_4():
    c = trace_bound_certificate(4, 2, a=1, variant="strengthened")
    assert c.value == 1 and c.saturated and not c.fires
    for q, n in [(8, 3), (9, 2), (16, 4), (25, 2), (27, 3), (32, 5)]:
        c = trace_bound_certificate(q, n, a=1, variant="strengthened")
        assert c.value > 1 and c.fires and not c.saturated
    assert trace_bound_certificate(9, 2, variant="strengthened").value == Fraction(95, 90)


def test_basic_bound_with_a_one_is_trivial():
    for q, n in [(4, 2), (8, 3), (9, 2)]:
        assert trace_bound_certificate(q, n, a=1, variant="basic").value == 1


def test_basic_bound_formula():
    c = trace_bound_certificate(8, 3, a=3, variant="basic")
    assert c.value == Fraction(64 + 24, 72)


def test_antiunitary_strengthened_exceeds_two():
    for n in range(5, 11):
        q = 2**n
        c = trace_bound_certificate(q, n, variant="antiunitary_strengthened")
        assert isinstance(c.value, Fraction) and c.value > 2 and c.fires
    assert not trace_bound_certificate(16, 4, variant="antiunitary_strengthened").fires


def test_strengthened_values():
    c = trace_bound_certificate(16, 4, variant="strengthened")
    assert c.value == Fraction(16 * 16 + 16 + 8, 16 * 17) and c.fires
    assert trace_bound_certificate(4, 2, variant="strengthened").value == 1


def test_subgroup_variant():
    assert trace_bound_certificate(8, 3, variant="subgroup", h_order=72).fires
    assert trace_bound_certificate(8, 3, variant="subgroup", h_order=36).value == 2
    with pytest.raises(ValueError):
        trace_bound_certificate(8, 3, variant="subgroup", h_order=12)


@pytest.mark.parametrize("q,n,a", [(6, 1, 1), (8, 2, 1), (4, 2, 2), (9, 2, 3)])
def test_invalid_input(q, n, a):
    with pytest.raises(ValueError):
        trace_bound_certificate(q, n, a=a)


def test_unknown_variant():
    with pytest.raises(ValueError):
        trace_bound_certificate(4, 2, variant="eq3")


def test_certificate_json():
    d = trace_bound_certificate(4, 2, variant="basic").to_dict()
    assert d["value"] == "1" and d["saturated"] is True


def _hw_group(p, n):
    from mubforge.fp import all_vectors

    return LabelGroup([CliffordLabel.displacement(v, p, n) for v in all_vectors(p, 2 * n)])


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_hw_group_irreducible(p, n):
    cs = irreducibility_character_sum(_hw_group(p, n))
    assert cs.irreducible and cs.residual < 1e-9


def test_singer_group_trace_sum():
    # cyclic group of order q+1 with a nondegenerate spectrum: sum is (q^2 + q) / (q + 1)
    cs = irreducibility_character_sum(cyclic(singer_unitary(2, 2)))
    assert cs.rounded == 4 and not cs.irreducible


def test_non_integer_trace_sum_raises():
    # {1, T} with T of order 3 is not a group; its trace sum is 5/2
    t = CliffordLabel.from_symplectic(np.array([[0, 1], [1, 1]]), 2)
    with pytest.raises(CharacterSumError):
        irreducibility_character_sum(LabelGroup([CliffordLabel.identity(2, 1), t]))


def test_commutant_of_diagonal_group():
    Z = np.diag([1, -1, 1j, -1j])
    C = commutant([Z])
    assert len(C) == 4
    P = invariant_projectors([Z])
    assert sorted(int(round(np.trace(x).real)) for x in P) == [1, 1, 1, 1]


def test_d16_reducibility():
    N = cyclic_normalizer(singer_unitary(2, 4), extended=True)
    red = reducibility(N)
    assert red.commutant_dim == 2 and red.ranks == [8, 8]
    assert red.antiunitary_preserves and not red.irreducible


def test_d4_normalizer_irreducible():
    N = cyclic_normalizer(singer_unitary(2, 2))
    assert irreducibility_character_sum(N).irreducible
    assert reducibility(N).unitary_part_irreducible
