import numpy as np
import pytest

from mubforge.suites import (
    LEMMA_CASES,
    canonical_zsigmondy_matrix,
    dimension16_suite,
    parity_argument_check,
    reports_markdown,
    verify_order20_group,
    zsigmondy_spectrum_check,
)


def test_order20_group():
    rep = verify_order20_group(tol=1e-9)
    assert rep.ok, str(rep)
    assert len(rep.checks) >= 6


@pytest.mark.parametrize("p", [3, 5, 7])
def test_parity_argument(p):
    rep = parity_argument_check(p)
    assert rep.ok, str(rep)


def test_parity_rejects_even():
    with pytest.raises(ValueError):
        parity_argument_check(2)


@pytest.mark.parametrize("p,n", [(2, 2), (2, 4)])
def test_spectrum(p, n):
    rep = zsigmondy_spectrum_check(p, n)
    assert rep.ok, str(rep)
    U, r = canonical_zsigmondy_matrix(p, n)
    assert abs(np.trace(U) + 1) < 1e-8
    assert np.allclose(np.linalg.matrix_power(U, r), np.eye(p**n), atol=1e-8)


def test_spectrum_guard():
    with pytest.raises(ValueError):
        zsigmondy_spectrum_check(3, 1)


def test_dimension16():
    rep = dimension16_suite()
    assert rep.ok, str(rep)
    assert rep.data["verdict"] == "NOT_SHARPLY_COVARIANT"
    assert rep.data["component_ranks"] == [8, 8]


def test_markdown():
    rep = verify_order20_group()
    md = reports_markdown([rep])
    assert rep.title in md and "| check | status |" in md


def test_lemma_cases():
    assert (2, 3) in LEMMA_CASES and len(LEMMA_CASES) == 7
