import math

import pytest

from mubforge import numtheory as nt


def naive_primes(m):
    return [r for r in range(2, m + 1) if m % r == 0 and all(r % k for k in range(2, int(r**0.5) + 1))]


def test_factorize_and_phi():
    for m in range(1, 400):
        f = nt.factorize(m)
        assert math.prod(r**e for r, e in f.items()) == m
        assert nt.euler_phi(m) == sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def test_divisors():
    assert nt.divisors(12) == [1, 2, 3, 4, 6, 12]


def test_multiplicative_order():
    assert nt.multiplicative_order(2, 7) == 3
    assert nt.multiplicative_order(3, 7) == 6
    with pytest.raises(ValueError):
        nt.multiplicative_order(2, 4)


def test_zsigmondy_examples():
    assert nt.zsigmondy_primes(2, 4).primes == (5,)
    assert nt.zsigmondy_primes(2, 6).primes == ()
    assert nt.zsigmondy_primes(2, 6).exceptional
    assert nt.zsigmondy_primes(3, 2).primes == ()
    assert nt.zsigmondy_primes(2, 8).primes == (17,)
    assert nt.zsigmondy_primes(5, 2).primes == (3,)  # 24 = 2^3 * 3


def test_zsigmondy_exception_list():
    """Over 2 <= b <= 10, 2 <= a <= 12 the empty cases are exactly (2, 6) and a = 2, b + 1 a power of 2."""
    for b in range(2, 11):
        for a in range(2, 13):
            value = b**a - 1
            oracle = [r for r in naive_primes(value) if all((b**j - 1) % r for j in range(1, a))] if value < 2 * 10**5 else None
            res = nt.zsigmondy_primes(b, a)
            if oracle is not None:
                assert list(res.primes) == oracle
            expected_empty = (b, a) == (2, 6) or (a == 2 and (b + 1) & b == 0)
            assert (not res.primes) == expected_empty == nt.zsigmondy_exceptional(b, a), (b, a)


def test_zsigmondy_json():
    import json

    obj = json.loads(nt.zsigmondy_primes(2, 6).to_json())
    assert obj == {"b": 2, "a": 6, "primes": [], "exceptional": True}


def test_zsigmondy_overflow():
    with pytest.raises(OverflowError):
        nt.zsigmondy_primes(2, 80)
