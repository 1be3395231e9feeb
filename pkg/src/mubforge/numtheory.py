"""Zsigmondy primes, multiplicative orders and small-integer factoring."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from math import gcd

# b^a - 1 above this is refused; trial division is the only factoring used
MAX_VALUE = 2**63 - 1


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division."""
    if m < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    k = 2
    while k * k <= m:
        while m % k == 0:
            out[k] = out.get(k, 0) + 1
            m //= k
        k += 1 if k == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def prime_divisors(m: int) -> list[int]:
    return sorted(factorize(m))


def divisors(m: int) -> list[int]:
    ds = [1]
    for r, e in factorize(m).items():
        ds = [d * r**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def euler_phi(m: int) -> int:
    out = m
    for r in factorize(m):
        out = out // r * (r - 1)
    return out


def multiplicative_order(x: int, m: int) -> int:
    """Least k >= 1 with x^k = 1 (mod m)."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if gcd(x, m) != 1:
        raise ValueError(f"{x} is not invertible mod {m}")
    k = euler_phi(m)
    for r in factorize(k):
        while k % r == 0 and pow(x, k // r, m) == 1:
            k //= r
    return k


def primitive_root(p: int) -> int:
    for g in range(1, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise ValueError(f"no primitive root mod {p}")


def is_power_of_two(m: int) -> bool:
    return m > 0 and m & (m - 1) == 0


@dataclass(frozen=True)
class ZsigmondyResult:
    b: int
    a: int
    primes: tuple[int, ...]
    exceptional: bool

    def to_json(self) -> str:
        d = asdict(self)
        d["primes"] = list(self.primes)
        return json.dumps(d)


def zsigmondy_primes(b: int, a: int) -> ZsigmondyResult:
    """All primes dividing b^a - 1 but no b^j - 1 with j < a."""
    if b < 2 or a < 1:
        raise ValueError("need b >= 2 and a >= 1")
    value = b**a - 1
    if value > MAX_VALUE:
        raise OverflowError(f"{b}^{a} - 1 is beyond the supported range")
    primes = tuple(
        r for r in prime_divisors(value) if all((b**j - 1) % r for j in range(1, a))
    )
    return ZsigmondyResult(b, a, primes, exceptional=not primes)


def zsigmondy_exceptional(b: int, a: int) -> bool:
    """The classical exception list of Zsigmondy's theorem (a >= 2)."""
    return (b, a) == (2, 6) or (a == 2 and is_power_of_two(b + 1))
