"""Elementary number theory on exact integers.

Everything here is small-modulus arithmetic: q-adic valuations, orders in
(Z/m)^x, primitivity, and the valuation of l^e - 1 computed through the
order of l mod q followed by lifting the exponent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import InputError


@dataclass(frozen=True)
class Valuation:
    """Exponent of a prime in an integer; ``infinite`` marks the input 0."""

    value: int = 0
    infinite: bool = False

    def __int__(self):
        if self.infinite:
            raise InputError("valuation of 0 is infinite")
        return self.value

    def __str__(self):
        return "inf" if self.infinite else str(self.value)


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_prime(q):
    if not is_prime(q):
        raise InputError(f"{q} is not prime")


def q_valuation(n: int, q: int) -> Valuation:
    """Largest e with q**e dividing n."""
    _require_prime(q)
    if n == 0:
        return Valuation(infinite=True)
    n = abs(n)
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return Valuation(e)


def vq(n: int, q: int) -> int:
    """Finite q-adic valuation as a plain int; raises on 0."""
    return int(q_valuation(n, q))


def q_part(n: int, q: int) -> int:
    """The largest power of q dividing n (1 for units, 0 for 0)."""
    if n == 0:
        return 0
    return q ** vq(n, q)


def prime_power_decomposition(m: int) -> tuple[int, int]:
    """Return (q, j) with m == q**j; raise unless m is a prime power (m=1 gives (1, 0))."""
    if m < 1:
        raise InputError(f"{m} is not a positive integer")
    if m == 1:
        return 1, 0
    q = 2
    while m % q:
        q += 1
    j = 0
    while m % q == 0:
        m //= q
        j += 1
    if m != 1:
        raise InputError("modulus is not a prime power")
    return q, j


def euler_phi_prime_power(q: int, k: int) -> int:
    if k < 0:
        raise InputError("exponent must be nonnegative")
    if k == 0:
        return 1
    return q**k - q ** (k - 1)


def multiplicative_order(ell: int, m: int) -> int:
    """Least t >= 1 with ell**t == 1 mod m."""
    if m < 1:
        raise InputError("modulus must be positive")
    if gcd(ell, m) != 1:
        raise InputError(f"{ell} is not a unit mod {m}")
    if m == 1:
        return 1
    base = ell % m
    x, t = base, 1
    while x != 1:
        x = x * base % m
        t += 1
    return t


def is_primitive_mod(ell: int, m: int) -> bool:
    """True iff ell generates (Z/m)^x for the prime power m = q**j."""
    q, j = prime_power_decomposition(m)
    if j == 0:
        return True
    if ell % q == 0:
        raise InputError(f"{ell} is divisible by {q}")
    return multiplicative_order(ell, m) == euler_phi_prime_power(q, j)


def primitive_roots(m: int) -> list[int]:
    """All 1 <= l < m primitive mod the odd prime power m."""
    if m == 1:
        return [1]
    q, _ = prime_power_decomposition(m)
    return [l for l in range(1, m) if l % q and is_primitive_mod(l, m)]


def smallest_primitive_root(m: int) -> int:
    """Smallest positive integer primitive mod m (for m = 1 this is 2)."""
    if m == 1:
        return 2
    q, _ = prime_power_decomposition(m)
    l = 2
    while l % q == 0 or not is_primitive_mod(l, m):
        l += 1
    return l


def nu_q_power_minus_one(ell: int, e: int, q: int) -> int:
    """nu_q(ell**e - 1) for odd prime q, without forming ell**e.

    Let t be the order of ell mod q. If t does not divide e the answer is 0;
    otherwise lifting the exponent gives nu_q(ell**t - 1) + nu_q(e // t).
    """
    _require_prime(q)
    if q == 2:
        raise InputError("q must be odd")
    if e < 1:
        raise InputError("exponent must be positive")
    if ell % q == 0:
        raise InputError(f"{ell} is divisible by {q}")
    t = multiplicative_order(ell, q)
    if e % t:
        return 0
    base = ell**t - 1
    if base == 0:
        raise InputError(f"{ell}**{e} - 1 vanishes; valuation is infinite")
    return vq(base, q) + vq(e // t, q)


def nu_q_power_minus_one_bigint(ell: int, e: int, q: int) -> int:
    """Reference evaluation through the full big integer ell**e - 1."""
    v = q_valuation(ell**e - 1, q)
    if v.infinite:
        raise InputError(f"{ell}**{e} - 1 vanishes; valuation is infinite")
    return v.value


def nu_q_unit_power_minus_one(ell: int, d: int, q: int) -> int:
    """nu_q(ell**d - 1) for any nonzero integer d, ell a q-adic unit.

    For d < 0, ell**d - 1 = -ell**d * (ell**|d| - 1) and ell**d is a unit.
    """
    if d == 0:
        raise InputError("d must be nonzero")
    return nu_q_power_minus_one(ell, abs(d), q)
