import pytest
from hypothesis import given, strategies as st

from kusphere import arith
from kusphere.errors import InputError

ODD_PRIMES = [3, 5, 7, 11, 13]


def brute_valuation(n, q):
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


def brute_order(ell, m):
    return next(t for t in range(1, m + 1) if pow(ell, t, m) == 1)


@pytest.mark.parametrize("n,q,want", [(63, 3, 2), (1, 5, 0), (81, 3, 4), (-50, 5, 2)])
def test_q_valuation(n, q, want):
    assert arith.vq(n, q) == want


def test_valuation_of_zero_is_infinite():
    v = arith.q_valuation(0, 3)
    assert v.infinite and str(v) == "inf"
    with pytest.raises(InputError):
        int(v)


def test_valuation_rejects_composite():
    with pytest.raises(InputError):
        arith.q_valuation(12, 9)


@pytest.mark.parametrize("ell,m,want", [(2, 9, 6), (1, 9, 1), (4, 9, 3), (1, 1, 1), (3, 49, 42)])
def test_multiplicative_order(ell, m, want):
    assert arith.multiplicative_order(ell, m) == want


def test_order_needs_unit():
    with pytest.raises(InputError):
        arith.multiplicative_order(3, 9)


@pytest.mark.parametrize("ell,m,want", [(2, 9, True), (4, 9, False), (2, 3, True), (3, 25, True), (7, 25, False)])
def test_is_primitive(ell, m, want):
    assert arith.is_primitive_mod(ell, m) is want


def test_is_primitive_rejects_multiple_of_q():
    with pytest.raises(InputError):
        arith.is_primitive_mod(6, 9)


def test_smallest_primitive_roots():
    assert [arith.smallest_primitive_root(m) for m in (3, 9, 27, 5, 25, 7, 49, 11)] == [2, 2, 2, 2, 2, 3, 3, 2]


@pytest.mark.parametrize("args,want", [((2, 6, 3), 2), ((2, 1, 3), 0), ((2, 18, 3), 3)])
def test_nu_power_minus_one(args, want):
    assert arith.nu_q_power_minus_one(*args) == want
    assert arith.nu_q_power_minus_one_bigint(*args) == want


@pytest.mark.parametrize("q,k,want", [(3, 2, 6), (3, 0, 1), (5, 3, 100), (7, 1, 6)])
def test_euler_phi(q, k, want):
    assert arith.euler_phi_prime_power(q, k) == want


@given(st.sampled_from(ODD_PRIMES), st.integers(1, 10**6), st.integers(1, 60))
def test_lte_matches_bigint(q, ell, e):
    if ell % q == 0 or ell == 1:
        return
    assert arith.nu_q_power_minus_one(ell, e, q) == brute_valuation(ell**e - 1, q)


@given(st.sampled_from(ODD_PRIMES), st.integers(2, 500), st.integers(-40, 40).filter(bool))
def test_unit_power_matches_rational_valuation(q, ell, d):
    if ell % q == 0:
        return
    # for d < 0: ell^d - 1 = (1 - ell^|d|) / ell^|d| and ell is a unit
    assert arith.nu_q_unit_power_minus_one(ell, d, q) == brute_valuation(ell ** abs(d) - 1, q)


@given(st.sampled_from([9, 27, 25, 125, 49, 343, 121]), st.integers(1, 2000))
def test_primitivity_matches_brute_order(m, ell):
    q, j = arith.prime_power_decomposition(m)
    if ell % q == 0:
        return
    assert arith.multiplicative_order(ell, m) == brute_order(ell, m)
    assert arith.is_primitive_mod(ell, m) == (brute_order(ell, m) == q**j - q ** (j - 1))


@given(st.sampled_from([3, 5, 7]), st.integers(1, 4), st.integers(1, 4))
def test_primitive_mod_q_power_descends(q, j, k):
    # primitive mod q^j implies primitive mod every q^k
    for ell in arith.primitive_roots(q**j):
        assert arith.is_primitive_mod(ell, q ** min(j, k))


@given(st.integers(2, 10**5))
def test_q_part_divides(n):
    for q in (3, 5, 7):
        part = arith.q_part(n, q)
        assert n % part == 0 and (n // part) % q
