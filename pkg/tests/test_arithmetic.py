import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primenonres import arithmetic
from primenonres.arithmetic import (
    NotInGroupError,
    ResourceLimitError,
    discrete_log,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    largest_prime_factor,
    lpf_segments,
    lpf_sieve,
    omega,
    primes_upto,
    spf_sieve,
)


def trial_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(72).factors == ((2, 3), (3, 2))
    assert factorize(2**61 - 1).factors == ((2**61 - 1, 1),)


def test_factorize_rejects_zero_and_overflow():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(OverflowError):
        factorize(2**64)


def test_factorize_roundtrip_exhaustive():
    for n in range(1, 10**6 + 1):
        f = factorize(n)
        assert f.value() == n


def test_factorize_roundtrip_sample():
    rng = random.Random(1)
    for n in [rng.randint(1, 10**6) for _ in range(5000)]:
        f = factorize(n)
        assert f.value() == n
        ps = [p for p, _ in f.factors]
        assert ps == sorted(set(ps)) and all(is_prime(p) for p in ps)


@given(st.integers(min_value=2, max_value=2**63))
@settings(max_examples=200, deadline=None)
def test_factorize_large(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p, _ in f.factors)


def test_semiprime_needs_rho():
    p, q = 1_000_003, 998_244_353
    assert factorize(p * q).factors == ((p, 1), (q, 1))


def test_is_prime_matches_trial_division():
    ps = set(trial_primes(5000))
    assert all(is_prime(n) == (n in ps) for n in range(5001))
    # strong pseudoprimes to several small bases
    for n in (3215031751, 3825123056546413051, 318665857834031151167461):
        if n < 2**64:
            assert not is_prime(n)


def test_primes_upto():
    assert primes_upto(1).tolist() == []
    assert primes_upto(30).tolist() == trial_primes(30)
    assert primes_upto(10**5).size == 9592


def test_phi_omega_examples():
    assert (euler_phi(1), omega(1)) == (1, 0)
    assert (euler_phi(12), omega(12)) == (4, 2)
    assert euler_phi(7) == 6


def test_phi_by_gcd_counting():
    for n in range(1, 2001):
        assert euler_phi(n) == sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def test_omega_by_prime_divisors():
    for n in range(1, 10**4 + 1):
        prime_divs = [d for d in divisors(n) if d > 1 and all(d % e for e in range(2, math.isqrt(d) + 1))]
        assert omega(n) == len(prime_divs)


def test_phi_by_product_formula():
    for n in range(1, 10**4 + 1):
        num, den = n, 1
        for p in {p for p, _ in factorize(n).factors}:
            num *= p - 1
            den *= p
        assert euler_phi(n) == num // den


def test_largest_prime_factor():
    assert largest_prime_factor(1) == 1
    assert largest_prime_factor(12) == 3
    assert largest_prime_factor(97) == 97


def test_lpf_multiplicative_consistency():
    rng = random.Random(2)
    for _ in range(10**4):
        a, b = rng.randint(1, 10**6), rng.randint(1, 10**6)
        assert largest_prime_factor(a * b) == max(largest_prime_factor(a), largest_prime_factor(b))


def test_lpf_sieve_examples():
    t = lpf_sieve(10)
    assert t[1:].tolist() == [1, 2, 3, 2, 5, 3, 7, 2, 3, 5]
    t = lpf_sieve(10**4)
    ps = primes_upto(10**4)
    assert (t[ps] == ps).all()


def test_lpf_sieve_pointwise():
    t = lpf_sieve(20000)
    assert all(int(t[n]) == largest_prime_factor(n) for n in range(1, 20001))


def test_lpf_sieve_limit():
    with pytest.raises(ResourceLimitError):
        lpf_sieve(arithmetic.DENSE_SIEVE_LIMIT + 1)
    with pytest.raises(ValueError):
        lpf_sieve(0)


def test_lpf_segments_match_dense():
    N = 300_001
    dense = lpf_sieve(N)
    pieces = [arr for _, arr in lpf_segments(N, segment=65536)]
    assert np.array_equal(np.concatenate(pieces), dense[1:])
    lo, arr = next(lpf_segments(N, segment=1000, start=123_457))
    assert lo == 123_457 and np.array_equal(arr, dense[lo : lo + 1000])


def test_spf_sieve():
    s = spf_sieve(5000)
    assert s[1] == 1
    assert all(int(s[n]) == factorize(n).factors[0][0] for n in range(2, 5001))


def test_discrete_log_examples():
    assert discrete_log(3, 6, 7, 1) == 0
    assert discrete_log(3, 6, 7, 3) == 1
    assert discrete_log(3, 6, 7, 6) == 3
    with pytest.raises(NotInGroupError):
        discrete_log(3, 6, 7, 14)


@given(st.integers(min_value=0, max_value=10**6 - 1))
@settings(max_examples=300, deadline=None)
def test_discrete_log_roundtrip(a):
    # 2 generates (Z/p)^x for p = 1000003
    p = 1_000_003
    d = p - 1
    assert discrete_log(2, d, p, pow(2, a, p)) == a % d


def test_discrete_log_prime_power():
    pe, g = 3**7, 2
    d = pe - pe // 3
    for a in range(0, d, 37):
        assert discrete_log(g, d, pe, pow(g, a, pe)) == a
