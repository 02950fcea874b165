"""Integer foundations: factorization, phi/omega, prime and P+ sieves, discrete logs.

All inputs are Python ints in the unsigned 64-bit range.  Sieve tables are
numpy arrays indexed directly by n (entry 0 is unused).
"""
from __future__ import annotations

import math
import os
from functools import lru_cache
from typing import Iterator, NamedTuple

import numpy as np

U64_MAX = 2**64 - 1

# Largest limit for which lpf_sieve builds a dense in-memory table.
# Beyond this, callers should stream with lpf_segments().
DENSE_SIEVE_LIMIT = 10**8
# Hard ceiling for any sieve request (dense or segmented).
MAX_SIEVE_LIMIT = 10**10

# Re-exponentiate every discrete log result.  Enabled by the test-suite.
CHECK_DLOG = os.environ.get("PRIMENONRES_CHECK", "") not in ("", "0")

_TRIAL_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class ResourceLimitError(ValueError):
    """Requested table size exceeds the configured maximum."""


class NotInGroupError(ValueError):
    pass


class Factorization(NamedTuple):
    n: int
    factors: tuple[tuple[int, int], ...]

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


def _check_domain(n: int) -> None:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    if n > U64_MAX:
        raise OverflowError(f"{n} exceeds the 64-bit domain")


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(_TRIAL_LIMIT))


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64 (fixed witness set)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n."""
    for c in range(1, n):
        y, r, q, g = 2, 1, 1, 1
        m = 128
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    d = _pollard_brent(n)
    _split(d, out)
    _split(n // d, out)


_SPF_SMALL_LIMIT = 1 << 20


@lru_cache(maxsize=1)
def _small_spf() -> np.ndarray:
    spf = np.zeros(_SPF_SMALL_LIMIT + 1, dtype=np.int32)
    for p in primes_upto(_SPF_SMALL_LIMIT)[::-1]:
        spf[p::p] = p
    return spf


def factorize(n: int) -> Factorization:
    """Prime factorization of 1 <= n < 2**64.

    Small n go through a cached smallest-prime-factor table; larger n are
    trial-divided up to 10**6 and the cofactor is split with Pollard rho.
    """
    _check_domain(n)
    orig = n = int(n)
    out: dict[int, int] = {}
    if n <= _SPF_SMALL_LIMIT:
        spf = _small_spf()
        while n > 1:
            p = int(spf[n])
            out[p] = out.get(p, 0) + 1
            n //= p
        return Factorization(orig, tuple(sorted(out.items())))
    for p in _trial_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        _split(n, out)
    return Factorization(orig, tuple(sorted(out.items())))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n).factors:
        result -= result // p
    return result


def omega(n: int) -> int:
    """Number of distinct prime divisors."""
    return len(factorize(n).factors)


def largest_prime_factor(n: int) -> int:
    """P+(n), with P+(1) = 1."""
    f = factorize(n).factors
    return f[-1][0] if f else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def _table_dtype(limit: int):
    return np.uint32 if limit < 2**32 else np.uint64


def lpf_sieve(limit: int) -> np.ndarray:
    """Largest-prime-factor table t with t[n] = P+(n) for 1 <= n <= limit.

    t[0] is 0 and t[1] is 1.  Limits above DENSE_SIEVE_LIMIT raise
    ResourceLimitError; use lpf_segments() to stream larger ranges.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > DENSE_SIEVE_LIMIT:
        raise ResourceLimitError(
            f"dense sieve limit {DENSE_SIEVE_LIMIT} exceeded ({limit}); use lpf_segments"
        )
    table = np.zeros(limit + 1, dtype=_table_dtype(limit))
    table[1] = 1
    primes = primes_upto(limit)
    root = math.isqrt(limit)
    small = primes[primes <= root]
    large = primes[primes > root]
    # ascending order so the largest prime dividing n is written last
    for p in small:
        table[p::p] = p
    # a prime > sqrt(limit) divides n <= limit at most once, and is then P+(n)
    for j in range(1, root + 1):
        ps = large[: np.searchsorted(large, limit // j, side="right")]
        if ps.size == 0:
            break
        table[ps * j] = ps
    return table


def spf_sieve(limit: int) -> np.ndarray:
    """Smallest-prime-factor table s with s[n] = P-(n) for 2 <= n <= limit (s[0] = 0, s[1] = 1)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > DENSE_SIEVE_LIMIT:
        raise ResourceLimitError(f"dense sieve limit {DENSE_SIEVE_LIMIT} exceeded ({limit})")
    table = np.zeros(limit + 1, dtype=_table_dtype(limit))
    # descending, so the smallest prime is written last
    for p in primes_upto(math.isqrt(limit))[::-1]:
        table[p * p :: p] = p
    unset = np.flatnonzero(table == 0)
    table[unset] = unset
    return table


def lpf_segments(limit: int, segment: int = 1 << 22, start: int = 1) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (lo, t) with t[i] = P+(lo + i), covering [start, limit] in blocks.

    Memory is O(segment + sqrt(limit)).  Each block divides out all primes up
    to sqrt(hi); whatever cofactor survives is a prime larger than them.
    """
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceLimitError(f"sieve limit {MAX_SIEVE_LIMIT} exceeded ({limit})")
    base = primes_upto(math.isqrt(limit) + 1)
    lo = max(1, start)
    while lo <= limit:
        hi = min(lo + segment, limit + 1)
        rem = np.arange(lo, hi, dtype=np.uint64)
        lpf = np.ones(hi - lo, dtype=np.uint64)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            first = (-lo) % p
            if first >= hi - lo:
                continue
            lpf[first::p] = p
            pk = p
            while pk < hi:
                idx = np.arange((-lo) % pk, hi - lo, pk)
                if idx.size == 0:
                    break
                rem[idx] //= p
                pk *= p
        big = rem > 1
        lpf[big] = rem[big]
        yield lo, lpf
        lo = hi


# -- discrete logarithms ---------------------------------------------------


@lru_cache(maxsize=4096)
def _baby_steps(g: int, d: int, pe: int) -> tuple[dict[int, int], int, int]:
    s = math.isqrt(d - 1) + 1 if d > 1 else 1
    table: dict[int, int] = {}
    cur = 1
    for j in range(s):
        table.setdefault(cur, j)
        cur = cur * g % pe
    giant = pow(g, -s, pe)  # g^{-s}
    return table, s, giant


def discrete_log(g: int, d: int, pe: int, t: int) -> int:
    """Exponent x in [0, d) with g^x = t (mod pe), by baby-step/giant-step.

    g must generate a cyclic group of order d modulo pe.
    """
    if math.gcd(t, pe) != 1:
        raise NotInGroupError(f"{t} is not a unit modulo {pe}")
    t %= pe
    if pe == 1 or d == 1:
        return 0
    table, s, giant = _baby_steps(g, d, pe)
    y = t
    for i in range(s + 1):
        j = table.get(y)
        if j is not None:
            x = (i * s + j) % d
            if CHECK_DLOG:
                assert pow(g, x, pe) == t, (g, d, pe, t, x)
            return x
        y = y * giant % pe
    raise ArithmeticError(f"no solution for {g}^x = {t} mod {pe} (order {d})")
