"""Exact arithmetic in Z[zeta_k].

Elements are integer coefficient vectors in the power basis
1, zeta, ..., zeta^(phi(k)-1), i.e. polynomials reduced modulo the k-th
cyclotomic polynomial.  That representation is canonical, so equality and
"is zero" are plain integer comparisons.

Sums of roots of unity are accumulated as a count vector c in Z^k (c[j]
counts occurrences of zeta^j) and reduced once with ``reduce_counts``.
"""
from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np

from .arithmetic import divisors, euler_phi


@lru_cache(maxsize=None)
def cyclotomic_poly(k: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of Phi_k."""
    # X^k - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (k - 1) + [1]
    for d in divisors(k):
        if d == k:
            continue
        num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]  # den is monic
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num[:dn]), "inexact cyclotomic division"
    return out


@lru_cache(maxsize=None)
def power_basis(k: int) -> np.ndarray:
    """Row j holds zeta_k^j in the power basis; shape (k, phi(k))."""
    phi = cyclotomic_poly(k)
    deg = len(phi) - 1
    rows = np.zeros((k, deg), dtype=np.int64)
    cur = [0] * deg
    cur[0] = 1
    for j in range(k):
        rows[j] = cur
        # multiply by X and reduce the X^deg term with the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * phi[i] for i, c in enumerate(cur)]
    rows.setflags(write=False)
    return rows


def reduce_counts(counts, k: int) -> np.ndarray:
    """Map count vector(s) over the k-th roots of unity to the power basis.

    ``counts`` has shape (k,) or (batch, k).  Returns int64 coefficients
    (object dtype if the magnitudes could overflow int64).
    """
    counts = np.asarray(counts)
    basis = power_basis(k)
    bound = int(np.abs(counts).max(initial=0)) * int(np.abs(basis).max(initial=1)) * k
    if bound < 2**62:
        return counts.astype(np.int64) @ basis
    return counts.astype(object) @ basis.astype(object)


class CyclotomicInt:
    """An element of Z[zeta_k] in canonical power-basis form."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs):
        self.k = int(k)
        self.coeffs = tuple(int(c) for c in coeffs)
        if len(self.coeffs) != euler_phi(self.k):
            raise ValueError("coefficient vector length must be phi(k)")

    @classmethod
    def from_counts(cls, counts, k: int) -> "CyclotomicInt":
        return cls(k, reduce_counts(np.asarray(counts), k))

    @classmethod
    def from_int(cls, n: int, k: int = 1) -> "CyclotomicInt":
        coeffs = [0] * euler_phi(k)
        coeffs[0] = n
        return cls(k, coeffs)

    @classmethod
    def root(cls, j: int, k: int) -> "CyclotomicInt":
        return cls(k, power_basis(k)[j % k])

    def lift(self, K: int) -> "CyclotomicInt":
        """Same element viewed in Z[zeta_K], for k | K."""
        if K % self.k:
            raise ValueError(f"{self.k} does not divide {K}")
        counts = np.zeros(K, dtype=object)
        step = K // self.k
        for i, c in enumerate(self.coeffs):
            counts[i * step] += c
        return CyclotomicInt(K, reduce_counts(counts, K))

    def _common(self, other: "CyclotomicInt"):
        if self.k == other.k:
            return self, other
        K = self.k * other.k // math.gcd(self.k, other.k)
        return self.lift(K), other.lift(K)

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(other, self.k)
        a, b = self._common(other)
        return CyclotomicInt(a.k, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.k, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not a rational integer")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CyclotomicInt):
            a, b = self._common(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    __hash__ = None  # equal values may live in different fields

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.k)
        return sum((c * z**i for i, c in enumerate(self.coeffs) if c), 0j)

    def __repr__(self):
        return f"CyclotomicInt(k={self.k}, coeffs={self.coeffs})"
