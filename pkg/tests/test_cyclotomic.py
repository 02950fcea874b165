import cmath
import math

import numpy as np
from hypothesis import given, strategies as st

from primenonres.cyclotomic import CyclotomicInt, cyclotomic_poly, power_basis, reduce_counts


def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_power_basis_is_zeta_powers():
    for k in (1, 2, 3, 5, 8, 12, 30):
        z = cmath.exp(2j * math.pi / k)
        B = power_basis(k)
        for j in range(k):
            val = sum(c * z**i for i, c in enumerate(B[j]))
            assert abs(val - z**j) < 1e-9


def test_full_orbit_sums_to_zero():
    for k in range(2, 40):
        assert not reduce_counts(np.ones(k, dtype=np.int64), k).any()


@given(st.integers(2, 36), st.lists(st.integers(-50, 50), min_size=36, max_size=36))
def test_exact_matches_float(k, counts):
    c = np.array(counts[:k])
    exact = CyclotomicInt.from_counts(c, k)
    z = cmath.exp(2j * math.pi / k)
    assert abs(complex(exact) - sum(int(a) * z**j for j, a in enumerate(c))) < 1e-6


def test_arithmetic_and_equality():
    k = 6
    a = CyclotomicInt.root(1, k)
    b = CyclotomicInt.root(5, k)
    # zeta + zeta^-1 = 1 for k = 6
    assert a + b == 1
    assert (a - a) == 0
    assert CyclotomicInt.from_int(3, 4).lift(12) == 3
    assert CyclotomicInt.root(1, 2) == -1
    assert int(CyclotomicInt.root(2, 4)) == -1
    assert not CyclotomicInt.root(1, 3).is_rational()


def test_lift_preserves_value():
    x = CyclotomicInt.from_counts([3, -1, 4], 3)
    y = x.lift(12)
    assert abs(complex(x) - complex(y)) < 1e-12
    assert x == y
