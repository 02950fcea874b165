import cmath
import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from primenonres.arithmetic import euler_phi, is_prime
from primenonres.characters import (
    CharacterValue,
    DirichletCharacter,
    character_from_label,
    characters_of_order_dividing,
    enumerate_characters,
    evaluate,
    index_matrix,
    is_principal,
    is_quadratic,
    kronecker,
    order,
    primitive_mask,
    quadratic_characters,
    unit_group,
)
from primenonres.cyclotomic import CyclotomicInt


def mult_order(g, n):
    k, x = 1, g % n
    while x != 1:
        x, k = x * g % n, k + 1
    return k


def test_unit_group_examples():
    G = unit_group(7)
    assert [(c.g, c.d) for c in G.components] == [(3, 6)]
    assert unit_group(8).orders == (2, 2)
    G1 = unit_group(1)
    assert G1.components == () and G1.order == 1


@pytest.mark.parametrize("m", [2, 4, 8, 9, 16, 27, 32, 45, 64, 100, 120, 343, 1000, 1024, 9973])
def test_unit_group_invariants(m):
    G = unit_group(m)
    assert G.order == euler_phi(m)
    for c in G.components:
        if c.kind == "sign":
            assert c.g == c.pe - 1 and c.d == 2
        else:
            assert mult_order(c.g, c.pe) == c.d
    e = int(math.log2(m)) if m & (m - 1) == 0 else 0
    if e >= 3:
        assert G.orders == (2, 2 ** (e - 2))


def test_smallest_primitive_root():
    for p in [3, 5, 7, 11, 13, 23, 41, 71, 409]:
        g = unit_group(p).components[0].g
        assert mult_order(g, p) == p - 1
        assert all(mult_order(h, p) < p - 1 for h in range(2, g))


def test_log_vector_roundtrip():
    for m in (7, 8, 15, 16, 48, 63, 200, 997):
        G = unit_group(m)
        for n in range(m):
            v = G.log_vector(n)
            if math.gcd(n, m) > 1:
                assert v is None
                continue
            # recombine: each component fixes n modulo its prime power
            for c, a in zip(G.components, v):
                if c.kind == "sign":
                    assert (n % 4 == 3) == bool(a)
                elif c.kind == "five":
                    t = n % c.pe
                    t = c.pe - t if t % 4 == 3 else t
                    assert pow(5, a, c.pe) == t
                else:
                    assert pow(c.g, a, c.pe) == n % c.pe
            assert tuple(G.log_table[n]) == v


def test_enumeration_examples():
    assert len(enumerate_characters(7)) == 6
    assert sorted(c.order for c in enumerate_characters(8)) == [1, 2, 2, 2]
    (only,) = enumerate_characters(1)
    assert only.is_principal


def test_enumeration_counts_and_order():
    for m in range(1, 120):
        chars = enumerate_characters(m)
        assert len(chars) == euler_phi(m)
        assert len(set(chars)) == len(chars)
        assert chars[0].is_principal
        assert [c.exponents for c in chars] == sorted(c.exponents for c in chars)
        for c in chars:
            assert euler_phi(m) % c.order == 0
            assert (c.order == 1) == all(a == 0 for a in c.exponents)


def test_evaluate_examples():
    principal = enumerate_characters(7)[0]
    assert evaluate(principal, 3) == 1
    (q,) = quadratic_characters(7)
    assert evaluate(q, 3) == -1
    assert all(evaluate(c, 3).is_zero for c in enumerate_characters(6))


def test_order_examples():
    (q,) = quadratic_characters(7)
    assert order(q) == 2 and is_quadratic(q)
    assert order(enumerate_characters(12)[0]) == 1 and is_principal(enumerate_characters(12)[0])
    assert order(DirichletCharacter(unit_group(7), [1])) == 6


def test_order_is_least_power():
    for m in (15, 16, 21, 63, 80):
        for c in enumerate_characters(m):
            vals = [c.index(n) for n in range(m) if math.gcd(n, m) == 1]
            k = next(k for k in range(1, 200) if all(v * k % c.order == 0 for v in vals))
            assert k == c.order


@pytest.mark.parametrize("m", [5, 12, 16, 35, 48, 97, 105, 128])
def test_multiplicative_and_periodic(m):
    rng = random.Random(m)
    for c in enumerate_characters(m):
        for _ in range(200):
            a, b = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
            ia, ib, iab = c.index(a), c.index(b), c.index(a * b)
            if ia < 0 or ib < 0:
                assert iab < 0
            else:
                assert iab == (ia + ib) % c.order
            assert c.index(a + m) == ia


def test_values_are_kth_roots_of_unity():
    for m in (9, 20, 44, 91):
        for c in enumerate_characters(m):
            for n in range(m):
                v = c(n)
                if math.gcd(n, m) == 1:
                    assert c.order % v.den == 0
                    assert abs(complex(v) ** c.order - 1) < 1e-9
                else:
                    assert v == 0


def test_dual_orthogonality_exact():
    for m in range(1, 201):
        chars = enumerate_characters(m)
        L = unit_group(m).exponent
        for n in range(m):
            counts = np.zeros(L, dtype=np.int64)
            for c in chars:
                j = c.index(n)
                if j >= 0:
                    counts[j * (L // c.order)] += 1
            total = CyclotomicInt.from_counts(counts, L)
            assert total == (euler_phi(m) if n % m == 1 % m else 0), (m, n)


def test_character_value_equality():
    assert CharacterValue.from_index(3, 6) == CharacterValue(1, 2) == -1
    assert CharacterValue.from_index(0, 5) == 1
    assert CharacterValue.from_index(-1, 5) == 0
    assert CharacterValue.from_index(2, 6) == CharacterValue(1, 3)
    assert CharacterValue(1, 3).is_nonresidue


def test_kronecker_examples():
    assert kronecker(2, 7) == 1
    assert kronecker(3, 7) == -1
    assert all(kronecker(a, 1) == 1 for a in range(-5, 20))


def test_kronecker_is_legendre_for_odd_primes():
    for p in [3, 5, 7, 11, 13, 101, 409]:
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            expect = 0 if a == 0 else (1 if a in squares else -1)
            assert kronecker(a, p) == expect


@given(st.integers(-1000, 1000), st.integers(1, 500), st.integers(1, 500))
def test_kronecker_multiplicative_in_n(a, n1, n2):
    assert kronecker(a, n1 * n2) == kronecker(a, n1) * kronecker(a, n2)


def test_quadratic_matches_brute_squares():
    for p in [3, 5, 7, 17, 97, 1009]:
        (q,) = quadratic_characters(p)
        squares = {x * x % p for x in range(1, p)}
        assert [q.real_values(n) for n in range(1, p)] == [1 if n in squares else -1 for n in range(1, p)]


def test_characters_of_order_dividing():
    for m in (7, 24, 100, 105):
        for n in (1, 2, 3, 4, 6):
            expect = [c for c in enumerate_characters(m) if n % c.order == 0]
            assert characters_of_order_dividing(m, n) == expect


def test_label_and_json_roundtrip():
    for c in enumerate_characters(40):
        assert character_from_label(40, c.label) == c
        obj = json.loads(c.to_json())
        assert obj == {"m": 40, "exponents": list(c.exponents), "order": c.order}
        assert DirichletCharacter.from_json(c.to_json()) == c
    with pytest.raises(ValueError):
        DirichletCharacter.from_json({"m": 7, "exponents": [1], "order": 3})
    with pytest.raises(ValueError):
        character_from_label(7, "[6]")


def induced_from(c, d):
    """Brute force: c is constant 1 on units n = 1 (mod d)."""
    m = c.m
    return all(c.index(n) == 0 for n in range(1, m, d) if math.gcd(n, m) == 1)


def test_conductor_brute_force():
    for m in (12, 15, 16, 45, 63, 100):
        for c in enumerate_characters(m):
            f = c.conductor()
            assert induced_from(c, f)
            assert not any(induced_from(c, d) for d in range(1, f) if m % d == 0)


def test_primitive_counts():
    # number of primitive characters: 45 -> 12, 100 -> 16
    for m, want in ((45, 12), (100, 16), (7, 5), (4, 1), (2, 0)):
        assert sum(c.is_primitive() for c in enumerate_characters(m)) == want
        E, _ = index_matrix(m)
        assert primitive_mask(m, E).sum() == want


def test_index_matrix_matches_scalar():
    for m in (30, 64, 99):
        chars = enumerate_characters(m)
        E, L = index_matrix(m, chars)
        for j, c in enumerate(chars):
            for n in range(m):
                i = c.index(n)
                assert E[n, j] == (-1 if i < 0 else i * (L // c.order))


def test_sparse_and_table_paths_agree():
    (q,) = quadratic_characters(1_000_003)
    ns = np.array([2, 3, 5, 7, 11, 999_999, 2_000_007])
    sparse = q.indices(ns)
    assert "period_indices" not in q.__dict__
    table = q.period_indices[ns % q.m]
    assert np.array_equal(sparse, table)
    assert [q.real_values(int(n)) for n in ns] == [kronecker(int(n), q.m) for n in ns]


def test_complex_values():
    c = DirichletCharacter(unit_group(7), [1])
    vals = c.complex_values(np.arange(7))
    assert vals[0] == 0
    assert abs(vals[3] - cmath.exp(2j * math.pi / 6)) < 1e-12
    with pytest.raises(ValueError):
        c.real_values(3)
