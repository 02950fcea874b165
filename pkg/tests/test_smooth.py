import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from primenonres import smooth
from primenonres.arithmetic import ResourceLimitError, euler_phi, primes_upto
from primenonres.dickman import rho
from primenonres.smooth import SmoothCountReport, psi, psi_q, smooth_part, tenenbaum_compare


def smooth_numbers(x, y, avoid=()):
    """All n <= x with P+(n) <= y and no prime factor in avoid, by depth-first generation."""
    ps = [p for p in primes_upto(int(y)).tolist() if p not in avoid]
    out = []

    def walk(i, n):
        out.append(n)
        for j in range(i, len(ps)):
            if n * ps[j] > x:
                break
            walk(j, n * ps[j])

    walk(0, 1)
    return out


def test_examples():
    assert psi(10, 2) == 4
    assert psi(20, 3) == 10
    assert psi(57.9, 100) == 57
    assert psi_q(10, 2, 1) == 4
    assert psi_q(10, 2, 2) == 1
    assert psi_q(20, 3, 3) == 5


@pytest.mark.parametrize("x, y", [(10**6, 7), (10**6, 50), (10**6, 1000), (10**6, 10**5), (999_999.5, 31.7)])
def test_psi_against_generation(x, y):
    assert psi(x, y) == len(smooth_numbers(x, math.floor(y)))


@pytest.mark.parametrize("x, y, q", [(10**5, 30, 30), (10**5, 100, 77), (10**6, 13, 2 * 3 * 5 * 7 * 11 * 13)])
def test_psi_q_against_generation(x, y, q):
    avoid = {p for p in primes_upto(int(y)).tolist() if q % p == 0}
    assert psi_q(x, y, q) == len(smooth_numbers(x, y, avoid))


def test_q_reduces_to_smooth_part():
    rng = random.Random(5)
    for _ in range(100):
        x = rng.randint(1, 10**5)
        y = rng.randint(2, 300)
        q = rng.randint(1, 10**6)
        qs = smooth_part(q, y)
        assert psi_q(x, y, q) == psi_q(x, y, qs)
        assert all(p <= y for p in primes_upto(qs).tolist() if qs % p == 0)


@given(st.integers(1, 5000), st.integers(2, 200), st.integers(0, 300), st.integers(0, 50))
@settings(max_examples=200)
def test_monotone(x, y, dx, dy):
    assert psi(x, y) <= psi(x + dx, y) <= psi(x + dx, y + dy)


def test_y_at_least_x():
    assert psi(1000, 1000) == 1000
    assert psi(1000, 5000) == 1000


def test_streaming_path_matches_cache(monkeypatch):
    x, y, q = 200_000, 40, 6
    cached = (psi(x, y), psi_q(x, y, q))
    monkeypatch.setattr(smooth, "CACHE_LIMIT", 10_000)
    assert (psi(x, y), psi_q(x, y, q)) == cached


def test_domain_errors():
    with pytest.raises(ValueError):
        psi(0.5, 2)
    with pytest.raises(ValueError):
        psi(10, 1.5)
    with pytest.raises(ValueError):
        psi_q(10, 2, 0)
    with pytest.raises(ResourceLimitError):
        psi(10**11, 100)


def test_report_unrestricted():
    r = tenenbaum_compare(10**6, 10**3)
    assert r.exact == r.psi == psi(10**6, 10**3)
    assert r.tenenbaum_pred == r.exact and r.rel_err_ten == 0
    assert r.rho_pred == pytest.approx(10**6 * rho(2))
    assert r.u == pytest.approx(2.0)
    assert 0 <= r.exact <= 10**6


def test_report_with_q():
    r = tenenbaum_compare(10**6, 10**3, 30)
    assert r.q_smooth == 30
    assert r.tenenbaum_pred == pytest.approx(r.psi * 4 / 15)
    assert r.rel_err_ten == pytest.approx(r.exact / r.tenenbaum_pred - 1)
    assert r.hypothesis_ok
    assert len(r.row()) == len(SmoothCountReport.CSV_FIELDS)


def test_report_flags_hypothesis():
    q = math.prod(primes_upto(13).tolist())
    r = tenenbaum_compare(10**4, 13, q)
    # omega(q') = 6 > 13^(1/log(1 + u))
    assert not r.hypothesis_ok
    assert r.exact == psi_q(10**4, 13, q)
    assert euler_phi(q) / q * r.psi == pytest.approx(r.tenenbaum_pred)


def test_small_scale_trend():
    ratios = [psi(x, math.sqrt(x)) / (x * rho(2)) for x in (10**4, 10**5, 10**6)]
    assert all(r > 1 for r in ratios) and ratios == sorted(ratios, reverse=True)
