"""Exact counts of smooth numbers, Psi(x, y) and Psi_q(x, y).

Counting is a linear scan of the largest-prime-factor table.  Tables up to
CACHE_LIMIT are kept in memory and reused; larger x are streamed through
arithmetic.lpf_segments so memory stays bounded.
"""
from __future__ import annotations

import math
from dataclasses import astuple, dataclass

import numpy as np

from . import arithmetic
from .arithmetic import euler_phi, factorize, lpf_segments, lpf_sieve, omega
from .dickman import MAX_U, rho

CACHE_LIMIT = 3 * 10**7

_table: np.ndarray | None = None


def _lpf_table(limit: int) -> np.ndarray:
    global _table
    if _table is None or _table.size <= limit:
        _table = lpf_sieve(max(limit, 1024))
    return _table


def _floors(x: float, y: float) -> tuple[int, int]:
    if x < 1:
        raise ValueError("x must be >= 1")
    if y < 2:
        raise ValueError("y must be >= 2")
    X, Y = math.floor(x), math.floor(y)
    if X > arithmetic.MAX_SIEVE_LIMIT:
        raise arithmetic.ResourceLimitError(f"x = {X} exceeds the sieve limit")
    return X, Y


def smooth_part(q: int, y: float) -> int:
    """Largest divisor of q supported on primes <= y."""
    out = 1
    for p, e in factorize(q).factors:
        if p <= y:
            out *= p**e
    return out


def psi(x: float, y: float) -> int:
    """Number of n <= x with P+(n) <= y (n = 1 included)."""
    return psi_q(x, y, 1)


def psi_q(x: float, y: float, q: int) -> int:
    """Number of n <= x with gcd(n, q) = 1 and P+(n) <= y."""
    X, Y = _floors(x, y)
    if q < 1:
        raise ValueError("q must be >= 1")
    if q == 1 and Y >= X:
        return X
    # only primes <= y can divide a y-smooth n
    ps = [p for p in factorize(q).primes if p <= Y]
    if X <= CACHE_LIMIT:
        smooth = _lpf_table(X)[1 : X + 1] <= Y
        for p in ps:
            smooth[p - 1 :: p] = False
        return int(np.count_nonzero(smooth))
    total = 0
    for lo, lpf in lpf_segments(X):
        smooth = lpf <= Y
        for p in ps:
            smooth[(-lo) % p :: p] = False
        total += int(np.count_nonzero(smooth))
    return total


@dataclass(frozen=True)
class SmoothCountReport:
    x: float
    y: float
    q: int
    exact: int
    rho_pred: float
    tenenbaum_pred: float
    rel_err_rho: float
    rel_err_ten: float
    hypothesis_ok: bool
    u: float
    q_smooth: int
    psi: int

    CSV_FIELDS = (
        "x", "y", "q", "exact", "rho_pred", "tenenbaum_pred",
        "rel_err_rho", "rel_err_ten", "hypothesis_ok",
    )

    def row(self) -> list:
        return list(astuple(self))[: len(self.CSV_FIELDS)]


def _rel(exact: int, pred: float) -> float:
    return exact / pred - 1 if pred > 0 else float("nan")


def tenenbaum_compare(x: float, y: float, q: int = 1) -> SmoothCountReport:
    """Exact Psi_q(x, y) against x rho(u) phi(q')/q' and phi(q')/q' Psi(x, y).

    q' is the y-smooth part of q, which leaves Psi_q unchanged.  The
    hypothesis flag records whether P+(q') <= y <= x and
    omega(q') <= y^(1/log(1+u)); a failed hypothesis is reported, not raised.
    """
    X, Y = _floors(x, y)
    qs = smooth_part(q, Y)
    density = euler_phi(qs) / qs
    u = math.log(x) / math.log(y)
    exact = psi_q(x, y, q)
    full = psi(x, y)
    rho_pred = x * rho(u) * density if u <= MAX_U else float("nan")
    ten_pred = density * full
    ok = y <= x and omega(qs) <= y ** (1 / math.log1p(u))
    return SmoothCountReport(
        x=x, y=y, q=q, exact=exact, rho_pred=rho_pred, tenenbaum_pred=ten_pred,
        rel_err_rho=_rel(exact, rho_pred), rel_err_ten=_rel(exact, ten_pred),
        hypothesis_ok=bool(ok), u=u, q_smooth=qs, psi=full,
    )
