"""Divisor sums r(n) = sum_{d | n} chi(d), the hyperbola split of sum_{n<=x} r(n), and L(1, chi).

Everything except L(1, chi) is exact integer arithmetic; the hyperbola and
Euler-product routines are restricted to real characters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arithmetic import divisors, euler_phi, factorize, primes_upto, spf_sieve
from .characters import DirichletCharacter
from .cyclotomic import CyclotomicInt

MAX_HYPERBOLA_X = 10**7
MAX_WOLKE_M = 10**7
CSV_FIELDS = (
    "m", "x", "upsilon", "term1", "term2", "term3", "total", "direct_total",
    "l1_estimate", "tail_bound", "wolke_lhs", "wolke_rhs",
)


def _require_real(chi: DirichletCharacter):
    if chi.order > 2:
        raise ValueError(f"character {chi.label} mod {chi.m} has order {chi.order}; a real character is required")


def _require_quadratic(chi: DirichletCharacter):
    if chi.order != 2:
        raise ValueError(f"character {chi.label} mod {chi.m} is not quadratic")


def r_chi(chi: DirichletCharacter, n: int):
    """sum_{d | n} chi(d): an int for real chi, a CyclotomicInt otherwise."""
    if n < 1:
        raise ValueError("n must be >= 1")
    idx = chi.indices(np.array(divisors(n), dtype=np.int64))
    if chi.order <= 2:
        return int(np.count_nonzero(idx == 0) - np.count_nonzero(idx == 1))
    return CyclotomicInt.from_counts(np.bincount(idx[idx >= 0], minlength=chi.order), chi.order)


def _euler_factor(v: int, e: int) -> int:
    # 1 + v + ... + v^e for v in {-1, 0, 1}
    if v == 1:
        return e + 1
    if v == 0:
        return 1
    return (e + 1) % 2


def r_chi_euler(chi: DirichletCharacter, n: int) -> int:
    """prod over l^e || n of (1 + chi(l) + ... + chi(l)^e), for real chi."""
    _require_real(chi)
    if n < 1:
        raise ValueError("n must be >= 1")
    out = 1
    for p, e in factorize(n).factors:
        out *= _euler_factor(int(chi.real_values(p)), e)
    return out


def r_table(chi: DirichletCharacter, N: int) -> np.ndarray:
    """r[n] = sum_{d | n} chi(d) for 0 <= n <= N (r[0] = 0), real chi, by divisor-pair sieving."""
    _require_real(chi)
    r = np.zeros(N + 1, dtype=np.int32)
    if N < 1:
        return r
    vals = chi.real_values(np.arange(N + 1)).astype(np.int32)
    s = math.isqrt(N)
    for d in range(1, s + 1):
        if vals[d]:
            r[d::d] += vals[d]
    # n = j d with d > s forces j <= N // (s + 1); handle each cofactor j at once
    for j in range(1, N // (s + 1) + 1):
        hi = N // j
        r[j * (s + 1) : j * hi + 1 : j] += vals[s + 1 : hi + 1]
    return r


def r_euler_table(chi: DirichletCharacter, N: int) -> np.ndarray:
    """The Euler-product form of r on 0..N, built multiplicatively from a smallest-prime-factor table."""
    _require_real(chi)
    r = np.zeros(N + 1, dtype=np.int64)
    if N < 1:
        return r
    r[1] = 1
    if N < 2:
        return r
    spf = spf_sieve(N).astype(np.int64)
    chi_vals = chi.real_values(np.arange(N + 1))
    n = np.arange(N + 1)
    q = n // np.maximum(spf, 1)
    big_omega = np.full(N + 1, -1, dtype=np.int64)
    big_omega[1] = 0
    e = np.zeros(N + 1, dtype=np.int64)
    rest = np.ones(N + 1, dtype=np.int64)
    level = 0
    todo = n[2:]
    while todo.size:
        cur = todo[big_omega[q[todo]] == level]
        todo = todo[big_omega[q[todo]] != level]
        level += 1
        big_omega[cur] = level
        p, qq = spf[cur], q[cur]
        same = (qq > 1) & (spf[qq] == p)
        e[cur] = np.where(same, e[qq] + 1, 1)
        rest[cur] = np.where(same, rest[qq], qq)
        v, ee = chi_vals[p], e[cur]
        factor = np.where(v == 1, ee + 1, np.where(v == 0, 1, (ee + 1) % 2))
        r[cur] = r[rest[cur]] * factor
    return r


@dataclass(frozen=True)
class HyperbolaBreakdown:
    x: float
    upsilon: float
    y: float
    z: float
    term1: int
    term2: int
    term3: int
    total: int
    direct_total: int

    @property
    def ok(self) -> bool:
        return self.total == self.direct_total == self.term1 + self.term2 - self.term3


def _prefix(chi: DirichletCharacter):
    m = chi.m
    period = chi.real_values(np.arange(m))
    P = np.concatenate(([0], np.cumsum(period[1:]), [0]))  # P[t] = sum_{1<=n<=t} for t < m
    full = int(period.sum())

    def S(t):
        t = np.asarray(t, dtype=np.int64)
        return (t // m) * full + P[t % m]

    return S


def sum_r_hyperbola(chi: DirichletCharacter, x: float, upsilon: float) -> HyperbolaBreakdown:
    """sum_{n<=x} r(n) = sum_{d<=y} chi(d)[x/d] + sum_{e<=z} S(x/e) - S(y)[z], y = x^upsilon, z = x/y.

    S is the partial character sum.  The total is cross-checked against
    direct summation of r over n <= x.
    """
    _require_real(chi)
    if not 2 <= x <= MAX_HYPERBOLA_X:
        raise ValueError(f"x must lie in [2, {MAX_HYPERBOLA_X}]")
    if not 0 < upsilon < 1:
        raise ValueError("upsilon must lie in (0, 1)")
    X = math.floor(x)
    y = x**upsilon
    z = x / y
    Y, Z = math.floor(y), math.floor(z)
    # the split needs Y Z <= X < (Y + 1)(Z + 1); guard against rounding in y, z
    while Y * Z > X:
        Z -= 1
    while (Y + 1) * (Z + 1) <= X:
        Z += 1
    S = _prefix(chi)
    d = np.arange(1, Y + 1)
    term1 = int(np.dot(chi.real_values(d), X // d))
    es = np.arange(1, Z + 1)
    term2 = int(S(X // es).sum()) if Z else 0
    term3 = int(S(Y)) * Z
    direct = int(r_table(chi, X).sum(dtype=np.int64))
    return HyperbolaBreakdown(x, upsilon, y, z, term1, term2, term3, term1 + term2 - term3, direct)


def tail_bound(chi: DirichletCharacter, T: float) -> float:
    """Bound on |sum_{d>T} chi(d)/d| from partial summation against sqrt(m) log m.

    Imprimitive characters pay a factor tau(m / conductor).
    """
    m = chi.m
    tau = len(divisors(m // chi.conductor()))
    return 2 * math.sqrt(m) * math.log(m) / T * tau


def l_one(chi: DirichletCharacter, T: float) -> tuple[float, float]:
    """(sum_{d<=T} chi(d)/d, tail bound) for quadratic chi."""
    _require_quadratic(chi)
    if T < chi.m:
        raise ValueError("T must be >= m")
    N = math.floor(T)
    parts = []
    block = 1 << 20
    for lo in range(1, N + 1, block):
        d = np.arange(lo, min(N, lo + block - 1) + 1)
        parts.append(float(np.sum(chi.real_values(d) / d)))
    return math.fsum(parts), tail_bound(chi, T)


def wolke_compare(chi: DirichletCharacter, T: float | None = None) -> tuple[float, float]:
    """(sum_{l<=m prime, chi(l)=1} 1/l, (1/2) log(phi(m)/m L(1,chi) log m)); no inequality is asserted."""
    _require_quadratic(chi)
    m = chi.m
    if m > MAX_WOLKE_M:
        raise ValueError(f"m must be <= {MAX_WOLKE_M}")
    ps = primes_upto(m)
    split = ps[chi.real_values(ps) == 1]
    lhs = math.fsum((1.0 / split).tolist())
    L, _ = l_one(chi, max(m, 10**6) if T is None else T)
    inner = euler_phi(m) / m * L * math.log(m)
    rhs = 0.5 * math.log(inner) if inner > 0 else float("nan")
    return lhs, rhs


def csv_row(m, x="", upsilon="", breakdown: HyperbolaBreakdown | None = None,
            l1: tuple[float, float] | None = None, wolke: tuple[float, float] | None = None) -> list:
    """One row in CSV_FIELDS order; unused columns are empty."""
    row = dict.fromkeys(CSV_FIELDS, "")
    row.update(m=m, x=x, upsilon=upsilon)
    if breakdown is not None:
        row.update(term1=breakdown.term1, term2=breakdown.term2, term3=breakdown.term3,
                   total=breakdown.total, direct_total=breakdown.direct_total)
    if l1 is not None:
        row.update(l1_estimate=l1[0], tail_bound=l1[1])
    if wolke is not None:
        row.update(wolke_lhs=wolke[0], wolke_rhs=wolke[1])
    return [row[f] for f in CSV_FIELDS]
