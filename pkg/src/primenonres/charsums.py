"""Partial character sums, Burgess-Norton bound shapes and the Polya-Vinogradov check.

The Burgess implied constant is ineffective, so nothing here asserts a
Burgess inequality; sums are reported as ratios against the bare shape
R^(1/r) x^(1-1/r) m^((r+1)/(4r^2)+eps).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import factorize
from .characters import DirichletCharacter
from .cyclotomic import CyclotomicInt

BURGESS_RS = (2, 3, 4, 5, 6)
CSV_FIELDS = (
    ["m", "chi_label", "k", "x", "sum_re", "sum_im", "abs_sum", "pv_bound"]
    + [f"burgess_r{r}" for r in BURGESS_RS]
    + ["ratio_pv"]
    + [f"ratio_r{r}" for r in BURGESS_RS]
)


@dataclass(frozen=True)
class CharacterSum:
    exact: CyclotomicInt
    value: complex

    def __abs__(self):
        return abs(self.value)


def _index_counts(chi: DirichletCharacter, X: int) -> np.ndarray:
    """c[j] = #{1 <= n <= X : chi(n) = zeta_k^j}."""
    k, m = chi.order, chi.m
    counts = np.zeros(k, dtype=np.int64)
    full, rest = divmod(X, m)
    if full:
        idx = chi.indices(np.arange(m))
        counts += full * np.bincount(idx[idx >= 0], minlength=k)
    if rest:
        idx = chi.indices(np.arange(1, rest + 1))
        counts += np.bincount(idx[idx >= 0], minlength=k)
    return counts


def partial_sum(chi: DirichletCharacter, x: float) -> CharacterSum:
    """sum_{n <= x} chi(n), exactly in Z[zeta_k], plus a complex rendering."""
    X = math.floor(x) if x >= 0 else -1
    if X < 0:
        raise ValueError("x must be >= 0")
    exact = CyclotomicInt.from_counts(_index_counts(chi, X), chi.order)
    return CharacterSum(exact, complex(exact))


def partial_sums_float(chi: DirichletCharacter, X: int) -> np.ndarray:
    """Array S with S[x] = sum_{n <= x} chi(n) for 0 <= x <= X, in double precision."""
    vals = chi.complex_values(np.arange(X + 1))
    vals[0] = 0
    return np.cumsum(vals)


@dataclass(frozen=True)
class BurgessFactors:
    m: int
    k: int
    M: int
    Q: int
    R: float


def burgess_factors(m: int, k: int) -> BurgessFactors:
    """M(m) = prod p^e || m with e >= 3, Q(k) = prod p^e || k with e >= 2, R = min(M^(3/4), Q^(9/8))."""
    if m < 1 or k < 1:
        raise ValueError("m and k must be positive")
    M = math.prod(p**e for p, e in factorize(m).factors if e >= 3)
    Q = math.prod(p**e for p, e in factorize(k).factors if e >= 2)
    return BurgessFactors(m, k, M, Q, min(M**0.75, Q**1.125))


def burgess_bound_shape(m: int, k: int, r: int, eps: float, x: float) -> float:
    """R_k(m)^(1/r) x^(1-1/r) m^((r+1)/(4 r^2) + eps), R dropped for r <= 3; no constant."""
    if r < 1:
        raise ValueError("r must be a positive integer")
    if eps <= 0 or x <= 0:
        raise ValueError("eps and x must be positive")
    R = 1.0 if r <= 3 else burgess_factors(m, k).R
    return R ** (1 / r) * x ** (1 - 1 / r) * m ** ((r + 1) / (4 * r * r) + eps)


def pv_bound(m: int) -> float:
    return math.sqrt(m) * math.log(m)


@dataclass
class PVReport:
    m: int
    chi_label: str
    bound: float
    max_abs: float
    max_ratio: float
    argmax_x: int
    violations: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def polya_vinogradov_check(chi: DirichletCharacter, xs=None) -> PVReport:
    """|sum_{n<=x} chi(n)| <= sqrt(m) log m over a grid of x <= m (default: every x).

    Violations are recorded, not raised; for a primitive character any
    violation points at a bug, since the inequality is a theorem.
    """
    m = chi.m
    if m < 3:
        raise ValueError("modulus must be >= 3")
    if not chi.is_primitive():
        raise ValueError(f"character {chi.label} mod {m} is not primitive")
    S = np.abs(partial_sums_float(chi, m))
    xs = np.arange(1, m + 1) if xs is None else np.asarray(xs, dtype=np.int64)
    if np.any(xs > m) or np.any(xs < 0):
        raise ValueError("grid points must lie in [0, m]")
    vals = S[xs]
    bound = pv_bound(m)
    i = int(np.argmax(vals)) if vals.size else 0
    bad = xs[vals > bound].tolist()
    return PVReport(m, chi.label, bound, float(vals[i]) if vals.size else 0.0,
                    float(vals[i] / bound) if vals.size else 0.0, int(xs[i]) if vals.size else 0, bad)


def charsum_rows(chi: DirichletCharacter, xs, eps: float = 0.01) -> list[list]:
    """CSV rows (see CSV_FIELDS) for a grid of x values."""
    m, k = chi.m, chi.order
    xs = [int(x) for x in xs]
    S = partial_sums_float(chi, max(xs, default=0))
    pv = pv_bound(m) if m > 1 else float("nan")
    rows = []
    for x in xs:
        s = complex(S[x])
        a = abs(s)
        shapes = [burgess_bound_shape(m, k, r, eps, x) if x > 0 else float("nan") for r in BURGESS_RS]
        rows.append(
            [m, chi.label, k, x, s.real, s.imag, a, pv]
            + shapes
            + [a / pv]
            + [a / b for b in shapes]
        )
    return rows
