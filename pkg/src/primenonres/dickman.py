"""Dickman's rho and the roots u_k of rho(u) = 1/k.

rho is tabulated on a uniform grid of step h = 2^-p by marching the integral
form of u rho'(u) = -rho(u - 1) one unit interval at a time,

    rho(j + s) = rho(j) - int_j^{j+s} rho(t - 1) / t dt,   0 <= s <= 1.

Written this way the subtraction cancels catastrophically once rho is tiny
(rho(20) ~ 2.5e-29), so rho(j) is replaced by its own integral
(1/j) int_{j-1}^{j} rho, giving

    rho(j + s) = int_{j-1}^{j-1+s} rho(t) (1/j - 1/(t+1)) dt
                 + (1/j) int_{j-1+s}^{j} rho(t) dt,

two integrals of nonnegative functions over the previous interval.  Panels
never straddle an integer (h divides 1), where rho has its derivative jumps.
Cumulative integrals use composite Simpson (3/8 rule for the last three
panels at odd nodes).  The step is halved until two successive tables agree
to within the requested tolerance (Richardson estimate: error of the finer
table is about 1/15 of the difference).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_U = 50.0
MIN_TOL = 1e-12
_START_POW = 5
_MAX_POW = 16


@dataclass(frozen=True)
class RhoTable:
    step: float
    max_u: float
    values: np.ndarray = field(repr=False)
    interp_degree: int = 7
    error_estimate: float = float("nan")

    @property
    def per_unit(self) -> int:
        return int(round(1 / self.step))

    @property
    def grid(self) -> np.ndarray:
        return np.arange(self.values.size) * self.step

    def _scalar(self, u: float) -> float:
        if u <= 1:
            return 1.0
        n, D = self.per_unit, self.interp_degree
        pos = u * n
        j = min(math.ceil(u) - 1, int(self.max_u) - 1)
        start = min(max(math.floor(pos) - D // 2, j * n), (j + 1) * n - D)
        x = pos - start
        if abs(x - round(x)) <= 1e-9 and round(x) <= D:
            return float(self.values[start + round(x)])
        ys = self.values[start : start + D + 1].tolist()
        total = 0.0
        for i in range(D + 1):
            w = 1.0
            for l in range(D + 1):
                if l != i:
                    w *= (x - l) / (i - l)
            total += w * ys[i]
        return total

    def __call__(self, u):
        """rho at u (scalar or array), by local interpolation inside [j, j+1]."""
        scalar = np.ndim(u) == 0
        if scalar and 0 <= u <= self.max_u:
            return self._scalar(float(u))
        u = np.atleast_1d(np.asarray(u, dtype=float))
        if np.any(u < 0) or np.any(u > self.max_u):
            raise ValueError(f"u must lie in [0, {self.max_u}]")
        n = self.per_unit
        out = np.ones_like(u)
        big = u > 1
        if np.any(big):
            ub = u[big]
            pos = ub * n
            # interval [j, j+1] containing u; u == j+1 belongs to the left one
            j = np.minimum(np.ceil(ub) - 1, self.max_u - 1).astype(np.int64)
            D = self.interp_degree
            start = np.clip(np.floor(pos).astype(np.int64) - D // 2, j * n, (j + 1) * n - D)
            x = pos - start  # position in node units
            vals = np.zeros_like(ub)
            exact = np.isclose(x, np.round(x), rtol=0, atol=1e-9) & (np.round(x) <= D)
            for i in range(D + 1):
                w = np.ones_like(ub)
                for l in range(D + 1):
                    if l != i:
                        w *= (x - l) / (i - l)
                vals += w * self.values[start + i]
            if np.any(exact):
                vals[exact] = self.values[start[exact] + np.round(x[exact]).astype(np.int64)]
            out[big] = vals
        return float(out[0]) if scalar else out


def _cumint(f: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral of node values f from the left end, O(h^4)."""
    n = f.size - 1
    out = np.empty(n + 1)
    out[0] = 0.0
    out[1] = h / 12 * (5 * f[0] + 8 * f[1] - f[2])
    out[2::2] = np.cumsum(h / 3 * (f[0:-2:2] + 4 * f[1:-1:2] + f[2::2]))
    # odd nodes >= 3: Simpson up to the node three panels back, then 3/8 rule
    odd = np.arange(3, n + 1, 2)
    out[odd] = out[odd - 3] + 3 * h / 8 * (f[odd - 3] + 3 * f[odd - 2] + 3 * f[odd - 1] + f[odd])
    return out


def _march(power: int, max_u: float) -> np.ndarray:
    n = 1 << power
    h = 1.0 / n
    units = int(math.ceil(max_u))
    rho = np.empty(units * n + 1)
    rho[: n + 1] = 1.0
    s = np.arange(n + 1) * h
    for j in range(1, units):
        prev = rho[(j - 1) * n : j * n + 1]  # rho on [j-1, j]
        left = _cumint(prev * (1.0 / j - 1.0 / (j + s)), h)
        right = _cumint(prev[::-1], h)[::-1] / j
        rho[j * n : (j + 1) * n + 1] = left + right
    return rho


@lru_cache(maxsize=16)
def build_table(power: int, max_u: float = MAX_U) -> np.ndarray:
    out = _march(power, max_u)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=16)
def rho_table(tol: float = MIN_TOL, max_u: float = MAX_U) -> RhoTable:
    """Smallest-step table whose Richardson error estimate is below tol/4."""
    if tol < MIN_TOL:
        raise ValueError(f"tolerance {tol} below achievable precision {MIN_TOL}")
    coarse = build_table(_START_POW, max_u)
    for power in range(_START_POW + 1, _MAX_POW + 1):
        fine = build_table(power, max_u)
        est = float(np.max(np.abs(fine[::2] - coarse))) / 15
        if est <= tol / 4:
            return RhoTable(step=2.0**-power, max_u=max_u, values=fine, error_estimate=est)
        coarse = fine
    raise ArithmeticError(f"rho table did not converge to {tol}")


def rho(u: float, tol: float = MIN_TOL) -> float:
    """Dickman's rho(u) for 0 <= u <= 50, accurate to tol."""
    if u < 0:
        raise ValueError("rho is defined for u >= 0")
    if u > MAX_U:
        raise ValueError(f"u > {MAX_U} is outside the table")
    if u <= 1:
        return 1.0
    return rho_table(tol)(u)


@lru_cache(maxsize=1024)
def u_k(k: float, tol: float = MIN_TOL) -> float:
    """The unique u > 1 with rho(u) = 1/k, by bisection on [1, 50]."""
    if k <= 1:
        raise ValueError("k must exceed 1")
    table = rho_table(tol)
    target = 1.0 / k
    if table(MAX_U) > target:
        raise ValueError(f"target 1/{k} outside table: rho({MAX_U}) is larger")
    lo, hi = 1.0, MAX_U
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if table(mid) > target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def dump_table(step: float = 2.0**-6, max_u: float = 10.0, tol: float = MIN_TOL):
    """Rows (u, rho(u)) on a uniform grid, for CSV export."""
    table = rho_table(tol)
    us = np.arange(0, max_u + step / 2, step)
    return list(zip(us.tolist(), table(us).tolist()))
