"""Dirichlet characters modulo m with exact values.

The unit group (Z/mZ)^x is decomposed into cyclic components, one per odd
prime power (generated by its smallest primitive root), plus <-1> x <5> for
2^e with e >= 3.  A character is an exponent vector against those generators
and takes values zeta_k^j, k its order; values are stored as the integer j.
"""
from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .arithmetic import Factorization, discrete_log, divisors, factorize

# Moduli up to this size get a full discrete-log table on first vectorized use.
TABLE_LIMIT = 2 * 10**6

# indices() evaluates pointwise when m exceeds SPARSE_RATIO times the request size
SPARSE_RATIO = 1000
ZERO_INDEX = -1  # marks chi(n) = 0 in index arrays


@dataclass(frozen=True)
class Component:
    """One cyclic factor: generator g of order d inside (Z/pe)^x.

    kind is "cyclic" for odd prime powers and 4, "sign" for the <-1> factor
    of 2^e (e >= 3) and "five" for its <5> factor.
    """

    p: int
    pe: int
    g: int
    d: int
    kind: str = "cyclic"


def _smallest_primitive_root(p: int, e: int) -> int:
    pe = p**e
    d = pe - pe // p
    qs = [q for q, _ in factorize(d).factors]
    for g in range(2, pe):
        if g % p == 0:
            continue
        if all(pow(g, d // q, pe) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root mod {pe}")


def _powers(g: int, d: int, pe: int) -> np.ndarray:
    """g^0 .. g^(d-1) mod pe, by block doubling."""
    out = np.empty(d, dtype=np.int64)
    out[0] = 1
    s = 1
    while s < d:
        n = min(s, d - s)
        out[s : s + n] = out[:n] * pow(g, s, pe) % pe
        s += n
    return out


class UnitGroup:
    """Cyclic decomposition of (Z/mZ)^x with discrete-log support."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be >= 1")
        self.m = m
        self.factorization: Factorization = factorize(m)
        comps: list[Component] = []
        for p, e in self.factorization.factors:
            pe = p**e
            if p == 2:
                if e == 2:
                    comps.append(Component(2, 4, 3, 2))
                elif e >= 3:
                    comps.append(Component(2, pe, pe - 1, 2, "sign"))
                    comps.append(Component(2, pe, 5, pe // 4, "five"))
            else:
                comps.append(Component(p, pe, _smallest_primitive_root(p, e), pe - pe // p))
        self.components: tuple[Component, ...] = tuple(comps)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(c.d for c in self.components)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return math.lcm(1, *self.orders)

    def __repr__(self):
        return f"UnitGroup(m={self.m}, components={[(c.pe, c.g, c.d) for c in self.components]})"

    def log_vector(self, n: int) -> tuple[int, ...] | None:
        """Exponents of n against the generators, or None when gcd(n, m) > 1."""
        n %= self.m
        if math.gcd(n, self.m) != 1:
            return None
        if "log_table" in self.__dict__:
            return tuple(int(v) for v in self.log_table[n])
        out = []
        for c in self.components:
            t = n % c.pe
            if c.kind == "sign":
                out.append(int(t % 4 == 3))
            elif c.kind == "five":
                if t % 4 == 3:
                    t = c.pe - t
                out.append(discrete_log(5, c.d, c.pe, t))
            else:
                out.append(discrete_log(c.g, c.d, c.pe, t))
        return tuple(out)

    @cached_property
    def log_table(self) -> np.ndarray:
        """Array of shape (m, r): row n is log_vector(n), all -1 for non-units."""
        m = self.m
        n = np.arange(m, dtype=np.int64)
        table = np.empty((m, len(self.components)), dtype=np.int64)
        for i, c in enumerate(self.components):
            if c.kind == "sign":
                col = (n % c.pe) % 4 == 3
            else:
                logs = np.full(c.pe, -1, dtype=np.int64)
                logs[_powers(c.g, c.d, c.pe)] = np.arange(c.d)
                t = n % c.pe
                if c.kind == "five":
                    t = np.where(t % 4 == 3, (c.pe - t) % c.pe, t)
                col = logs[t]
            table[:, i] = col
        table[np.gcd(n, m) != 1] = -1
        table.setflags(write=False)
        return table

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return np.gcd(np.arange(self.m), self.m) == 1


@lru_cache(maxsize=256)
def unit_group(m: int) -> UnitGroup:
    return UnitGroup(m)


@dataclass(frozen=True)
class CharacterValue:
    """Zero (den == 0) or exp(2 pi i num/den) with gcd(num, den) = 1."""

    num: int
    den: int

    @classmethod
    def from_index(cls, j: int, k: int) -> "CharacterValue":
        if j < 0:
            return ZERO
        j %= k
        g = math.gcd(j, k)
        return cls(j // g, k // g)

    @property
    def is_zero(self) -> bool:
        return self.den == 0

    @property
    def is_one(self) -> bool:
        return self.den == 1

    @property
    def is_nonresidue(self) -> bool:
        """chi(n) not in {0, 1}."""
        return self.den > 1

    def __complex__(self) -> complex:
        if self.is_zero:
            return 0j
        return complex(np.exp(2j * np.pi * self.num / self.den))

    def __eq__(self, other):
        if isinstance(other, int):
            return (other == 0 and self.is_zero) or (other == 1 and self.is_one) or (
                other == -1 and (self.num, self.den) == (1, 2)
            )
        if isinstance(other, CharacterValue):
            return (self.num, self.den) == (other.num, other.den)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.is_zero:
            return "0"
        if self.is_one:
            return "1"
        return f"e({self.num}/{self.den})"


ZERO = CharacterValue(0, 0)
ONE = CharacterValue(0, 1)


class DirichletCharacter:
    """A character mod m identified by its exponent vector."""

    def __init__(self, group: UnitGroup, exponents):
        exps = tuple(int(a) for a in exponents)
        if len(exps) != len(group.components):
            raise ValueError("exponent vector length does not match the group")
        if any(not 0 <= a < c.d for a, c in zip(exps, group.components)):
            raise ValueError(f"exponents {exps} out of range for orders {group.orders}")
        self.group = group
        self.exponents = exps

    @property
    def m(self) -> int:
        return self.group.m

    @cached_property
    def order(self) -> int:
        return math.lcm(1, *(c.d // math.gcd(a, c.d) for a, c in zip(self.exponents, self.group.components)))

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    @property
    def label(self) -> str:
        return "[" + ",".join(map(str, self.exponents)) + "]"

    def __repr__(self):
        return f"DirichletCharacter(m={self.m}, exponents={self.exponents}, order={self.order})"

    def __eq__(self, other):
        return (
            isinstance(other, DirichletCharacter)
            and self.m == other.m
            and self.exponents == other.exponents
        )

    def __hash__(self):
        return hash((self.m, self.exponents))

    @cached_property
    def _weights(self) -> np.ndarray:
        k = self.order
        return np.array([a * k // c.d for a, c in zip(self.exponents, self.group.components)], dtype=np.int64)

    def index(self, n: int) -> int:
        """j with chi(n) = zeta_k^j, or ZERO_INDEX."""
        logs = self.group.log_vector(n)
        if logs is None:
            return ZERO_INDEX
        return int(sum(int(w) * l for w, l in zip(self._weights, logs)) % self.order)

    def __call__(self, n: int) -> CharacterValue:
        return CharacterValue.from_index(self.index(n), self.order)

    evaluate = __call__

    @cached_property
    def period_indices(self) -> np.ndarray:
        """Value indices for n = 0 .. m-1 (ZERO_INDEX on non-units)."""
        table = self.group.log_table
        idx = (table @ self._weights) % self.order
        idx[~self.group.unit_mask] = ZERO_INDEX
        idx.setflags(write=False)
        return idx

    def indices(self, ns) -> np.ndarray:
        """Vectorized index() over an integer array."""
        ns = np.asarray(ns, dtype=np.int64)
        cached = "period_indices" in self.__dict__ or "log_table" in self.group.__dict__
        # a handful of values mod a large m is cheaper by discrete log than by a full table
        sparse = ns.size * SPARSE_RATIO < self.m
        if cached or (self.m <= TABLE_LIMIT and not sparse):
            return self.period_indices[ns % self.m]
        return np.array([self.index(int(n)) for n in ns.ravel()], dtype=np.int64).reshape(ns.shape)

    def complex_values(self, ns) -> np.ndarray:
        idx = self.indices(ns)
        out = np.exp(2j * np.pi * idx / self.order)
        out[idx < 0] = 0
        return out

    def real_values(self, ns) -> np.ndarray:
        """Integer values of a character of order <= 2."""
        if self.order > 2:
            raise ValueError("character is not real")
        idx = self.indices(ns)
        return np.where(idx < 0, 0, 1 - 2 * idx).astype(np.int64)

    def to_json(self) -> str:
        return json.dumps({"m": self.m, "exponents": list(self.exponents), "order": self.order})

    @classmethod
    def from_json(cls, text: str | dict) -> "DirichletCharacter":
        obj = json.loads(text) if isinstance(text, str) else text
        chi = cls(unit_group(int(obj["m"])), obj["exponents"])
        if "order" in obj and int(obj["order"]) != chi.order:
            raise ValueError(f"order mismatch: stored {obj['order']}, computed {chi.order}")
        return chi

    def conductor(self) -> int:
        """Least d | m such that chi is induced from a character mod d."""
        idx = self.period_indices if self.m <= TABLE_LIMIT else None
        for d in divisors(self.m):
            if d == self.m:
                return d
            if idx is not None:
                vals = idx[1 :: d]
                if np.all(vals[vals >= 0] == 0):
                    return d
            elif all(self.index(n) in (0, ZERO_INDEX) for n in range(1, self.m, d)):
                return d
        return self.m

    def is_primitive(self) -> bool:
        return self.conductor() == self.m


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    """All phi(m) characters mod m in lexicographic exponent order (principal first)."""
    G = unit_group(m)
    return [DirichletCharacter(G, e) for e in itertools.product(*(range(d) for d in G.orders))]


def characters_of_order_dividing(m: int, n: int) -> list[DirichletCharacter]:
    """Characters mod m with chi^n principal, in enumeration order."""
    G = unit_group(m)
    ranges = [range(0, d, d // math.gcd(d, n)) for d in G.orders]
    return [DirichletCharacter(G, e) for e in itertools.product(*ranges)]


def character_from_label(m: int, label: str) -> DirichletCharacter:
    """Parse "[a,b,...]" or "a,b" into a character mod m."""
    body = label.strip().strip("[]()")
    exps = [int(t) for t in body.replace(";", ",").split(",") if t.strip()] if body else []
    return DirichletCharacter(unit_group(m), exps)


def quadratic_characters(m: int) -> list[DirichletCharacter]:
    return [chi for chi in characters_of_order_dividing(m, 2) if chi.order == 2]


def evaluate(chi: DirichletCharacter, n: int) -> CharacterValue:
    return chi(n)


def order(chi: DirichletCharacter) -> int:
    return chi.order


def is_principal(chi: DirichletCharacter) -> bool:
    return chi.is_principal


def is_quadratic(chi: DirichletCharacter) -> bool:
    return chi.is_quadratic


def index_matrix(m: int, chars: list[DirichletCharacter] | None = None) -> tuple[np.ndarray, int]:
    """Value indices of many characters at once.

    Returns (E, L): E has shape (m, len(chars)) and chi_j(n) = zeta_L^E[n, j]
    with L the group exponent; non-units hold ZERO_INDEX.
    """
    G = unit_group(m)
    if chars is None:
        chars = enumerate_characters(m)
    L = G.exponent
    W = np.array(
        [[a * (L // c.d) for a, c in zip(chi.exponents, G.components)] for chi in chars], dtype=np.int64
    ).reshape(len(chars), len(G.components))
    E = (G.log_table @ W.T) % L
    E[~G.unit_mask] = ZERO_INDEX
    return E, L


def primitive_mask(m: int, E: np.ndarray) -> np.ndarray:
    """For an index matrix from index_matrix(m), flag the primitive characters."""
    prim = np.ones(E.shape[1], dtype=bool)
    for p in factorize(m).primes:
        rows = E[1 :: m // p]
        rows = rows[rows[:, 0] >= 0] if rows.size else rows
        prim &= ~np.all(rows == 0, axis=0)
    return prim


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1, by binary reciprocity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return 1
    result = 1
    # factor out 2 from n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    a %= n
    # Jacobi symbol (a/n), n odd
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0
