"""Prime character nonresidues and residues measured against theorem thresholds.

The constants kappa, eta, m0 in the nonresidue theorems are ineffective, so
nothing here asserts "count >= m^kappa"; surveys report observed counts next
to the threshold each theorem uses.  The only hard assertions are exact
ones: the least nonresidue is prime, and identity (sum of chi^j) = k * #{chi = 1}.
"""
from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, fields

import numpy as np

from .arithmetic import factorize, is_prime, primes_upto
from .characters import (
    SPARSE_RATIO,
    TABLE_LIMIT,
    DirichletCharacter,
    characters_of_order_dividing,
    enumerate_characters,
    index_matrix,
    unit_group,
)
from .charsums import burgess_factors
from .cyclotomic import CyclotomicInt
from .dickman import u_k

# closure enumeration cap for subgroup membership
MAX_GROUP_ORDER = 10**6
MAX_IDENTITY_X = 10**6


class ThresholdKind(str, enum.Enum):
    T11 = "T11"      # m^(1/(4 sqrt e) + eps)
    T12 = "T12"      # m^(1/(4 u_k0) + eps)
    T23 = "T23"      # m^(1/(3 u_k0) + eps)
    T24 = "T24"      # R_k(m) m^(1/(4 u_k0) + eps)
    T15 = "T15"      # m^(1/4 + eps), prime residues of quadratic characters
    GAUSS = "GAUSS"  # 2 sqrt(m) + 1

    def __str__(self):
        return self.value


def theorem_threshold(kind, m: int, epsilon: float = 0.1, k0: int = 2, k: int | None = None) -> float:
    kind = ThresholdKind(kind)
    if m < 2:
        raise ValueError("m must be >= 2")
    if kind is ThresholdKind.GAUSS:
        return 2 * math.sqrt(m) + 1
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if kind is ThresholdKind.T15:
        return m ** (0.25 + epsilon)
    if kind is ThresholdKind.T11:
        k0 = 2
    if k0 < 2:
        raise ValueError("k0 must be >= 2")
    u = u_k(k0)
    if kind in (ThresholdKind.T11, ThresholdKind.T12):
        return m ** (1 / (4 * u) + epsilon)
    if kind is ThresholdKind.T23:
        return m ** (1 / (3 * u) + epsilon)
    if k is None:
        raise ValueError("T24 needs the character order k")
    return burgess_factors(m, k).R * m ** (1 / (4 * u) + epsilon)


def least_nonresidue(chi: DirichletCharacter) -> int:
    """Smallest n >= 2 with chi(n) not in {0, 1}; always prime."""
    if chi.is_principal:
        raise ValueError("principal character has no nonresidues")
    lo, step = 2, 8
    while lo < chi.m:
        hi = min(chi.m, lo + step)
        idx = chi.indices(np.arange(lo, hi))
        hit = np.flatnonzero(idx > 0)
        if hit.size:
            n = lo + int(hit[0])
            assert is_prime(n), f"least nonresidue {n} of {chi!r} is not prime"
            return n
        lo, step = hi, step * 2
    raise AssertionError(f"no nonresidue below m for nontrivial {chi!r}")


def _primes_with(chi: DirichletCharacter, B: float, residue: bool) -> list[int]:
    if B < 2:
        return []
    ps = primes_upto(math.floor(B))
    idx = chi.indices(ps)
    keep = idx == 0 if residue else idx > 0
    return ps[keep].tolist()


def prime_nonresidues_upto(chi: DirichletCharacter, B: float) -> list[int]:
    """Primes l <= B with chi(l) not in {0, 1}, ascending."""
    return _primes_with(chi, B, residue=False)


def prime_residues_upto(chi: DirichletCharacter, B: float) -> list[int]:
    """Primes l <= B with chi(l) = 1, ascending."""
    return _primes_with(chi, B, residue=True)


def q_product_stats(chi: DirichletCharacter, y: float) -> tuple[int, float]:
    """(omega(q), log q) for q the product of the prime nonresidues in [1, y]."""
    ps = prime_nonresidues_upto(chi, y)
    return len(ps), math.fsum(math.log(p) for p in ps)


@dataclass(frozen=True)
class IdentityCheck:
    ok: bool
    lhs: CyclotomicInt
    rhs: int
    x: int
    q_primes: tuple[int, ...]

    def __bool__(self):
        return self.ok


def default_identity_y(x: float, k0: int = 2, delta: float = 0.05) -> float:
    """y = x^(1/u_k0 + delta), the sieve range paired with x in the proof."""
    return max(x, 1.0) ** (1 / u_k(k0) + delta)


def fund_identity_check(chi: DirichletCharacter, x: float, y: float | None = None,
                        q: int | None = None) -> IdentityCheck:
    """Exact check of sum_{n<=x, (n,mq)=1} sum_{j<k} chi(n)^j = k #{n<=x : (n,mq)=1, chi(n)=1}.

    q defaults to the product of the prime nonresidues up to y.  The left side
    is accumulated in Z[zeta_k] without using the geometric-series shortcut.
    """
    if x > MAX_IDENTITY_X:
        raise ValueError(f"x must be <= {MAX_IDENTITY_X}")
    X = math.floor(x) if x >= 1 else 0
    k = chi.order
    if q is not None:
        qp = factorize(q).primes if q > 1 else ()
    else:
        qp = tuple(prime_nonresidues_upto(chi, default_identity_y(x) if y is None else y))
    if X == 0:
        zero = CyclotomicInt.from_int(0, k)
        return IdentityCheck(True, zero, 0, 0, tuple(qp))
    ns = np.arange(1, X + 1)
    idx = chi.indices(ns)
    keep = idx >= 0
    for p in qp:
        keep[p - 1 :: p] = False
    counts = np.bincount(idx[keep], minlength=k)
    acc = np.zeros(k, dtype=np.int64)
    js = np.arange(k)
    for a in np.flatnonzero(counts):
        np.add.at(acc, (a * js) % k, counts[a])
    lhs = CyclotomicInt.from_counts(acc, k)
    rhs = k * int(counts[0])
    return IdentityCheck(lhs == rhs, lhs, rhs, X, tuple(qp))


# -- subgroups -------------------------------------------------------------


def _closure(orders: tuple[int, ...], gens: list[tuple[int, ...]]) -> set[tuple[int, ...]]:
    """Subgroup of prod Z/d_i generated by gens, grown one coset chain per new generator."""
    zero = tuple(0 for _ in orders)
    H = {zero}
    for g in gens:
        if g in H:
            continue
        # H <g> = union of H + j g, stopping once j g lands back in H
        base = list(H)
        step = g
        while step not in H:
            H.update(tuple((a + b) % d for a, b, d in zip(h, step, orders)) for h in base)
            step = tuple((a + b) % d for a, b, d in zip(step, g, orders))
    return H


def subgroup_elements(m: int, generators) -> set[tuple[int, ...]]:
    """Exponent vectors of the subgroup H of (Z/mZ)^x generated by the residues given."""
    G = unit_group(m)
    if G.order > MAX_GROUP_ORDER:
        raise ValueError(f"|G| = {G.order} exceeds the closure cap {MAX_GROUP_ORDER}")
    gens = []
    for h in generators:
        v = G.log_vector(int(h))
        if v is None:
            raise ValueError(f"generator {h} is not a unit mod {m}")
        gens.append(v)
    return _closure(G.orders, gens)


def subgroup_nonresidues(m: int, generators, B: float) -> list[int]:
    """Primes l <= B, l not dividing m, with l mod m outside H = <generators>."""
    G = unit_group(m)
    H = subgroup_elements(m, generators)
    if len(H) == G.order:
        raise ValueError("not a proper subgroup")
    out = []
    for p in primes_upto(math.floor(B)).tolist():
        v = G.log_vector(p)
        if v is not None and v not in H:
            out.append(p)
    return out


def kernel(chi: DirichletCharacter) -> list[int]:
    """Residues n in [1, m) with chi(n) = 1."""
    ns = np.arange(1, max(chi.m, 2))
    return ns[chi.indices(ns) == 0].tolist()


# -- surveys ---------------------------------------------------------------


@dataclass(frozen=True)
class SurveyRecord:
    m: int
    chi_label: str
    k: int
    epsilon: float
    k0: int
    threshold_kind: str
    threshold_value: float
    least_nonresidue: int | None
    prime_nonresidue_count: int
    prime_residue_count: int
    omega_q: int
    y: float

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def row(self) -> list:
        return [getattr(self, f) for f in self.field_names()]

    def as_dict(self) -> dict:
        return asdict(self)


def eligible(kind: ThresholdKind, k: int, k0: int) -> bool:
    """Whether a character of order k falls under the theorem behind kind."""
    if k < 2:
        return False
    if kind in (ThresholdKind.T15, ThresholdKind.GAUSS):
        return k == 2
    if kind is ThresholdKind.T11:
        return True
    return k >= k0


def _prefer_scalar(m, chars, kinds, epsilon, k0, B_override) -> bool:
    """True when pointwise evaluation beats building the full index table."""
    if m <= 10**4:
        return False
    B = B_override if B_override is not None else max(
        theorem_threshold(kd, m, epsilon, k0, chi.order) for kd in kinds for chi in chars if eligible(kd, chi.order, k0)
    )
    evaluations = len(chars) * len(kinds) * (B / max(math.log(B), 1.0) + 16)
    return evaluations * SPARSE_RATIO < m


def survey_modulus(m: int, kinds=(ThresholdKind.T11,), epsilon: float = 0.1, k0: int = 2,
                   B_override: float | None = None, orders=None) -> list[SurveyRecord]:
    """SurveyRecords for every eligible nontrivial character mod m.

    Rows come out sorted by (exponent vector, kind order).  The counting
    bound B is the theorem threshold unless B_override is set; y = B, so
    omega_q is the number of prime nonresidues up to B.
    """
    kinds = [ThresholdKind(k) for k in kinds]
    if orders is None and all(kd in (ThresholdKind.T15, ThresholdKind.GAUSS) for kd in kinds):
        orders = {2}
    pool = enumerate_characters(m) if orders is None else characters_of_order_dividing(m, math.lcm(*orders))
    chars = [
        chi for chi in pool
        if (orders is None or chi.order in orders) and any(eligible(kd, chi.order, k0) for kd in kinds)
    ]
    if not chars:
        return []
    if m > TABLE_LIMIT or _prefer_scalar(m, chars, kinds, epsilon, k0, B_override):
        return [rec for chi in chars for rec in survey_character(chi, kinds, epsilon, k0, B_override)]
    records: list[SurveyRecord] = []
    batch = max(1, 20_000_000 // m)
    for start in range(0, len(chars), batch):
        block = chars[start : start + batch]
        E, _ = index_matrix(m, block)
        nonres = E[2:] > 0
        first = np.argmax(nonres, axis=0) + 2
        has = nonres.any(axis=0)
        thresholds = {}
        for kd in kinds:
            for chi in block:
                if eligible(kd, chi.order, k0):
                    thresholds[kd, chi.order] = (
                        B_override if B_override is not None
                        else theorem_threshold(kd, m, epsilon, k0, chi.order)
                    )
        bounds = sorted(set(thresholds.values()))
        counts = {}
        for B in bounds:
            ps = primes_upto(math.floor(B)) if B >= 2 else np.zeros(0, dtype=np.int64)
            vals = E[ps % m]
            counts[B] = ((vals > 0).sum(axis=0), (vals == 0).sum(axis=0))
        for col, chi in enumerate(block):
            lnr = int(first[col]) if has[col] else None
            if lnr is None or not is_prime(lnr):
                raise AssertionError(f"least nonresidue {lnr} of {chi!r} is not a prime")
            for kd in kinds:
                if not eligible(kd, chi.order, k0):
                    continue
                B = thresholds[kd, chi.order]
                nr, rs = counts[B]
                records.append(SurveyRecord(
                    m, chi.label, chi.order, epsilon, k0, kd.value, B, lnr,
                    int(nr[col]), int(rs[col]), int(nr[col]), B,
                ))
    return records


def survey_character(chi: DirichletCharacter, kinds=(ThresholdKind.T11,), epsilon: float = 0.1,
                     k0: int = 2, B_override: float | None = None) -> list[SurveyRecord]:
    """Scalar-path survey rows for one character (used for large moduli)."""
    out = []
    lnr = least_nonresidue(chi)
    for kd in map(ThresholdKind, kinds):
        if not eligible(kd, chi.order, k0):
            continue
        B = B_override if B_override is not None else theorem_threshold(kd, chi.m, epsilon, k0, chi.order)
        nr = prime_nonresidues_upto(chi, B)
        rs = prime_residues_upto(chi, B)
        out.append(SurveyRecord(chi.m, chi.label, chi.order, epsilon, k0, kd.value, B, lnr,
                                len(nr), len(rs), len(nr), B))
    return out
