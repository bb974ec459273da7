"""Closed-form bound engine and exact-arithmetic verifiers.

All pass/fail comparisons involving square roots are done by squaring in
integer arithmetic; floats appear only in rendered output and in the
sampled analytic check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from . import constructions as cons
from .errors import DomainError, ResourceLimitError
from .gf import is_prime, is_prime_power
from .groups import Basis, GroupKind, GroupSpec, cyclic, interval
from .search import interval_lower_bound, lower_bound_generic


def dihedral_lower_bound(n: int) -> int:
    """ceil(sqrt(4n)) by exact integer square root."""
    if n < 1:
        raise DomainError("n must be >= 1")
    s = isqrt(4 * n)
    return s if s * s == 4 * n else s + 1


def _singer_parameter(n: int) -> Optional[int]:
    """q with n = q^2 + q + 1 and q a prime power, if any."""
    if n < 7:
        return None
    q = (isqrt(4 * n - 3) - 1) // 2
    for cand in (q - 1, q, q + 1):
        if cand >= 2 and cand * cand + cand + 1 == n and is_prime_power(cand):
            return cand
    return None


@dataclass(frozen=True)
class TheoremValue:
    lo: int
    hi: int
    provenance: str

    @property
    def exact(self) -> Optional[int]:
        return self.lo if self.lo == self.hi else None


def exact_by_theorem(spec: GroupSpec) -> Optional[TheoremValue]:
    """Dihedral exact value / interval determined without search."""
    if spec.kind is not GroupKind.DIHEDRAL:
        raise DomainError("exact_by_theorem applies to dihedral groups")
    n = spec.n
    q = _singer_parameter(n)
    if q is not None:
        return TheoremValue(2 * q + 2, 2 * q + 2, "singer-doubling")
    if n % 4 == 0:
        q = _singer_parameter(n // 4)
        if q is not None:
            return TheoremValue(4 * q + 3, 4 * q + 4, "singer-quadrupling")
    return None


@dataclass(frozen=True)
class Characteristic:
    """Exact representation of delta / sqrt(order)."""

    delta: int
    order: int

    def __post_init__(self):
        if self.delta < 1 or self.order < 1:
            raise DomainError("characteristic needs delta >= 1, order >= 1")

    @property
    def value(self) -> float:
        return self.delta / math.sqrt(self.order)

    def le_ratio(self, a: int, b: int) -> bool:
        """Exact test: delta/sqrt(order) <= a/sqrt(b)."""
        return self.delta * self.delta * b <= a * a * self.order

    def ge_ratio(self, a: int, b: int) -> bool:
        return self.delta * self.delta * b >= a * a * self.order

    def __le__(self, other: "Characteristic") -> bool:
        return self.le_ratio(other.delta, other.order)

    def __lt__(self, other: "Characteristic") -> bool:
        return self <= other and not (other <= self)

    def truncated(self, places: int = 4) -> Tuple[str, bool]:
        """Decimal truncated (not rounded); second item: inexact flag."""
        scale = 10 ** places
        digits = isqrt(self.delta * self.delta * scale * scale // self.order)
        exact = digits * digits * self.order == self.delta * self.delta * scale * scale
        if exact:
            s = f"{digits // scale}.{digits % scale:0{places}d}".rstrip("0").rstrip(".")
            return (s or "0"), False
        return f"{digits // scale}.{digits % scale:0{places}d}", True

    def render(self, ellipsis: bool = True) -> str:
        s, inexact = self.truncated()
        return s + "..." if (inexact and ellipsis) else s


def characteristic(delta: int, order: int) -> Characteristic:
    return Characteristic(delta, order)


# -- prime powers and the gap-inequality verifier --

def prime_powers_up_to(m: int) -> List[int]:
    if m < 2:
        raise DomainError("m must be >= 2")
    sieve = bytearray([1]) * (m + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(m) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    out = []
    for p in range(2, m + 1):
        if sieve[p]:
            pk = p
            while pk <= m:
                out.append(pk)
                pk *= p
    return sorted(out)


@dataclass(frozen=True)
class GapReport:
    lo: int
    hi: int
    pairs_checked: int
    violations: Tuple[Tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_gap_inequality(lo: int, hi: int) -> GapReport:
    """Check 11(q'+1)^2 <= 12q^2 + 14q + 16 for consecutive prime powers.

    q ranges over prime powers in [lo, hi); q' is the next prime power.
    Exact integer arithmetic throughout.
    """
    if not 2 <= lo < hi + 1:
        raise DomainError("need 2 <= lo <= hi")
    # Bertrand: a prime lies in (hi, 2*hi), so the successor is in range.
    pps = prime_powers_up_to(2 * hi + 2)
    pairs = 0
    bad: List[Tuple[int, int]] = []
    for qk, qk1 in zip(pps, pps[1:]):
        if qk < lo or qk > hi:
            continue
        pairs += 1
        if 11 * (qk1 + 1) ** 2 > 12 * qk * qk + 14 * qk + 16:
            bad.append((qk, qk1))
    return GapReport(lo, hi, pairs, tuple(bad))


@dataclass(frozen=True)
class AnalyticReport:
    lo: int
    hi: int
    step: float
    samples: int
    violations: Tuple[float, ...]
    min_slack: float
    min_slack_at: float
    boundary: Tuple[Tuple[int, bool], ...]  # (x, holds) for x = 42, 43

    @property
    def ok(self) -> bool:
        return not self.violations


def _analytic_slack(x: float) -> float:
    lhs = 1.0 + x + x / (2.0 * math.log(x) ** 2)
    rhs = math.sqrt((12.0 * x * x + 14.0 * x + 16.0) / 11.0)
    return rhs - lhs


def check_analytic_inequality(
    lo: int = 43, hi: int = 10 ** 6, step: float = 1.0
) -> AnalyticReport:
    """Sample rhs - lhs of the prime-gap growth inequality on a dense grid."""
    if step > 1:
        raise DomainError("grid step must be <= 1")
    import numpy as np

    x = np.arange(lo, hi + step / 2, step, dtype=np.float64)
    lhs = 1.0 + x + x / (2.0 * np.log(x) ** 2)
    rhs = np.sqrt((12.0 * x * x + 14.0 * x + 16.0) / 11.0)
    slack = rhs - lhs
    i_min = int(np.argmin(slack))
    viol = tuple(float(v) for v in x[slack < 0][:100])
    boundary = ((42, _analytic_slack(42.0) >= 0), (43, _analytic_slack(43.0) >= 0))
    return AnalyticReport(
        lo=lo,
        hi=hi,
        step=step,
        samples=len(x),
        violations=viol,
        min_slack=float(slack[i_min]),
        min_slack_at=float(x[i_min]),
        boundary=boundary,
    )


# -- the per-group bound ledger --

@dataclass(frozen=True)
class BoundEntry:
    value: int
    provenance: str
    witness: Optional[cons.CertifiedBasis] = None


@dataclass
class BoundReport:
    group: GroupSpec
    lower: List[Tuple[int, str]] = field(default_factory=list)
    upper: List[BoundEntry] = field(default_factory=list)
    exact: Optional[int] = None

    @property
    def best_lower(self) -> int:
        return max(v for v, _ in self.lower)

    @property
    def best_upper(self) -> int:
        return min(e.value for e in self.upper)

    def add_lower(self, value: int, provenance: str) -> None:
        self.lower.append((value, provenance))

    def add_upper(self, value, provenance, witness=None) -> None:
        if witness is not None and len(witness.basis) != value:
            raise AssertionError("upper-bound witness size mismatch")
        self.upper.append(BoundEntry(value, provenance, witness))


def _cache_get(cache, kind: GroupKind, n: int):
    if cache is None:
        return None
    return cache.get(kind, n)


def _best_transversal(spec: GroupSpec) -> Optional[cons.CertifiedBasis]:
    n = spec.n
    divisors = [m for m in range(1, n + 1) if n % m == 0]
    # predicted sizes: m + n/m - 1 (cyclic), m + 2n/m - 1 (dihedral);
    # build only the smallest instead of certifying every divisor
    if spec.kind is GroupKind.CYCLIC:
        size = lambda m: m + n // m - 1
    else:
        size = lambda m: m + 2 * (n // m) - 1
    best_m = min(divisors, key=size)
    cb = cons.subgroup_transversal_basis(spec, best_m)
    assert cb.size == size(best_m)
    return cb


def bound_report(spec: GroupSpec, cache=None) -> BoundReport:
    """Evaluate every applicable bound rule; witnesses where constructive.

    Formula bounds that reference difference sizes of smaller groups are
    resolved through the cache and silently omitted on a miss.
    """
    rep = BoundReport(spec)
    n = spec.n
    if spec.kind is GroupKind.INTERVAL:
        rep.add_lower(interval_lower_bound(n), "pair-counting")
        ruler = cons.ruler_basis(n)
        rep.add_upper(ruler.size, "ruler-grid", ruler)
    else:
        order = spec.order
        rep.add_lower(lower_bound_generic(order), "counting")
        rep.add_upper((order + 1 + 1) // 2, "half-order")
        tv = _best_transversal(spec)
        if tv is not None:
            rep.add_upper(tv.size, "subgroup-transversal", tv)

    if spec.kind is GroupKind.CYCLIC:
        q = _singer_parameter(n)
        if q is not None:
            try:
                sb = cons.singer_set(q)
                rep.add_upper(q + 1, "singer", sb)
            except ResourceLimitError:
                rep.add_upper(q + 1, "singer")
            rep.add_lower(q + 1, "singer")
        # n = q^2 - 1: Sidon set of size q completed by a basis of C_{q-1}
        q2 = isqrt(n + 1)
        if q2 * q2 == n + 1 and q2 >= 2 and is_prime_power(q2):
            rec = _cache_get(cache, GroupKind.CYCLIC, q2 - 1)
            if rec is not None and rec.certified:
                rep.add_upper(q2 - 1 + rec.delta, "sidon-completion")
        # n = p^2 - p for prime p
        p = isqrt(n) + 1
        if p * (p - 1) == n and is_prime(p):
            rp = _cache_get(cache, GroupKind.CYCLIC, p)
            rp1 = _cache_get(cache, GroupKind.CYCLIC, p - 1)
            if (
                rp is not None
                and rp1 is not None
                and rp.certified
                and rp1.certified
            ):
                rep.add_upper(p - 3 + rp.delta + rp1.delta, "prime-square-completion")
        # interval transfer: C_n covered by a basis of [1, ceil((n-1)/2)]
        m = -(-(n - 1) // 2)
        if m >= 1:
            ri = _cache_get(cache, GroupKind.INTERVAL, m)
            if ri is not None:
                bi = Basis(interval(m), tuple(ri.witness))
                cb = cons.cyclic_basis_from_interval(bi, n)
                rep.add_upper(cb.size, "interval-transfer", cb)

    if spec.kind is GroupKind.DIHEDRAL:
        rep.add_lower(dihedral_lower_bound(n), "pair-split-counting")
        tv = exact_by_theorem(spec)
        if tv is not None:
            rep.add_lower(tv.lo, tv.provenance)
            rep.add_upper(tv.hi, tv.provenance)
        rc = _cache_get(cache, GroupKind.CYCLIC, n)
        if rc is not None:
            bc = Basis(cyclic(n), tuple(rc.witness))
            cb = cons.dihedral_basis_from_cyclic(bc)
            rep.add_upper(cb.size, "cyclic-doubling", cb)

    own = _cache_get(cache, spec.kind, n)
    if own is not None:
        wb = Basis(spec, tuple(own.witness))
        rep.add_upper(
            own.delta,
            "cached-search",
            cons.CertifiedBasis(wb, cons.Provenance.SEARCH_WITNESS),
        )
        if own.certified:
            rep.add_lower(own.delta, "cached-search")
            rep.exact = own.delta
    if rep.exact is None and rep.best_lower == rep.best_upper:
        rep.exact = rep.best_lower
    if rep.best_lower > rep.best_upper:
        raise AssertionError(
            f"inconsistent bounds for {spec.describe()}: "
            f"{rep.best_lower} > {rep.best_upper}"
        )
    return rep
