"""GF(p^k) arithmetic: irreducible moduli, primitive elements, dlog tables.

Elements are coefficient tuples over GF(p), constant term first.  The
enumeration order used for "smallest" choices is the integer value
sum(c_i * p^i), which makes moduli and generators reproducible run to run.
Fields are capped at q = p^k <= 2^20; everything here is desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Tuple

from .errors import DomainError, ResourceLimitError

FIELD_SIZE_CAP = 1 << 20

Poly = Tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def factorize(n: int) -> List[int]:
    """Distinct prime factors by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power_decompose(q: int) -> Tuple[int, int]:
    """Return (p, k) with q = p^k, or raise DomainError."""
    if q < 2:
        raise DomainError(f"{q} is not a prime power")
    ps = factorize(q)
    if len(ps) != 1:
        raise DomainError(f"{q} is not a prime power")
    p = ps[0]
    k = 0
    m = q
    while m > 1:
        m //= p
        k += 1
    if p ** k != q:
        raise DomainError(f"{q} is not a prime power")
    return p, k


def is_prime_power(q: int) -> bool:
    try:
        prime_power_decompose(q)
        return True
    except DomainError:
        return False


# -- polynomial arithmetic over GF(p); dense coeff tuples, constant first --

def _ptrim(c: List[int]) -> Poly:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: Poly, m: Poly, p: int) -> Poly:
    a = list(a)
    dm = len(m) - 1
    lead_inv = pow(m[-1], p - 2, p) if m[-1] != 1 else 1
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        factor = (a[-1] * lead_inv) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        a.pop()
    return _ptrim(a)


def _pgcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, _pmod(a, b, p)
    if a and a[-1] != 1:  # make monic
        inv = pow(a[-1], p - 2, p)
        a = tuple((c * inv) % p for c in a)
    return a


def _ppowmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result: Poly = (1,)
    a = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        e >>= 1
    return result


def _poly_from_value(v: int, p: int) -> Poly:
    out = []
    while v:
        out.append(v % p)
        v //= p
    return tuple(out)


def _poly_value(c: Poly, p: int) -> int:
    v = 0
    for ci in reversed(c):
        v = v * p + ci
    return v


def irreducible_by_trial_division(m: Poly, p: int) -> bool:
    """Exhaustive divisor search; intended for degree <= 4."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    for dd in range(1, deg // 2 + 1):
        # monic divisors of degree dd
        for v in range(p ** dd):
            cand = _poly_from_value(v, p) + (0,) * (dd - len(_poly_from_value(v, p))) + (1,)
            if not _pmod(m, cand, p):
                return False
    return True


def irreducible_by_frobenius(m: Poly, p: int) -> bool:
    """gcd(x^{p^i} - x, m) trivial for i <= k/2, and x^{p^k} = x mod m."""
    deg = len(m) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    x: Poly = (0, 1)
    xp = x
    for i in range(1, deg // 2 + 1):
        xp = _ppowmod(xp, p, m, p)
        g = _pgcd(m, _psub(xp, x, p), p)
        if len(g) - 1 >= 1:
            return False
    xq = xp
    for _ in range(deg // 2 + 1, deg + 1):
        xq = _ppowmod(xq, p, m, p)
    return _psub(xq, x, p) == ()


def _psub(a: Poly, b: Poly, p: int) -> Poly:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] - bi) % p
    return _ptrim(out)


def _is_irreducible(m: Poly, p: int) -> bool:
    deg = len(m) - 1
    if deg <= 4:
        return irreducible_by_trial_division(m, p)
    return irreducible_by_frobenius(m, p)


@dataclass(frozen=True)
class FieldSpec:
    p: int
    k: int
    modulus: Poly  # monic, degree k, constant term first

    @property
    def q(self) -> int:
        return self.p ** self.k

    def describe(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def make_field(p: int, k: int) -> FieldSpec:
    """Field with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if k < 1:
        raise DomainError(f"degree must be >= 1, got {k}")
    if p ** k > FIELD_SIZE_CAP:
        raise ResourceLimitError(f"p^k = {p ** k} exceeds cap {FIELD_SIZE_CAP}")
    for v in range(p ** k):
        low = _poly_from_value(v, p)
        m = low + (0,) * (k - len(low)) + (1,)
        if _is_irreducible(m, p):
            return FieldSpec(p, k, m)
    raise AssertionError("no irreducible polynomial found")  # unreachable


Elem = Poly


def elem_from_value(f: FieldSpec, v: int) -> Elem:
    return _poly_from_value(v, f.p)


def elem_value(f: FieldSpec, e: Elem) -> int:
    return _poly_value(e, f.p)


def add(f: FieldSpec, a: Elem, b: Elem) -> Elem:
    out = [0] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] = ai
    for i, bi in enumerate(b):
        out[i] = (out[i] + bi) % f.p
    return _ptrim(out)


def fmul(f: FieldSpec, a: Elem, b: Elem) -> Elem:
    return _pmod(_pmul(a, b, f.p), f.modulus, f.p)


def fpow(f: FieldSpec, a: Elem, e: int) -> Elem:
    return _ppowmod(a, e, f.modulus, f.p)


@dataclass(frozen=True)
class DlogTable:
    field: FieldSpec
    generator: Elem
    log: Dict[Elem, int]    # nonzero element -> exponent in [0, q-1)
    powers: Tuple[Elem, ...]  # powers[i] = generator^i


def primitive_element(f: FieldSpec) -> Elem:
    """Smallest element (in enumeration order) of multiplicative order q-1."""
    q = f.q
    if q == 2:
        return (1,)
    prime_factors = factorize(q - 1)
    for v in range(1, q):
        g = elem_from_value(f, v)
        if all(fpow(f, g, (q - 1) // r) != (1,) for r in prime_factors):
            return g
    raise AssertionError("no primitive element found")  # unreachable


@lru_cache(maxsize=None)
def dlog_table(f: FieldSpec) -> DlogTable:
    q = f.q
    if q > FIELD_SIZE_CAP:
        raise ResourceLimitError(f"q = {q} exceeds cap {FIELD_SIZE_CAP}")
    g = primitive_element(f)
    log: Dict[Elem, int] = {}
    powers: List[Elem] = []
    if f.p == 2:
        # GF(2^k): pack coefficients into an int; carryless mul + reduction
        mod_int = _poly_value(f.modulus, 2)
        g_int = _poly_value(g, 2)
        x = 1
        for i in range(q - 1):
            e = _poly_from_value(x, 2)
            log[e] = i
            powers.append(e)
            acc = 0
            shifted = x
            gg = g_int
            while gg:
                if gg & 1:
                    acc ^= shifted
                gg >>= 1
                shifted <<= 1
            while acc.bit_length() > f.k:
                acc ^= mod_int << (acc.bit_length() - f.k - 1)
            x = acc
    else:
        x: Elem = (1,)
        for i in range(q - 1):
            log[x] = i
            powers.append(x)
            x = fmul(f, x, g)
    if len(log) != q - 1:
        raise AssertionError("generator does not enumerate the full group")
    return DlogTable(f, g, log, tuple(powers))
