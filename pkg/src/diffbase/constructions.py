"""Certified-upper-bound basis builders.

Every builder verifies its output exhaustively before returning; a failed
check raises (construction bug or bad input), never a silent fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from . import gf
from .errors import DomainError, InvalidConstructionError, ResourceLimitError
from .groups import (
    Basis,
    GroupKind,
    GroupSpec,
    cyclic,
    dihedral,
    difference_cover,
    interval,
    inv,
    is_difference_basis,
    mul,
)


class Provenance(Enum):
    SINGER = "singer"
    BOSE_CHOWLA = "bose-chowla"
    PRODUCT = "product"
    SUBGROUP_TRANSVERSAL = "subgroup-transversal"
    DIHEDRAL_FROM_CYCLIC = "dihedral-from-cyclic"
    CYCLIC_FROM_INTERVAL = "cyclic-from-interval"
    RULER_GRID = "ruler-grid"
    SEARCH_WITNESS = "search-witness"


@dataclass(frozen=True)
class CertifiedBasis:
    basis: Basis
    provenance: Provenance
    params: Tuple[Tuple[str, int], ...] = ()

    @property
    def size(self) -> int:
        return len(self.basis)


def _certify(b: Basis, prov: Provenance, **params) -> CertifiedBasis:
    if not is_difference_basis(b):
        raise InvalidConstructionError(
            f"{prov.value} output is not a difference basis of {b.group.describe()}"
        )
    return CertifiedBasis(b, prov, tuple(sorted(params.items())))


def _lex_min_translate(elems: Sequence[int], v: int) -> Tuple[int, ...]:
    best = None
    for t in range(v):
        cand = tuple(sorted((e + t) % v for e in elems))
        if best is None or cand < best:
            best = cand
    return best


def singer_set(q: int) -> CertifiedBasis:
    """Perfect (q^2+q+1, q+1, 1) difference set in C_{q^2+q+1}.

    Realized on the projective line: with g primitive in GF(q^3) and
    V the 2-dimensional GF(q)-subspace spanned by {1, g}, the exponents
    i with g^i in V, reduced mod q^2+q+1, form the set.
    """
    if q > 256:
        raise DomainError(f"q = {q} exceeds the construction cap 256")
    p, k = gf.prime_power_decompose(q)
    v = q * q + q + 1
    try:
        f = gf.make_field(p, 3 * k)
    except ResourceLimitError as e:
        raise ResourceLimitError(f"singer_set({q}) needs GF({q}^3): {e}") from e
    table = gf.dlog_table(f)
    # GF(q)* inside GF(q^3)* = powers of g^(q^2+q+1)
    subfield = [table.powers[j * v] for j in range(q - 1)]
    exps = set()
    # span{1, g}: a + b*g over GF(q), (a, b) != (0, 0)
    scalars = [()] + subfield
    g = table.generator
    for a in scalars:
        for b in scalars:
            if a == () and b == ():
                continue
            e = gf.add(f, a, gf.fmul(f, b, g))
            exps.add(table.log[e] % v)
    if len(exps) != q + 1:
        raise AssertionError(f"singer_set({q}): got {len(exps)} residues")
    elems = _lex_min_translate(sorted(exps), v)
    b = Basis(cyclic(v), elems)
    if not is_perfect_difference_set(b):
        raise AssertionError(f"singer_set({q}) failed the planarity check")
    return _certify(b, Provenance.SINGER, q=q)


def is_perfect_difference_set(b: Basis) -> bool:
    """Every nonzero residue arises exactly once as a difference."""
    if b.group.kind is not GroupKind.CYCLIC:
        raise DomainError("perfect difference sets live in cyclic groups")
    n = b.group.n
    counts = [0] * n
    for x in b.elems:
        for y in b.elems:
            if x != y:
                counts[(x - y) % n] += 1
    return all(c == 1 for c in counts[1:])


def bose_chowla_set(q: int) -> CertifiedBasis:
    """Sidon set of size q in Z_{q^2-1}: { log(g + a) : a in GF(q) }.

    Not necessarily a difference basis; certification here means the
    Sidon property (all pairwise differences distinct), verified.
    """
    if q > 256:
        raise DomainError(f"q = {q} exceeds the construction cap 256")
    p, k = gf.prime_power_decompose(q)
    f = gf.make_field(p, 2 * k)
    table = gf.dlog_table(f)
    g = table.generator
    subfield = [()] + [table.powers[j * (q + 1)] for j in range(q - 1)]
    elems = set()
    for a in subfield:
        elems.add(table.log[gf.add(f, g, a)])
    if len(elems) != q:
        raise AssertionError(f"bose_chowla_set({q}): got {len(elems)} elements")
    b = Basis(cyclic(q * q - 1), tuple(sorted(elems)))
    if not is_sidon_set(b):
        raise AssertionError(f"bose_chowla_set({q}) failed the Sidon check")
    return CertifiedBasis(b, Provenance.BOSE_CHOWLA, (("q", q),))


def is_sidon_set(b: Basis) -> bool:
    """All pairwise differences of distinct elements are distinct."""
    n = b.group.n
    seen = set()
    for x in b.elems:
        for y in b.elems:
            if x == y:
                continue
            d = (x - y) % n
            if d in seen:
                return False
            seen.add(d)
    return True


def product_basis(
    inner: Sequence[int], lifts: Sequence[int], spec: GroupSpec
) -> CertifiedBasis:
    """Basis {l * a : l in lifts, a in inner} for a subgroup/quotient pair.

    inner must lie in a subgroup H, lifts must project to a difference
    basis of G/H; the cover check catches violations.
    """
    if spec.kind is GroupKind.INTERVAL:
        raise DomainError("product_basis needs a group spec")
    elems = {mul(l, a, spec) for l in lifts for a in inner}
    b = Basis(spec, tuple(sorted(elems)))
    if not is_difference_basis(b):
        missing = difference_cover(b).uncovered()
        raise InvalidConstructionError(
            f"product of {len(lifts)}x{len(inner)} does not cover "
            f"{spec.describe()}; {len(missing)} elements missing"
        )
    return CertifiedBasis(
        b, Provenance.PRODUCT, (("inner", len(inner)), ("lifts", len(lifts)))
    )


def subgroup_transversal_basis(spec: GroupSpec, subgroup_order: int) -> CertifiedBasis:
    """Basis H union T of size |H| + |G:H| - 1 (T a transversal with identity).

    For cyclic G the subgroup of order m is the multiples of n/m; for
    dihedral G only the rotation subgroup and its cyclic subgroups are
    supported.
    """
    m = subgroup_order
    if spec.kind is GroupKind.CYCLIC:
        n = spec.n
        if m < 1 or n % m != 0:
            raise DomainError(f"{m} does not divide {n}")
        step = n // m
        elems = set(range(0, n, step)) | set(range(step))
    elif spec.kind is GroupKind.DIHEDRAL:
        n = spec.n
        if m < 1 or n % m != 0:
            raise DomainError(f"{m} must divide the rotation order {n}")
        step = n // m
        subgroup = set(range(0, n, step))
        transversal = set(range(step)) | {n + j for j in range(step)}
        elems = subgroup | transversal
    else:
        raise DomainError("subgroup_transversal_basis needs a group spec")
    b = Basis(spec, tuple(sorted(elems)))
    return _certify(b, Provenance.SUBGROUP_TRANSVERSAL, subgroup_order=m)


def dihedral_basis_from_cyclic(bc: Basis) -> CertifiedBasis:
    """{r^b} union {s r^b} over a cyclic basis: size doubles, covers D_2n."""
    if bc.group.kind is not GroupKind.CYCLIC:
        raise DomainError("dihedral_basis_from_cyclic needs a cyclic basis")
    if not is_difference_basis(bc):
        raise InvalidConstructionError("input is not a difference basis of C_n")
    n = bc.group.n
    elems = tuple(sorted(set(bc.elems) | {n + e for e in bc.elems}))
    b = Basis(dihedral(n), elems)
    return _certify(b, Provenance.DIHEDRAL_FROM_CYCLIC, n=n)


def cyclic_basis_from_interval(bi: Basis, n: int) -> CertifiedBasis:
    """Reduce an interval basis for [1, ceil((n-1)/2)] mod n into C_n."""
    if bi.group.kind is not GroupKind.INTERVAL:
        raise DomainError("cyclic_basis_from_interval needs an interval basis")
    m = -(-(n - 1) // 2)  # ceil((n-1)/2)
    if bi.group.n != m:
        raise DomainError(
            f"interval basis covers [1,{bi.group.n}], need [1,{m}] for C_{n}"
        )
    if not is_difference_basis(bi):
        raise InvalidConstructionError("input does not cover its interval")
    elems = tuple(sorted({e % n for e in bi.elems}))
    b = Basis(cyclic(n), elems)
    if not is_difference_basis(b):
        raise InvalidConstructionError(
            f"mod-{n} reduction of the interval basis does not cover C_{n}"
        )
    return CertifiedBasis(b, Provenance.CYCLIC_FROM_INTERVAL, (("n", n), ("m", m)))


def ruler_basis(n: int) -> CertifiedBasis:
    """Grid ruler {0..a} union {2a, 3a, ...}: covers [1, n] with ~2*sqrt(n) marks."""
    if n < 1:
        raise DomainError("interval length must be >= 1")
    a = max(1, isqrt(n))
    elems = set(range(a + 1)) | {k * a for k in range(2, -(-n // a)) if k * a < n}
    elems.add(n)
    b = Basis(interval(n), tuple(sorted(elems)))
    return _certify(b, Provenance.RULER_GRID, n=n)
