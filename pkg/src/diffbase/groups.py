"""Canonical element encoding and difference-coverage computation.

Three kinds of coverage targets share one frame:

* ``Cyclic n``   -- Z_n, elements indexed 0..n-1.
* ``Dihedral n`` -- order 2n; index k < n is the rotation r^k, index n+k is
  the reflection s*r^k.  Identity is index 0.
* ``Interval n`` -- basis elements are integers in [0, n]; the coverage
  universe is the n values 1..n, covered by plain subtraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Tuple

from .errors import DomainError


class GroupKind(Enum):
    CYCLIC = "cyclic"
    DIHEDRAL = "dihedral"
    INTERVAL = "interval"


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"group parameter must be >= 1, got {self.n}")

    @property
    def order(self) -> int:
        """Group order; undefined for intervals (use universe_size)."""
        if self.kind is GroupKind.CYCLIC:
            return self.n
        if self.kind is GroupKind.DIHEDRAL:
            return 2 * self.n
        raise DomainError("interval targets have no group order")

    @property
    def universe_size(self) -> int:
        """Number of coverage bits: |G| for groups, n for intervals."""
        if self.kind is GroupKind.INTERVAL:
            return self.n
        return self.order

    @property
    def element_count(self) -> int:
        """Number of candidate basis elements."""
        if self.kind is GroupKind.INTERVAL:
            return self.n + 1
        return self.order

    def describe(self) -> str:
        if self.kind is GroupKind.CYCLIC:
            return f"C_{self.n}"
        if self.kind is GroupKind.DIHEDRAL:
            return f"D_{2 * self.n}"
        return f"[1,{self.n}]"


def cyclic(n: int) -> GroupSpec:
    return GroupSpec(GroupKind.CYCLIC, n)


def dihedral(n: int) -> GroupSpec:
    return GroupSpec(GroupKind.DIHEDRAL, n)


def interval(n: int) -> GroupSpec:
    return GroupSpec(GroupKind.INTERVAL, n)


def _check_index(g: int, spec: GroupSpec) -> None:
    if not 0 <= g < spec.order:
        raise DomainError(f"element index {g} out of range for {spec.describe()}")


def mul(g: int, h: int, spec: GroupSpec) -> int:
    """Group product under the fixed index encoding."""
    if spec.kind is GroupKind.INTERVAL:
        raise DomainError("interval targets carry no group product")
    _check_index(g, spec)
    _check_index(h, spec)
    n = spec.n
    if spec.kind is GroupKind.CYCLIC:
        return (g + h) % n
    k1, e1 = g % n, g // n
    k2, e2 = h % n, h // n
    # (s^e1 r^k1)(s^e2 r^k2) = s^(e1 xor e2) r^(k2 + (-1)^e2 k1)
    k = (k2 - k1) % n if e2 else (k1 + k2) % n
    return k + n * (e1 ^ e2)


def inv(g: int, spec: GroupSpec) -> int:
    """Group inverse; reflections are involutions."""
    if spec.kind is GroupKind.INTERVAL:
        raise DomainError("interval targets carry no group inverse")
    _check_index(g, spec)
    n = spec.n
    if spec.kind is GroupKind.CYCLIC:
        return (-g) % n
    if g >= n:
        return g
    return (-g) % n


def diff_bit(a: int, b: int, spec: GroupSpec) -> int:
    """Coverage-bit index contributed by the ordered pair (a, b).

    For groups this is the index of a * b^-1 (always >= 0); for intervals
    it is a - b - 1 when the difference lands in [1, n], else -1.
    """
    if spec.kind is GroupKind.INTERVAL:
        d = a - b
        return d - 1 if 1 <= d <= spec.n else -1
    return mul(a, inv(b, spec), spec)


@dataclass(frozen=True)
class Basis:
    """A candidate difference basis: strictly increasing element indices."""

    group: GroupSpec
    elems: Tuple[int, ...]

    def __post_init__(self):
        elems = tuple(self.elems)
        object.__setattr__(self, "elems", elems)
        limit = self.group.element_count
        last = -1
        for e in elems:
            if not isinstance(e, int) or e < 0 or e >= limit:
                raise DomainError(
                    f"basis element {e} out of range for {self.group.describe()}"
                )
            if e <= last:
                raise DomainError("basis elements must be strictly increasing")
            last = e

    def __len__(self) -> int:
        return len(self.elems)


def basis(spec: GroupSpec, elems: Iterable[int]) -> Basis:
    return Basis(spec, tuple(sorted(set(elems))))


@dataclass(frozen=True)
class CoverageMask:
    """Bit vector over the coverage universe; bit i set = covered."""

    bits: int
    size: int

    @property
    def popcount(self) -> int:
        return self.bits.bit_count()

    @property
    def all_set(self) -> bool:
        return self.bits == (1 << self.size) - 1

    def uncovered(self) -> List[int]:
        return [i for i in range(self.size) if not (self.bits >> i) & 1]


def difference_cover(b: Basis) -> CoverageMask:
    """Mask of all differences a * b^-1 (intervals: a - b in [1, n])."""
    spec = b.group
    bits = 0
    for x in b.elems:
        for y in b.elems:
            i = diff_bit(x, y, spec)
            if i >= 0:
                bits |= 1 << i
    return CoverageMask(bits, spec.universe_size)


def is_difference_basis(b: Basis) -> bool:
    return difference_cover(b).all_set


def split_dihedral_basis(b: Basis) -> Tuple[List[int], List[int]]:
    """Split a dihedral basis into rotation exponents and reflection residues."""
    if b.group.kind is not GroupKind.DIHEDRAL:
        raise DomainError("split_dihedral_basis needs a dihedral basis")
    n = b.group.n
    rot = [e for e in b.elems if e < n]
    refl = [e - n for e in b.elems if e >= n]
    return rot, refl
