"""Exact minimal-difference-basis search.

Iterative-deepening branch and bound over sorted candidate sets, with
coverage-count pruning and symmetry breaking.  The hot decision kernel
("is there a basis of size k?") lives in a compiled extension when
available, with a pure-Python fallback selected at import time.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import List, Optional, Sequence, Tuple

from . import _pykernel
from .errors import BudgetExhaustedError, DomainError, ResourceLimitError
from .groups import (
    Basis,
    GroupKind,
    GroupSpec,
    diff_bit,
    interval,
    is_difference_basis,
)

try:  # compiled hot kernel; fall back to pure Python when not built
    from . import _ckernel as _impl

    KERNEL = "c"
except ImportError:  # pragma: no cover - depends on build environment
    _impl = _pykernel
    KERNEL = "python"

STATUS_EXHAUSTED = 0
STATUS_FOUND = 1
STATUS_BUDGET = 2

ORDER_CAP = 256  # kernel mask width


@dataclass(frozen=True)
class SearchConfig:
    node_budget: Optional[int] = None
    use_unit_symmetry: Optional[bool] = None  # None = auto (cyclic n > 60)
    parallel_width: int = 1
    witness_only: bool = False
    use_pruning: bool = True  # diagnostics only; results never depend on it

    def __post_init__(self):
        if self.node_budget is not None and self.node_budget < 1:
            raise DomainError("node_budget must be >= 1 when present")
        if self.parallel_width < 1:
            raise DomainError("parallel_width must be >= 1")


@dataclass(frozen=True)
class SearchOutcome:
    delta: int
    witness: Basis
    certified: bool
    nodes_expanded: int
    wall_time: float


def max_additional_coverage(m: int, k: int) -> int:
    """Max new non-identity ordered differences when growing from m to k."""
    if not 0 <= m <= k:
        raise DomainError(f"need 0 <= m <= k, got m={m}, k={k}")
    return k * (k - 1) - m * (m - 1)


def lower_bound_generic(order: int) -> int:
    """Smallest k with k(k-1)+1 >= order, by exact integer arithmetic."""
    if order < 1:
        raise DomainError("order must be >= 1")
    k = 1
    while k * (k - 1) + 1 < order:
        k += 1
    return k


def interval_lower_bound(n: int) -> int:
    """Smallest k with k(k-1)/2 >= n (k elements give that many positive diffs)."""
    k = 1
    while k * (k - 1) // 2 < n:
        k += 1
    return k


@lru_cache(maxsize=64)
def _dbits_list(spec: GroupSpec) -> Tuple[Tuple[int, ...], ...]:
    c = spec.element_count
    return tuple(
        tuple(diff_bit(a, b, spec) for b in range(c)) for a in range(c)
    )


@lru_cache(maxsize=64)
def _unit_orbit_minimal(n: int) -> Tuple[bool, ...]:
    """allowed[d] = d is minimal in its orbit under unit multipliers mod n."""
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    allowed = [False] * n
    for d in range(1, n):
        allowed[d] = d == min(u * d % n for u in units)
    return tuple(allowed)


def _resolve_unit_symmetry(spec: GroupSpec, cfg: SearchConfig) -> bool:
    if spec.kind is not GroupKind.CYCLIC or spec.n < 3:
        return False
    if cfg.use_unit_symmetry is None:
        return spec.n > 60
    return cfg.use_unit_symmetry


def _kernel_kwargs(spec: GroupSpec, cfg: SearchConfig) -> dict:
    n = spec.n
    kw = dict(
        dbits=_dbits_list(spec),
        universe=spec.universe_size,
        ncand=spec.element_count,
        prefix=(0,),
        allowed_second=None,
        max_step=False,
        wrap_n=0,
        dihedral_n=0,
        refl_sym=False,
        pair_factor=2,
        require_last=-1,
        use_pruning=cfg.use_pruning,
    )
    if spec.kind is GroupKind.CYCLIC:
        if _resolve_unit_symmetry(spec, cfg):
            kw["allowed_second"] = _unit_orbit_minimal(n)
        else:
            # canonical rotation: largest circular gap first
            kw["max_step"] = True
            kw["wrap_n"] = n
    elif spec.kind is GroupKind.DIHEDRAL:
        kw["dihedral_n"] = n
        kw["refl_sym"] = True
    else:
        kw["pair_factor"] = 1
        kw["require_last"] = n
    return kw


def _depth1_candidates(kw: dict, k: int) -> List[int]:
    """Second-element choices, mirroring the kernel's depth-1 filters."""
    ncand = kw["ncand"]
    n_di = kw["dihedral_n"]
    out = []
    for x in range(1, ncand - (k - 2)):
        if kw["allowed_second"] is not None and not kw["allowed_second"][x]:
            continue
        if kw["max_step"] and kw["wrap_n"] and x * k < kw["wrap_n"]:
            continue
        if kw["refl_sym"] and n_di and x >= n_di:
            if x > n_di + (1 if n_di % 2 == 0 else 0):
                continue
        out.append(x)
    return out


def _run_decision(
    spec: GroupSpec, k: int, cfg: SearchConfig, budget: Optional[int]
) -> Tuple[int, Optional[List[int]], int]:
    if spec.element_count > ORDER_CAP:
        raise ResourceLimitError(
            f"{spec.describe()} exceeds the kernel order cap {ORDER_CAP}"
        )
    kw = _kernel_kwargs(spec, cfg)
    budget_val = budget or 0
    if cfg.parallel_width == 1 or k < 2:
        return _impl.decision_search(k=k, node_budget=budget_val, **kw)
    branches = _depth1_candidates(kw, k)
    if not branches:
        return STATUS_EXHAUSTED, None, 0
    per_branch = budget_val // len(branches) if budget_val else 0
    if budget_val and per_branch == 0:
        per_branch = 1

    def run(x: int):
        bkw = dict(kw)
        bkw["prefix"] = (0, x)
        return _impl.decision_search(k=k, node_budget=per_branch, **bkw)

    with ThreadPoolExecutor(max_workers=cfg.parallel_width) as pool:
        results = list(pool.map(run, branches))
    nodes = sum(r[2] for r in results)
    for status, witness, _ in results:
        if status == STATUS_FOUND:
            return STATUS_FOUND, witness, nodes
    if any(r[0] == STATUS_BUDGET for r in results):
        return STATUS_BUDGET, None, nodes
    return STATUS_EXHAUSTED, None, nodes


def find_basis_of_size(
    spec: GroupSpec, k: int, cfg: SearchConfig = SearchConfig()
) -> Optional[Basis]:
    """A difference basis of size exactly k, or None if none exists.

    Exhaustive: None is a proof of nonexistence.  Running out of node
    budget raises instead of returning None.
    """
    if not 1 <= k <= spec.element_count:
        raise DomainError(f"need 1 <= k <= {spec.element_count}, got {k}")
    status, witness, nodes = _run_decision(spec, k, cfg, cfg.node_budget)
    if status == STATUS_BUDGET:
        raise BudgetExhaustedError(
            f"node budget exhausted searching {spec.describe()} at size {k}",
            nodes=nodes,
        )
    if status == STATUS_FOUND:
        b = Basis(spec, tuple(witness))
        assert is_difference_basis(b)
        return b
    return None


def start_size(spec: GroupSpec) -> int:
    """Proven lower bound where iterative deepening starts."""
    from .bounds import dihedral_lower_bound

    if spec.kind is GroupKind.CYCLIC:
        return lower_bound_generic(spec.n)
    if spec.kind is GroupKind.DIHEDRAL:
        return max(lower_bound_generic(2 * spec.n), dihedral_lower_bound(spec.n))
    return interval_lower_bound(spec.n)


def _fallback_witness(spec: GroupSpec) -> Optional[Basis]:
    """Cheap constructive upper-bound witness, used when budgets run out."""
    from .constructions import ruler_basis, subgroup_transversal_basis

    try:
        if spec.kind is GroupKind.INTERVAL:
            return ruler_basis(spec.n).basis
        n = spec.n
        best = None
        divisors = [m for m in range(1, n + 1) if n % m == 0]
        for m in divisors:
            cb = subgroup_transversal_basis(spec, m)
            if best is None or len(cb.basis) < len(best):
                best = cb.basis
        return best
    except Exception:  # pragma: no cover - fallback only
        return None


def min_difference_basis(
    spec: GroupSpec, cfg: SearchConfig = SearchConfig()
) -> SearchOutcome:
    """Exact difference size by iterative deepening from the lower bound.

    certified=True means every size below the reported delta is refuted
    (counting bound below the start size, exhaustive search above it).
    On budget exhaustion the outcome is certified=False and carries the
    best known upper witness.
    """
    t0 = time.perf_counter()
    total_nodes = 0
    remaining = cfg.node_budget
    k = start_size(spec)
    while k <= spec.element_count:
        status, witness, nodes = _run_decision(spec, k, cfg, remaining)
        total_nodes += nodes
        if remaining is not None:
            remaining = max(1, remaining - nodes)
        if status == STATUS_FOUND:
            b = Basis(spec, tuple(witness))
            assert is_difference_basis(b) and len(b) == k
            return SearchOutcome(
                delta=k,
                witness=b,
                certified=True,
                nodes_expanded=total_nodes,
                wall_time=time.perf_counter() - t0,
            )
        if status == STATUS_BUDGET:
            fb = _fallback_witness(spec)
            if fb is None:
                raise BudgetExhaustedError(
                    f"budget exhausted for {spec.describe()} with no witness",
                    nodes=total_nodes,
                )
            return SearchOutcome(
                delta=len(fb),
                witness=fb,
                certified=False,
                nodes_expanded=total_nodes,
                wall_time=time.perf_counter() - t0,
            )
        k += 1
    raise AssertionError(f"no difference basis found for {spec.describe()}")


def min_interval_basis(n: int, cfg: SearchConfig = SearchConfig()) -> SearchOutcome:
    if n < 1:
        raise DomainError("interval length must be >= 1")
    return min_difference_basis(interval(n), cfg)


def kernel_name() -> str:
    return KERNEL
