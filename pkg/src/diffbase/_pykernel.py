"""Pure-Python decision-search kernel.

Fallback used when the compiled extension is unavailable.  Semantics are
identical to ``_ckernel``: given a pair->bit table, find a set of exactly
``k`` candidate indices whose pairwise difference bits cover the whole
universe, or exhaust the (symmetry-reduced) search space.

Status codes: 0 = exhausted (no basis), 1 = found, 2 = budget exhausted.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

KERNEL_NAME = "python"

STATUS_EXHAUSTED = 0
STATUS_FOUND = 1
STATUS_BUDGET = 2


class _Abort(Exception):
    pass


def decision_search(
    dbits,                      # (C, C) array-like of int, bit index or -1
    universe: int,
    ncand: int,
    k: int,
    prefix: Sequence[int] = (0,),
    allowed_second: Optional[Sequence[bool]] = None,
    max_step: bool = False,
    wrap_n: int = 0,
    dihedral_n: int = 0,
    refl_sym: bool = False,
    pair_factor: int = 2,
    require_last: int = -1,
    node_budget: int = 0,
    heur_depth: int = 3,
    use_pruning: bool = True,
) -> Tuple[int, Optional[List[int]], int]:
    full = (1 << universe) - 1

    # pairmask[a][b]: bits contributed by adding the unordered pair {a, b}
    pairmask = [[0] * ncand for _ in range(ncand)]
    for a in range(ncand):
        row = dbits[a]
        for b in range(ncand):
            m = 0
            i = row[b]
            if i >= 0:
                m |= 1 << i
            j = dbits[b][a]
            if j >= 0:
                m |= 1 << j
            pairmask[a][b] = m

    chosen: List[int] = []
    covered = 0
    for x in prefix:
        for s in chosen:
            covered |= pairmask[x][s]
        covered |= pairmask[x][x]
        chosen.append(x)

    rot_mask = (1 << dihedral_n) - 1 if dihedral_n else 0
    nodes = 0
    result: List[Optional[List[int]]] = [None]

    def pad_witness() -> List[int]:
        out = list(chosen)
        used = set(out)
        x = 0
        while len(out) < k:
            if x not in used:
                out.append(x)
                used.add(x)
            x += 1
        return sorted(out)

    def split_prune_ok(m: int, cov: int) -> bool:
        # Dihedral-only: rotations and reflections cover each other's halves
        # at bounded rates; check some feasible split of the remaining slots.
        n = dihedral_n
        nA = sum(1 for c in chosen if c < n)
        nB = m - nA
        r = k - m
        last = chosen[-1] if chosen else -1
        avail_rot = max(0, n - 1 - last) if last < n else 0
        avail_refl = 2 * n - 1 - max(last, n - 1)
        u_rot = n - (cov & rot_mask).bit_count()
        u_refl = (universe - n) - (cov >> n).bit_count()
        for rA in range(min(r, avail_rot) + 1):
            rB = r - rA
            if rB > avail_refl:
                continue
            A2, B2 = nA + rA, nB + rB
            new_rot = A2 * (A2 - 1) - nA * (nA - 1) + B2 * (B2 - 1) - nB * (nB - 1)
            new_refl = A2 * B2 - nA * nB
            if u_rot <= new_rot and u_refl <= new_refl:
                return True
        return False

    def dfs(cov: int) -> bool:
        nonlocal nodes
        nodes += 1
        if node_budget and nodes > node_budget:
            raise _Abort
        m = len(chosen)
        if cov == full:
            if max_step and m == k and wrap_n and len(chosen) >= 2:
                if wrap_n - chosen[-1] > chosen[1]:
                    return False
            result[0] = pad_witness()
            return True
        if m == k:
            return False
        r = k - m
        if use_pruning:
            max_new = pair_factor * (k * (k - 1) - m * (m - 1)) // 2
            if cov.bit_count() + max_new < universe:
                return False
            if dihedral_n and not split_prune_ok(m, cov):
                return False
        start = chosen[-1] + 1 if m else 0
        hi = ncand - r  # leave room for r increasing elements
        if require_last >= 0 and r == 1 and require_last not in chosen:
            if require_last < start:
                return False
            cands = [require_last]
        else:
            cands = []
            b1 = chosen[1] if len(chosen) >= 2 else None
            no_refl = dihedral_n and chosen and chosen[-1] < dihedral_n
            first_refl = None
            if dihedral_n and not no_refl:
                for c in chosen:
                    if c >= dihedral_n:
                        first_refl = c
                        break
            for x in range(start, hi + 1):
                if m == 1 and allowed_second is not None and not allowed_second[x]:
                    continue
                if max_step:
                    if m == 1 and wrap_n and x * k < wrap_n:
                        continue
                    if m >= 2:
                        if x - chosen[-1] > b1:
                            break
                        # even stepping maximally, the last element must reach
                        # within b1 of wrap_n
                        if wrap_n and x + (r - 1) * b1 < wrap_n - b1:
                            continue
                if refl_sym and dihedral_n and x >= dihedral_n:
                    if no_refl and first_refl is None:
                        # canonical form: first reflection residue is 0, or 1
                        # when n is even and all residues are odd
                        if x > dihedral_n + (1 if dihedral_n % 2 == 0 else 0):
                            break
                    elif first_refl == dihedral_n + 1:
                        if (x - dihedral_n) % 2 == 0:
                            continue
                cands.append(x)
        if m < heur_depth and len(cands) > 1:
            cands.sort(
                key=lambda x: -_new_bits(pairmask, chosen, cov, x)
            )
        for x in cands:
            new = pairmask[x][x]
            for s in chosen:
                new |= pairmask[x][s]
            chosen.append(x)
            hit = dfs(cov | new)
            chosen.pop()
            if hit:
                return True
        return False

    try:
        found = dfs(covered)
    except _Abort:
        return STATUS_BUDGET, None, nodes
    if found:
        return STATUS_FOUND, result[0], nodes
    return STATUS_EXHAUSTED, None, nodes


def _new_bits(pairmask, chosen, cov, x) -> int:
    new = pairmask[x][x]
    for s in chosen:
        new |= pairmask[x][s]
    return (new & ~cov).bit_count()
