# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled decision-search kernel; see _pykernel for the reference
semantics.  Masks are 256-bit (four 64-bit words); the DFS runs nogil."""

from libc.stdlib cimport calloc, free
from libc.string cimport memcpy, memset

KERNEL_NAME = "c"

STATUS_EXHAUSTED = 0
STATUS_FOUND = 1
STATUS_BUDGET = 2

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

DEF NW = 4          # mask words
DEF MAXC = 256      # max candidates
DEF MAXK = 32       # max target size


cdef inline int _popcount(u64 *a) nogil:
    return (__builtin_popcountll(a[0]) + __builtin_popcountll(a[1]) +
            __builtin_popcountll(a[2]) + __builtin_popcountll(a[3]))


cdef struct SP:
    u64 *pairmask            # C*C*NW
    int C
    int universe
    int k
    u64 full[NW]
    u64 rotmask[NW]
    unsigned char *allowed_second   # NULL or C flags
    bint max_step
    int wrap_n
    int di_n
    bint refl_sym
    int pair_factor
    int require_last
    long long node_budget
    int heur_depth
    bint use_pruning
    long long nodes
    int chosen[MAXK]
    int m
    int witness[MAXK]


cdef int _pad_witness(SP *sp) nogil:
    cdef int i, x, cnt = 0
    cdef unsigned char used[MAXC]
    memset(used, 0, sp.C)
    for i in range(sp.m):
        sp.witness[cnt] = sp.chosen[i]
        used[sp.chosen[i]] = 1
        cnt += 1
    x = 0
    while cnt < sp.k:
        if not used[x]:
            sp.witness[cnt] = x
            cnt += 1
        x += 1
    # insertion sort
    cdef int j, v
    for i in range(1, sp.k):
        v = sp.witness[i]
        j = i - 1
        while j >= 0 and sp.witness[j] > v:
            sp.witness[j + 1] = sp.witness[j]
            j -= 1
        sp.witness[j + 1] = v
    return 0


cdef bint _split_prune_ok(SP *sp, u64 *cov) nogil:
    cdef int n = sp.di_n
    cdef int m = sp.m
    cdef int nA = 0, i
    for i in range(m):
        if sp.chosen[i] < n:
            nA += 1
    cdef int nB = m - nA
    cdef int r = sp.k - m
    cdef int last = sp.chosen[m - 1] if m > 0 else -1
    cdef int avail_rot = (n - 1 - last) if last < n else 0
    if avail_rot < 0:
        avail_rot = 0
    cdef int mx = last if last > n - 1 else n - 1
    cdef int avail_refl = 2 * n - 1 - mx
    cdef u64 tmp[NW]
    for i in range(NW):
        tmp[i] = cov[i] & sp.rotmask[i]
    cdef int u_rot = n - _popcount(tmp)
    cdef int u_refl = (sp.universe - n) - (_popcount(cov) - (n - u_rot))
    cdef int rA, rB, A2, B2, new_rot, new_refl
    cdef int rmax = r if r < avail_rot else avail_rot
    for rA in range(rmax + 1):
        rB = r - rA
        if rB > avail_refl:
            continue
        A2 = nA + rA
        B2 = nB + rB
        new_rot = A2 * (A2 - 1) - nA * (nA - 1) + B2 * (B2 - 1) - nB * (nB - 1)
        new_refl = A2 * B2 - nA * nB
        if u_rot <= new_rot and u_refl <= new_refl:
            return True
    return False


cdef int _dfs(SP *sp, u64 *cov) nogil:
    sp.nodes += 1
    if sp.node_budget > 0 and sp.nodes > sp.node_budget:
        return 2
    cdef int m = sp.m
    cdef int i, j
    cdef bint full = True
    for i in range(NW):
        if cov[i] != sp.full[i]:
            full = False
            break
    if full:
        if sp.max_step and m == sp.k and sp.wrap_n and sp.k >= 2:
            if sp.wrap_n - sp.chosen[m - 1] > sp.chosen[1]:
                return 0
        _pad_witness(sp)
        return 1
    if m == sp.k:
        return 0
    cdef int r = sp.k - m
    cdef int max_new
    if sp.use_pruning:
        max_new = sp.pair_factor * (sp.k * (sp.k - 1) - m * (m - 1)) // 2
        if _popcount(cov) + max_new < sp.universe:
            return 0
        if sp.di_n and not _split_prune_ok(sp, cov):
            return 0

    cdef int start = sp.chosen[m - 1] + 1 if m > 0 else 0
    cdef int hi = sp.C - r
    cdef int cand[MAXC]
    cdef int ncands = 0
    cdef int b1 = sp.chosen[1] if m >= 2 else -1
    cdef bint have_last = False
    if sp.require_last >= 0:
        for i in range(m):
            if sp.chosen[i] == sp.require_last:
                have_last = True
                break
    cdef bint no_refl = False
    cdef int first_refl = -1
    if sp.di_n:
        no_refl = m > 0 and sp.chosen[m - 1] < sp.di_n
        if not no_refl:
            for i in range(m):
                if sp.chosen[i] >= sp.di_n:
                    first_refl = sp.chosen[i]
                    break
    cdef int x, lim
    if sp.require_last >= 0 and r == 1 and not have_last:
        if sp.require_last < start:
            return 0
        cand[0] = sp.require_last
        ncands = 1
    else:
        for x in range(start, hi + 1):
            if m == 1 and sp.allowed_second != NULL and not sp.allowed_second[x]:
                continue
            if sp.max_step:
                if m == 1 and sp.wrap_n and x * sp.k < sp.wrap_n:
                    continue
                if m >= 2:
                    if x - sp.chosen[m - 1] > b1:
                        break
                    if sp.wrap_n and x + (r - 1) * b1 < sp.wrap_n - b1:
                        continue
            if sp.refl_sym and sp.di_n and x >= sp.di_n:
                if no_refl:
                    lim = sp.di_n + (1 if sp.di_n % 2 == 0 else 0)
                    if x > lim:
                        break
                elif first_refl == sp.di_n + 1:
                    if (x - sp.di_n) % 2 == 0:
                        continue
            cand[ncands] = x
            ncands += 1

    cdef u64 newmask[NW]
    cdef u64 child[NW]
    cdef u64 *pm
    cdef int score[MAXC]
    cdef int v, sv, w, res
    if m < sp.heur_depth and ncands > 1:
        for i in range(ncands):
            x = cand[i]
            pm = sp.pairmask + (<long> x * sp.C + x) * NW
            for w in range(NW):
                newmask[w] = pm[w]
            for j in range(m):
                pm = sp.pairmask + (<long> x * sp.C + sp.chosen[j]) * NW
                for w in range(NW):
                    newmask[w] |= pm[w]
            for w in range(NW):
                newmask[w] &= ~cov[w]
            score[i] = _popcount(newmask)
        # stable insertion sort, descending score
        for i in range(1, ncands):
            v = cand[i]
            sv = score[i]
            j = i - 1
            while j >= 0 and score[j] < sv:
                cand[j + 1] = cand[j]
                score[j + 1] = score[j]
                j -= 1
            cand[j + 1] = v
            score[j + 1] = sv

    for i in range(ncands):
        x = cand[i]
        pm = sp.pairmask + (<long> x * sp.C + x) * NW
        for w in range(NW):
            newmask[w] = pm[w]
        for j in range(m):
            pm = sp.pairmask + (<long> x * sp.C + sp.chosen[j]) * NW
            for w in range(NW):
                newmask[w] |= pm[w]
        for w in range(NW):
            child[w] = cov[w] | newmask[w]
        sp.chosen[m] = x
        sp.m = m + 1
        res = _dfs(sp, child)
        sp.m = m
        if res:
            return res
    return 0


def decision_search(
    dbits,
    int universe,
    int ncand,
    int k,
    prefix=(0,),
    allowed_second=None,
    bint max_step=False,
    int wrap_n=0,
    int dihedral_n=0,
    bint refl_sym=False,
    int pair_factor=2,
    int require_last=-1,
    long long node_budget=0,
    int heur_depth=3,
    bint use_pruning=True,
):
    if ncand > MAXC or universe > MAXC * 1 or k > MAXK - 1:
        raise ValueError("instance exceeds compiled kernel limits")
    cdef SP sp
    memset(&sp, 0, sizeof(SP))
    sp.C = ncand
    sp.universe = universe
    sp.k = k
    sp.max_step = max_step
    sp.wrap_n = wrap_n
    sp.di_n = dihedral_n
    sp.refl_sym = refl_sym
    sp.pair_factor = pair_factor
    sp.require_last = require_last
    sp.node_budget = node_budget
    sp.heur_depth = heur_depth
    sp.use_pruning = use_pruning

    cdef int i, j, w, b, x, status
    cdef u64 cov[NW]
    cdef u64 *pm
    cdef unsigned char *allowed = NULL
    for i in range(universe):
        sp.full[i >> 6] |= (<u64> 1) << (i & 63)
    if dihedral_n:
        for i in range(dihedral_n):
            sp.rotmask[i >> 6] |= (<u64> 1) << (i & 63)

    sp.pairmask = <u64 *> calloc(<size_t> ncand * ncand * NW, sizeof(u64))
    if sp.pairmask == NULL:
        raise MemoryError
    try:
        for i in range(ncand):
            row = dbits[i]
            for j in range(ncand):
                b = row[j]
                if b >= 0:
                    sp.pairmask[(<long> i * ncand + j) * NW + (b >> 6)] |= (
                        (<u64> 1) << (b & 63)
                    )
                b = dbits[j][i]
                if b >= 0:
                    sp.pairmask[(<long> i * ncand + j) * NW + (b >> 6)] |= (
                        (<u64> 1) << (b & 63)
                    )
        if allowed_second is not None:
            allowed = <unsigned char *> calloc(ncand, 1)
            if allowed == NULL:
                raise MemoryError
            for i in range(ncand):
                allowed[i] = 1 if allowed_second[i] else 0
            sp.allowed_second = allowed

        memset(cov, 0, sizeof(cov))
        for i in range(len(prefix)):
            x = prefix[i]
            pm = sp.pairmask + (<long> x * ncand + x) * NW
            for w in range(NW):
                cov[w] |= pm[w]
            for j in range(sp.m):
                pm = sp.pairmask + (<long> x * ncand + sp.chosen[j]) * NW
                for w in range(NW):
                    cov[w] |= pm[w]
            sp.chosen[sp.m] = x
            sp.m += 1

        with nogil:
            status = _dfs(&sp, cov)
        if status == 1:
            return STATUS_FOUND, [sp.witness[i] for i in range(k)], sp.nodes
        if status == 2:
            return STATUS_BUDGET, None, sp.nodes
        return STATUS_EXHAUSTED, None, sp.nodes
    finally:
        free(sp.pairmask)
        if allowed != NULL:
            free(allowed)
