"""Acceptance gate.

Each criterion prints exactly one PASS/FAIL line (bypassing capture) and
asserts.  Reference values for the cyclic and dihedral tables are known
published computations; every computed value here is independently
certified by exhaustive search or re-verified against naive oracles.
"""

import time
from math import ceil, sqrt
from pathlib import Path

import pytest

from diffbase import (
    Basis,
    Characteristic,
    SearchConfig,
    bose_chowla_set,
    bound_report,
    check_analytic_inequality,
    cyclic,
    dihedral,
    dihedral_basis_from_cyclic,
    dihedral_lower_bound,
    interval,
    is_difference_basis,
    is_perfect_difference_set,
    is_sidon_set,
    min_difference_basis,
    prime_powers_up_to,
    singer_set,
    split_dihedral_basis,
    verify_gap_inequality,
)
from diffbase.groups import difference_cover
from diffbase.search import find_basis_of_size

from oracles import (
    cyclic_covers,
    naive_cyclic_delta,
    naive_dihedral_delta,
    naive_interval_delta,
)

# Known reference values: difference sizes of C_n for n <= 100.
TABLE1 = {
    1: 1, 2: 2, 3: 2, 4: 3, 5: 3, 6: 3, 7: 3, 8: 4, 9: 4, 10: 4,
    11: 4, 12: 4, 13: 4, 14: 5, 15: 5, 16: 5, 17: 5, 18: 5, 19: 5, 20: 6,
    21: 5, 22: 6, 23: 6, 24: 6, 25: 6, 26: 6, 27: 6, 28: 6, 29: 7, 30: 7,
    31: 6, 32: 7, 33: 7, 34: 7, 35: 7, 36: 7, 37: 7, 38: 8, 39: 7, 40: 8,
    41: 8, 42: 8, 43: 8, 44: 8, 45: 8, 46: 8, 47: 8, 48: 8, 49: 8, 50: 8,
    51: 8, 52: 9, 53: 9, 54: 9, 55: 9, 56: 9, 57: 8, 58: 9, 59: 9, 60: 9,
    61: 9, 62: 9, 63: 9, 64: 9, 65: 9, 66: 10, 67: 10, 68: 10, 69: 10,
    70: 10, 71: 10, 72: 10, 73: 9, 74: 10, 75: 10, 76: 10, 77: 10, 78: 10,
    79: 10, 80: 11, 81: 11, 82: 11, 83: 11, 84: 11, 85: 11, 86: 11, 87: 11,
    88: 11, 89: 11, 90: 11, 91: 10, 92: 11, 93: 12, 94: 12, 95: 12, 96: 12,
    97: 12, 98: 12, 99: 12, 100: 12,
}

# Known reference values: 2n -> (lower bound, delta, 2*delta of C_n).
TABLE2 = {
    2: (2, 2, 2), 4: (3, 3, 4), 6: (4, 4, 4), 8: (4, 4, 6), 10: (5, 5, 6),
    12: (5, 5, 6), 14: (6, 6, 6), 16: (6, 6, 8), 18: (6, 7, 8),
    20: (7, 7, 8), 22: (7, 8, 8), 24: (7, 7, 8), 26: (8, 8, 8),
    28: (8, 8, 10), 30: (8, 8, 10), 32: (8, 9, 10), 34: (9, 9, 10),
    36: (9, 9, 10), 38: (9, 10, 10), 40: (9, 9, 12), 42: (10, 10, 10),
    44: (10, 10, 12), 46: (10, 11, 12), 48: (10, 10, 12), 50: (10, 11, 12),
    52: (11, 11, 12), 54: (11, 12, 12), 56: (11, 11, 12), 58: (11, 12, 14),
    60: (11, 12, 14), 62: (12, 12, 12), 64: (12, 12, 14), 66: (12, 13, 14),
    68: (12, 13, 14), 70: (12, 12, 14), 72: (12, 13, 14), 74: (13, 14, 14),
    76: (13, 14, 16), 78: (13, 14, 14), 80: (13, 14, 16),
}

# The reference table overstates delta at n = 93 and n = 95: these
# verified witnesses show 11-element difference bases (the counting bound
# rules out 10, so 11 is certified exact in both cases).
TABLE1_ERRATA = {
    93: (11, (0, 16, 20, 22, 25, 37, 48, 55, 56, 66, 79)),
    95: (11, (0, 1, 3, 7, 16, 19, 41, 46, 67, 78, 88)),
}


def report(num, ok, detail, capsys):
    with capsys.disabled():
        print(f"\nACCEPTANCE {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


@pytest.fixture(scope="module")
def cyclic_results():
    return {n: min_difference_basis(cyclic(n)) for n in range(1, 65)}


@pytest.fixture(scope="module")
def dihedral_results():
    return {n: min_difference_basis(dihedral(n)) for n in range(1, 25)}


def test_criterion_1_table2_fast(dihedral_results, capsys):
    t0 = time.time()
    bad = []
    for order, (lb, delta, _) in TABLE2.items():
        if order > 48:
            continue
        n = order // 2
        out = dihedral_results[n]
        if not out.certified or out.delta != delta or dihedral_lower_bound(n) != lb:
            bad.append(order)
    elapsed = time.time() - t0
    report(
        1,
        not bad and elapsed < 600,
        f"certified delta[D_2n] matches the reference table for all 2n <= 48 "
        f"({elapsed:.1f}s); long rows 50..80 run under --run-long",
        capsys,
    )


@pytest.mark.long
def test_criterion_1_table2_long():
    cfg = SearchConfig(node_budget=None)
    for order, (_, delta, _) in TABLE2.items():
        if order <= 48:
            continue
        out = min_difference_basis(dihedral(order // 2), cfg)
        assert out.certified and out.delta == delta, order


def test_criterion_2_table1(cyclic_results, capsys):
    t0 = time.time()
    bad = []
    for n in range(1, 65):
        out = cyclic_results[n]
        if not out.certified or out.delta != TABLE1[n]:
            bad.append(n)
    fast_elapsed = time.time() - t0

    # witness mode for 64 < n <= 100: a basis of the reference size must
    # exist and the reference value must not fall below any proven lower
    # bound
    deviations = []
    for n in range(65, 101):
        ref = TABLE1[n]
        b = find_basis_of_size(cyclic(n), ref, SearchConfig(node_budget=10 ** 9))
        rep = bound_report(cyclic(n))
        if b is None or not is_difference_basis(b) or ref < rep.best_lower:
            bad.append(n)
        if n in TABLE1_ERRATA:
            # the reference value is refuted by an explicit smaller witness
            true_delta, witness = TABLE1_ERRATA[n]
            w = Basis(cyclic(n), witness)
            ok_erratum = (
                is_difference_basis(w)
                and cyclic_covers(set(witness), n)
                and len(w) == true_delta == rep.best_lower
            )
            if not ok_erratum:
                bad.append(n)
            deviations.append(
                f"n={n}: reference value {ref} is not minimal; verified "
                f"{true_delta}-element witness found (documented erratum)"
            )
    note = f"; deviation: {'; '.join(deviations)}" if deviations else ""
    report(
        2,
        not bad and fast_elapsed < 600,
        f"certified delta[C_n] matches the reference table for n <= 64 "
        f"({fast_elapsed:.1f}s); witness mode consistent for 65..100{note}",
        capsys,
    )


@pytest.mark.long
def test_criterion_2_table1_long():
    """Full certification of 65..100; any deviation from the reference
    that is not already a documented erratum fails loudly so the errata
    list gets extended."""
    cfg = SearchConfig(node_budget=None)
    for n in range(65, 101):
        out = min_difference_basis(cyclic(n), cfg)
        assert out.certified, n
        expected = TABLE1_ERRATA[n][0] if n in TABLE1_ERRATA else TABLE1[n]
        assert out.delta == expected, (
            f"n={n}: certified {out.delta}, reference {TABLE1[n]}, witness "
            f"{out.witness.elems}; undocumented reference erratum?"
        )


def test_criterion_3_singer_doubling(capsys):
    bad = []
    for q in (2, 3, 4, 5):
        n = q * q + q + 1
        doubled = dihedral_basis_from_cyclic(singer_set(q).basis)
        out = min_difference_basis(dihedral(n))
        expected = 2 * q + 2
        if not (
            doubled.size == expected
            and out.certified
            and out.delta == expected == ceil(2 * sqrt(n))
        ):
            bad.append(q)
    report(
        3,
        not bad,
        "delta[D_2(q^2+q+1)] = 2q+2 via singer doubling + certified search "
        "for q in {2,3,4,5}",
        capsys,
    )


def test_criterion_4_quadrupling_lower_end(capsys):
    out = min_difference_basis(dihedral(28))
    ok = out.certified and out.delta == 11 == 4 * 2 + 3
    report(4, ok, "certified delta[D_56] = 11 = 4q+3 for q=2", capsys)


def test_criterion_5_singer_and_sidon(capsys):
    t0 = time.time()
    bad = []
    for q in prime_powers_up_to(32):
        b = singer_set(q).basis
        if len(b) != q + 1 or not is_perfect_difference_set(b):
            bad.append(("singer", q))
    for q in prime_powers_up_to(64):
        b = bose_chowla_set(q).basis
        if len(b) != q or not is_sidon_set(b):
            bad.append(("bose-chowla", q))
    elapsed = time.time() - t0
    report(
        5,
        not bad and elapsed < 120,
        f"singer perfect difference sets for q <= 32 and bose-chowla sidon "
        f"sets for q <= 64 all verify ({elapsed:.1f}s)",
        capsys,
    )


def test_criterion_6_gap_inequalities(capsys):
    t0 = time.time()
    gaps = verify_gap_inequality(331, 3275)
    analytic = check_analytic_inequality(43, 10 ** 6, 1.0)
    holds = dict(analytic.boundary)
    ok = gaps.ok and analytic.ok and holds[43] and not holds[42]
    elapsed = time.time() - t0
    report(
        6,
        ok and elapsed < 60,
        f"gap inequality holds on [331,3275] ({gaps.pairs_checked} pairs) and "
        f"the analytic bound holds on [43,10^6] at unit steps ({elapsed:.1f}s)",
        capsys,
    )


def test_criterion_7_property_suite(cyclic_results, dihedral_results, capsys):
    bad = []

    # oracle equivalence
    for n in range(1, 17):
        if cyclic_results.get(n, min_difference_basis(cyclic(n))).delta != naive_cyclic_delta(n):
            bad.append(("cyclic-oracle", n))
    for n in range(1, 13):
        if dihedral_results[n].delta != naive_dihedral_delta(n):
            bad.append(("dihedral-oracle", n))
    for n in range(1, 13):
        if min_difference_basis(interval(n)).delta != naive_interval_delta(n):
            bad.append(("interval-oracle", n))

    # invariants on every certified witness
    for n, out in cyclic_results.items():
        base = difference_cover(out.witness).bits
        for t in (1, n // 2):
            shifted = Basis(cyclic(n), tuple(sorted((e + t) % n for e in out.witness.elems)))
            if difference_cover(shifted).bits != base:
                bad.append(("translation", n))
    for n, out in dihedral_results.items():
        rot, refl = split_dihedral_basis(out.witness)
        # any difference basis A u sB of D_2n has A - B = Z_n
        diffs = {(a - b) % n for a in rot for b in refl}
        if refl and diffs != set(range(n)):
            bad.append(("dihedral-split", n))

    # sandwich: lb <= delta[D_2n] <= 2 delta[C_n]
    for n in range(1, 25):
        d = dihedral_results[n].delta
        if not dihedral_lower_bound(n) <= d <= 2 * cyclic_results[n].delta:
            bad.append(("sandwich", n))

    # exact characteristic bounds, checked by integer squaring:
    # cyclic: <= 3/2; <= sqrt(2) for n != 4; <= 12/sqrt(73) and
    # <= 24/sqrt(293) for n >= 9 (no n = 292 here); dihedral:
    # sqrt(2) <= eth <= 48/sqrt(586)
    for n, out in cyclic_results.items():
        c = Characteristic(out.delta, n)
        if not c.le_ratio(3, 4):
            bad.append(("cyclic-3/2", n))
        if n != 4 and not c.le_ratio(2, 2):
            bad.append(("cyclic-sqrt2", n))
        if n >= 9 and not (c.le_ratio(12, 73) and c.le_ratio(24, 293)):
            bad.append(("cyclic-singer-bound", n))
    for n, out in dihedral_results.items():
        c = Characteristic(out.delta, 2 * n)
        if not (c.ge_ratio(2, 2) and c.le_ratio(48, 586)):
            bad.append(("dihedral-characteristic", n))

    report(
        7,
        not bad,
        "oracle equivalence, translation/split invariants, sandwich bound "
        "and exact characteristic bounds all hold"
        + (f" (violations: {bad})" if bad else ""),
        capsys,
    )


def test_criterion_8_out_of_scope_documented(capsys):
    from diffbase.cli import main

    # the bounds-only scan substitutes for the out-of-reach regimes
    code = main(["scan", "--max", "200", "--bounds-only", "--no-cache"])
    readme = (Path(__file__).resolve().parent.parent / "README.md").read_text()
    documented = all(
        token in readme
        for token in ("6166", "2 * 10^15", "1,212,464", "4/sqrt(3)")
    )
    report(
        8,
        code == 0 and documented,
        "bounds-only scan mode works; out-of-reach regimes are documented "
        "as open in the README",
        capsys,
    )
