"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Criterion 2 (extended census) is optional and runs only when AMM_EXTENDED
is set; everything else gates the build.  The 18-vertex search is shared
through the session-scoped fixtures in conftest.
"""

import os
import random
from fractions import Fraction

import numpy as np
import pytest

from avgmix.census import (
    CensusRecord,
    census,
    compare_tables,
    records_to_csv,
    verify_totals,
)
from avgmix.enumeration import enumerate_trees, random_tree
from avgmix.exact import (
    average_mixing_exact,
    is_simple,
    kernel_exact,
    rank_via_coefficient,
)
from avgmix.graphs import path, rooted_product_k2, star
from avgmix.matchings import (
    forest_matching_counts,
    lower_bound_certificate,
    simple_from_matching_counts,
)
from avgmix.numeric import average_mixing_float, cesaro_average, verify_cvdv_identity
from avgmix.polynomials import char_poly, matching_char_poly
from avgmix.reference_data import REFERENCE_RANK_TABLE
from avgmix.rooted_family import amm_rooted_product_exact, build_family, tstar_charpoly


def report(criterion: str, passed: bool, detail: str = ""):
    line = f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'}"
    if detail:
        line += f" -- {detail}"
    print(line)
    assert passed, line


def _table_cells(n):
    return {rank: (trees, simple) for rank, trees, simple in REFERENCE_RANK_TABLE[n]}


def _census_cells(recs, n):
    return {r.rank: (r.trees, r.simple_trees) for r in recs if r.n == n}


def test_c01_census_reproduction():
    recs = census(2, 12, method="coeff-fast")
    verify_totals(recs)
    bad = [n for n in range(2, 13) if _census_cells(recs, n) != _table_cells(n)]
    if not bad:
        report("1 census n=2..12", True, "every cell matches the published table")
        return
    # sanctioned exception: an order-6 disagreement passes if it is cited in
    # the comparison report and all three methods agree with each other
    if bad != [6]:
        report("1 census n=2..12", False, f"mismatching orders {bad}")
    rep = compare_tables(recs)
    cited = any("6 vertices" in note or "order 6" in note for note in rep.notes)
    cells6 = _census_cells(recs, 6)
    agree = (
        cells6
        == _census_cells(census(6, 6, method="exact"), 6)
        == _census_cells(census(6, 6, method="float"), 6)
    )
    report(
        "1 census n=2..12",
        cited and agree,
        "order-6 conflict documented; exact/coefficient/float methods agree",
    )


@pytest.mark.skipif(not os.environ.get("AMM_EXTENDED"), reason="extended census is optional")
def test_c02_extended_census():
    recs = census(13, 14, method="coeff-fast")
    bad = [n for n in (13, 14) if _census_cells(recs, n) != _table_cells(n)]
    ok = not bad
    detail = "n=13..14 match"
    if os.environ.get("AMM_EXTENDED") == "full":
        recs18 = census(18, 18, method="coeff-fast", checkpoint_path="census18.ck.json")
        total = sum(r.trees for r in recs18)
        row = CensusRecord(18, 8, 25, 1)
        ok = ok and total == 123867 and row in recs18
        detail += f"; n=18 total {total}, rank-8 row {'present' if row in recs18 else 'missing'}"
    report("2 extended census", ok, detail)


def test_c03_tstar_discovery(tstar_hits):
    ranks = [r for r, _ in tstar_hits]
    unique = len(tstar_hits) == 1 and ranks == [8]
    poly_ok = unique and char_poly(tstar_hits[0][1]) == tstar_charpoly()
    exact_ok = False
    if poly_ok:
        res = average_mixing_exact(tstar_hits[0][1])
        exact_ok = res.rank == 8 and res.simple
    report(
        "3 distinguished 18-vertex tree",
        unique and poly_ok and exact_ok,
        f"hits={ranks}; char poly matches expansion; exact-matrix rank 8",
    )


def test_c04_family_rank_gaps(tstar):
    members = build_family(2, base=tstar)
    m1, m2 = members[1], members[2]
    ok = (
        m1.n == 36 and m1.rank <= 16 and m1.gap >= 2
        and m2.n == 72 and m2.rank <= 32 and m2.gap >= 4
    )
    report(
        "4 family rank bounds",
        ok,
        f"i=1: rank {m1.rank} <= 16, gap {m1.gap}; i=2: rank {m2.rank} <= 32, gap {m2.gap}",
    )


def test_c05_block_formula_equivalence():
    checked = 0
    for n in range(2, 11):
        for t in enumerate_trees(n):
            if not is_simple(t):
                continue
            if amm_rooted_product_exact(t) != average_mixing_exact(rooted_product_k2(t)).matrix:
                report("5 block formula", False, f"disagreement at n={n}")
            checked += 1
    report("5 block formula", True, f"exact equality on all {checked} simple trees n<=10")


def test_c06_coefficient_rank_equivalence():
    checked = 0
    for n in range(2, 11):
        for t in enumerate_trees(n):
            if not is_simple(t):
                continue
            if rank_via_coefficient(t) != average_mixing_exact(t).rank:
                report("6 coefficient rank", False, f"disagreement at n={n}")
            checked += 1
    report("6 coefficient rank", True, f"equal on all {checked} simple trees n<=10")


def test_c07_lower_bound_certificates():
    certified = 0
    for n in range(4, 13):
        for t in enumerate_trees(n):
            if not simple_from_matching_counts(t.n, forest_matching_counts(t)):
                continue
            if n == 4 and sorted(t.degrees()) == [1, 1, 2, 2]:
                continue
            cert = lower_bound_certificate(t)
            rank = average_mixing_exact(t).rank
            if cert.det == 0 or cert.det != cert.closed_form_det or rank < 3:
                report("7 lower bound", False, f"n={n} cert {cert}")
            certified += 1
    report("7 lower bound", True, f"{certified} certificates, all nonzero and rank >= 3")


def test_c08_matching_charpoly_identity():
    rng = random.Random(160693)
    for i in range(1000):
        t = random_tree(rng.randint(1, 16), rng)
        if matching_char_poly(t) != char_poly(t):
            report("8 matching identity", False, f"tree {i}: {t.edges}")
    report("8 matching identity", True, "1000 random trees n<=16, exact equality")


def test_c09_numerical_cross_validation():
    worst_gap = 0.0
    for n in range(2, 11):
        for t in enumerate_trees(n):
            exact = np.array([[float(c) for c in row] for row in average_mixing_exact(t).matrix])
            worst_gap = max(worst_gap, float(np.max(np.abs(average_mixing_float(t) - exact))))
    worst_res = 0.0
    for n in range(2, 11):
        for t in enumerate_trees(n):
            if is_simple(t):
                worst_res = max(worst_res, verify_cvdv_identity(t))
    worst_ces = 0.0
    for n in range(2, 7):
        for t in enumerate_trees(n):
            exact = np.array([[float(c) for c in row] for row in average_mixing_exact(t).matrix])
            ca = cesaro_average(t, 1e4, 200_000)
            worst_ces = max(worst_ces, float(np.max(np.abs(ca - exact))))
    ok = worst_gap < 1e-9 and worst_res < 1e-7 and worst_ces < 5e-3
    report(
        "9 numerical cross-validation",
        ok,
        f"float gap {worst_gap:.1e} < 1e-9; factorization residual {worst_res:.1e} < 1e-7; "
        f"time-average error {worst_ces:.1e} < 5e-3",
    )


def test_c10_structural_invariants():
    for n in range(2, 9):
        for t in enumerate_trees(n):
            m = average_mixing_exact(t).matrix
            sym = all(m[i][j] == m[j][i] for i in range(n) for j in range(n))
            nonneg = all(c >= 0 for row in m for c in row)
            rows = all(sum(row) == 1 for row in m)
            if not (sym and nonneg and rows):
                report("10 structural invariants", False, f"n={n}")
    lifted = 0
    for n in range(2, 9):
        for t in enumerate_trees(n):
            if not is_simple(t):
                continue
            basis = kernel_exact(average_mixing_exact(t).matrix)
            if not basis:
                continue
            big = average_mixing_exact(rooted_product_k2(t)).matrix
            zero = [Fraction(0)] * t.n
            for v in basis:
                for vec in (list(v) + zero, zero + list(v)):
                    if any(sum(big[i][j] * vec[j] for j in range(2 * t.n)) != 0 for i in range(2 * t.n)):
                        report("10 structural invariants", False, f"kernel lift fails n={n}")
                    lifted += 1
    report(
        "10 structural invariants", True,
        f"symmetry/nonnegativity/row sums exact on trees n<=8; {lifted} kernel lifts exact",
    )


def test_c11_determinism(tmp_path):
    a = records_to_csv(census(2, 9, threads=1))
    b = records_to_csv(census(2, 9, threads=2))
    threads_ok = a == b

    ck = str(tmp_path / "ck.json")

    class Stop(Exception):
        pass

    count = [0]

    def bomb(n, done):
        count[0] += 1
        if count[0] == 4:
            raise Stop

    with pytest.raises(Stop):
        census(8, 9, chunk_size=7, checkpoint_path=ck, progress=bomb)
    resumed = records_to_csv(census(8, 9, chunk_size=7, checkpoint_path=ck))
    fresh = records_to_csv(census(8, 9, chunk_size=7))
    resume_ok = resumed == fresh
    report(
        "11 determinism",
        threads_ok and resume_ok,
        "byte-identical across thread counts and across interrupt/resume",
    )


def test_c12_star_comparison_report(capsys):
    from avgmix.verify import run_suite

    lines = []
    ok = run_suite("stars", 11, out=lines.append)
    emitted = sum(1 for ln in lines if "leaves=" in ln)
    with capsys.disabled():
        print()
        for ln in lines:
            print("  " + ln)
    report("12 star formula comparison", ok and emitted == 10, f"{emitted} orders compared, report emitted")
