import os

import pytest

from avgmix.census import (
    CensusRecord,
    CheckpointMismatch,
    census,
    classify_tree,
    compare_tables,
    records_from_csv,
    records_to_csv,
    verify_totals,
)
from avgmix.graphs import path, star
from avgmix.reference_data import REFERENCE_RANK_TABLE


def test_classify_methods_agree_on_examples():
    for g, want in ((path(4), (2, True)), (star(6), (6, False)), (path(2), (1, True))):
        for method in ("exact", "coeff-fast", "float"):
            assert classify_tree(g, method) == want, (method, g)


def test_census_matches_reference_small():
    recs = census(2, 9)
    by_cell = {(r.n, r.rank): (r.trees, r.simple_trees) for r in recs}
    for n in range(2, 10):
        for rank, trees, simple in REFERENCE_RANK_TABLE[n]:
            assert by_cell[(n, rank)] == (trees, simple), (n, rank)
    verify_totals(recs)
    rep = compare_tables(recs)
    assert rep.ok
    assert any("prose" in note for note in rep.notes)  # the order-6 annotation


def test_census_examples_from_table():
    recs = census(9, 9)
    assert CensusRecord(9, 5, 19, 18) in recs
    recs2 = census(2, 2)
    assert recs2 == [CensusRecord(2, 1, 1, 1)]


def test_methods_produce_identical_tables():
    a = records_to_csv(census(2, 8, method="coeff-fast"))
    b = records_to_csv(census(2, 8, method="exact"))
    c = records_to_csv(census(2, 8, method="float"))
    assert a == b == c


def test_thread_count_invariance():
    a = records_to_csv(census(2, 8, threads=1))
    b = records_to_csv(census(2, 8, threads=2))
    assert a == b


def test_checkpoint_interrupt_resume(tmp_path):
    ck = str(tmp_path / "ck.json")

    class Stop(Exception):
        pass

    seen = []

    def bomb(n, done):
        seen.append((n, done))
        if len(seen) == 3:
            raise Stop

    with pytest.raises(Stop):
        census(8, 9, chunk_size=10, checkpoint_path=ck, progress=bomb)
    assert os.path.exists(ck)
    resumed = census(8, 9, chunk_size=10, checkpoint_path=ck)
    fresh = census(8, 9, chunk_size=10)
    assert records_to_csv(resumed) == records_to_csv(fresh)


def test_checkpoint_mismatch_rejected(tmp_path):
    ck = str(tmp_path / "ck.json")
    census(5, 6, chunk_size=4, checkpoint_path=ck)
    with pytest.raises(CheckpointMismatch):
        census(5, 6, method="exact", chunk_size=4, checkpoint_path=ck)
    with pytest.raises(CheckpointMismatch):
        census(5, 7, chunk_size=4, checkpoint_path=ck)


def test_census_argument_validation():
    with pytest.raises(ValueError):
        census(1, 5)
    with pytest.raises(ValueError):
        census(5, 4)
    with pytest.raises(ValueError):
        census(2, 4, method="magic")


def test_csv_roundtrip_and_header():
    recs = census(4, 6)
    text = records_to_csv(recs)
    assert text.splitlines()[0] == "n,rank,trees,simple_trees"
    assert records_from_csv(text) == recs
    with pytest.raises(ValueError):
        records_from_csv("bogus\n1,2,3,4\n")


def test_compare_flags_mismatches_with_certificates():
    recs = [CensusRecord(4, 2, 2, 1), CensusRecord(4, 4, 0, 0)]
    rep = compare_tables(recs)
    assert not rep.ok
    cells = {(m.n, m.rank) for m in rep.mismatches}
    assert cells == {(4, 2), (4, 4)}
    # the tree this package places at the mismatched cell is certified
    assert rep.certificates[(4, 2)] == ["Cp"] or len(rep.certificates[(4, 2)]) == 1
    assert "MISMATCH" in rep.render()


def test_compare_min_rank_row():
    rep = compare_tables(census(2, 10))
    assert rep.ok  # includes the min-rank row: n=10 -> 4, n=7 -> 4
