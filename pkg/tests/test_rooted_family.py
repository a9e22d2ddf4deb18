import math

import numpy as np
import pytest

from avgmix.enumeration import enumerate_trees
from avgmix.errors import ConsistencyError, DomainError
from avgmix.exact import average_mixing_exact, is_simple, kernel_exact
from avgmix.graphs import path, rooted_product_k2, star
from avgmix.numeric import eigh
from avgmix.polynomials import char_poly, is_squarefree
from avgmix.rooted_family import (
    amm_rooted_product_exact,
    build_family,
    k2_eigenbasis,
    k2_spectrum_map,
    load_t_star,
    rooted_product_char_poly,
    tstar_charpoly,
)

GOLDEN = (1 + math.sqrt(5)) / 2


def test_spectrum_map_examples():
    assert np.allclose(sorted(k2_spectrum_map([0.0])), [-1.0, 1.0])
    got = k2_spectrum_map([-1.0, 1.0])
    want = sorted([GOLDEN, 1 - GOLDEN, GOLDEN - 1, -GOLDEN])
    assert np.allclose(got, want)
    # each pair multiplies to -1
    for lam in (0.0, 1.0, -2.5, 3.25):
        d = math.sqrt(lam * lam + 4)
        assert abs((lam + d) / 2 * (lam - d) / 2 + 1) < 1e-12


def test_spectrum_map_distinct_for_simple():
    w, _ = eigh(np.array(path(5).adjacency(), float))
    mapped = k2_spectrum_map(w)
    assert len(set(np.round(mapped, 9))) == 10


def test_eigenbasis_lifting():
    w, v = eigh(np.array(path(2).adjacency(), float))
    evs, basis = k2_eigenbasis(w, v)
    a4 = np.array(rooted_product_k2(path(2)).adjacency(), float)
    for i in range(4):
        assert np.max(np.abs(a4 @ basis[:, i] - evs[i] * basis[:, i])) < 1e-12
    assert np.max(np.abs(np.linalg.norm(basis, axis=0) - 1)) < 1e-12
    assert np.max(np.abs(basis.T @ basis - np.eye(4))) < 1e-10


def test_eigenbasis_rejects_bad_input():
    with pytest.raises(DomainError):
        k2_eigenbasis([1.0, -1.0], np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_block_formula_p2():
    from fractions import Fraction

    m = amm_rooted_product_exact(path(2))
    assert m[0][2] == Fraction(1, 5) and m[0][0] == Fraction(3, 10)
    assert m == average_mixing_exact(rooted_product_k2(path(2))).matrix


def test_block_formula_rejects_repeated_spectrum():
    with pytest.raises(DomainError):
        amm_rooted_product_exact(star(4))
    # P3 has squarefree char poly and is accepted
    assert amm_rooted_product_exact(path(3)) == average_mixing_exact(rooted_product_k2(path(3))).matrix


def test_block_formula_equals_direct_exhaustive_small():
    for n in range(2, 8):
        for t in enumerate_trees(n):
            if is_simple(t):
                assert amm_rooted_product_exact(t) == average_mixing_exact(rooted_product_k2(t)).matrix


def test_kernel_lifting_small():
    for n in range(2, 8):
        for t in enumerate_trees(n):
            if not is_simple(t):
                continue
            basis = kernel_exact(average_mixing_exact(t).matrix)
            if not basis:
                continue
            big = average_mixing_exact(rooted_product_k2(t)).matrix
            from fractions import Fraction

            zero = [Fraction(0)] * t.n
            for v in basis:
                for vec in (list(v) + zero, zero + list(v)):
                    assert all(
                        sum(big[i][j] * vec[j] for j in range(2 * t.n)) == 0
                        for i in range(2 * t.n)
                    )


def test_rooted_product_char_poly_identity():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert rooted_product_char_poly(char_poly(t), t.n) == char_poly(rooted_product_k2(t))


def test_tstar_charpoly_expansion():
    phi = tstar_charpoly()
    assert len(phi) == 19 and phi[-1] == 1
    assert is_squarefree(phi)
    # the degree-6 factor evaluated at 0 and 1: -1 and 4 -> sign change checks
    assert phi[0] == (-1) * 1 * (-1) * (-1) * 1 * (-1) * (-1)


def test_build_family_ranks_and_gaps(tstar, tmp_path):
    members = build_family(1, base=tstar)
    assert [(m.n, m.rank, m.gap) for m in members] == [(18, 8, 1), (36, 16, 2)]
    assert members[0].rank_bound == 8 and members[1].rank_bound == 16
    assert members[1].gap >= members[1].gap_bound == 2
    with pytest.raises(ValueError):
        build_family(4, base=tstar)  # 288 vertices above the default cap


def test_tstar_cache_roundtrip(tstar, tmp_path):
    from avgmix.graph6 import write_graph6

    cache = tmp_path / "t_star.g6"
    cache.write_text(write_graph6(tstar) + "\n")
    again = load_t_star(str(cache))
    assert again.edges == tstar.edges
    bad = tmp_path / "bad.g6"
    from avgmix.graph6 import write_graph6 as w6

    bad.write_text(w6(path(18)) + "\n")
    with pytest.raises(ConsistencyError):
        load_t_star(str(bad))
