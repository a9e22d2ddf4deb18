import pytest

from avgmix.rooted_family import confirm_unique_low_rank_tree, search_low_rank_simple_trees


@pytest.fixture(scope="session")
def tstar_hits():
    """Full 18-vertex scan; shared because it dominates the suite's runtime."""
    return search_low_rank_simple_trees(18, 9, threads=1)


@pytest.fixture(scope="session")
def tstar(tstar_hits):
    return confirm_unique_low_rank_tree(tstar_hits)
