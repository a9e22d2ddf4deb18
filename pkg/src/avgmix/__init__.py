"""Exact average mixing matrices of continuous-time quantum walks on graphs."""

from .census import CensusRecord, census, compare_tables, records_from_csv, records_to_csv
from .enumeration import enumerate_trees, random_tree
from .errors import ConsistencyError, DomainError, Graph6Error, GraphInputError
from .exact import (
    AmmResult,
    average_mixing_exact,
    coefficient_matrix,
    exact_rank,
    is_simple,
    kernel_exact,
    rank_via_coefficient,
    strongly_cospectral_pairs,
    weighted_projector_schur_sum,
)
from .graph6 import parse_graph6, write_graph6
from .graphs import Graph, Tree, from_edges, path, rooted_product_k2, star
from .matchings import (
    LowerBoundCertificate,
    has_perfect_matching,
    leaf_next_to_degree_two,
    lower_bound_certificate,
    matching_counts,
    near_perfect_vertex,
)
from .numeric import (
    SpectralDecomp,
    average_mixing_float,
    cesaro_average,
    eigh,
    mixing_at_time,
    numeric_rank,
    spectral_decomp,
    transition_matrix,
    verify_cvdv_identity,
)
from .polynomials import (
    char_poly,
    is_squarefree,
    matching_char_poly,
    squarefree_part,
    trace_over_roots,
    vertex_deleted_polys,
)
from .rooted_family import (
    FamilyMember,
    amm_rooted_product_exact,
    build_family,
    find_t_star,
    k2_eigenbasis,
    k2_spectrum_map,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
