"""Matching counts on forests and the rank lower-bound certificates.

For a forest the characteristic polynomial carries the matching counts in
its coefficients (coefficient of t^(n-2k) is (-1)^k m_k), which makes small
submatrices of the coefficient matrix computable from matchings alone.
The certificate machinery exploits that: for every tree with all eigenvalues
distinct (other than the path on four vertices) it produces a 3x3 integer
submatrix with nonzero determinant, certifying that the average mixing
matrix has rank at least three.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConsistencyError, DomainError
from .graphs import Graph


def _require_tree(t: Graph, what: str) -> None:
    if t.m != t.n - 1 or not t.is_connected():
        raise DomainError(f"{what} expects a tree")


def forest_matching_counts(g: Graph) -> list[int]:
    """Counts (m_0, m_1, ..., m_M) of k-edge matchings of a forest.

    Trailing zero counts are stripped, so the last entry belongs to a
    maximum matching.  Rooted dynamic programming: each vertex carries the
    count vectors of its subtree with the root unmatched / matched.
    """
    if not g.is_forest():
        raise DomainError("matching counts by this recurrence need an acyclic graph")
    nbr = g.neighbors()
    total = [1]
    seen = [False] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        order = []
        parent = {root: -1}
        stack = [root]
        seen[root] = True
        while stack:
            v = stack.pop()
            order.append(v)
            for w in nbr[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    stack.append(w)
        table: dict[int, tuple[list[int], list[int]]] = {}
        for v in reversed(order):
            kids = [w for w in nbr[v] if parent.get(w) == v]
            if not kids:
                table[v] = ([1], [])
                continue
            anyk = [_vec_add(table[c][0], table[c][1]) for c in kids]
            prefix = [[1]]
            for vec in anyk:
                prefix.append(_vec_mul(prefix[-1], vec))
            suffix = [[1]]
            for vec in reversed(anyk):
                suffix.append(_vec_mul(suffix[-1], vec))
            suffix.reverse()
            unmatched = prefix[-1]
            matched: list[int] = []
            for i, c in enumerate(kids):
                # match v to child c: shift by one edge, children of c must be free of c
                term = _vec_mul(table[c][0], _vec_mul(prefix[i], suffix[i + 1]))
                matched = _vec_add(matched, [0] + term)
            table[v] = (unmatched, matched)
            for c in kids:
                del table[c]
        total = _vec_mul(total, _vec_add(table[root][0], table[root][1]))
    return total


def _vec_add(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return out


def _vec_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def matching_counts(t: Graph) -> list[int]:
    """Matching count vector of a tree."""
    _require_tree(t, "matching_counts")
    return forest_matching_counts(t)


def counts_to_char_poly(n: int, counts: list[int]) -> list[int]:
    """Assemble sum_k (-1)^k m_k t^(n-2k) from a count vector."""
    out = [0] * (n + 1)
    for k, mk in enumerate(counts):
        out[n - 2 * k] = -mk if k % 2 else mk
    while out and not out[-1]:
        out.pop()
    return out


def simple_from_matching_counts(n: int, counts: list[int]) -> bool:
    """Eigenvalue simplicity of a forest, decided from its matching counts.

    With m the maximum matching size, the characteristic polynomial is
    t^(n-2m) H(t^2) for the degree-m monic H(y) = sum_k (-1)^k m_k y^(m-k),
    whose roots are the squares of the nonzero eigenvalues.  All n
    eigenvalues are distinct iff n - 2m <= 1 and H is squarefree.
    """
    from .polynomials import is_squarefree

    m = len(counts) - 1
    if n - 2 * m >= 2:
        return False
    h = [0] * (m + 1)
    for k, mk in enumerate(counts):
        h[m - k] = -mk if k % 2 else mk
    return is_squarefree(h)


def forest_has_perfect_matching(g: Graph) -> bool:
    """Greedy leaf matching; every leaf's pairing is forced in a forest."""
    if not g.is_forest():
        raise DomainError("greedy leaf matching needs an acyclic graph")
    if g.n % 2:
        return False
    nbr = [set(ns) for ns in g.neighbors()]
    deg = [len(s) for s in nbr]
    alive = [True] * g.n
    remaining = g.n
    stack = [v for v in range(g.n) if deg[v] <= 1]
    while stack:
        u = stack.pop()
        if not alive[u]:
            continue
        if deg[u] == 0:
            return False
        v = next(iter(nbr[u]))
        for x in (u, v):
            alive[x] = False
            remaining -= 1
        for w in nbr[v] - {u}:
            nbr[w].discard(v)
            deg[w] -= 1
            if deg[w] <= 1:
                stack.append(w)
        nbr[u].clear()
        nbr[v].clear()
    return remaining == 0


def has_perfect_matching(t: Graph) -> bool:
    _require_tree(t, "has_perfect_matching")
    return forest_has_perfect_matching(t)


def near_perfect_vertex(t: Graph) -> int | None:
    """Least vertex v such that T minus v has a perfect matching, if any."""
    _require_tree(t, "near_perfect_vertex")
    if t.n % 2 == 0:
        return None
    for v in range(t.n):
        if forest_has_perfect_matching(t.delete_vertex(v)):
            return v
    return None


def leaf_next_to_degree_two(t: Graph) -> tuple[int, int]:
    """Lexicographically least pair (leaf u, neighbor v) with deg(v) = 2.

    Every tree with all eigenvalues distinct on >= 3 vertices has one; a
    miss on such a tree is reported as a consistency failure, a miss on a
    tree with repeated eigenvalues is a precondition violation.
    """
    _require_tree(t, "leaf_next_to_degree_two")
    if t.n < 3:
        raise DomainError("need at least three vertices")
    deg = t.degrees()
    nbr = t.neighbors()
    for u in range(t.n):
        if deg[u] == 1 and deg[nbr[u][0]] == 2:
            return (u, nbr[u][0])
    from .exact import is_simple
    from .graph6 import write_graph6

    if is_simple(t):
        raise ConsistencyError(
            "tree with simple eigenvalues has no leaf next to a degree-two vertex",
            [write_graph6(t)],
        )
    raise DomainError("tree has repeated eigenvalues and no leaf next to a degree-two vertex")


@dataclass(frozen=True)
class LowerBoundCertificate:
    """A 3x3 integer submatrix of the coefficient matrix with nonzero determinant."""

    case: str  # "C1" | "C2" | "C3"
    vertices: tuple[int, int, int]
    columns: tuple[int, int, int]  # t-exponents selecting the three columns
    submatrix: tuple[tuple[int, int, int], ...]
    det: int
    closed_form_det: int
    graph6: str

    def to_json_obj(self) -> dict:
        return {
            "case": self.case,
            "vertices": list(self.vertices),
            "submatrix": [list(row) for row in self.submatrix],
            "det": self.det,
            "closed_form_det": self.closed_form_det,
            "graph6": self.graph6,
        }


def _deleted_coeff(t: Graph, i: int, exponent: int) -> int:
    """Coefficient of t^exponent in char_poly(T minus i), from matching counts."""
    counts = forest_matching_counts(t.delete_vertex(i))
    a2 = (t.n - 1) - exponent
    if a2 < 0 or a2 % 2:
        return 0
    alpha = a2 // 2
    if alpha >= len(counts):
        return 0
    return -counts[alpha] if alpha % 2 else counts[alpha]


def _det3(rows) -> int:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def lower_bound_certificate(t: Graph) -> LowerBoundCertificate:
    """Certify rank(average mixing matrix) >= 3 for a simple-spectrum tree.

    Follows the three-way case split on perfect matchings.  With u a leaf
    whose neighbor v has degree two and w the other neighbor of v of degree
    ell:

      C1: T has a perfect matching (n even, n >= 6); rows u, v, w, columns
          t^1, t^(n-3), t^(n-1); determinant (-1)^(k-1) (1 + q(1 - ell))
          with k = n/2 and q the (k-2)-matching count of T minus {u, v, w}.
      C2: T minus u has a perfect matching (n odd); rows u, v, w, columns
          t^0, t^(n-3), t^(n-1); determinant (-1)^j (1 - ell), j = (n-1)/2.
      C3: otherwise; rows u, v, z with z the least vertex whose deletion
          leaves a perfect matching; same columns; determinant (-1)^(j+1).

    The determinant is recomputed from the actual matching counts and must
    equal the closed form and be nonzero; the path on four vertices is the
    unique genuine exception and is rejected up front.
    """
    from .exact import is_simple
    from .graph6 import write_graph6

    _require_tree(t, "lower_bound_certificate")
    n = t.n
    if n < 4:
        raise DomainError("lower bound certificates start at four vertices")
    if n == 4 and sorted(t.degrees()) == [1, 1, 2, 2]:
        raise DomainError("the path on four vertices has rank 2; no certificate exists")
    if not is_simple(t):
        raise DomainError("certificate requires a tree with all eigenvalues distinct")
    g6 = write_graph6(t)
    u, v = leaf_next_to_degree_two(t)
    w = next(x for x in t.neighbors()[v] if x != u)
    ell = t.degrees()[w]

    if forest_has_perfect_matching(t):
        if n < 6 or n % 2:
            raise ConsistencyError("perfect matching case outside n even >= 6", [g6])
        k = n // 2
        keep = [x for x in range(n) if x not in (u, v, w)]
        q_counts = forest_matching_counts(t.induced(keep))
        q = q_counts[k - 2] if k - 2 < len(q_counts) else 0
        case, rows, cols = "C1", (u, v, w), (1, n - 3, n - 1)
        closed = (1 + q * (1 - ell)) * (-1 if (k - 1) % 2 else 1)
    elif forest_has_perfect_matching(t.delete_vertex(u)):
        # det works out to (-1)^j (1 - ell): nonzero since deg(w) >= 2
        j = (n - 1) // 2
        case, rows, cols = "C2", (u, v, w), (0, n - 3, n - 1)
        closed = (1 - ell) * (-1 if j % 2 else 1)
    else:
        z = near_perfect_vertex(t)
        if z is None:
            raise ConsistencyError(
                "simple tree with no perfect matching and no near-perfect vertex", [g6],
            )
        j = (n - 1) // 2
        case, rows, cols = "C3", (u, v, z), (0, n - 3, n - 1)
        closed = -1 if j % 2 == 0 else 1

    sub = tuple(tuple(_deleted_coeff(t, i, c) for c in cols) for i in rows)
    det = _det3(sub)
    if det == 0 or det != closed:
        raise ConsistencyError(
            f"certificate determinant {det} disagrees with closed form {closed} ({case})",
            [g6],
        )
    return LowerBoundCertificate(case, rows, cols, sub, det, closed, g6)
