"""Exact rational computation of average mixing matrices and their ranks.

Everything here stays in exact arithmetic.  The average mixing matrix of a
graph with adjacency matrix A and distinct eigenvalues theta_r is the sum
of the squared spectral idempotents E_r o E_r.  With psi the squarefree
part of the characteristic polynomial, E_theta = q_theta(A) / psi'(theta)
where q_theta(x) = psi(x)/(x - theta), so every entry of the average mixing
matrix is a sum of p(theta)^2 / psi'(theta)^2 over the roots of psi, which
RootSumContext evaluates through Newton power sums without ever touching a
root numerically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .graphs import Graph
from .polynomials import (
    IntPoly,
    RootSumContext,
    char_poly,
    degree,
    forest_char_poly,
    is_squarefree,
    poly_add,
    poly_derivative,
    poly_mod_monic_int,
    poly_mul,
    poly_scale,
    poly_shift,
    squarefree_part,
)

RatMatrix = list[list[Fraction]]


def is_simple(x: Graph) -> bool:
    """True when all adjacency eigenvalues are distinct (squarefree char poly)."""
    phi = forest_char_poly(x) if x.is_forest() else char_poly(x)
    return is_squarefree(phi)


@dataclass
class AmmResult:
    matrix: RatMatrix
    rank: int
    simple: bool
    n: int


class _SpectralContext:
    """Adjacency powers and the synthetic-division coefficient polynomials.

    q_theta(x) = psi(x)/(x - theta) = sum_k c_k(theta) x^k with
    c_{d-1} = 1 and c_{k-1}(theta) = psi_k + theta c_k(theta), so the
    idempotent entry numerator is p_uv(theta) = sum_k c_k(theta) (A^k)_uv.
    """

    def __init__(self, x: Graph, psi: IntPoly):
        n = x.n
        d = degree(psi)
        nbr = x.neighbors()
        apow = [[[1 if i == j else 0 for j in range(n)] for i in range(n)]]
        for _ in range(d - 1):
            prev = apow[-1]
            nxt = []
            for i in range(n):
                row = [0] * n
                for w in nbr[i]:
                    pw = prev[w]
                    for j in range(n):
                        row[j] += pw[j]
                nxt.append(row)
            apow.append(nxt)
        cpolys: list[IntPoly] = [[] for _ in range(d)]
        cpolys[d - 1] = [1]
        for k in range(d - 1, 0, -1):
            cpolys[k - 1] = poly_add([psi[k]], poly_shift(cpolys[k], 1))
        self.apow = apow
        self.cpolys = cpolys
        self.deg = d

    def entry_poly(self, u: int, v: int) -> IntPoly:
        p: IntPoly = []
        for k in range(self.deg):
            a = self.apow[k][u][v]
            if a:
                p = poly_add(p, poly_scale(self.cpolys[k], a))
        return p


def average_mixing_exact(x: Graph) -> AmmResult:
    """Exact rational average mixing matrix, its rank, and the simple flag."""
    phi = char_poly(x)
    matrix = _weighted_schur_sum(x, phi, [1], [1])
    return AmmResult(matrix, exact_rank(matrix), is_squarefree(phi), x.n)


def _weighted_schur_sum(x: Graph, phi: IntPoly, w_num: IntPoly, w_den: IntPoly) -> RatMatrix:
    psi = squarefree_part(phi)
    dpsi = poly_derivative(psi)
    weight = poly_mod_monic_int(poly_mul(w_den, poly_mul(dpsi, dpsi)), psi)
    rs = RootSumContext(psi, weight)
    ctx = _SpectralContext(x, psi)
    n = x.n
    out: RatMatrix = [[Fraction(0)] * n for _ in range(n)]
    for u in range(n):
        for v in range(u, n):
            p = ctx.entry_poly(u, v)
            val = rs.sum_ratio(poly_mul(w_num, poly_mul(p, p)))
            out[u][v] = val
            out[v][u] = val
    return out


def weighted_projector_schur_sum(x: Graph, w_num: IntPoly, w_den: IntPoly) -> RatMatrix:
    """Exact sum over distinct eigenvalues of w(theta) * E_theta o E_theta.

    The weight w = w_num/w_den is a rational function with integer
    coefficients whose denominator must not vanish at an eigenvalue
    (DomainError otherwise).  w = 1 gives the average mixing matrix.
    """
    if not w_den:
        raise DomainError("weight denominator is zero")
    return _weighted_schur_sum(x, char_poly(x), w_num, w_den)


def exact_rank(mat) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Rows are scaled to integers first; the pivot is always the lowest-index
    row with a nonzero entry in the current column, so the computation is
    reproducible bit for bit.
    """
    if not mat:
        return 0
    rows = []
    for row in mat:
        fr = [Fraction(c) for c in row]
        den = math.lcm(*(c.denominator for c in fr)) if fr else 1
        rows.append([int(c * den) for c in fr])
    nrows = len(rows)
    ncols = len(rows[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
        prc = rows[r][c]
        for i in range(r + 1, nrows):
            ric = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(c + 1, ncols):
                ri[j] = (ri[j] * prc - ric * rr[j]) // prev
            ri[c] = 0
        prev = prc
        r += 1
    return r


def kernel_exact(mat) -> list[list[Fraction]]:
    """Basis of the rational null space, from the reduced row echelon form."""
    if not mat:
        return []
    a = [[Fraction(c) for c in row] for row in mat]
    nrows = len(a)
    ncols = len(a[0])
    pivot_of_col: dict[int, int] = {}
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivot_of_col[c] = r
        r += 1
    basis = []
    for c in range(ncols):
        if c in pivot_of_col:
            continue
        vec = [Fraction(0)] * ncols
        vec[c] = Fraction(1)
        for pc, pr in pivot_of_col.items():
            vec[pc] = -a[pr][c]
        basis.append(vec)
    return basis


def coefficient_matrix(x: Graph) -> list[list[int]]:
    """Row u holds the coefficients of char_poly(X - u); column r is t^(r-1)."""
    if x.n < 2:
        raise DomainError("coefficient matrix needs at least two vertices")
    from .polynomials import vertex_deleted_polys

    rows = []
    for p in vertex_deleted_polys(x):
        rows.append(list(p) + [0] * (x.n - len(p)))
    return rows


def rank_via_coefficient(x: Graph) -> int:
    """Rank of the coefficient matrix; equals the average mixing rank for
    graphs with all eigenvalues distinct (the only case accepted)."""
    if not is_simple(x):
        raise DomainError("coefficient rank shortcut requires distinct eigenvalues")
    return exact_rank(coefficient_matrix(x))


def strongly_cospectral_pairs(x: Graph) -> list[tuple[int, int]]:
    """Unordered vertex pairs whose average-mixing columns agree exactly."""
    m = average_mixing_exact(x).matrix
    n = x.n
    cols = [tuple(m[i][v] for i in range(n)) for v in range(n)]
    return [(u, v) for u in range(n) for v in range(u + 1, n) if cols[u] == cols[v]]


def is_psd_exact(mat: RatMatrix) -> bool:
    """Exact positive-semidefiniteness of a symmetric rational matrix.

    Symmetric elimination on the first strictly positive diagonal pivot; a
    zero diagonal entry forces its whole row to vanish, a negative one
    refutes immediately.
    """
    n = len(mat)
    a = [[Fraction(c) for c in row] for row in mat]
    active = list(range(n))
    while active:
        pivot = None
        for i in active:
            d = a[i][i]
            if d < 0:
                return False
            if d > 0 and pivot is None:
                pivot = i
        if pivot is None:
            return all(a[i][j] == 0 for i in active for j in active)
        active.remove(pivot)
        d = a[pivot][pivot]
        for i in active:
            f = a[i][pivot] / d
            if f:
                for j in active:
                    a[i][j] -= f * a[pivot][j]
    return True


# ---------------------------------------------------------------------------
# serialization


def rat_matrix_to_csv(mat: RatMatrix) -> str:
    lines = []
    for row in mat:
        lines.append(",".join(f"{Fraction(c).numerator}/{Fraction(c).denominator}" for c in row))
    return "\n".join(lines) + "\n"


def rat_matrix_from_csv(text: str) -> RatMatrix:
    rows = []
    for line in text.splitlines():
        if line.strip():
            rows.append([Fraction(tok) for tok in line.split(",")])
    return rows


def rat_matrix_to_json(mat: RatMatrix) -> str:
    obj = [
        [{"num": Fraction(c).numerator, "den": Fraction(c).denominator} for c in row]
        for row in mat
    ]
    return json.dumps(obj)


def rat_matrix_from_json(text: str) -> RatMatrix:
    obj = json.loads(text)
    return [[Fraction(e["num"], e["den"]) for e in row] for row in obj]
