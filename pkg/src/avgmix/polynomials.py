"""Dense univariate polynomial arithmetic over exact integers and rationals.

Polynomials are plain lists of coefficients in ascending degree order with
no trailing zeros; the empty list is the zero polynomial.  IntPoly entries
are Python ints, RatPoly entries are fractions.Fraction (ints mix freely).

Besides the arithmetic toolkit this module houses the characteristic
polynomial (Faddeev-LeVerrier over exact integers), the pendant-recurrence
characteristic polynomial for forests, squarefree analysis through
primitive pseudo-remainder sequences, and summation of a rational function
over the roots of a squarefree polynomial via Newton power sums.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DomainError
from .graphs import Graph

IntPoly = list[int]
RatPoly = list[Fraction]

_FAST_GCD_PRIME = (1 << 61) - 1  # Mersenne prime, used for a one-sided squarefree test


def normalize(p):
    """Strip trailing zero coefficients in place and return p."""
    while p and not p[-1]:
        p.pop()
    return p


def degree(p) -> int:
    return len(p) - 1


def poly_add(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] += c
    return normalize(out)


def poly_sub(a, b):
    out = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return normalize(out)


def poly_neg(a):
    return [-c for c in a]


def poly_scale(a, s):
    if not s:
        return []
    return [c * s for c in a]


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return normalize(out)


def poly_shift(a, k: int):
    """Multiply by x**k."""
    if not a:
        return []
    return [0] * k + list(a)


def poly_derivative(a):
    return normalize([i * c for i, c in enumerate(a)][1:])


def poly_eval(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def poly_divmod(a, b):
    """Quotient and remainder over the rationals."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in a]
    normalize(r)
    db = degree(b)
    lb = Fraction(b[-1])
    q = [Fraction(0)] * max(0, len(r) - db)
    while len(r) - 1 >= db and r:
        c = r[-1] / lb
        off = len(r) - 1 - db
        q[off] = c
        for j in range(db + 1):
            r[off + j] -= c * b[j]
        normalize(r)
    return normalize(q), r


def poly_mod(a, b):
    return poly_divmod(a, b)[1]


def poly_mod_monic_int(a: IntPoly, m: IntPoly) -> IntPoly:
    """Remainder of an integer polynomial modulo a monic integer polynomial."""
    r = list(a)
    dm = degree(m)
    while len(r) - 1 >= dm:
        c = r[-1]
        if c:
            off = len(r) - 1 - dm
            for j in range(dm):
                r[off + j] -= c * m[j]
        r.pop()
    return normalize(r)


def poly_content(a: IntPoly) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def poly_primitive(a: IntPoly) -> IntPoly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = poly_content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def poly_pseudo_rem(a: IntPoly, b: IntPoly) -> IntPoly:
    """prem(a, b): lc(b)^(deg a - deg b + 1) * a reduced mod b, all over the integers."""
    da, db = degree(a), degree(b)
    lb = b[-1]
    r = list(a)
    for _ in range(da - db + 1):
        if degree(r) < db:
            r = [lb * x for x in r]
            continue
        lead = r[-1]
        r = [lb * x for x in r]
        off = degree(r) - db
        for j in range(db + 1):
            r[off + j] -= lead * b[j]
        normalize(r)
    return normalize(r)


def poly_gcd_int(a: IntPoly, b: IntPoly) -> IntPoly:
    """Greatest common divisor over Z via a primitive pseudo-remainder sequence.

    Result is primitive with positive leading coefficient; content of the
    inputs is folded back in.
    """
    if not a:
        return poly_primitive(b)
    if not b:
        return poly_primitive(a)
    cont = math.gcd(poly_content(a), poly_content(b))
    a = poly_primitive(a)
    b = poly_primitive(b)
    if degree(a) < degree(b):
        a, b = b, a
    while b:
        r = poly_pseudo_rem(a, b)
        a, b = b, poly_primitive(r)
    return poly_scale(a, cont)


def _poly_gcd_degree_modp(a: IntPoly, b: IntPoly, p: int) -> int:
    """Degree of gcd(a mod p, b mod p); -1 when that gcd is zero."""
    a = normalize([c % p for c in a])
    b = normalize([c % p for c in b])
    while b:
        inv = pow(b[-1], p - 2, p)
        db = degree(b)
        r = list(a)
        while len(r) - 1 >= db and r:
            c = (r[-1] * inv) % p
            if c:
                off = len(r) - 1 - db
                for j in range(db + 1):
                    r[off + j] = (r[off + j] - c * b[j]) % p
            normalize(r)
            if len(r) - 1 < db:
                break
        a, b = b, normalize(r)
    return degree(a)


def is_squarefree(p: IntPoly) -> bool:
    """True when p has no repeated roots (gcd(p, p') is a constant)."""
    if not p:
        raise DomainError("zero polynomial has no squarefree part")
    if degree(p) <= 1:
        return True
    dp = poly_derivative(p)
    # One-sided fast path: a constant gcd mod a prime certifies a constant
    # gcd over Z (the integer gcd of a +-1-leading-coefficient polynomial
    # reduces mod p without degree loss).  Non-constant results fall back.
    if p[-1] in (1, -1):
        if _poly_gcd_degree_modp(p, dp, _FAST_GCD_PRIME) == 0:
            return True
    return degree(poly_gcd_int(p, dp)) == 0


def squarefree_part(p: IntPoly) -> IntPoly:
    """p / gcd(p, p'), primitive with positive leading coefficient."""
    if not p:
        raise DomainError("zero polynomial has no squarefree part")
    if degree(p) == 0:
        return [1]
    g = poly_gcd_int(p, poly_derivative(p))
    if degree(g) == 0:
        return poly_primitive(p)
    q, r = poly_divmod(poly_primitive(p), g)
    if r:
        raise AssertionError("gcd failed to divide its argument")
    out = [int(c) for c in q]
    if any(Fraction(c) != qc for c, qc in zip(out, q)):
        raise AssertionError("squarefree part is not integral")
    return poly_primitive(out)


# ---------------------------------------------------------------------------
# characteristic polynomials


def char_poly(x: Graph) -> IntPoly:
    """Monic characteristic polynomial det(tI - A) by Faddeev-LeVerrier.

    The recurrence runs entirely over the integers; each trace division is
    checked to be exact, and the final Cayley-Hamilton identity B_n = 0 is
    asserted.
    """
    n = x.n
    nbr = x.neighbors()
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    b = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for k in range(1, n + 1):
        # m = A @ b, using adjacency lists: row i sums the rows of b at i's neighbors
        m = []
        for i in range(n):
            row = [0] * n
            for w in nbr[i]:
                bw = b[w]
                for j in range(n):
                    row[j] += bw[j]
            m.append(row)
        tr = sum(m[i][i] for i in range(n))
        if tr % k:
            raise AssertionError("Faddeev-LeVerrier trace division not exact")
        ck = -(tr // k)
        coeffs[n - k] = ck
        for i in range(n):
            m[i][i] += ck
        b = m
    if any(b[i][j] for i in range(n) for j in range(n)):
        raise AssertionError("Cayley-Hamilton check failed")
    return coeffs


def forest_char_poly(x: Graph) -> IntPoly:
    """Characteristic polynomial of a forest by the pendant-edge recurrence.

    Each rooted subtree carries the pair (phi(subtree), phi(subtree - root));
    for a vertex v with children c_1..c_k,
        Q_v = prod phi(T_{c_i}),
        P_v = t*Q_v - sum_i phi(T_{c_i} - c_i) * prod_{j != i} phi(T_{c_j}),
    and the forest polynomial is the product over component roots.
    """
    if not x.is_forest():
        raise DomainError("input graph contains a cycle")
    nbr = x.neighbors()
    result = [1]
    seen = [False] * x.n
    for root in range(x.n):
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
        pq: dict[int, tuple[IntPoly, IntPoly]] = {}
        for v in reversed(order):
            kids = [w for w in nbr[v] if parent.get(w) == v]
            if not kids:
                pq[v] = ([0, 1], [1])
                continue
            ps = [pq[c][0] for c in kids]
            qs = [pq[c][1] for c in kids]
            prefix = [[1]]
            for p in ps:
                prefix.append(poly_mul(prefix[-1], p))
            suffix = [[1]]
            for p in reversed(ps):
                suffix.append(poly_mul(suffix[-1], p))
            suffix.reverse()
            q_v = prefix[-1]
            p_v = poly_shift(q_v, 1)
            for i, q_c in enumerate(qs):
                term = poly_mul(q_c, poly_mul(prefix[i], suffix[i + 1]))
                p_v = poly_sub(p_v, term)
            pq[v] = (p_v, q_v)
            for c in kids:
                del pq[c]
        result = poly_mul(result, pq[root][0])
    return result


def matching_char_poly(t: Graph) -> IntPoly:
    """Characteristic polynomial of a tree via its matching recurrence."""
    if t.m != t.n - 1 or not t.is_connected():
        raise DomainError("matching_char_poly expects a tree")
    return forest_char_poly(t)


def vertex_deleted_polys(x: Graph) -> list[IntPoly]:
    """char_poly(X - u) for every vertex u, each of degree n-1.

    Forests take the pendant-recurrence path, anything else falls back to
    Faddeev-LeVerrier.
    """
    if x.n < 2:
        raise DomainError("need at least two vertices to delete one")
    out = []
    for u in range(x.n):
        sub = x.delete_vertex(u)
        out.append(forest_char_poly(sub) if sub.is_forest() else char_poly(sub))
    return out


# ---------------------------------------------------------------------------
# sums over the roots of a squarefree polynomial


def power_sums(psi, count: int | None = None) -> list:
    """Power sums p_0..p_{count-1} of the roots of psi via Newton's identities.

    psi must be monic (after exact normalization it always can be); integer
    input gives integer output.
    """
    d = degree(psi)
    if d < 0:
        raise DomainError("zero polynomial")
    lead = psi[-1]
    if lead != 1:
        psi = [Fraction(c, lead) for c in psi]
    if count is None:
        count = max(d, 1)
    ps = [d]
    for k in range(1, count):
        acc = -k * psi[d - k] if k <= d else 0
        for i in range(1, min(k, d + 1)):
            acc -= psi[d - i] * ps[k - i]
        ps.append(acc)
    return ps


def poly_inverse_mod(f, m) -> RatPoly:
    """Inverse of f modulo m over the rationals, via the extended Euclid scheme."""
    if degree(m) < 1:
        raise DomainError("modulus must have positive degree")
    r0 = [Fraction(c) for c in m]
    r1 = poly_mod(f, m)
    t0: RatPoly = []
    t1: RatPoly = [Fraction(1)]
    while r1:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if degree(r0) != 0:
        raise DomainError("polynomial is not invertible modulo the given modulus")
    inv_lead = 1 / Fraction(r0[0])
    return poly_mod(poly_scale(t0, inv_lead), m)


def trace_over_roots(num, den, psi: IntPoly) -> Fraction:
    """Sum of num(theta)/den(theta) over the roots theta of squarefree psi.

    Reduces num/den modulo psi (inverting den by extended Euclid) and pairs
    the residue coefficients with the Newton power sums of psi's roots; no
    root is ever computed.
    """
    if not psi:
        raise DomainError("zero modulus")
    if not is_squarefree(psi):
        raise DomainError("psi must be squarefree")
    d = degree(psi)
    if d == 0:
        return Fraction(0)
    monic = [Fraction(c, psi[-1]) for c in psi]
    inv = poly_inverse_mod(den, monic)
    s = poly_mod(poly_mul(poly_mod(num, monic), inv), monic)
    ps = power_sums(monic)
    return Fraction(sum(s[k] * ps[k] for k in range(len(s))))


class RootSumContext:
    """Shared state for many exact root-sums against one squarefree modulus.

    Precomputes the Newton power sums of psi and the inverse of a fixed
    integer weight polynomial modulo psi (stored as an integer polynomial
    over a common denominator), so that each query
        sum over roots of  num(theta) / weight(theta)
    costs only integer polynomial multiplication and reduction.
    """

    def __init__(self, psi: IntPoly, weight: IntPoly):
        if not psi or psi[-1] != 1:
            raise DomainError("context modulus must be monic")
        self.psi = psi
        d = degree(psi)
        self.deg = d
        self.powers = power_sums(psi)
        inv = poly_inverse_mod(weight, psi)
        denom = math.lcm(*(c.denominator for c in inv)) if inv else 1
        self.inv_scaled = [int(c * denom) for c in inv]
        self.denom = denom

    def sum_ratio(self, num: IntPoly) -> Fraction:
        s = poly_mod_monic_int(num, self.psi)
        s = poly_mod_monic_int(poly_mul(s, self.inv_scaled), self.psi)
        total = sum(s[k] * self.powers[k] for k in range(len(s)))
        return Fraction(total, self.denom)


# ---------------------------------------------------------------------------
# text form


def poly_to_text(p) -> str:
    """Ascending coefficient list, blank-separated; zero polynomial -> "0"."""
    if not p:
        return "0"
    return " ".join(str(c) for c in p)


def poly_from_text(text: str) -> RatPoly:
    parts = text.split()
    if parts == ["0"] or not parts:
        return []
    return normalize([Fraction(s) for s in parts])
