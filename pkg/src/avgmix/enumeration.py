"""Isomorph-free generation of free trees.

A rooted tree is encoded by its depth sequence: depths of the vertices in
preorder, root depth 0, with the subtrees of every vertex listed in
non-increasing order of their own sequences.  That encoding is a canonical
form, so generating only encodings in canonical order produces exactly one
representative per isomorphism class with no post-filtering.

Free trees are reduced to rooted ones through the centroid:

  * one centroid: root there; equivalently, pick a multiset of rooted
    subtrees with sizes summing to n-1, each of size <= floor((n-1)/2);
  * two centroids (n even): an unordered pair of rooted trees on n/2
    vertices joined root to root.

The two cases are disjoint and cover everything, so each isomorphism class
appears exactly once.  Output order is deterministic.
"""

from __future__ import annotations

import functools
import heapq
import random
from collections.abc import Iterator

from .graphs import Tree

Seq = tuple[int, ...]


@functools.lru_cache(maxsize=None)
def _rooted_sequences(size: int) -> tuple[Seq, ...]:
    """All canonical depth sequences of rooted trees on `size` vertices."""
    if size == 1:
        return ((0,),)
    out = []
    for forest in _forests(size - 1, size - 1, None):
        seq = [0]
        for sub in forest:
            seq.extend(d + 1 for d in sub)
        out.append(tuple(seq))
    return tuple(out)


def _forests(total: int, max_size: int, bound: Seq | None) -> Iterator[tuple[Seq, ...]]:
    """Multisets of canonical rooted sequences, listed non-increasingly.

    Every member has at most `max_size` vertices and sequence <= `bound`
    (the preceding sibling); sizes sum to `total`.
    """
    if total == 0:
        yield ()
        return
    for s in range(min(total, max_size), 0, -1):
        for t in _rooted_sequences(s):
            if bound is not None and t > bound:
                continue
            for rest in _forests(total - s, max_size, t):
                yield (t,) + rest


def _sequence_to_edges(seq: Seq, offset: int = 0) -> list[tuple[int, int]]:
    """Edges of the rooted tree encoded by a depth sequence."""
    chain = []  # chain[d] = latest vertex seen at depth d
    edges = []
    for i, d in enumerate(seq):
        if d > 0:
            edges.append((chain[d - 1] + offset, i + offset))
        if d == len(chain):
            chain.append(i)
        else:
            chain[d] = i
            del chain[d + 1 :]
    return edges


def enumerate_trees(n: int) -> Iterator[Tree]:
    """Yield one representative of every free tree on n vertices.

    Deterministic order; the stream may be chunked by index for parallel
    consumers.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        yield Tree(1, ())
        return
    if n == 2:
        yield Tree(2, ((0, 1),))
        return
    cap = (n - 1) // 2
    for forest in _forests(n - 1, cap, None):
        seq = [0]
        for sub in forest:
            seq.extend(d + 1 for d in sub)
        yield Tree(n, tuple(_sequence_to_edges(tuple(seq))))
    if n % 2 == 0:
        half = n // 2
        halves = _rooted_sequences(half)
        for t1 in halves:
            for t2 in halves:
                if t2 > t1:
                    continue
                edges = _sequence_to_edges(t1)
                edges.extend(_sequence_to_edges(t2, offset=half))
                edges.append((0, half))
                yield Tree(n, tuple(edges))


def count_trees(n: int) -> int:
    return sum(1 for _ in enumerate_trees(n))


def random_tree(n: int, rng: random.Random) -> Tree:
    """Uniform random labelled tree via a random Pruefer sequence."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n == 1:
        return Tree(1, ())
    if n == 2:
        return Tree(2, ((0, 1),))
    seq = [rng.randrange(n) for _ in range(n - 2)]
    deg = [1] * n
    for v in seq:
        deg[v] += 1
    edges = []
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        u = heapq.heappop(leaves)
        edges.append((u, v))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v))
    return Tree(n, tuple(edges))
