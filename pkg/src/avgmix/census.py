"""Parallel exact census of average-mixing ranks over all trees per order.

The enumeration stream is cut into fixed-size chunks; workers classify each
tree of a chunk independently and return a tally keyed by (rank, simple).
Tallies are merged strictly in chunk order, so the aggregated output is
byte-identical whatever the worker count, and a checkpoint file holding the
completed chunk tallies lets an interrupted run resume to the identical
result.

Methods:
  exact      rank and simplicity from the exact average mixing matrix;
  coeff-fast simplicity from matching counts, rank via the integer
             coefficient matrix for simple trees (the two ranks agree for
             simple spectra) and via the exact matrix otherwise;
  float      numeric rank of the floating average mixing matrix, simplicity
             from eigenvalue clustering.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass

from .enumeration import enumerate_trees
from .errors import ConsistencyError
from .exact import average_mixing_exact, coefficient_matrix, exact_rank
from .graph6 import parse_graph6, write_graph6
from .matchings import forest_matching_counts, simple_from_matching_counts
from .reference_data import (
    KNOWN_DISCREPANCY_NOTES,
    REFERENCE_MIN_RANK,
    REFERENCE_RANK_TABLE,
)

METHODS = ("exact", "coeff-fast", "float")
CSV_HEADER = "n,rank,trees,simple_trees"
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class CensusRecord:
    n: int
    rank: int
    trees: int
    simple_trees: int


class CheckpointMismatch(ValueError):
    """Checkpoint file does not belong to the requested run."""


def classify_tree(t, method: str) -> tuple[int, bool]:
    """(rank, simple) of one tree under the chosen method."""
    if method == "exact":
        r = average_mixing_exact(t)
        return r.rank, r.simple
    if method == "coeff-fast":
        simple = simple_from_matching_counts(t.n, forest_matching_counts(t))
        if simple:
            return exact_rank(coefficient_matrix(t)), True
        return average_mixing_exact(t).rank, False
    if method == "float":
        from .numeric import average_mixing_float, numeric_rank, spectral_decomp

        simple = len(spectral_decomp(t).clusters) == t.n
        return numeric_rank(average_mixing_float(t)), simple
    raise ValueError(f"unknown method {method!r}")


def _census_chunk(args) -> dict[str, int]:
    method, payload = args
    tally: dict[str, int] = {}
    for g6 in payload:
        rank, simple = classify_tree(parse_graph6(g6), method)
        key = f"{rank},{int(simple)}"
        tally[key] = tally.get(key, 0) + 1
    return tally


def _merge(into: dict[str, int], part: dict[str, int]) -> None:
    for key, cnt in part.items():
        into[key] = into.get(key, 0) + cnt


class _Checkpoint:
    def __init__(self, path: str | None, params: dict):
        self.path = path
        self.params = params
        self.done: dict[str, dict[str, int]] = {}
        if path and os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            stored = {k: data.get(k) for k in params}
            if data.get("version") != CHECKPOINT_VERSION or stored != params:
                raise CheckpointMismatch(
                    f"checkpoint {path} was written by a different run "
                    f"(stored {stored}, requested {params})",
                )
            self.done = data["done"]

    def key(self, n: int, chunk_index: int) -> str:
        return f"{n}:{chunk_index}"

    def get(self, n: int, chunk_index: int) -> dict[str, int] | None:
        return self.done.get(self.key(n, chunk_index))

    def put(self, n: int, chunk_index: int, tally: dict[str, int]) -> None:
        self.done[self.key(n, chunk_index)] = tally
        if not self.path:
            return
        tmp = self.path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"version": CHECKPOINT_VERSION, **self.params, "done": self.done}, fh)
        os.replace(tmp, self.path)


def census(
    n_min: int,
    n_max: int,
    method: str = "coeff-fast",
    threads: int = 1,
    chunk_size: int = 1024,
    checkpoint_path: str | None = None,
    progress=None,
) -> list[CensusRecord]:
    """Census records for every order in [n_min, n_max], sorted by (n, rank).

    `progress(n, chunks_done)` fires after every completed chunk, after the
    checkpoint has been persisted; raising from it leaves a resumable state.
    """
    if not 2 <= n_min <= n_max:
        raise ValueError(f"need 2 <= n_min <= n_max, got {n_min}..{n_max}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}")
    if threads < 1:
        raise ValueError("threads must be positive")
    ckpt = _Checkpoint(
        checkpoint_path,
        {"n_min": n_min, "n_max": n_max, "method": method, "chunk_size": chunk_size},
    )
    records: list[CensusRecord] = []
    pool = multiprocessing.Pool(threads) if threads > 1 else None
    try:
        for n in range(n_min, n_max + 1):
            tally: dict[str, int] = {}
            pending: list[tuple[int, list[str]]] = []

            def chunks_of(n=n):
                buf: list[str] = []
                index = 0
                for t in enumerate_trees(n):
                    buf.append(write_graph6(t))
                    if len(buf) == chunk_size:
                        yield index, buf
                        buf = []
                        index += 1
                if buf:
                    yield index, buf

            todo = []
            for index, buf in chunks_of():
                stored = ckpt.get(n, index)
                if stored is None:
                    todo.append((index, buf))
                else:
                    pending.append((index, stored))
            if pool is not None:
                results = pool.imap(_census_chunk, [(method, buf) for _, buf in todo])
                for (index, _), part in zip(todo, results):
                    ckpt.put(n, index, part)
                    pending.append((index, part))
                    if progress:
                        progress(n, len(pending))
            else:
                for index, buf in todo:
                    part = _census_chunk((method, buf))
                    ckpt.put(n, index, part)
                    pending.append((index, part))
                    if progress:
                        progress(n, len(pending))
            for _, part in sorted(pending):
                _merge(tally, part)
            rows: dict[int, list[int]] = {}
            for key, cnt in tally.items():
                rank, simple = map(int, key.split(","))
                row = rows.setdefault(rank, [0, 0])
                row[0] += cnt
                if simple:
                    row[1] += cnt
            for rank in sorted(rows):
                records.append(CensusRecord(n, rank, rows[rank][0], rows[rank][1]))
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    records.sort(key=lambda r: (r.n, r.rank))
    return records


def records_to_csv(records) -> str:
    lines = [CSV_HEADER]
    for r in sorted(records, key=lambda r: (r.n, r.rank)):
        lines.append(f"{r.n},{r.rank},{r.trees},{r.simple_trees}")
    return "\n".join(lines) + "\n"


def records_from_csv(text: str) -> list[CensusRecord]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"census CSV must start with header {CSV_HEADER!r}")
    out = []
    for ln in lines[1:]:
        n, rank, trees, simple = map(int, ln.split(","))
        out.append(CensusRecord(n, rank, trees, simple))
    return out


# ---------------------------------------------------------------------------
# comparison against the published tables


@dataclass(frozen=True)
class CellMismatch:
    n: int
    rank: int
    got_trees: int
    got_simple: int
    expected_trees: int
    expected_simple: int


@dataclass
class ComparisonReport:
    orders: list[int]
    mismatches: list[CellMismatch]
    min_rank_mismatches: list[tuple[int, int, int]]  # (n, got, expected)
    notes: list[str]
    certificates: dict[tuple[int, int], list[str]]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.min_rank_mismatches

    def render(self) -> str:
        lines = []
        covered = ",".join(map(str, self.orders))
        lines.append(f"compared orders: {covered}")
        if self.ok:
            lines.append("all cells match the published tables")
        for m in self.mismatches:
            lines.append(
                f"MISMATCH n={m.n} rank={m.rank}: computed trees={m.got_trees} "
                f"simple={m.got_simple}, published trees={m.expected_trees} "
                f"simple={m.expected_simple}",
            )
            certs = self.certificates.get((m.n, m.rank))
            if certs:
                lines.append(f"  affected trees (graph6): {' '.join(certs)}")
        for n, got, expected in self.min_rank_mismatches:
            lines.append(f"MISMATCH min rank at n={n}: computed {got}, published {expected}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def compare_tables(
    records,
    collect_certificates: bool = True,
    certificate_order_cap: int = 14,
    certificate_method: str = "coeff-fast",
) -> ComparisonReport:
    """Cell-by-cell comparison of census records against the published tables.

    Known published-source inconsistencies are attached as notes for every
    covered order; mismatched cells on small orders get graph6 certificates
    of the trees this package places in the cell.
    """
    by_n: dict[int, dict[int, tuple[int, int]]] = {}
    for r in records:
        by_n.setdefault(r.n, {})[r.rank] = (r.trees, r.simple_trees)
    orders = sorted(n for n in by_n if n in REFERENCE_RANK_TABLE)
    mismatches = []
    for n in orders:
        expected = {rank: (trees, simple) for rank, trees, simple in REFERENCE_RANK_TABLE[n]}
        got = by_n[n]
        for rank in sorted(set(expected) | set(got)):
            e = expected.get(rank, (0, 0))
            g = got.get(rank, (0, 0))
            if e != g:
                mismatches.append(CellMismatch(n, rank, g[0], g[1], e[0], e[1]))
    min_rank_mismatches = []
    for n in orders:
        got_min = min(by_n[n])
        expected_min = REFERENCE_MIN_RANK.get(n)
        if expected_min is not None and got_min != expected_min:
            min_rank_mismatches.append((n, got_min, expected_min))
    notes = [KNOWN_DISCREPANCY_NOTES[n] for n in orders if n in KNOWN_DISCREPANCY_NOTES]
    certificates: dict[tuple[int, int], list[str]] = {}
    if collect_certificates and mismatches:
        wanted = {(m.n, m.rank) for m in mismatches if m.n <= certificate_order_cap}
        for n in sorted({c[0] for c in wanted}):
            for t in enumerate_trees(n):
                rank, _ = classify_tree(t, certificate_method)
                if (n, rank) in wanted:
                    certificates.setdefault((n, rank), []).append(write_graph6(t))
    return ComparisonReport(orders, mismatches, min_rank_mismatches, notes, certificates)


def verify_totals(records) -> None:
    """Check per-order totals against the published column sums."""
    totals: dict[int, int] = {}
    for r in records:
        totals[r.n] = totals.get(r.n, 0) + r.trees
    for n, total in sorted(totals.items()):
        expected = sum(trees for _, trees, _ in REFERENCE_RANK_TABLE.get(n, ()))
        if expected and total != expected:
            raise ConsistencyError(f"order {n}: census total {total} != published {expected}")
