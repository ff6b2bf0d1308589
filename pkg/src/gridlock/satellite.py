"""Satellite structure on rectangular diagrams.

A witness says: selected components of a host diagram cluster, block by
block, around the vertices of a coarser one-component companion diagram.
Column/row blocks are cyclically contiguous runs of host lines; block k of
each axis maps onto companion line k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from .diagram import GridDiagram, components, is_valid, validate


@dataclass(frozen=True)
class SatelliteWitness:
    """Block structure exhibiting `companion` inside a host diagram.

    col_starts/row_starts hold the m sorted block boundaries; block k is the
    cyclic run [starts[k], starts[k+1]) of host columns/rows and corresponds
    to companion column/row k.
    """

    companion: GridDiagram
    C: frozenset
    col_starts: tuple[int, ...]
    row_starts: tuple[int, ...]

    def col_block(self, j: int) -> int:
        return _block_of(self.col_starts, j)

    def row_block(self, r: int) -> int:
        return _block_of(self.row_starts, r)


def _block_of(starts: tuple[int, ...], x: int) -> int:
    # starts sorted ascending; block k covers [starts[k], starts[k+1]) cyclically
    if x >= starts[0]:
        lo, hi = 0, len(starts)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if starts[mid] <= x:
                lo = mid
            else:
                hi = mid
        return lo
    return len(starts) - 1  # wrapped segment of the last block


def _check_witness_shape(host: GridDiagram, w: SatelliteWitness) -> None:
    m = w.companion.n
    for starts, count in ((w.col_starts, host.n), (w.row_starts, host.n)):
        if len(starts) != m:
            raise ValueError(f"expected {m} block boundaries, got {len(starts)}")
        if list(starts) != sorted(set(starts)):
            raise ValueError("block boundaries must be sorted and distinct")
        if starts and not (0 <= starts[0] and starts[-1] < count):
            raise ValueError("block boundary out of range")
    ncomp = components(host).count
    for cid in w.C:
        if not (0 <= cid < ncomp):
            raise ValueError(f"component id {cid} out of range (host has {ncomp})")


def is_satellite_presentation(host: GridDiagram, w: SatelliteWitness) -> bool:
    """True iff the witness invariants all hold against the host."""
    err = validate(host)
    if err is not None:
        raise ValueError(f"host: {err}")
    err = validate(w.companion)
    if err is not None:
        raise ValueError(f"companion: {err}")
    _check_witness_shape(host, w)
    if not w.C:
        return False
    if w.companion.n >= host.n or w.companion.n < 2:
        return False
    if components(w.companion).count != 1:
        return False
    comp_vertices = {(k, r) for k, pair in enumerate(w.companion.cols) for r in pair}
    lab = components(host)
    covered = set()
    for (c, r), cid in lab.comp_of_vertex.items():
        cell = (w.col_block(c), w.row_block(r))
        if cid in w.C:
            if cell not in comp_vertices:
                return False
            covered.add(cell)
        else:
            if cell in comp_vertices:
                return False
    return covered == comp_vertices


def detect_satellite(
    host: GridDiagram, max_companion: int, first_only: bool = False
) -> list[SatelliteWitness]:
    """All witnesses with companion complexity in [2, max_companion].

    Enumerated in lexicographic order: companion size, column boundaries, row
    boundaries, then the component subset.  One representative per boundary
    set: block 0 starts at the smallest boundary (rotated labelings produce
    shift-equivalent companions).
    """
    if max_companion < 2:
        raise ValueError("max_companion must be >= 2")
    err = validate(host)
    if err is not None:
        raise ValueError(err)
    out = []
    for w in _iter_witnesses(host, max_companion):
        out.append(w)
        if first_only:
            break
    return out


def _iter_witnesses(host: GridDiagram, max_companion: int) -> Iterator[SatelliteWitness]:
    n = host.n
    lab = components(host)
    comp_ids = sorted(set(lab.comp_of_vertex.values()))
    verts = sorted(lab.comp_of_vertex)
    for m in range(2, min(max_companion, n - 1) + 1):
        for col_starts in itertools.combinations(range(n), m):
            for row_starts in itertools.combinations(range(n), m):
                cell = {
                    (c, r): (_block_of(col_starts, c), _block_of(row_starts, r))
                    for (c, r) in verts
                }
                by_comp: dict[int, set] = {cid: set() for cid in comp_ids}
                for v, cl in cell.items():
                    by_comp[lab.comp_of_vertex[v]].add(cl)
                for csize in range(1, len(comp_ids) + 1):
                    for C in itertools.combinations(comp_ids, csize):
                        cells = set()
                        for cid in C:
                            cells |= by_comp[cid]
                        cand = _cells_to_diagram(cells, m)
                        if cand is None:
                            continue
                        if components(cand).count != 1:
                            continue
                        if any(
                            cell[v] in cells
                            for v, cid in lab.comp_of_vertex.items()
                            if cid not in set(C)
                        ):
                            continue
                        yield SatelliteWitness(
                            cand, frozenset(C), col_starts, row_starts
                        )


def _cells_to_diagram(cells: set, m: int) -> Optional[GridDiagram]:
    """Interpret a cell set as an m-column diagram, or None if it is not one."""
    if len(cells) != 2 * m:
        return None
    colrows: list[list[int]] = [[] for _ in range(m)]
    for k, r in cells:
        colrows[k].append(r)
    pairs = []
    for rows in colrows:
        if len(rows) != 2:
            return None
        pairs.append(tuple(sorted(rows)))
    d = GridDiagram(tuple(pairs))
    if not is_valid(d):
        return None
    return d
