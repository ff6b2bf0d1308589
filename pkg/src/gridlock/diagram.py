"""Rectangular (grid) diagrams of links and their basic combinatorics.

A diagram of complexity n is stored as n columns, each holding an unordered
pair of distinct row indices in [0, n).  Vertical edges live in columns;
the horizontal edge of row r joins the two columns in which r occurs.
Both axes are cyclic: column n-1 is adjacent to column 0, likewise rows.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


Pair = tuple[int, int]


@dataclass(frozen=True)
class GridDiagram:
    """Immutable rectangular diagram: ``cols[i]`` is the sorted row pair of column i."""

    cols: tuple[Pair, ...]

    @property
    def n(self) -> int:
        return len(self.cols)

    @staticmethod
    def from_pairs(pairs: Sequence[Sequence[int]]) -> "GridDiagram":
        d = GridDiagram(tuple(tuple(sorted(p)) for p in pairs))
        err = validate(d)
        if err is not None:
            raise ValueError(err)
        return d

    def vertices(self) -> Iterator[tuple[int, int]]:
        """All 2n vertices as (column, row)."""
        for c, (a, b) in enumerate(self.cols):
            yield (c, a)
            yield (c, b)

    def row_occurrences(self, r: int) -> tuple[int, int]:
        """The two columns in which row r occurs."""
        found = [c for c, p in enumerate(self.cols) if r in p]
        if len(found) != 2:
            raise ValueError(f"row {r} occurs {len(found)} times")
        return (found[0], found[1])

    def occurrence_table(self) -> list[list[int]]:
        """row -> list of columns containing it (valid diagrams: exactly two)."""
        occ: list[list[int]] = [[] for _ in range(self.n)]
        for c, (a, b) in enumerate(self.cols):
            if 0 <= a < self.n:
                occ[a].append(c)
            if 0 <= b < self.n:
                occ[b].append(c)
        return occ

    def __repr__(self) -> str:
        return f"GridDiagram({list(map(list, self.cols))})"


SQUARE = GridDiagram(((0, 1), (0, 1)))


def validate(d: GridDiagram) -> Optional[str]:
    """None if d is a valid diagram, else a message naming the first violation."""
    n = d.n
    if n < 2:
        return f"complexity {n} below minimum 2"
    counts = [0] * n
    for c, pair in enumerate(d.cols):
        if len(pair) != 2:
            return f"column {c}: pair of size {len(pair)}"
        a, b = pair
        for r in (a, b):
            if not (0 <= r < n):
                return f"column {c}: row index {r} out of range [0, {n})"
        if a == b:
            return f"column {c}: degenerate pair ({a}, {a})"
        counts[a] += 1
        counts[b] += 1
    for r in range(n):
        if counts[r] != 2:
            return f"row {r} occurs {counts[r]} times, expected 2"
    return None


def is_valid(d: GridDiagram) -> bool:
    return validate(d) is None


@dataclass(frozen=True)
class ComponentLabeling:
    """Map from vertex (column, row) to component id, plus component count."""

    comp_of_vertex: dict
    count: int


def components(d: GridDiagram) -> ComponentLabeling:
    """Label the closed vertex traces.  Ids follow first appearance in (col, row) order."""
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    occ = d.occurrence_table()
    comp: dict[tuple[int, int], int] = {}
    cid = 0
    for c0 in range(d.n):
        for r0 in d.cols[c0]:
            if (c0, r0) in comp:
                continue
            stack = [(c0, r0)]
            comp[(c0, r0)] = cid
            while stack:
                c, r = stack.pop()
                a, b = d.cols[c]
                vert = (c, b if r == a else a)
                c1, c2 = occ[r]
                horiz = (c2 if c == c1 else c1, r)
                for w in (vert, horiz):
                    if w not in comp:
                        comp[w] = cid
                        stack.append(w)
            cid += 1
    return ComponentLabeling(comp, cid)


def component_count(d: GridDiagram) -> int:
    return components(d).count


# ---------------------------------------------------------------------------
# canonical form modulo cyclic shifts
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalKey:
    """Fixed-layout bytes identifying a diagram up to cyclic column/row shifts."""

    data: bytes

    @property
    def n(self) -> int:
        return struct.unpack(">H", self.data[:2])[0]

    def hex(self) -> str:
        return self.data.hex()


def shift(d: GridDiagram, axis: str, k: int) -> GridDiagram:
    """Cyclic shift: axis 'cols' brings column k to position 0, 'rows' row k to 0."""
    n = d.n
    k %= n
    if axis == "cols":
        return GridDiagram(tuple(d.cols[(i + k) % n] for i in range(n)))
    if axis == "rows":
        return GridDiagram(
            tuple(tuple(sorted(((a - k) % n, (b - k) % n))) for a, b in d.cols)
        )
    raise ValueError(f"axis must be 'cols' or 'rows', got {axis!r}")


def canonical_cols(d: GridDiagram) -> tuple[Pair, ...]:
    """Lexicographically minimal column sequence over all n*n cyclic shift pairs.

    Only anchors placing a 0 in the first pair can be minimal, so it suffices
    to scan the 2n anchors (dx, dy) with dy a member of cols[dx].
    """
    n = d.n
    cols = d.cols
    best: Optional[list[Pair]] = None
    for dx in range(n):
        for dy in cols[dx]:
            cand: list[Pair] = []
            worse = False
            for i in range(n):
                a, b = cols[(i + dx) % n]
                a = (a - dy) % n
                b = (b - dy) % n
                p = (a, b) if a < b else (b, a)
                if best is not None:
                    bp = best[i]
                    if p > bp:
                        worse = True
                        break
                    if p < bp:
                        cand.append(p)
                        cand.extend(
                            _shift_pair(cols[(j + dx) % n], dy, n)
                            for j in range(i + 1, n)
                        )
                        break
                cand.append(p)
            else:
                if best is None or cand < best:
                    best = cand
                continue
            if not worse and cand and (best is None or cand < best):
                best = cand
    assert best is not None
    return tuple(best)


def _shift_pair(pair: Pair, dy: int, n: int) -> Pair:
    a, b = (pair[0] - dy) % n, (pair[1] - dy) % n
    return (a, b) if a < b else (b, a)


def canonical_key(d: GridDiagram) -> CanonicalKey:
    """Dedup key: equal iff the diagrams differ by cyclic column/row shifts."""
    cols = canonical_cols(d)
    buf = bytearray(struct.pack(">H", len(cols)))
    for a, b in cols:
        buf += struct.pack(">HH", a, b)
    return CanonicalKey(bytes(buf))


def key_to_diagram(key: CanonicalKey) -> GridDiagram:
    """Rebuild the canonical representative encoded by a key."""
    n = struct.unpack(">H", key.data[:2])[0]
    cols = []
    for i in range(n):
        a, b = struct.unpack(">HH", key.data[2 + 4 * i: 6 + 4 * i])
        cols.append((a, b))
    return GridDiagram(tuple(cols))


# ---------------------------------------------------------------------------
# trivial / split / composite shapes
# ---------------------------------------------------------------------------

SQUARE_KEY = canonical_key(SQUARE)


def is_trivial_square(d: GridDiagram) -> bool:
    return canonical_key(d) == SQUARE_KEY


def is_split_form(d: GridDiagram) -> Optional[tuple[str, int]]:
    """A grid line crossed by zero edges with vertices strictly on both sides.

    Returns ('col', k) for the vertical line between columns k-1 and k, or
    ('row', k) for the horizontal line between rows k-1 and k, scanning
    vertical lines first.  Lines are planar (no wrap).
    """
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    n = d.n
    occ = d.occurrence_table()
    for k in range(1, n):
        if all(not (min(occ[r]) < k <= max(occ[r])) for r in range(n)):
            return ("col", k)
    for k in range(1, n):
        if all(not (a < k <= b) for a, b in d.cols):
            return ("row", k)
    return None


def is_composite_form(d: GridDiagram) -> Optional[tuple[str, int]]:
    """A line crossed by exactly two edges of one component, with at least two
    further vertices of that component strictly on each side.

    Endpoints of the two crossed edges do not count toward the side totals;
    that keeps the square and singly-stabilized squares non-composite.
    """
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    n = d.n
    occ = d.occurrence_table()
    lab = components(d)
    for k in range(1, n):
        crossed = [r for r in range(n) if min(occ[r]) < k <= max(occ[r])]
        if len(crossed) != 2:
            continue
        r1, r2 = crossed
        cids = {lab.comp_of_vertex[(occ[r][0], r)] for r in crossed}
        if len(cids) != 1:
            continue
        cid = cids.pop()
        ends = {(c, r) for r in crossed for c in occ[r]}
        left = right = 0
        for (c, r), cc in lab.comp_of_vertex.items():
            if cc != cid or (c, r) in ends:
                continue
            if c < k:
                left += 1
            else:
                right += 1
        if left >= 2 and right >= 2:
            return ("col", k)
    for k in range(1, n):
        crossed = [c for c, (a, b) in enumerate(d.cols) if a < k <= b]
        if len(crossed) != 2:
            continue
        cids = {lab.comp_of_vertex[(c, d.cols[c][0])] for c in crossed}
        if len(cids) != 1:
            continue
        cid = cids.pop()
        ends = {(c, r) for c in crossed for r in d.cols[c]}
        low = high = 0
        for (c, r), cc in lab.comp_of_vertex.items():
            if cc != cid or (c, r) in ends:
                continue
            if r < k:
                low += 1
            else:
                high += 1
        if low >= 2 and high >= 2:
            return ("row", k)
    return None
