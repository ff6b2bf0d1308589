"""Elementary moves on rectangular diagrams: exchanges, stabilization,
destabilization, cyclic shifts, and flypes.

Flypes follow the window rewrite: pick a planar anchoring of the cyclic
diagram, split columns into left | middle | right zones and rows into
bottom | middle | top zones, transpose the left-bottom block across the
diagonal, and repair the two diagonal staircases in the unique way that
restores a valid diagram.  Conjugating by quarter turns gives the four
rotation classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .diagram import (
    CanonicalKey,
    GridDiagram,
    canonical_key,
    components,
    shift,
    validate,
)

Pair = tuple[int, int]
Cols = tuple[Pair, ...]

EXCH_COLS = "ExchangeCols"
EXCH_ROWS = "ExchangeRows"
STAB = "Stab"
DESTAB = "Destab"
SHIFT_COLS = "ShiftCols"
SHIFT_ROWS = "ShiftRows"
FLYPE = "Flype"

ALL_KINDS = (EXCH_COLS, EXCH_ROWS, STAB, DESTAB, SHIFT_COLS, SHIFT_ROWS, FLYPE)
CORNERS = ("NE", "NW", "SE", "SW")
_CORNER_ID = {c: i for i, c in enumerate(CORNERS)}


class MoveError(ValueError):
    """A move was not applicable; the message names the violated rule."""


@dataclass(frozen=True, order=True)
class MoveDescriptor:
    """One elementary move.  Placement layout by kind:

    ExchangeCols/ExchangeRows: (i,) first of the two cyclically adjacent lines.
    Stab: (col, row, corner_id) with corner_id indexing NE/NW/SE/SW (the empty
      cell of the created 2x2 block).
    Destab: (i, j) block on columns {i, i+1} x rows {j, j+1}, cyclic.
    ShiftCols/ShiftRows: (k,).
    Flype: (rot, a, b, dx, dy, l, p) -- rotation class, window integers,
      anchor offsets, and the left/bottom zone widths l = |CL|, p = |RB|
      (then the middle zones have m = b-1-p columns and q = a-1-l rows).
    """

    kind: str
    placement: tuple[int, ...]

    def serialize(self) -> str:
        return " ".join([self.kind] + [str(x) for x in self.placement])

    @staticmethod
    def parse(text: str) -> "MoveDescriptor":
        parts = text.split()
        if not parts or parts[0] not in ALL_KINDS:
            raise ValueError(f"bad move descriptor: {text!r}")
        return MoveDescriptor(parts[0], tuple(int(x) for x in parts[1:]))


def declared_delta(m: MoveDescriptor) -> Optional[int]:
    """Complexity change of the move; None for flypes (placement-dependent)."""
    return {
        EXCH_COLS: 0,
        EXCH_ROWS: 0,
        SHIFT_COLS: 0,
        SHIFT_ROWS: 0,
        STAB: 1,
        DESTAB: -1,
        FLYPE: None,
    }[m.kind]


# ---------------------------------------------------------------------------
# exchanges
# ---------------------------------------------------------------------------

def _interleaved(p: Pair, q: Pair, n: int) -> bool:
    """Strict interleaving of two disjoint pairs on the cyclic axis."""
    a, b = p
    c, d = q
    cin = 0 < (c - a) % n < (b - a) % n
    din = 0 < (d - a) % n < (b - a) % n
    return cin != din


def _exchangeable(p: Pair, q: Pair, n: int) -> bool:
    """Pairs non-interleaved with all four endpoints distinct (disjoint or nested)."""
    if set(p) & set(q):
        return False
    return not _interleaved(p, q, n)


def _row_pair(cols: Cols, r: int) -> Pair:
    found = [c for c, pr in enumerate(cols) if r in pr]
    return (found[0], found[1])


def _apply_exchange_cols(cols: Cols, i: int) -> Cols:
    n = len(cols)
    j = (i + 1) % n
    if not _exchangeable(cols[i], cols[j], n):
        raise MoveError(f"columns {i},{j} interleave or share a row")
    out = list(cols)
    out[i], out[j] = out[j], out[i]
    return tuple(out)


def _apply_exchange_rows(cols: Cols, j: int) -> Cols:
    n = len(cols)
    k = (j + 1) % n
    if not _exchangeable(_row_pair(cols, j), _row_pair(cols, k), n):
        raise MoveError(f"rows {j},{k} interleave or share a column")
    def sub(r: int) -> int:
        return k if r == j else j if r == k else r
    return tuple(tuple(sorted((sub(a), sub(b)))) for a, b in cols)


# ---------------------------------------------------------------------------
# stabilization / destabilization
# ---------------------------------------------------------------------------

def _apply_stab(cols: Cols, c: int, r: int, corner: str) -> Cols:
    """Split vertex (c, r) into three across a fresh column and row.

    The fresh column is inserted after c, the fresh row after r; `corner`
    names the empty cell of the resulting 2x2 block.
    """
    n = len(cols)
    if not (0 <= c < n) or r not in cols[c]:
        raise MoveError(f"no vertex at column {c}, row {r}")
    if corner not in CORNERS:
        raise MoveError(f"unknown corner {corner!r}")
    s = cols[c][0] if cols[c][1] == r else cols[c][1]
    oc = _row_pair(cols, r)
    j = oc[0] if oc[1] == c else oc[1]

    def cr(x: int) -> int:
        return x + 1 if x > c else x

    def rr(y: int) -> int:
        return y + 1 if y > r else y

    s2, j2 = rr(s), cr(j)
    W, E, S, N = c, c + 1, r, r + 1
    if corner == "NE":
        full_col, half_col, half_rowpos = W, (E, S), N
    elif corner == "SE":
        full_col, half_col, half_rowpos = W, (E, N), S
    elif corner == "NW":
        full_col, half_col, half_rowpos = E, (W, S), N
    else:  # SW
        full_col, half_col, half_rowpos = E, (W, N), S
    newcols: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(cols):
        if i == c:
            continue
        newcols[cr(i)] = [rr(a), rr(b)]
    newcols[full_col] = [S, N]
    hc, hrow = half_col
    newcols[hc] = [hrow, s2]
    # row r's far occurrence moves to the half row
    lst = newcols[j2]
    lst[lst.index(S)] = half_rowpos
    return tuple(tuple(sorted(newcols[i])) for i in range(n + 1))


def _destab_block(cols: Cols, i: int, j: int) -> Optional[tuple]:
    """The (full/half) structure of a destabilizable 2x2 block, or None."""
    n = len(cols)
    W, E, S, N = i, (i + 1) % n, j, (j + 1) % n
    if n < 3 or W == E or S == N:
        return None
    have = [(c, r) for c in (W, E) for r in (S, N) if r in cols[c]]
    if len(have) != 3:
        return None
    col_full = W if (W, S) in have and (W, N) in have else E
    col_half = E if col_full == W else W
    row_full = S if (W, S) in have and (E, S) in have else N
    row_half = N if row_full == S else S
    return W, E, S, N, col_full, col_half, row_full, row_half


def _apply_destab(cols: Cols, i: int, j: int) -> Cols:
    blk = _destab_block(cols, i, j)
    if blk is None:
        raise MoveError(f"block ({i},{j}) does not hold exactly 3 vertices")
    _, _, _, _, col_full, col_half, row_full, row_half = blk
    n = len(cols)
    pairs = []
    for c in range(n):
        if c == col_full:
            continue
        a, b = cols[c]
        if c == col_half:
            a, b = ((row_half if x == row_full else x) for x in (a, b))
        pairs.append((c, (a, b)))

    def cr(x: int) -> int:
        return x - 1 if x > col_full else x

    def rr(y: int) -> int:
        return y - 1 if y > row_full else y

    out: list[Pair] = [(0, 0)] * (n - 1)
    for c, (a, b) in pairs:
        out[cr(c)] = tuple(sorted((rr(a), rr(b))))
    return tuple(out)


# ---------------------------------------------------------------------------
# flype engine
# ---------------------------------------------------------------------------

def _rot90(cols: Cols) -> Cols:
    """Quarter turn: vertex (c, r) -> (r, n-1-c)."""
    n = len(cols)
    acc: list[list[int]] = [[] for _ in range(n)]
    for c, (a, b) in enumerate(cols):
        acc[a].append(n - 1 - c)
        acc[b].append(n - 1 - c)
    return tuple(tuple(sorted(p)) for p in acc)


def _rot_vertex(v: tuple[int, int], n: int, times: int) -> tuple[int, int]:
    c, r = v
    for _ in range(times % 4):
        c, r = r, n - 1 - c
    return (c, r)


def _flype_window(
    cols: Cols, dx: int, dy: int, l: int, m: int, p: int, q: int
) -> Optional[tuple[Cols, frozenset, frozenset]]:
    """Apply the base-rotation flype; None if the window is inadmissible.

    Returns (new cols, moved vertices, deleted vertices) in this anchoring's
    coordinates.  Zone layout in anchored order: columns CL(l) | CM(m) | CR,
    rows RB(p) | RM(q) | RT.
    """
    n = len(cols)
    if not (1 <= l and 0 <= m and l + m <= n and 1 <= p and 0 <= q and p + q <= n):
        return None
    cpos = [0] * n
    for i in range(n):
        cpos[(dx + i) % n] = i
    rpos = [0] * n
    for i in range(n):
        rpos[(dy + i) % n] = i

    small: list[tuple[int, int]] = []
    cm_match: dict[int, int] = {}
    rb_match: dict[int, int] = {}
    rm_match: dict[int, int] = {}
    cl_match: dict[int, int] = {}
    sr: dict[int, int] = {}
    sc: dict[int, int] = {}
    out_r: dict[int, int] = {}
    out_c: dict[int, int] = {}
    for c, pr in enumerate(cols):
        ci = cpos[c]
        czone = 0 if ci < l else 1 if ci < l + m else 2
        for r in pr:
            ri = rpos[r]
            rzone = 0 if ri < p else 1 if ri < p + q else 2
            if czone == 0:
                if rzone == 0:
                    small.append((c, r))
                    sr[r] = sr.get(r, 0) + 1
                    sc[c] = sc.get(c, 0) + 1
                elif rzone == 1:
                    if c in cl_match or r in rm_match:
                        return None
                    cl_match[c] = r
                    rm_match[r] = c
                else:
                    out_c[c] = out_c.get(c, 0) + 1
            elif czone == 1:
                if rzone == 0:
                    if c in cm_match or r in rb_match:
                        return None
                    cm_match[c] = r
                    rb_match[r] = c
                elif rzone == 1:
                    return None
            else:
                if rzone == 0:
                    out_r[r] = out_r.get(r, 0) + 1
    if not small:
        return None
    mm = sorted((cpos[c], rpos[r]) for c, r in cm_match.items())
    if any(y1 >= y2 for (_, y1), (_, y2) in zip(mm, mm[1:])):
        return None
    mm = sorted((rpos[r], cpos[c]) for r, c in rm_match.items())
    if any(y1 >= y2 for (_, y1), (_, y2) in zip(mm, mm[1:])):
        return None
    fresh_cols = [r for r in sr if r not in rb_match]
    if fresh_cols and len(cm_match) < m:
        return None  # fresh image columns cannot interleave spacer columns
    fresh_rows = [c for c in sc if c not in cl_match]
    if fresh_rows and len(rm_match) < q:
        return None

    def imgcol(r: int):
        return rb_match.get(r, ("f", r))

    def imgrow(c: int):
        return cl_match.get(c, ("g", c))

    verts_out = []
    moved = []
    deleted = []
    for c, pr in enumerate(cols):
        ci = cpos[c]
        czone = 0 if ci < l else 1 if ci < l + m else 2
        for r in pr:
            ri = rpos[r]
            rzone = 0 if ri < p else 1 if ri < p + q else 2
            if czone == 2:
                verts_out.append((c, r))
            elif czone == 1:
                if rzone == 2:
                    verts_out.append((c, r))
                elif out_r.get(r, 0) == 1:
                    verts_out.append((c, r))
                else:
                    deleted.append((c, r))
            else:
                if rzone == 2:
                    verts_out.append((c, r))
                elif rzone == 1:
                    if out_c.get(c, 0) == 1:
                        verts_out.append((c, r))
                    else:
                        deleted.append((c, r))
                else:
                    verts_out.append((imgcol(r), imgrow(c)))
                    moved.append((c, r))
    for r in sr:
        if r not in rb_match and out_r.get(r, 0) == 1:
            verts_out.append((imgcol(r), r))
    for c in sc:
        if c not in cl_match and out_c.get(c, 0) == 1:
            verts_out.append((c, imgrow(c)))

    colorder: list = []
    for i in range(l):
        c = (dx + i) % n
        if out_c.get(c, 0) >= 1:
            colorder.append(c)
    if fresh_cols:
        mids = sorted(
            [(rpos[r], c) for c, r in cm_match.items()]
            + [(rpos[r], ("f", r)) for r in fresh_cols]
        )
        colorder.extend(c for _, c in mids)
    else:
        colorder.extend((dx + i) % n for i in range(l, l + m))
    colorder.extend((dx + i) % n for i in range(l + m, n))
    roworder: list = []
    for i in range(p):
        r = (dy + i) % n
        if out_r.get(r, 0) >= 1:
            roworder.append(r)
    if fresh_rows:
        mids = sorted(
            [(cpos[c], r) for r, c in rm_match.items()]
            + [(cpos[c], ("g", c)) for c in fresh_rows]
        )
        roworder.extend(r for _, r in mids)
    else:
        roworder.extend((dy + i) % n for i in range(p, p + q))
    roworder.extend((dy + i) % n for i in range(p + q, n))

    cindex = {c: i for i, c in enumerate(colorder)}
    rindex = {r: i for i, r in enumerate(roworder)}
    if len(cindex) != len(rindex):
        return None
    acc: list[list[int]] = [[] for _ in range(len(cindex))]
    for c, r in verts_out:
        if c not in cindex or r not in rindex:
            return None
        acc[cindex[c]].append(rindex[r])
    out: list[Pair] = []
    for lst in acc:
        if len(lst) != 2 or lst[0] == lst[1]:
            return None
        out.append(tuple(sorted(lst)))
    res = tuple(out)
    d = GridDiagram(res)
    if validate(d) is not None:
        return None
    return res, frozenset(moved), frozenset(deleted)


def _flype_apply_raw(
    cols: Cols, rot: int, dx: int, dy: int, l: int, p: int, m: int, q: int
) -> Optional[tuple[Cols, frozenset, frozenset]]:
    """Rotation-conjugated flype on raw columns; fates in input coordinates."""
    n = len(cols)
    base = cols
    for _ in range(rot % 4):
        base = _rot90(base)
    res = _flype_window(base, dx, dy, l, m, p, q)
    if res is None:
        return None
    out, moved, deleted = res
    back = out
    for _ in range((4 - rot) % 4):
        back = _rot90(back)
    unrot = (4 - rot) % 4
    moved_in = frozenset(_rot_vertex(v, n, unrot) for v in moved)
    deleted_in = frozenset(_rot_vertex(v, n, unrot) for v in deleted)
    return back, moved_in, deleted_in


def _iter_flype_placements(n: int) -> Iterable[tuple[int, int, int, int, int, int]]:
    """All (dx, dy, l, p, m, q) windows for one rotation class, in order."""
    for dx in range(n):
        for dy in range(n):
            for l in range(1, n + 1):
                for p in range(1, n + 1):
                    for m in range(0, n - l + 1):
                        for q in range(0, n - p + 1):
                            yield dx, dy, l, p, m, q


def _flype_descriptor(rot: int, dx: int, dy: int, l: int, p: int, m: int, q: int) -> MoveDescriptor:
    a = l + q + 1
    b = p + m + 1
    return MoveDescriptor(FLYPE, (rot, a, b, dx, dy, l, p))


def _flype_params(mv: MoveDescriptor) -> tuple[int, int, int, int, int, int, int, int]:
    rot, a, b, dx, dy, l, p = mv.placement
    return rot, dx, dy, l, p, b - 1 - p, a - 1 - l


def enumerate_flypes(
    d: GridDiagram,
    max_delta: int,
    stop: Optional[Callable[[CanonicalKey, int], bool]] = None,
) -> list[tuple[MoveDescriptor, GridDiagram, int]]:
    """All flype moves with complexity change <= max_delta.

    Placements that perform the same vertex rewrite and land on the same
    combinatorial type are deduplicated, keeping the least placement tuple.
    `stop(key, delta)` may end the scan early (used by targeted searches).
    """
    cols = d.cols
    n = d.n
    seen: dict[tuple, tuple] = {}
    raw_keys: dict[Cols, CanonicalKey] = {}
    bases = [cols]
    for _ in range(3):
        bases.append(_rot90(bases[-1]))
    done = False
    for rot in range(4):
        if done:
            break
        base = bases[rot]
        for dx, dy, l, p, m, q in _iter_flype_placements(n):
            res = _flype_window(base, dx, dy, l, m, p, q)
            if res is None:
                continue
            out, moved, deleted = res
            delta = len(out) - n
            if delta > max_delta:
                continue
            back = out
            for _ in range((4 - rot) % 4):
                back = _rot90(back)
            if back not in raw_keys:
                raw_keys[back] = canonical_key(GridDiagram(back))
            k = raw_keys[back]
            unrot = (4 - rot) % 4
            sig = (
                k,
                frozenset(_rot_vertex(v, n, unrot) for v in moved),
                frozenset(_rot_vertex(v, n, unrot) for v in deleted),
            )
            desc = _flype_descriptor(rot, dx, dy, l, p, m, q)
            prev = seen.get(sig)
            if prev is None or desc.placement < prev[0].placement:
                seen[sig] = (desc, GridDiagram(back), delta)
            if stop is not None and stop(k, delta):
                done = True
                break
    return sorted(seen.values(), key=lambda t: t[0].placement)


# ---------------------------------------------------------------------------
# public move API
# ---------------------------------------------------------------------------

def apply_move(d: GridDiagram, mv: MoveDescriptor) -> GridDiagram:
    """Apply one move; raises MoveError when it is not applicable."""
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    n = d.n
    if mv.kind in (EXCH_COLS, EXCH_ROWS, SHIFT_COLS, SHIFT_ROWS):
        (k,) = mv.placement
        if not (0 <= k < n):
            raise MoveError(f"index {k} out of range for n={n}")
        if mv.kind == EXCH_COLS:
            return GridDiagram(_apply_exchange_cols(d.cols, k))
        if mv.kind == EXCH_ROWS:
            return GridDiagram(_apply_exchange_rows(d.cols, k))
        return shift(d, "cols" if mv.kind == SHIFT_COLS else "rows", k)
    if mv.kind == STAB:
        c, r, corner_id = mv.placement
        if not (0 <= corner_id < 4):
            raise MoveError(f"bad corner id {corner_id}")
        return GridDiagram(_apply_stab(d.cols, c, r, CORNERS[corner_id]))
    if mv.kind == DESTAB:
        i, j = mv.placement
        if not (0 <= i < n and 0 <= j < n):
            raise MoveError(f"block ({i},{j}) out of range")
        return GridDiagram(_apply_destab(d.cols, i, j))
    if mv.kind == FLYPE:
        rot, dx, dy, l, p, m, q = _flype_params(mv)
        if not (0 <= rot < 4 and 0 <= dx < n and 0 <= dy < n):
            raise MoveError("flype anchor out of range")
        res = _flype_apply_raw(d.cols, rot, dx, dy, l, p, m, q)
        if res is None:
            raise MoveError("flype window inadmissible at this placement")
        return GridDiagram(res[0])
    raise MoveError(f"unknown move kind {mv.kind}")


def apply_stab(d: GridDiagram, vertex: tuple[int, int], corner: str) -> GridDiagram:
    c, r = vertex
    return apply_move(d, MoveDescriptor(STAB, (c, r, _CORNER_ID[corner])))


def move_delta(d: GridDiagram, mv: MoveDescriptor) -> int:
    fixed = declared_delta(mv)
    if fixed is not None:
        return fixed
    return apply_move(d, mv).n - d.n


def enumerate_moves(
    d: GridDiagram, kinds: Iterable[str], max_delta: int = 1
) -> list[MoveDescriptor]:
    """The applicable moves of the requested kinds with delta <= max_delta,
    ordered by kind (ALL_KINDS order) then placement."""
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    kinds = set(kinds)
    bad = kinds - set(ALL_KINDS)
    if bad:
        raise ValueError(f"unknown move kinds: {sorted(bad)}")
    n = d.n
    out: list[MoveDescriptor] = []
    if EXCH_COLS in kinds and max_delta >= 0:
        for i in range(n):
            if _exchangeable(d.cols[i], d.cols[(i + 1) % n], n):
                out.append(MoveDescriptor(EXCH_COLS, (i,)))
    if EXCH_ROWS in kinds and max_delta >= 0:
        rowp = [_row_pair(d.cols, r) for r in range(n)]
        for j in range(n):
            if _exchangeable(rowp[j], rowp[(j + 1) % n], n):
                out.append(MoveDescriptor(EXCH_ROWS, (j,)))
    if STAB in kinds and max_delta >= 1:
        for c in range(n):
            for r in d.cols[c]:
                for cid in range(4):
                    out.append(MoveDescriptor(STAB, (c, r, cid)))
    if DESTAB in kinds and max_delta >= -1:
        for i in range(n):
            for j in range(n):
                if _destab_block(d.cols, i, j) is not None:
                    out.append(MoveDescriptor(DESTAB, (i, j)))
    if SHIFT_COLS in kinds and max_delta >= 0:
        out.extend(MoveDescriptor(SHIFT_COLS, (k,)) for k in range(1, n))
    if SHIFT_ROWS in kinds and max_delta >= 0:
        out.extend(MoveDescriptor(SHIFT_ROWS, (k,)) for k in range(1, n))
    if FLYPE in kinds:
        out.extend(mv for mv, _, _ in enumerate_flypes(d, max_delta))
    order = {k: i for i, k in enumerate(ALL_KINDS)}
    out.sort(key=lambda mv: (order[mv.kind], mv.placement))
    return out


def neighbor_diagrams(
    d: GridDiagram, kinds: Iterable[str], max_delta: int = 0
) -> list[tuple[MoveDescriptor, GridDiagram]]:
    """(move, result) pairs; flypes computed once through their engine."""
    kinds = set(kinds)
    out = []
    for mv in enumerate_moves(d, kinds - {FLYPE}, max_delta):
        out.append((mv, apply_move(d, mv)))
    if FLYPE in kinds:
        for mv, res, delta in enumerate_flypes(d, max_delta):
            out.append((mv, res))
    return out
