"""Rectangle representation of standardly tiled tori in the open-book fibration.

A tiling lives on a doubly cyclic grid: V binding-circle vertices (x axis)
and S saddle levels (theta axis).  Each rectangle records the life of one
page arc: x-span from `left` to `right` (a cyclic arc of vertices), born at
saddle `birth`, dead at saddle `death`.  Regular interval t is the slice of
the fibration between saddles t and t+1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .diagram import GridDiagram, components, validate as validate_diagram

Rect = tuple[int, int, int, int]  # (left, right, birth, death)


@dataclass(frozen=True)
class RectTiling:
    V: int
    S: int
    rects: frozenset

    def sorted_rects(self) -> list[Rect]:
        return sorted(self.rects)

    def __repr__(self) -> str:
        return f"RectTiling(V={self.V}, S={self.S}, rects={self.sorted_rects()})"


@dataclass(frozen=True)
class KnotMarks:
    """Knot vertices on binding-circle segments: (segment index, count) entries."""

    marks: tuple[tuple[int, int], ...]

    @property
    def side(self) -> Optional[int]:
        parities = {seg % 2 for seg, _ in self.marks}
        return parities.pop() if len(parities) == 1 else None

    def count_on(self, segment: int) -> int:
        return sum(c for seg, c in self.marks if seg == segment)


@dataclass(frozen=True)
class Cap:
    a: int
    b: int
    birth: int
    death: int
    parity: int
    empty: Optional[bool] = None


@dataclass(frozen=True)
class CapReport:
    caps: tuple[Cap, ...]

    def parities(self) -> set:
        return {c.parity for c in self.caps}


def _lifetime(rect: Rect, S: int) -> int:
    return (rect[3] - rect[2]) % S


def _alive(rect: Rect, t: int, S: int) -> bool:
    return (t - rect[2]) % S < _lifetime(rect, S)


def _span_width(rect: Rect, V: int) -> int:
    return (rect[1] - rect[0]) % V


def _strictly_inside(x: int, left: int, right: int, V: int) -> bool:
    return 0 < (x - left) % V < (right - left) % V


def _theta_overlap(r1: Rect, r2: Rect, S: int) -> bool:
    return any(
        _alive(r1, t, S) and _alive(r2, t, S) for t in range(S)
    )


def validate_tiling(t: RectTiling) -> Optional[str]:
    """None if the tiling is valid, else a message naming the violation."""
    V, S = t.V, t.S
    if V < 1 or S < 1:
        return f"V={V}, S={S} must be positive"
    rects = t.sorted_rects()
    if not rects:
        return "no rectangles"
    for r in rects:
        l, rr, b, d = r
        if not (0 <= l < V and 0 <= rr < V and 0 <= b < S and 0 <= d < S):
            return f"rectangle {r} out of range"
        if l == rr:
            return f"rectangle {r} has empty x-span"
        if b == d:
            return f"rectangle {r} has empty lifetime"
    if len(rects) != 2 * S or len(rects) != 2 * V:
        return (
            f"count relation broken: {len(rects)} rectangles, "
            f"expected 2*S={2 * S} and 2*V={2 * V}"
        )
    for tt in range(S):
        used: dict[int, Rect] = {}
        for r in rects:
            if not _alive(r, tt, S):
                continue
            for v in (r[0], r[1]):
                if v in used:
                    return (
                        f"vertex {v} used twice at interval {tt}: {used[v]} and {r}"
                    )
                used[v] = r
    for r1, r2 in itertools.combinations(rects, 2):
        if not _theta_overlap(r1, r2, S):
            continue
        in1 = sum(_strictly_inside(x, r1[0], r1[1], V) for x in (r2[0], r2[1]))
        in2 = sum(_strictly_inside(x, r2[0], r2[1], V) for x in (r1[0], r1[1]))
        if (in1, in2) not in ((0, 0), (2, 0), (0, 2)):
            return f"rectangles {r1} and {r2} interleave"
    return None


def is_valid_tiling(t: RectTiling) -> bool:
    return validate_tiling(t) is None


def is_standard(t: RectTiling) -> bool:
    """Standardness: V = S, two rectangles on each side of every vertex line,
    two dying and two born at every saddle with matching endpoints, each
    vertex covered at all times, and a connected tile complex."""
    if validate_tiling(t) is not None:
        raise ValueError(validate_tiling(t))
    V, S = t.V, t.S
    if V != S:
        return False
    rects = t.sorted_rects()
    lefts: dict[int, int] = {}
    rights: dict[int, int] = {}
    cover: dict[int, int] = {}
    for l, r, b, d in rects:
        lefts[l] = lefts.get(l, 0) + 1
        rights[r] = rights.get(r, 0) + 1
        life = (d - b) % S
        cover[l] = cover.get(l, 0) + life
        cover[r] = cover.get(r, 0) + life
    for v in range(V):
        if lefts.get(v, 0) != 2 or rights.get(v, 0) != 2:
            return False
        if cover.get(v, 0) != S:
            return False
    for s in range(S):
        dying = [r for r in rects if r[3] == s]
        born = [r for r in rects if r[2] == s]
        if len(dying) != 2 or len(born) != 2:
            return False
        dset = {x for r in dying for x in (r[0], r[1])}
        bset = {x for r in born for x in (r[0], r[1])}
        if len(dset) != 4 or dset != bset:
            return False
    # connectivity through saddles
    index = {r: i for i, r in enumerate(rects)}
    adj: list[set] = [set() for _ in rects]
    for s in range(S):
        group = [index[r] for r in rects if r[2] == s or r[3] == s]
        for i in group:
            for j in group:
                if i != j:
                    adj[i].add(j)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in adj[i]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(rects)


# ---------------------------------------------------------------------------
# caps
# ---------------------------------------------------------------------------

def abcaps(t: RectTiling, marks: Optional[KnotMarks] = None) -> CapReport:
    """All width-one rectangles, annotated by segment parity and, when marks
    are supplied, emptiness."""
    if not is_standard(t):
        raise ValueError("caps are defined on standard tilings")
    if marks is not None and marks.marks and marks.side is None:
        raise ValueError("knot marks must occupy segments of a single parity")
    caps = []
    for l, r, b, d in t.sorted_rects():
        if _span_width((l, r, b, d), t.V) != 1:
            continue
        empty = None if marks is None else marks.count_on(l) == 0
        caps.append(Cap(l, r, b, d, l % 2, empty))
    return CapReport(tuple(caps))


def empty_caps(t: RectTiling, marks: KnotMarks) -> CapReport:
    report = abcaps(t, marks)
    return CapReport(tuple(c for c in report.caps if c.empty))


# ---------------------------------------------------------------------------
# state-sequence view and cap removal
# ---------------------------------------------------------------------------

def states_of(t: RectTiling) -> list[frozenset]:
    """Alive chord set (vertex pairs) per regular interval 0..S-1."""
    out = []
    for tt in range(t.S):
        out.append(
            frozenset(
                tuple(sorted((r[0], r[1])))
                for r in t.rects
                if _alive(r, tt, t.S)
            )
        )
    return out


def _rects_from_states(states: list[frozenset]) -> Optional[list[tuple]]:
    """Maximal chord runs -> (chord, birth, death); None if some chord never dies."""
    S = len(states)
    chords = set()
    for st in states:
        chords.update(st)
    rects = []
    for ch in sorted(chords):
        ts = {t for t in range(S) if ch in states[t]}
        if len(ts) == S:
            return None
        for t in sorted(ts):
            if (t - 1) % S not in ts:
                end = t
                while (end + 1) % S in ts:
                    end = (end + 1) % S
                rects.append((ch, t, (end + 1) % S))
    return rects


def assign_spans(chord_rects: list[tuple], V: int, S: int) -> list[Rect]:
    """Choose a span orientation per rectangle so the picture is laminar.

    Solved as a 2-SAT instance over "rect spans its sorted-order arc";
    deterministic by construction.  Raises if no assignment exists.
    """
    n = len(chord_rects)
    life = {i: (d - b) % S for i, (ch, b, d) in enumerate(chord_rects)}

    def alive(i: int, t: int) -> bool:
        ch, b, d = chord_rects[i]
        return (t - b) % S < life[i]

    def span_ok(c1, o1, c2, o2) -> bool:
        l1, r1 = c1 if o1 else (c1[1], c1[0])
        l2, r2 = c2 if o2 else (c2[1], c2[0])
        in1 = sum(_strictly_inside(x, l1, r1, V) for x in (l2, r2))
        in2 = sum(_strictly_inside(x, l2, r2, V) for x in (l1, r1))
        return (in1, in2) in ((0, 0), (2, 0), (0, 2))

    # implication graph: node 2i = "x_i true" (span = sorted arc), 2i+1 = negation
    nnode = 2 * n
    graph: list[list[int]] = [[] for _ in range(nnode)]

    def add_clause(u: int, unot: bool, v: int, vnot: bool) -> None:
        # clause (lu or lv): edges ~lu -> lv and ~lv -> lu
        lu = 2 * u + (1 if unot else 0)
        lv = 2 * v + (1 if vnot else 0)
        graph[lu ^ 1].append(lv)
        graph[lv ^ 1].append(lu)

    unsat_pair = None
    for i in range(n):
        for j in range(i + 1, n):
            if not any(alive(i, t) and alive(j, t) for t in range(S)):
                continue
            ci, cj = chord_rects[i][0], chord_rects[j][0]
            combos = [
                (oi, oj)
                for oi in (True, False)
                for oj in (True, False)
                if span_ok(ci, oi, cj, oj)
            ]
            if not combos:
                unsat_pair = (chord_rects[i], chord_rects[j])
                break
            for oi in (True, False):
                for oj in (True, False):
                    if (oi, oj) not in combos:
                        # forbid: clause (not(x_i = oi) or not(x_j = oj))
                        add_clause(i, oi, j, oj)
        if unsat_pair:
            break
    if unsat_pair:
        raise ValueError(f"no laminar span assignment: {unsat_pair}")

    comp = _tarjan_scc(graph)
    assign = []
    for i in range(n):
        if comp[2 * i] == comp[2 * i + 1]:
            raise ValueError("no laminar span assignment (2-SAT unsatisfiable)")
        assign.append(comp[2 * i] > comp[2 * i + 1])
    out = []
    for i, (ch, b, d) in enumerate(chord_rects):
        l, r = ch if assign[i] else (ch[1], ch[0])
        out.append((l, r, b, d))
    return out


def _tarjan_scc(graph: list[list[int]]) -> list[int]:
    n = len(graph)
    index = [None] * n
    low = [0] * n
    comp = [-1] * n
    onstack = [False] * n
    stack: list[int] = []
    counter = [0]
    ncomp = [0]
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                onstack[v] = True
            recurse = False
            for k in range(pi, len(graph[v])):
                w = graph[v][k]
                if index[w] is None:
                    work[-1] = (v, k + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                if onstack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    onstack[w] = False
                    comp[w] = ncomp[0]
                    if w == v:
                        break
                ncomp[0] += 1
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
    return comp


def remove_empty_cap(
    t: RectTiling, cap: Cap, marks: Optional[KnotMarks] = None
) -> RectTiling:
    """Pull the cap's tongue off the binding circle: its two vertices and the
    saddles that become trivial disappear; V drops by 2.

    The surgery merges, at every page, the two arcs ending at the removed
    vertices.  Raises if the cap is absent, not empty under the marks, or if
    the surgery degenerates to a saddle-free foliation.
    """
    if not is_standard(t):
        raise ValueError("cap removal needs a standard tiling")
    rect = (cap.a, cap.b, cap.birth, cap.death)
    if rect not in t.rects or _span_width(rect, t.V) != 1:
        raise ValueError(f"no such cap: {rect}")
    if marks is not None and marks.count_on(cap.a) > 0:
        raise ValueError(f"cap on segment {cap.a} is not empty")
    V, S = t.V, t.S
    a, b = cap.a, (cap.a + 1) % V
    states = states_of(t)
    newstates = []
    for st in states:
        at_a = [ch for ch in st if a in ch]
        at_b = [ch for ch in st if b in ch]
        if len(at_a) != 1 or len(at_b) != 1:
            raise ValueError("tiling does not cover a removed vertex")
        ca, cb = at_a[0], at_b[0]
        rest = [ch for ch in st if ch != ca and ch != cb]
        if ca == cb:
            pass  # tongue arc pulled off entirely
        else:
            oa = ca[0] if ca[1] == a else ca[1]
            ob = cb[0] if cb[1] == b else cb[1]
            rest.append(tuple(sorted((oa, ob))))
        newstates.append(frozenset(rest))
    # relabel vertices
    keep = sorted(set(range(V)) - {a, b})
    remap = {v: i for i, v in enumerate(keep)}
    newstates = [
        frozenset(tuple(sorted((remap[x], remap[y]))) for x, y in st)
        for st in newstates
    ]
    # collapse trivial transitions
    collapsed: list[frozenset] = []
    for st in newstates:
        if not collapsed or st != collapsed[-1]:
            collapsed.append(st)
    while len(collapsed) > 1 and collapsed[0] == collapsed[-1]:
        collapsed.pop()
    if len(collapsed) < 2:
        raise ValueError(
            "cap removal degenerates: resulting foliation has no saddles"
        )
    chord_rects = _rects_from_states(collapsed)
    if chord_rects is None:
        raise ValueError("cap removal degenerates: an arc never dies")
    spans = assign_spans(chord_rects, V - 2, len(collapsed))
    out = RectTiling(V - 2, len(collapsed), frozenset(spans))
    err = validate_tiling(out)
    if err is not None:
        raise ValueError(f"cap removal produced an invalid tiling: {err}")
    return out


# ---------------------------------------------------------------------------
# thin torus
# ---------------------------------------------------------------------------

def thin_torus(d: GridDiagram) -> RectTiling:
    """Tube boundary around the arc presentation of a one-component diagram.

    Knot vertex r meets the binding between torus vertices 2r and 2r+1; page
    c contributes an entry saddle 2c and an exit saddle 2c+1 where the two
    flank arcs of its knot arc replace the vertex caps.
    """
    err = validate_diagram(d)
    if err is not None:
        raise ValueError(err)
    if components(d).count != 1:
        raise ValueError("thin torus needs a single-component diagram")
    n = d.n
    V = 2 * n
    occ = d.occurrence_table()
    rects: list[Rect] = []
    for r in range(n):
        c1, c2 = sorted(occ[r])
        rects.append((2 * r, 2 * r + 1, (2 * c1 + 1) % V, 2 * c2))
        rects.append((2 * r, 2 * r + 1, (2 * c2 + 1) % V, 2 * c1))
    for c, (r1, r2) in enumerate(d.cols):
        rects.append(((2 * r1 + 1) % V, 2 * r2, 2 * c, 2 * c + 1))
        rects.append(((2 * r2 + 1) % V, 2 * r1, 2 * c, 2 * c + 1))
    return RectTiling(V, V, frozenset(rects))


def thin_torus_marks(d: GridDiagram) -> KnotMarks:
    """The knot's own vertices relative to its thin torus: one per even segment."""
    return KnotMarks(tuple((2 * r, 1) for r in range(d.n)))


# ---------------------------------------------------------------------------
# page cross-sections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Page:
    kind: str  # "regular" | "saddle"
    index: int
    chords: tuple
    dying: tuple = ()
    born: tuple = ()
    marks: tuple = ()


def pages(t: RectTiling, marks: Optional[KnotMarks] = None) -> list[Page]:
    """The H_theta sequence: alternating regular intervals and saddle events."""
    err = validate_tiling(t)
    if err is not None:
        raise ValueError(err)
    mk = marks.marks if marks is not None else ()
    rects = t.sorted_rects()
    out = []
    for s in range(t.S):
        dying = tuple(r for r in rects if r[3] == s)
        born = tuple(r for r in rects if r[2] == s)
        out.append(Page("saddle", s, (), dying, born, mk))
        alive = tuple(r for r in rects if _alive(r, s, t.S))
        out.append(Page("regular", s, alive, marks=mk))
    return out
