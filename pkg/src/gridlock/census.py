"""Enumeration of standardly tiled tori by complexity.

The enumerator sweeps the theta circle: a state is the non-crossing perfect
matching of alive arcs, a saddle reconnects two arcs, and a standard tiling
of complexity V is a cyclic sequence of V saddles in which every vertex
participates exactly four times.  Symmetry (cyclic rotations of both axes)
is broken by seeding only at x-canonical matchings that are minimal along
their cycle; results are deduplicated by canonical form.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .tiling import RectTiling, assign_spans, abcaps

Chord = tuple[int, int]
ChordRect = tuple[Chord, int, int]  # (chord, birth, death)


def noncrossing_perfect_matchings(V: int) -> list[frozenset]:
    """Non-crossing perfect matchings of 0..V-1 on the circle, sorted."""
    def rec(points: tuple) -> list[list[Chord]]:
        if not points:
            return [[]]
        out = []
        a = points[0]
        for i in range(1, len(points), 2):
            b = points[i]
            for left in rec(points[1:i]):
                for right in rec(points[i + 1:]):
                    out.append([(a, b)] + left + right)
        return out

    return sorted(
        (frozenset(m) for m in rec(tuple(range(V)))), key=lambda m: sorted(m)
    )


def chords_cross(p: Chord, q: Chord, V: int) -> bool:
    a, b = p
    c, d = q
    if len({a, b, c, d}) < 4:
        return False
    cin = 0 < (c - a) % V < (b - a) % V
    din = 0 < (d - a) % V < (b - a) % V
    return cin != din


def _rotate_matching(m: frozenset, r: int, V: int) -> frozenset:
    return frozenset(tuple(sorted(((a + r) % V, (b + r) % V))) for a, b in m)


@dataclass
class SweepGraph:
    V: int
    states: list
    sid: dict
    succ: list  # per state: list of (next_state_id, quad 4-tuple)
    dist: list  # all-pairs shortest saddle distances
    xcanonical: list  # state ids that are minimal among their x-rotations


def build_sweep_graph(V: int) -> SweepGraph:
    states = noncrossing_perfect_matchings(V)
    sid = {m: i for i, m in enumerate(states)}
    succ = []
    for m in states:
        edges = []
        for x, y in itertools.combinations(sorted(m), 2):
            a, b = x
            c, d = y
            rest = m - {x, y}
            for born in (((a, c), (b, d)), ((a, d), (b, c))):
                nb = frozenset(tuple(sorted(t)) for t in born)
                newm = rest | nb
                if all(
                    not chords_cross(t, u, V)
                    for t in nb
                    for u in newm
                    if t != u
                ):
                    edges.append((sid[newm], (a, b, c, d)))
        succ.append(edges)
    dist = []
    for s in range(len(states)):
        d = [10 ** 9] * len(states)
        d[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for (w, _) in succ[u]:
                if d[w] > d[u] + 1:
                    d[w] = d[u] + 1
                    q.append(w)
        dist.append(d)
    xcanon = []
    for i, m in enumerate(states):
        if all(sid[_rotate_matching(m, r, V)] >= i for r in range(V)):
            xcanon.append(i)
    return SweepGraph(V, states, sid, succ, dist, xcanon)


def _sweep_seed(graph: SweepGraph, seed: int, deadline: Optional[float]) -> tuple[list, bool]:
    """All length-V saddle cycles through `seed` with min state id = seed and
    every vertex participating exactly 4 times.  Returns (state id sequences,
    completed)."""
    V = graph.V
    succ = graph.succ
    dseed = graph.dist[seed]
    needs = [4] * V
    found: list[tuple[int, ...]] = []
    path: list[int] = []
    complete = True

    def rec(cur: int, rem: int) -> bool:
        nonlocal complete
        if rem == 0:
            if cur == seed:
                found.append(tuple(path))
            return True
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            return False
        if dseed[cur] > rem or max(needs) > rem:
            return True
        for nxt, (a, b, c, d) in succ[cur]:
            if nxt < seed:
                continue
            if needs[a] == 0 or needs[b] == 0 or needs[c] == 0 or needs[d] == 0:
                continue
            needs[a] -= 1
            needs[b] -= 1
            needs[c] -= 1
            needs[d] -= 1
            path.append(nxt)
            ok = rec(nxt, rem - 1)
            path.pop()
            needs[a] += 1
            needs[b] += 1
            needs[c] += 1
            needs[d] += 1
            if not ok:
                return False
        return True

    rec(seed, V)
    return found, complete


def chord_rects_from_states(states: list[frozenset]) -> Optional[list[ChordRect]]:
    """Maximal alive runs per chord; None when some arc never dies."""
    S = len(states)
    chords: set = set()
    for st in states:
        chords.update(st)
    rects: list[ChordRect] = []
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


def _connected(rects: list[ChordRect], S: int) -> bool:
    adj: list[set] = [set() for _ in rects]
    by_saddle: dict[int, list[int]] = {}
    for i, (_, b, d) in enumerate(rects):
        by_saddle.setdefault(b, []).append(i)
        by_saddle.setdefault(d, []).append(i)
    for group in by_saddle.values():
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


def canonical_chord_rects(
    rects: list[ChordRect], V: int, S: int, reflections: bool = False
) -> tuple[ChordRect, ...]:
    """Least image under cyclic rotations of both axes (optionally also the
    simultaneous reflection of both axes)."""
    def transform(dr: int, dt: int, refl: bool) -> tuple[ChordRect, ...]:
        out = []
        for (a, b), birth, death in rects:
            if refl:
                a2, b2 = (-a) % V, (-b) % V
                birth2, death2 = (-death) % S, (-birth) % S
            else:
                a2, b2, birth2, death2 = a, b, birth, death
            ch = tuple(sorted(((a2 + dr) % V, (b2 + dr) % V)))
            out.append((ch, (birth2 + dt) % S, (death2 + dt) % S))
        return tuple(sorted(out))

    best = None
    for refl in ((False, True) if reflections else (False,)):
        for dr in range(V):
            for dt in range(S):
                cand = transform(dr, dt, refl)
                if best is None or cand < best:
                    best = cand
    assert best is not None
    return best


@dataclass
class CensusLevel:
    V: int
    complete: bool
    entries: list = field(default_factory=list)  # canonical ChordRect tuples
    reflection_classes: int = 0

    @property
    def count(self) -> int:
        return len(self.entries)


@dataclass
class Census:
    levels: dict

    def counts(self) -> dict[int, int]:
        return {v: lvl.count for v, lvl in sorted(self.levels.items())}


def tiling_of_entry(entry: tuple[ChordRect, ...], V: int) -> RectTiling:
    """Materialize a census entry as a RectTiling with laminar spans."""
    spans = assign_spans(list(entry), V, V)
    return RectTiling(V, V, frozenset(spans))


def entry_cap_parities(entry: tuple[ChordRect, ...], V: int) -> set:
    parities = set()
    for (a, b), _, _ in entry:
        if (b - a) % V == 1:
            parities.add(a % 2)
        elif (a - b) % V == 1:
            parities.add(b % 2)
    return parities


def census_level(V: int, max_seconds: Optional[float] = None) -> CensusLevel:
    """All standard tilings with V vertices up to rotations of both axes."""
    if V < 2 or V % 2 == 1:
        return CensusLevel(V, True, [])
    graph = build_sweep_graph(V)
    deadline = time.monotonic() + max_seconds if max_seconds is not None else None
    classes: set = set()
    complete = True
    for seed in graph.xcanonical:
        seqs, ok = _sweep_seed(graph, seed, deadline)
        if not ok:
            complete = False
            break
        for seq in seqs:
            states = [graph.states[s] for s in seq]
            rects = chord_rects_from_states(states)
            if rects is None or len(rects) != 2 * V:
                continue
            if not _connected(rects, V):
                continue
            classes.add(canonical_chord_rects(rects, V, V))
    entries = sorted(classes)
    refl = {canonical_chord_rects(list(e), V, V, reflections=True) for e in entries}
    lvl = CensusLevel(V, complete, entries, len(refl))
    return lvl


def enumerate_standard(
    vmax: int, max_seconds: Optional[float] = None, vmin: int = 2
) -> Census:
    """Census for every V in [vmin, vmax]; per-level budget exhaustion is
    flagged on the level, never silently truncated."""
    if vmax < 2:
        raise ValueError("vmax must be >= 2")
    t0 = time.monotonic()
    levels = {}
    for V in range(vmin, vmax + 1):
        remaining = None
        if max_seconds is not None:
            remaining = max(0.0, max_seconds - (time.monotonic() - t0))
        levels[V] = census_level(V, remaining)
    return Census(levels)
