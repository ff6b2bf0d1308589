"""Exhaustive monotone-simplification search over diagram classes.

States are canonical keys (diagrams modulo cyclic shifts) by default, since
shifts are zero-cost moves; a strict mode keeps raw diagrams as states for
audits.  All searches are breadth-first with deterministic ordering, so
results are reproducible run to run.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .diagram import (
    CanonicalKey,
    GridDiagram,
    SQUARE_KEY,
    canonical_cols,
    canonical_key,
    components,
    validate,
)
from .moves import (
    DESTAB,
    EXCH_COLS,
    EXCH_ROWS,
    FLYPE,
    SHIFT_COLS,
    SHIFT_ROWS,
    MoveDescriptor,
    apply_move,
    enumerate_flypes,
    enumerate_moves,
)
from .satellite import SatelliteWitness, detect_satellite

MONOTONE_KINDS = frozenset(
    {EXCH_COLS, EXCH_ROWS, DESTAB, SHIFT_COLS, SHIFT_ROWS, FLYPE}
)
DEFAULT_MOVESET = frozenset({EXCH_COLS, EXCH_ROWS, DESTAB, SHIFT_COLS, SHIFT_ROWS})


@dataclass
class Budget:
    max_states: Optional[int] = None
    max_seconds: Optional[float] = None

    def exhausted(self, states: int, t0: float) -> bool:
        if self.max_states is not None and states > self.max_states:
            return True
        if self.max_seconds is not None and time.monotonic() - t0 > self.max_seconds:
            return True
        return False


@dataclass
class ClosureResult:
    seed: CanonicalKey
    moveset: frozenset
    states: set
    parents: dict = field(default_factory=dict)  # state -> (parent state, move)
    complete: bool = True
    stats: dict = field(default_factory=dict)

    def level_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for k in self.states:
            counts[k.n] = counts.get(k.n, 0) + 1
        return counts


def _check_moveset(moveset: Iterable[str]) -> frozenset:
    ms = frozenset(moveset)
    bad = ms - MONOTONE_KINDS
    if bad:
        raise ValueError(f"moves {sorted(bad)} not allowed in monotone search")
    if not ms:
        raise ValueError("empty moveset")
    return ms


def _neighbors_canonical(d: GridDiagram, moveset: frozenset) -> list[tuple[MoveDescriptor, GridDiagram]]:
    out = []
    for mv in enumerate_moves(d, moveset - {FLYPE, SHIFT_COLS, SHIFT_ROWS}, max_delta=0):
        out.append((mv, apply_move(d, mv)))
    if FLYPE in moveset:
        out.extend((mv, res) for mv, res, _ in enumerate_flypes(d, 0))
    return out


def _neighbors_strict(d: GridDiagram, moveset: frozenset) -> list[tuple[MoveDescriptor, GridDiagram]]:
    out = []
    for mv in enumerate_moves(d, moveset - {FLYPE}, max_delta=0):
        out.append((mv, apply_move(d, mv)))
    if FLYPE in moveset:
        out.extend((mv, res) for mv, res, _ in enumerate_flypes(d, 0))
    return out


def monotone_closure(
    d: GridDiagram,
    moveset: Iterable[str] = DEFAULT_MOVESET,
    budget: Optional[Budget] = None,
    shift_quotient: bool = True,
    target: Optional[CanonicalKey] = None,
    stop_at_witness: Optional[int] = None,
) -> ClosureResult:
    """Breadth-first closure under complexity-non-increasing moves.

    With shift_quotient (default) states are canonical keys and shift moves
    are implicit; in strict mode states are raw diagrams re-keyed per state.
    Stops early when `target` is reached or, with stop_at_witness = k, when a
    state admits a satellite witness with companion complexity <= k.
    """
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    ms = _check_moveset(moveset)
    budget = budget or Budget()
    t0 = time.monotonic()

    if shift_quotient:
        seed_key = canonical_key(d)
        seed_diag = GridDiagram(canonical_cols(d))
        states = {seed_key}
        rep = {seed_key: seed_diag}
        parents: dict = {}
        frontier = [seed_key]
        result = ClosureResult(seed_key, ms, states, parents)
        result.stats["peak_frontier"] = 1
        hit = None
        if target == seed_key:
            hit = seed_key
        if hit is None and stop_at_witness is not None:
            if detect_satellite(seed_diag, stop_at_witness, first_only=True):
                hit = seed_key
        while frontier and hit is None:
            if budget.exhausted(len(states), t0):
                result.complete = False
                break
            nxt: list[CanonicalKey] = []
            for k in sorted(frontier):
                cur = rep[k]
                for mv, res in _neighbors_canonical(cur, ms):
                    rk = canonical_key(res)
                    if rk in states:
                        continue
                    states.add(rk)
                    rep[rk] = GridDiagram(canonical_cols(res))
                    parents[rk] = (k, mv)
                    nxt.append(rk)
                    if target is not None and rk == target:
                        hit = rk
                        break
                    if stop_at_witness is not None and detect_satellite(
                        rep[rk], stop_at_witness, first_only=True
                    ):
                        hit = rk
                        break
                if hit is not None:
                    break
            frontier = nxt
            result.stats["peak_frontier"] = max(result.stats["peak_frontier"], len(frontier))
        result.stats["states"] = len(states)
        result.stats["seconds"] = time.monotonic() - t0
        result.stats["hit"] = hit
        result.stats["rep"] = rep
        return result

    # strict mode: states are raw column tuples
    seed_cols = d.cols
    sstates = {seed_cols}
    sparents: dict = {}
    frontier2 = [seed_cols]
    result = ClosureResult(canonical_key(d), ms, sstates, sparents)
    result.stats["peak_frontier"] = 1
    hit2 = None
    if target is not None and canonical_key(d) == target:
        hit2 = seed_cols
    while frontier2 and hit2 is None:
        if budget.exhausted(len(sstates), t0):
            result.complete = False
            break
        nxt2: list = []
        for cols in sorted(frontier2):
            cur = GridDiagram(cols)
            for mv, res in _neighbors_strict(cur, ms):
                rc = res.cols
                if rc in sstates:
                    continue
                sstates.add(rc)
                sparents[rc] = (cols, mv)
                nxt2.append(rc)
                if target is not None and canonical_key(res) == target:
                    hit2 = rc
                    break
            if hit2 is not None:
                break
        frontier2 = nxt2
        result.stats["peak_frontier"] = max(result.stats["peak_frontier"], len(frontier2))
    result.stats["states"] = len(sstates)
    result.stats["seconds"] = time.monotonic() - t0
    result.stats["hit"] = hit2
    return result


@dataclass
class ReachResult:
    verdict: str  # "reached" | "verified-absent" | "inconclusive"
    path: Optional[list[MoveDescriptor]] = None
    closure_size: int = 0


def can_reach(
    d: GridDiagram,
    target: CanonicalKey,
    moveset: Iterable[str] = DEFAULT_MOVESET,
    budget: Optional[Budget] = None,
) -> ReachResult:
    """Decide whether some monotone move sequence carries d onto the target class.

    A negative verdict is only issued for a fully enumerated closure.
    """
    res = monotone_closure(d, moveset, budget, target=target)
    hit = res.stats.get("hit")
    if hit is not None:
        path = []
        k = hit
        while k in res.parents:
            k, mv = res.parents[k]
            path.append(mv)
        path.reverse()
        return ReachResult("reached", path, len(res.states))
    if not res.complete:
        return ReachResult("inconclusive", None, len(res.states))
    return ReachResult("verified-absent", None, len(res.states))


def detect_torus_by_simplification(
    d: GridDiagram,
    moveset: Iterable[str] = DEFAULT_MOVESET,
    max_companion: int = 4,
    budget: Optional[Budget] = None,
) -> Optional[tuple[list[MoveDescriptor], SatelliteWitness]]:
    """First monotone descendant (BFS order) that shows a satellite structure.

    Returns (move path, witness) or None; raises BudgetExceeded-style verdict
    via ValueError only on invalid input.  Budget exhaustion returns None and
    can be distinguished by running monotone_closure directly.
    """
    res = monotone_closure(
        d, moveset, budget, stop_at_witness=max_companion
    )
    hit = res.stats.get("hit")
    if hit is None:
        return None
    path = []
    k = hit
    while k in res.parents:
        k, mv = res.parents[k]
        path.append(mv)
    path.reverse()
    rep = res.stats["rep"][hit]
    witness = detect_satellite(rep, max_companion, first_only=True)[0]
    return path, witness


def is_monotonically_trivializable(
    d: GridDiagram,
    moveset: Iterable[str] = DEFAULT_MOVESET,
    budget: Optional[Budget] = None,
) -> bool:
    """True iff the square class lies in the monotone closure.

    For single-component diagrams under exchanges/shifts/destabilization this
    is unknot recognition (Dynnikov's monotone simplification theorem).
    """
    if components(d).count != 1:
        raise ValueError("trivializability test needs a single-component diagram")
    res = can_reach(d, SQUARE_KEY, moveset, budget)
    if res.verdict == "inconclusive":
        raise RuntimeError("budget exhausted before closure completed")
    return res.verdict == "reached"
