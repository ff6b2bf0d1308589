"""Text formats: .grd diagrams, .tor tilings, knot-mark files.

Parsing is purely syntactic; semantic checks stay with validate() so that a
well-formed file with a bad diagram reports a validation error, not a parse
error.  serialize(parse(text)) is byte-identical for canonically written
files, and parse(serialize(value)) returns an equal value.
"""

from __future__ import annotations

from .diagram import GridDiagram
from .tiling import KnotMarks, RectTiling


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _int_fields(text: str, line_no: int, expect: int) -> list[int]:
    parts = text.split()
    if len(parts) != expect:
        raise ParseError(line_no, f"expected {expect} fields, got {len(parts)}")
    out = []
    for col, p in enumerate(parts):
        try:
            out.append(int(p))
        except ValueError:
            raise ParseError(line_no, f"field {col + 1}: {p!r} is not an integer")
    return out


def parse_grd(text: str) -> GridDiagram:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError(1, "empty input; expected a complexity header")
    (n,) = _int_fields(lines[0], 1, 1)
    if n < 1:
        raise ParseError(1, f"complexity {n} must be positive")
    if len(lines) != n + 1:
        raise ParseError(
            len(lines), f"expected {n} column lines after the header, got {len(lines) - 1}"
        )
    cols = []
    for i in range(n):
        a, b = _int_fields(lines[1 + i], 2 + i, 2)
        cols.append(tuple(sorted((a, b))))
    return GridDiagram(tuple(cols))


def serialize_grd(d: GridDiagram) -> str:
    out = [str(d.n)]
    for a, b in d.cols:
        out.append(f"{a} {b}")
    return "\n".join(out) + "\n"


def parse_tor(text: str) -> RectTiling:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError(1, "empty input; expected a 'V S' header")
    V, S = _int_fields(lines[0], 1, 2)
    if V < 1 or S < 1:
        raise ParseError(1, f"V={V}, S={S} must be positive")
    rects = []
    for i, ln in enumerate(lines[1:], start=2):
        l, r, b, dth = _int_fields(ln, i, 4)
        rects.append((l, r, b, dth))
    return RectTiling(V, S, frozenset(rects))


def serialize_tor(t: RectTiling) -> str:
    out = [f"{t.V} {t.S}"]
    for l, r, b, d in t.sorted_rects():
        out.append(f"{l} {r} {b} {d}")
    return "\n".join(out) + "\n"


def parse_marks(text: str) -> KnotMarks:
    line = text.strip()
    if not line.startswith("marks:"):
        raise ParseError(1, "expected a line starting with 'marks:'")
    entries = []
    for tok in line[len("marks:"):].split():
        if ":" not in tok:
            raise ParseError(1, f"bad mark {tok!r}, expected seg:count")
        seg_s, count_s = tok.split(":", 1)
        try:
            seg, count = int(seg_s), int(count_s)
        except ValueError:
            raise ParseError(1, f"bad mark {tok!r}, expected integers")
        if count < 1:
            raise ParseError(1, f"mark count must be >= 1 in {tok!r}")
        entries.append((seg, count))
    return KnotMarks(tuple(sorted(entries)))


def serialize_marks(m: KnotMarks) -> str:
    return "marks: " + " ".join(f"{seg}:{count}" for seg, count in sorted(m.marks)) + "\n"
