"""ASCII and SVG renderers for diagrams, tilings, and page sequences."""

from __future__ import annotations

from typing import Optional

from .diagram import GridDiagram, validate
from .tiling import KnotMarks, RectTiling, pages, validate_tiling


def render_diagram_ascii(d: GridDiagram) -> str:
    """Grid picture, row n-1 on top, '+' vertices, axis-parallel edges."""
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    n = d.n
    w, h = 2 * n - 1, 2 * n - 1
    grid = [[" "] * w for _ in range(h)]
    occ = d.occurrence_table()

    def put(x: int, y: int, ch: str) -> None:
        grid[2 * (n - 1 - y)][2 * x] = ch

    for c, (a, b) in enumerate(d.cols):
        for y in range(a, b):
            gy = 2 * (n - 1 - y)
            grid[gy - 1][2 * c] = "|"
            if y > a:
                grid[gy][2 * c] = "|"
        put(c, a, "+")
        put(c, b, "+")
    for r in range(n):
        c1, c2 = sorted(occ[r])
        gy = 2 * (n - 1 - r)
        for x in range(2 * c1 + 1, 2 * c2):
            grid[gy][x] = "|" if grid[gy][x] == "|" else "-"
    for c, (a, b) in enumerate(d.cols):  # vertices win over edge chars
        put(c, a, "+")
        put(c, b, "+")
    return "\n".join("".join(row).rstrip() for row in grid) + "\n"


def render_tiling_ascii(t: RectTiling) -> str:
    """Header plus one line per rectangle and a per-interval occupancy strip."""
    err = validate_tiling(t)
    if err is not None:
        raise ValueError(err)
    out = [f"tiling V={t.V} S={t.S} rects={len(t.rects)}"]
    for l, r, b, d in t.sorted_rects():
        out.append(f"  rect x:{l}->{r} theta:{b}->{d}")
    for pg in pages(t):
        if pg.kind != "regular":
            continue
        strip = ["."] * t.V
        for l, r, _, _ in pg.chords:
            x = l
            while x != r:
                strip[x] = "="
                x = (x + 1) % t.V
            strip[l] = strip[r] = "*"
        out.append(f"  t={pg.index:2d} |{''.join(strip)}|")
    return "\n".join(out) + "\n"


def render_pages_ascii(t: RectTiling, marks: Optional[KnotMarks] = None) -> str:
    """One block per page; saddle pages are flagged 'saddle n'."""
    out = []
    for pg in pages(t, marks):
        if pg.kind == "saddle":
            dying = " ".join(f"({l},{r})" for l, r, _, _ in pg.dying)
            born = " ".join(f"({l},{r})" for l, r, _, _ in pg.born)
            out.append(f"saddle {pg.index}: {dying} -> {born}")
        else:
            chords = " ".join(f"({l},{r})" for l, r, _, _ in pg.chords)
            mk = ""
            if pg.marks:
                mk = "  marks " + " ".join(f"{s}:{c}" for s, c in pg.marks)
            out.append(f"page {pg.index}: {chords}{mk}")
    return "\n".join(out) + "\n"


def render_diagram_svg(d: GridDiagram, cell: int = 24) -> str:
    err = validate(d)
    if err is not None:
        raise ValueError(err)
    n = d.n
    pad = cell
    size = pad * 2 + cell * (n - 1)

    def x(c: int) -> int:
        return pad + cell * c

    def y(r: int) -> int:
        return pad + cell * (n - 1 - r)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    occ = d.occurrence_table()
    for r in range(n):
        c1, c2 = sorted(occ[r])
        parts.append(
            f'<line x1="{x(c1)}" y1="{y(r)}" x2="{x(c2)}" y2="{y(r)}" '
            f'stroke="black" stroke-width="2"/>'
        )
    for c, (a, b) in enumerate(d.cols):
        parts.append(
            f'<line x1="{x(c)}" y1="{y(a)}" x2="{x(c)}" y2="{y(b)}" '
            f'stroke="black" stroke-width="4"/>'
        )
    for c, (a, b) in enumerate(d.cols):
        for r in (a, b):
            parts.append(f'<circle cx="{x(c)}" cy="{y(r)}" r="3" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render_tiling_svg(t: RectTiling, cell: int = 24) -> str:
    err = validate_tiling(t)
    if err is not None:
        raise ValueError(err)
    V, S = t.V, t.S
    pad = cell
    wsz = pad * 2 + cell * V
    hsz = pad * 2 + cell * S
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{wsz}" height="{hsz}" '
        f'viewBox="0 0 {wsz} {hsz}">'
    ]
    colors = ["#88aadd", "#ddaa88", "#aadd88", "#dd88aa", "#aaddcc", "#ccaadd"]
    for i, (l, r, b, d) in enumerate(t.sorted_rects()):
        width = (r - l) % V
        life = (d - b) % S
        color = colors[i % len(colors)]
        # split wrapped spans into up to four axis-aligned pieces
        xs = [(l, min(width, V - l))]
        if l + width > V:
            xs.append((0, l + width - V))
        ys = [(b, min(life, S - b))]
        if b + life > S:
            ys.append((0, b + life - S))
        for x0, xw in xs:
            for y0, yh in ys:
                parts.append(
                    f'<rect x="{pad + cell * x0}" y="{pad + cell * y0}" '
                    f'width="{cell * xw}" height="{cell * yh}" fill="{color}" '
                    f'fill-opacity="0.45" stroke="black"/>'
                )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
