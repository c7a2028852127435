"""Chart rendering: a plain-text grid for terminals and a
self-contained SVG whose dots carry machine-readable attributes."""

from __future__ import annotations

from .extresolver import ExtChart


def render_ascii(chart: ExtChart, stem_max: int = 17, s_max: int = 8) -> str:
    """Fixed-width chart: one column per stem, class count per cell,
    dots for single classes.  Fits in 120 columns for stems up to 17."""
    col_w = 4
    lines = []
    for s in range(s_max, -1, -1):
        cells = []
        for stem in range(stem_max + 1):
            n = sum(1 for c in chart.classes if c.stem == stem and c.s == s)
            if n == 0:
                cells.append(".".rjust(2))
            elif n == 1:
                cells.append("o".rjust(2))
            else:
                cells.append(str(n).rjust(2))
        lines.append(f"s{s:>2} |" + "".join(c.ljust(col_w) for c in cells))
    lines.append("    +" + "-" * ((stem_max + 1) * col_w))
    lines.append("     " + "".join(str(n).rjust(2).ljust(col_w) for n in range(stem_max + 1)))
    lines.append("     (stem)")
    return "\n".join(lines)


def render_svg(chart: ExtChart, stem_max: int = 17, s_max: int = 8) -> str:
    """Standalone SVG.  Every class is a <circle> with data-name,
    data-s and data-stem attributes; h_i edges are <line> elements with
    data-op, so the picture can be parsed back without the chart."""
    cell = 36
    pad = 40
    width = pad * 2 + (stem_max + 1) * cell
    height = pad * 2 + (s_max + 1) * cell

    def x_of(stem: int, offset: int, count: int) -> float:
        base = pad + stem * cell + cell / 2
        if count == 1:
            return base
        return base + (offset - (count - 1) / 2) * 10

    def y_of(s: int) -> float:
        return height - pad - s * cell - cell / 2

    visible = [c for c in chart.classes if c.stem <= stem_max and c.s <= s_max]
    cells: dict[tuple[int, int], list] = {}
    for c in visible:
        cells.setdefault((c.stem, c.s), []).append(c)
    pos = {}
    for (stem, s), group in cells.items():
        for i, c in enumerate(group):
            pos[c.name] = (x_of(stem, i, len(group)), y_of(s))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for stem in range(stem_max + 1):
        x = pad + stem * cell + cell / 2
        parts.append(
            f'<text x="{x}" y="{height - pad / 3}" font-size="10" '
            f'text-anchor="middle">{stem}</text>'
        )
    for s in range(s_max + 1):
        parts.append(
            f'<text x="{pad / 3}" y="{y_of(s) + 3}" font-size="10" '
            f'text-anchor="middle">{s}</text>'
        )
    for p in chart.products():
        if p.source in pos and p.target in pos:
            x1, y1 = pos[p.source]
            x2, y2 = pos[p.target]
            parts.append(
                f'<line data-op="{p.op}" x1="{x1:.1f}" y1="{y1:.1f}" '
                f'x2="{x2:.1f}" y2="{y2:.1f}" stroke="#888" stroke-width="1"/>'
            )
    for c in visible:
        x, y = pos[c.name]
        parts.append(
            f'<circle data-name="{c.name}" data-s="{c.s}" data-stem="{c.stem}" '
            f'cx="{x:.1f}" cy="{y:.1f}" r="3.2" fill="black"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
