"""SVG arc diagrams of linear layouts."""

from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .graph import Graph, positions
from .layouts import AnyLayout, SimultaneousLayout, verify

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
)


def _arcs(pages, pos, spacing, margin, baseline, above, palette, cls):
    out = []
    for idx, page in enumerate(pages):
        color = palette[idx % len(palette)]
        for u, v in page:
            a, b = sorted((pos[u], pos[v]))
            x1, x2 = margin + a * spacing, margin + b * spacing
            r = (x2 - x1) / 2
            sweep = 1 if above else 0
            out.append(
                f'<path class="{cls}" data-page="{idx}" d="M {x1:.1f} {baseline:.1f} '
                f'A {r:.1f} {r:.1f} 0 0 {sweep} {x2:.1f} {baseline:.1f}" '
                f'fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
    return out


def render_arc_diagram(
    layout: AnyLayout,
    graph: Optional[Graph] = None,
    *,
    spacing: float = 40.0,
    labels: bool = True,
    palette: Sequence[str] = PALETTE,
    force: bool = False,
) -> str:
    """Draw vertices on a line in layout order and each edge as a semicircle.

    Stack pages go above the line; the queue pages of a simultaneous layout
    go below it. Each page has its own color. Invalid layouts are refused
    unless ``force`` is set.
    """
    if not force:
        verdict = verify(layout, graph)
        if not verdict:
            raise ValueError(f"refusing to render an invalid layout: {verdict.message}")
    order = layout.order
    pos = positions(order)
    n = len(order)
    margin = 20.0
    if isinstance(layout, SimultaneousLayout):
        upper, lower = layout.stack_pages, layout.queue_pages
    else:
        upper, lower = layout.pages, ()

    def span(pages):
        return max((abs(pos[u] - pos[v]) for page in pages for u, v in page), default=0) * spacing / 2

    top, bottom = span(upper), span(lower)
    width = 2 * margin + max(n - 1, 0) * spacing
    baseline = margin + top
    height = baseline + bottom + margin + (14 if labels else 0)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
        f'<line x1="{margin:.1f}" y1="{baseline:.1f}" x2="{width - margin:.1f}" y2="{baseline:.1f}" '
        f'stroke="#cccccc" stroke-width="1"/>',
    ]
    parts += _arcs(upper, pos, spacing, margin, baseline, True, palette, "arc stack")
    parts += _arcs(lower, pos, spacing, margin, baseline, False, palette, "arc queue")
    for i, v in enumerate(order):
        x = margin + i * spacing
        parts.append(f'<circle class="vertex" cx="{x:.1f}" cy="{baseline:.1f}" r="3.5" fill="#000000"/>')
        if labels:
            parts.append(
                f'<text x="{x:.1f}" y="{baseline + bottom + 16:.1f}" font-size="10" '
                f'text-anchor="middle">{escape(str(v))}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
