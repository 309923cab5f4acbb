"""Two-column SVG drawings of Kauffman diagrams and pre-matchings.

Left column: v_1..v_s bottom-up. Right column: v_{s+1}..v_2s top-down.
White vertices are open circles, black ones filled, mandatory-edge endpoints
squares.
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import List, Optional, Tuple

import svg

from plucker_lab.combinatorics import IndexTuple
from plucker_lab.services.temperley_lieb import (
    ColoredPrematching,
    KauffmanDiagram,
    VertexColor,
    compatible_set,
    prematch,
)

logger = logging.getLogger(__name__)

GAP = 30
MARGIN = 30
LEFT_X = 40
RIGHT_X = 160
WIDTH = 200
RADIUS = 5
STROKE = "black"


def vertex_xy(v: int, s: int) -> Tuple[float, float]:
    if v <= s:
        return LEFT_X, MARGIN + (s - v) * GAP
    return RIGHT_X, MARGIN + (v - s - 1) * GAP


def _height(s: int) -> int:
    return 2 * MARGIN + (s - 1) * GAP + 20


def _edge(a: int, b: int, s: int) -> svg.Element:
    (x1, y1), (x2, y2) = vertex_xy(a, s), vertex_xy(b, s)
    if x1 != x2:
        return svg.Line(x1=x1, y1=y1, x2=x2, y2=y2, stroke=STROKE, stroke_width=1.5)
    bulge = min(abs(y2 - y1) * 0.6, (RIGHT_X - LEFT_X) * 0.45)
    cx = x1 + bulge if x1 == LEFT_X else x1 - bulge
    return svg.Path(
        d=[svg.M(x1, y1), svg.C(cx, y1, cx, y2, x2, y2)],
        fill="none",
        stroke=STROKE,
        stroke_width=1.5,
    )


def _marker(v: int, s: int, color: Optional[VertexColor]) -> svg.Element:
    x, y = vertex_xy(v, s)
    if color is VertexColor.EDGE:
        return svg.Rect(
            x=x - RADIUS, y=y - RADIUS, width=2 * RADIUS, height=2 * RADIUS,
            fill=STROKE, stroke=STROKE,
        )
    fill = STROKE if color is VertexColor.BLACK else "white"
    return svg.Circle(cx=x, cy=y, r=RADIUS, fill=fill, stroke=STROKE, stroke_width=1.5)


def _canvas(s: int, elements: List[svg.Element], title: Optional[str]) -> str:
    if title:
        elements.append(svg.Text(x=10, y=_height(s) - 6, text=title, font_size=10))
    return str(svg.SVG(width=WIDTH, height=_height(s), elements=elements))


def render_diagram(
    diagram: KauffmanDiagram,
    prematching: Optional[ColoredPrematching] = None,
    title: Optional[str] = None,
) -> str:
    s = diagram.s
    if prematching is not None and prematching.s != s:
        raise ValueError(f"pre-matching on s={prematching.s} does not fit a diagram on s={s}")
    elements: List[svg.Element] = [_edge(a, b, s) for a, b in diagram.edges]
    for v in range(1, 2 * s + 1):
        color = prematching.colors[v - 1] if prematching is not None else None
        elements.append(_marker(v, s, color))
    return _canvas(s, elements, title)


def render_prematching(prematching: ColoredPrematching, title: Optional[str] = None) -> str:
    """Only the mandatory edges, with coloured vertices."""
    s = prematching.s
    elements: List[svg.Element] = [_edge(a, b, s) for a, b in prematching.mandatory_edges]
    for v, color in enumerate(prematching.colors, start=1):
        elements.append(_marker(v, s, color))
    return _canvas(s, elements, title)


def diagram_file_name(diagram: KauffmanDiagram, prefix: str = "diagram") -> str:
    edges = "_".join(f"{a}-{b}" for a, b in diagram.edges)
    return f"{prefix}_s{diagram.s}_{edges}.svg"


def _pair_label(a: IndexTuple, b: IndexTuple) -> str:
    return "I" + "-".join(map(str, a.sorted().entries)) + "_J" + "-".join(map(str, b.sorted().entries))


def write_compatible_set(a: IndexTuple, b: IndexTuple, out_dir: Path) -> List[Path]:
    """One file for the pre-matching plus one per diagram of Phi(I, J)."""
    out_dir.mkdir(parents=True, exist_ok=True)
    pm = prematch(a.sorted(), b.sorted())
    label = _pair_label(a, b)
    written = [out_dir / f"prematch_{label}.svg"]
    written[0].write_text(render_prematching(pm, title=f"E{label}"), encoding="utf-8")
    for idx, diagram in enumerate(compatible_set(a, b)):
        path = out_dir / f"phi_{label}_{idx:03d}.svg"
        path.write_text(render_diagram(diagram, pm, title=str(diagram)), encoding="utf-8")
        written.append(path)
    logger.info("wrote %d files to %s", len(written), out_dir)
    return written
