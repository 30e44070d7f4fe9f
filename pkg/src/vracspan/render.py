"""Deterministic SVG rendering of graphs, overlays and routes.

Output bytes depend only on the inputs: fixed-precision coordinates, no
timestamps, stable element order.  Real overlay edges are solid dark
strokes, virtual edges are green with their relay path dashed, an optional
route is highlighted on top.
"""

from __future__ import annotations

from typing import Optional

from .graph import EdgeKind, UnitDiskGraph
from .planarize import PlanarOverlay
from .routing import RouteTrace


def _fmt(v: float) -> str:
    return f"{v:.6f}"


def render_svg(
    g: UnitDiskGraph,
    overlay: Optional[PlanarOverlay] = None,
    trace: Optional[RouteTrace] = None,
    path=None,
) -> str:
    """Render to SVG text; also written to ``path`` when given."""
    if g.n:
        xmin = float(g.positions[:, 0].min())
        xmax = float(g.positions[:, 0].max())
        ymin = float(g.positions[:, 1].min())
        ymax = float(g.positions[:, 1].max())
    else:
        xmin = ymin = 0.0
        xmax = ymax = 1.0
    extent = max(xmax - xmin, ymax - ymin, 1e-6)
    pad = 0.05 * extent
    sw = extent / 400.0

    def X(x: float) -> str:
        return _fmt(x)

    def Y(y: float) -> str:
        # svg y axis points down
        return _fmt(ymin + ymax - y)

    def line(u: int, v: int, cls: str, style: str) -> str:
        x1, y1 = g.positions[u]
        x2, y2 = g.positions[v]
        return (
            f'<line class="{cls}" x1="{X(x1)}" y1="{Y(y1)}" '
            f'x2="{X(x2)}" y2="{Y(y2)}" {style}/>'
        )

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" '
        f'viewBox="{_fmt(xmin - pad)} {_fmt(ymin - pad)} '
        f'{_fmt(xmax - xmin + 2 * pad)} {_fmt(ymax - ymin + 2 * pad)}">',
    ]
    if overlay is None:
        # bare graph: show the radio links
        indptr, indices = g.adjacency
        for u in range(g.n):
            for v in indices[indptr[u] : indptr[u + 1]]:
                if u < v:
                    parts.append(
                        line(u, int(v), "udg-edge", f'stroke="#bbbbbb" stroke-width="{_fmt(sw)}"')
                    )
    else:
        for e in overlay.edges:
            if e.kind is EdgeKind.VIRTUAL:
                for a, b in zip(e.path, e.path[1:]):
                    parts.append(
                        line(
                            a,
                            b,
                            "virtual-path",
                            f'stroke="#2a9d2a" stroke-width="{_fmt(sw)}" '
                            f'stroke-dasharray="{_fmt(3 * sw)} {_fmt(3 * sw)}"',
                        )
                    )
                parts.append(
                    line(e.source, e.target, "virtual-edge", f'stroke="#2a9d2a" stroke-width="{_fmt(1.6 * sw)}"')
                )
            else:
                parts.append(
                    line(e.source, e.target, "real-edge", f'stroke="#222222" stroke-width="{_fmt(1.2 * sw)}"')
                )
    if trace is not None and len(trace.hops) > 1:
        pts = " ".join(
            f"{X(g.positions[u][0])},{Y(g.positions[u][1])}" for u, _ in trace.hops
        )
        parts.append(
            f'<polyline class="route" points="{pts}" fill="none" '
            f'stroke="#d62828" stroke-width="{_fmt(2 * sw)}" stroke-opacity="0.8"/>'
        )
    for u in range(g.n):
        x, y = g.positions[u]
        parts.append(
            f'<circle class="node" cx="{X(x)}" cy="{Y(y)}" r="{_fmt(1.8 * sw)}" fill="#1d3557"/>'
        )
    if trace is not None and trace.hops:
        for u, color in ((trace.hops[0][0], "#f77f00"), (trace.hops[-1][0], "#d62828")):
            x, y = g.positions[u]
            parts.append(
                f'<circle class="endpoint" cx="{X(x)}" cy="{Y(y)}" r="{_fmt(3 * sw)}" '
                f'fill="none" stroke="{color}" stroke-width="{_fmt(sw)}"/>'
            )
    parts.append("</svg>")
    text = "\n".join(parts) + "\n"
    if path is not None:
        try:
            with open(path, "w", newline="") as f:
                f.write(text)
        except OSError as exc:
            raise OSError(f"cannot write SVG to {path}: {exc}") from exc
    return text
