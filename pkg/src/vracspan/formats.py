"""Line-oriented text formats for graphs and edge sets.

Graph file: one header line

    n r ax1 ay1 ax2 ay2 ax3 ay3 variant seed

followed by n lines ``id x y`` (ids 0..n-1, any order).  ``variant`` is
``height`` or ``euclidean``; ``seed`` is an integer or ``-``.  Coordinate
triples are recomputed from the positions on load.

Edge-set file: one line per edge

    from to order kind path...

with ``kind`` in {real, virtual} and ``path`` the underlying node ids
(``from ... to``).  Floats are written with full precision so files round
trip exactly.
"""

from __future__ import annotations

import numpy as np

from .errors import PointOutsideTriangle
from .geometry import AnchorConfig, CoordVariant, Point2D, point_in_triangle, vrac_coords
from .graph import DirectedEdgeSet, EdgeKind, OverlayEdge, UnitDiskGraph


def save_graph(g: UnitDiskGraph, path) -> None:
    a = g.anchors
    seed = "-" if g.seed is None else str(g.seed)
    lines = [
        f"{g.n} {g.radius!r} {a.a1.x!r} {a.a1.y!r} {a.a2.x!r} {a.a2.y!r} "
        f"{a.a3.x!r} {a.a3.y!r} {g.variant.value} {seed}"
    ]
    for i in range(g.n):
        lines.append(f"{i} {g.positions[i, 0]!r} {g.positions[i, 1]!r}")
    _write_lines(path, lines)


def load_graph(path) -> UnitDiskGraph:
    lines = _read_lines(path)
    if not lines:
        raise ValueError(f"{path}: empty graph file")
    head = lines[0].split()
    if len(head) != 10:
        raise ValueError(f"{path}: malformed header {lines[0]!r}")
    n = int(head[0])
    r = float(head[1])
    anchors = AnchorConfig.from_points(
        Point2D(float(head[2]), float(head[3])),
        Point2D(float(head[4]), float(head[5])),
        Point2D(float(head[6]), float(head[7])),
    )
    variant = CoordVariant(head[8])
    seed = None if head[9] == "-" else int(head[9])
    if len(lines) - 1 != n:
        raise ValueError(f"{path}: expected {n} node lines, found {len(lines) - 1}")
    positions = np.zeros((n, 2), dtype=np.float64)
    seen = np.zeros(n, dtype=bool)
    for ln in lines[1:]:
        tok = ln.split()
        i = int(tok[0])
        if not (0 <= i < n) or seen[i]:
            raise ValueError(f"{path}: bad or duplicate node id {i}")
        seen[i] = True
        positions[i] = (float(tok[1]), float(tok[2]))
        if not point_in_triangle(Point2D(*positions[i]), anchors):
            raise PointOutsideTriangle(f"{path}: node {i} outside the anchor triangle")
    coords = vrac_coords(positions, anchors, variant)
    return UnitDiskGraph(
        anchors=anchors, radius=r, positions=positions, coords=coords,
        variant=variant, seed=seed,
    )


def save_edges(edges: DirectedEdgeSet, path) -> None:
    lines = []
    for e in edges:
        path_str = " ".join(str(v) for v in e.path)
        lines.append(f"{e.source} {e.target} {e.order} {e.kind.value} {path_str}")
    _write_lines(path, lines)


def load_edges(path) -> DirectedEdgeSet:
    out = []
    for ln in _read_lines(path):
        tok = ln.split()
        if len(tok) < 6:
            raise ValueError(f"{path}: malformed edge line {ln!r}")
        out.append(
            OverlayEdge(
                source=int(tok[0]),
                target=int(tok[1]),
                order=int(tok[2]),
                kind=EdgeKind(tok[3]),
                path=tuple(int(v) for v in tok[4:]),
            )
        )
    return DirectedEdgeSet(tuple(out))


def _write_lines(path, lines) -> None:
    try:
        with open(path, "w", newline="") as f:
            f.write("\n".join(lines) + ("\n" if lines else ""))
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _read_lines(path) -> list[str]:
    try:
        with open(path) as f:
            return [ln.strip() for ln in f if ln.strip()]
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
