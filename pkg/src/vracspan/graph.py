"""Unit disk graph model, random instances, and graph-level oracles.

A graph is an immutable embedded node set: positions, their coordinate
triples, the communication radius and the anchors.  Adjacency is implicit
(closed disk of radius r) and is materialized lazily as CSR arrays through
the kernel backend.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Optional, Union

import numpy as np

from . import _kernels as kernels
from .errors import NotEquilateral, RegionOutsideTriangle, UnknownNode, VariantMismatch
from .geometry import (
    EPS_GEO,
    AnchorConfig,
    CoordVariant,
    Point2D,
    VracCoord,
    point_in_triangle,
    vrac_coords,
)

NodeId = int


@dataclass(frozen=True)
class Rect:
    """Axis-aligned deployment region."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not (self.x0 < self.x1 and self.y0 < self.y1):
            raise ValueError("degenerate region")

    def corners(self) -> tuple[Point2D, ...]:
        return (
            Point2D(self.x0, self.y0),
            Point2D(self.x1, self.y0),
            Point2D(self.x1, self.y1),
            Point2D(self.x0, self.y1),
        )


UNIT_SQUARE = Rect(0.0, 0.0, 1.0, 1.0)


class EdgeKind(Enum):
    REAL = "real"
    VIRTUAL = "virtual"


class Metric(Enum):
    EUCLIDEAN_LENGTH = "euclidean"
    HOP_COUNT = "hops"


@dataclass(frozen=True)
class OverlayEdge:
    """A selected directed edge; virtual edges carry their relay path."""

    source: NodeId
    target: NodeId
    order: int
    kind: EdgeKind
    path: tuple[NodeId, ...]

    def __post_init__(self):
        if self.kind is EdgeKind.REAL and self.path != (self.source, self.target):
            raise ValueError("real edge path must be (source, target)")
        if self.kind is EdgeKind.VIRTUAL and len(self.path) < 3:
            raise ValueError("virtual edge path needs at least one relay")


@dataclass(frozen=True, eq=False)
class DirectedEdgeSet:
    """An immutable set of selected edges with per-(source, order) lookup."""

    edges: tuple[OverlayEdge, ...]

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    @cached_property
    def by_source_order(self) -> dict[tuple[NodeId, int], OverlayEdge]:
        out: dict[tuple[NodeId, int], OverlayEdge] = {}
        for e in self.edges:
            key = (e.source, e.order)
            if key in out:
                raise ValueError(f"duplicate out-edge for node {e.source} order {e.order}")
            out[key] = e
        return out

    def out_target(self, u: NodeId, k: int) -> Optional[NodeId]:
        e = self.by_source_order.get((u, k))
        return None if e is None else e.target

    def out_degree(self, u: NodeId) -> int:
        return sum(1 for k in (1, 2, 3) if (u, k) in self.by_source_order)

    @cached_property
    def undirected(self) -> dict[NodeId, tuple[NodeId, ...]]:
        """Neighbor lists ignoring orientation, sorted, no duplicates."""
        adj: dict[NodeId, set[NodeId]] = {}
        for e in self.edges:
            adj.setdefault(e.source, set()).add(e.target)
            adj.setdefault(e.target, set()).add(e.source)
        return {u: tuple(sorted(vs)) for u, vs in adj.items()}

    def segment_arrays(self, positions: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(m, 4) straight segments plus (m, 2) endpoint ids, for crossing tests."""
        m = len(self.edges)
        segs = np.empty((m, 4), dtype=np.float64)
        ids = np.empty((m, 2), dtype=np.int32)
        for i, e in enumerate(self.edges):
            segs[i, :2] = positions[e.source]
            segs[i, 2:] = positions[e.target]
            ids[i] = (e.source, e.target)
        return segs, ids


@dataclass(frozen=True, eq=False)
class UnitDiskGraph:
    """Embedded node set with implicit closed-disk adjacency."""

    anchors: AnchorConfig
    radius: float
    positions: np.ndarray  # (n, 2) float64
    coords: np.ndarray  # (n, 3) float64
    variant: CoordVariant
    seed: Optional[int] = None

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def nodes(self) -> list[tuple[NodeId, Point2D, VracCoord]]:
        return [(i, self.point(i), self.coord(i)) for i in range(self.n)]

    def point(self, u: NodeId) -> Point2D:
        self.check_node(u)
        return Point2D(float(self.positions[u, 0]), float(self.positions[u, 1]))

    def coord(self, u: NodeId) -> VracCoord:
        self.check_node(u)
        c = self.coords[u]
        return VracCoord(float(c[0]), float(c[1]), float(c[2]), self.variant)

    def check_node(self, u: NodeId) -> None:
        if not (isinstance(u, (int, np.integer)) and 0 <= u < self.n):
            raise UnknownNode(u)

    def dist(self, u: NodeId, v: NodeId) -> float:
        d = self.positions[u] - self.positions[v]
        return float(math.hypot(d[0], d[1]))

    @cached_property
    def adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR (indptr, indices) of the closed-disk graph."""
        return kernels.disk_adjacency(self.positions, self.radius, EPS_GEO)

    @cached_property
    def edge_count(self) -> int:
        return int(self.adjacency[0][-1]) // 2

    def verify_coords(self, eps: float = EPS_GEO) -> bool:
        """Coordinates recomputable from the positions within eps."""
        fresh = vrac_coords(self.positions, self.anchors, self.variant)
        return bool(np.all(np.abs(fresh - self.coords) <= eps)) if self.n else True


def generate_random_udg(
    n: int,
    r: float,
    region: Rect,
    anchors: AnchorConfig,
    seed: int,
    variant: CoordVariant = CoordVariant.TRIANGLE_HEIGHT,
) -> UnitDiskGraph:
    """n i.i.d. uniform points in ``region``, reproducible from ``seed``.

    The generator is numpy's PCG64; identical (seed, n, region) always
    yields the identical node list, independent of platform.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    for corner in region.corners():
        if not point_in_triangle(corner, anchors, eps=-EPS_GEO):
            raise RegionOutsideTriangle(
                f"region corner ({corner.x}, {corner.y}) not strictly inside the anchor triangle"
            )
    rng = np.random.Generator(np.random.PCG64(seed))
    pts = rng.uniform((region.x0, region.y0), (region.x1, region.y1), size=(n, 2))
    coords = vrac_coords(pts, anchors, variant)
    return UnitDiskGraph(
        anchors=anchors,
        radius=float(r),
        positions=pts,
        coords=coords,
        variant=variant,
        seed=seed,
    )


def neighbors(g: UnitDiskGraph, u: NodeId) -> list[NodeId]:
    """All v != u with |uv| <= r, ascending."""
    g.check_node(u)
    indptr, indices = g.adjacency
    return [int(v) for v in indices[indptr[u] : indptr[u + 1]]]


# ---------------------------------------------------------------------------
# shortest paths
# ---------------------------------------------------------------------------


def _csr_of_udg(g: UnitDiskGraph, metric: Metric) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    indptr, indices = g.adjacency
    if metric is Metric.HOP_COUNT:
        w = np.ones(len(indices), dtype=np.float64)
    else:
        rows = np.repeat(np.arange(g.n), np.diff(indptr))
        d = g.positions[rows] - g.positions[indices]
        w = np.hypot(d[:, 0], d[:, 1])
    return indptr, indices, w


def _csr_of_edges(
    edges: DirectedEdgeSet, n: int, positions: np.ndarray, metric: Metric
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    src: list[int] = []
    dst: list[int] = []
    wts: list[float] = []
    for e in edges:
        if metric is Metric.HOP_COUNT:
            w = 1.0
        else:
            d = positions[e.source] - positions[e.target]
            w = float(math.hypot(d[0], d[1]))
        src.extend((e.source, e.target))
        dst.extend((e.target, e.source))
        wts.extend((w, w))
    order = np.lexsort((np.array(dst, dtype=np.int64), np.array(src, dtype=np.int64)))
    srt_src = np.array(src, dtype=np.int64)[order]
    indices = np.array(dst, dtype=np.int32)[order]
    weights = np.array(wts, dtype=np.float64)[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.add.at(indptr[1:], srt_src, 1)
    np.cumsum(indptr, out=indptr)
    return indptr, indices, weights


def shortest_path_length(
    edges: Union[UnitDiskGraph, DirectedEdgeSet, "object"],
    s: NodeId,
    t: NodeId,
    metric: Metric = Metric.EUCLIDEAN_LENGTH,
    graph: Optional[UnitDiskGraph] = None,
) -> float:
    """Exact shortest-path value between s and t; ``inf`` when unreachable.

    Accepts a unit disk graph (implicit adjacency), a planar overlay, or a
    bare edge set plus the graph it refers to.  Edge sets are used
    undirected; virtual edges weigh their straight-line length under the
    Euclidean metric.
    """
    base, edge_set = _resolve(edges, graph)
    base.check_node(s)
    base.check_node(t)
    if s == t:
        return 0.0
    if edge_set is None:
        indptr, indices, w = _csr_of_udg(base, metric)
    else:
        indptr, indices, w = _csr_of_edges(edge_set, base.n, base.positions, metric)
    dist = kernels.dijkstra(indptr, indices, w, s)
    return float(dist[t])


def _resolve(edges, graph: Optional[UnitDiskGraph]):
    """Split any of the accepted graph-ish arguments into (graph, edge set)."""
    if isinstance(edges, UnitDiskGraph):
        return edges, None
    if isinstance(edges, DirectedEdgeSet):
        if graph is None:
            raise ValueError("a DirectedEdgeSet needs the graph it belongs to")
        return graph, edges
    base = getattr(edges, "base", None)
    eset = getattr(edges, "edges", None)
    if isinstance(base, UnitDiskGraph) and isinstance(eset, DirectedEdgeSet):
        return base, eset
    raise TypeError(f"unsupported edge container: {type(edges)!r}")


# ---------------------------------------------------------------------------
# planarity and the order-theoretic reference construction
# ---------------------------------------------------------------------------


def check_planarity(
    g: UnitDiskGraph, edges: Union[DirectedEdgeSet, "object"]
) -> list[tuple[OverlayEdge, OverlayEdge]]:
    """All pairs of edges whose straight segments properly cross.

    Virtual edges are drawn as straight segments.  An empty list means the
    embedding is plane.
    """
    edge_set = edges if isinstance(edges, DirectedEdgeSet) else edges.edges
    for e in edge_set:
        g.check_node(e.source)
        g.check_node(e.target)
    if len(edge_set) < 2:
        return []
    segs, ids = edge_set.segment_arrays(g.positions)
    pairs = kernels.crossing_pairs(segs, ids, EPS_GEO)
    return [(edge_set.edges[int(i)], edge_set.edges[int(j)]) for i, j in pairs]


def half_theta6(g: UnitDiskGraph) -> DirectedEdgeSet:
    """The Schnyder graph of the three orders: per node and order, an edge
    to the global minimum of the greedy region, with no radius restriction.

    Equals the half-theta-6 construction under normalized height
    coordinates; the convention under test is strict orders with id
    tie-break.
    """
    if g.variant is not CoordVariant.TRIANGLE_HEIGHT:
        raise VariantMismatch("the reference construction needs height coordinates")
    if not g.anchors.equilateral:
        raise NotEquilateral("the reference construction needs equilateral anchors")
    sel = kernels.half_theta6_select(g.coords, EPS_GEO)
    out = []
    for x in range(g.n):
        for k in (1, 2, 3):
            t = int(sel[x, k - 1])
            if t >= 0:
                out.append(OverlayEdge(x, t, k, EdgeKind.REAL, (x, t)))
    return DirectedEdgeSet(tuple(out))
