"""Spanner construction over a unit disk graph.

Two constructions are provided:

* the capped selection: per node and order, an edge to the in-range
  minimum of the greedy region, keeping only edges shorter than
  2r/sqrt(5), which is plane on its own;
* the augmented overlay: the uncapped selection where an edge is replaced
  by a virtual edge whenever the region holds a better node that is out of
  range but reachable through the selected neighbor.  Under normalized
  height coordinates one replacement step suffices and every virtual edge
  stands for a two-hop relay path of straight-line length <= 2r/sqrt(3).

Both builders also account for the node identifiers a distributed run
would broadcast (neighborhood discovery excluded).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Union

import numpy as np

from . import _kernels as kernels
from .errors import RecursionGuardTripped
from .geometry import EPS_GEO, CoordVariant, region_idx
from .graph import (
    DirectedEdgeSet,
    EdgeKind,
    Metric,
    NodeId,
    OverlayEdge,
    UnitDiskGraph,
    shortest_path_length,
)

#: Length cap for real edges of the capped construction, as a fraction of r.
REAL_EDGE_CAP = 2.0 / math.sqrt(5.0)

#: Upper bound for virtual edge lengths under height coordinates.
VIRTUAL_EDGE_CAP = 2.0 / math.sqrt(3.0)


@dataclass(frozen=True, eq=False)
class MessageLedger:
    """Count of node identifiers broadcast by the distributed construction."""

    ids_broadcast: int
    rounds: int
    per_node: dict[NodeId, int]

    def __post_init__(self):
        if sum(self.per_node.values()) != self.ids_broadcast:
            raise ValueError("per-node counts do not sum to the total")


@dataclass(frozen=True, eq=False)
class PlanarOverlay:
    """A selected edge set over a base graph."""

    base: UnitDiskGraph
    edges: DirectedEdgeSet
    virtual_count: int

    @cached_property
    def out_degrees(self) -> np.ndarray:
        deg = np.zeros(self.base.n, dtype=np.int32)
        for e in self.edges:
            deg[e.source] += 1
        return deg


def _selection(g: UnitDiskGraph) -> np.ndarray:
    indptr, indices = g.adjacency
    return kernels.region_minima(g.coords, indptr, indices, EPS_GEO)


def build_gtilde(g: UnitDiskGraph, cap_edges: bool = True) -> PlanarOverlay:
    """The bare selection, optionally keeping only edges <= 2r/sqrt(5).

    With the cap the straight-line drawing is plane; without it, crossings
    can appear (that is what the virtual-edge construction repairs).
    """
    cand = _selection(g)
    cap = REAL_EDGE_CAP * g.radius + EPS_GEO
    edges = []
    for x in range(g.n):
        for k in (1, 2, 3):
            t = int(cand[x, k - 1])
            if t < 0:
                continue
            if cap_edges and g.dist(x, t) > cap:
                continue
            edges.append(OverlayEdge(x, t, k, EdgeKind.REAL, (x, t)))
    return PlanarOverlay(g, DirectedEdgeSet(tuple(edges)), 0)


def _build_prime(g: UnitDiskGraph) -> tuple[PlanarOverlay, list[tuple[int, ...]], np.ndarray]:
    """Shared core of the two ledger variants.

    Returns the overlay, the relay chains of the virtual edges, and the
    per-(node, order) selection before rewiring.
    """
    cand = _selection(g)
    recursive = g.variant is CoordVariant.EUCLIDEAN_DISTANCE
    to, flat, pip, tripped = kernels.rewire(
        g.coords, g.positions, g.radius, cand, EPS_GEO, recursive
    )
    if len(tripped):
        pairs = ", ".join(f"(node {x}, order {k + 1})" for x, k in tripped)
        raise RecursionGuardTripped(f"relay walk did not settle for {pairs}")
    edges = []
    chains: list[tuple[int, ...]] = []
    virtual = 0
    for x in range(g.n):
        for k in (1, 2, 3):
            e = 3 * x + k - 1
            t = int(to[x, k - 1])
            if t < 0:
                continue
            if t == int(cand[x, k - 1]):
                edges.append(OverlayEdge(x, t, k, EdgeKind.REAL, (x, t)))
            else:
                path = tuple(int(v) for v in flat[pip[e] : pip[e + 1]])
                edges.append(OverlayEdge(x, t, k, EdgeKind.VIRTUAL, path))
                chains.append(path)
                virtual += 1
    overlay = PlanarOverlay(g, DirectedEdgeSet(tuple(edges)), virtual)
    return overlay, chains, cand


def build_gtilde_prime(g: UnitDiskGraph) -> tuple[PlanarOverlay, MessageLedger]:
    """The augmented overlay with the two-round message ledger.

    Round one: every node announces its selected minimum per order (one id
    each).  Round two: each selected neighbor that knows a better
    out-of-range node announces the replacement (one id per relay step).
    Totals at most 6n identifiers.
    """
    overlay, chains, cand = _build_prime(g)
    per_node = {u: 0 for u in range(g.n)}
    for x in range(g.n):
        per_node[x] += int((cand[x] >= 0).sum())
    _count_replacements(chains, per_node)
    ledger = MessageLedger(sum(per_node.values()), 2, per_node)
    return overlay, ledger


def build_gtilde_prime_euclidean_announce(
    g: UnitDiskGraph,
) -> tuple[PlanarOverlay, MessageLedger]:
    """Same overlay, counted as if nodes had classical 2D positions.

    Each node can then decide on its own whether it is some neighbor's
    minimum, so the selection round is free: only the replacement
    announcements cost identifiers (at most 3n, zero when the overlay has
    no virtual edges), in a single round.
    """
    overlay, chains, _ = _build_prime(g)
    per_node = {u: 0 for u in range(g.n)}
    _count_replacements(chains, per_node)
    ledger = MessageLedger(sum(per_node.values()), 1, per_node)
    return overlay, ledger


def _count_replacements(chains: Iterable[tuple[int, ...]], per_node: dict[int, int]) -> None:
    # chain = (x, y, ..., endpoint): each relay announces the next endpoint
    for path in chains:
        for announcer in path[1:-1]:
            per_node[announcer] += 1


# ---------------------------------------------------------------------------
# spanner diagnostics
# ---------------------------------------------------------------------------


def stretch_report(
    g: UnitDiskGraph,
    overlay: PlanarOverlay,
    pairs: Union[int, Iterable[tuple[NodeId, NodeId]]],
    seed: Optional[int] = None,
) -> dict[tuple[NodeId, NodeId], float]:
    """Shortest-path ratio overlay/graph per sampled pair.

    ``pairs`` is either an explicit iterable of (source, target) pairs or a
    number of pairs to sample uniformly among graph-connected ordered pairs
    (``seed`` required then).  Unreachable pairs report ``inf``.
    """
    if isinstance(pairs, int):
        if seed is None:
            raise ValueError("sampling pairs needs a seed")
        rng = np.random.Generator(np.random.PCG64(seed))
        pair_list = sample_connected_pairs(g, pairs, rng)
    else:
        pair_list = list(pairs)
    from .graph import _csr_of_edges, _csr_of_udg  # local alias, not public API

    g_csr = _csr_of_udg(g, Metric.EUCLIDEAN_LENGTH)
    o_csr = _csr_of_edges(overlay.edges, g.n, g.positions, Metric.EUCLIDEAN_LENGTH)
    out: dict[tuple[NodeId, NodeId], float] = {}
    by_source: dict[int, list[int]] = {}
    for s, t in pair_list:
        g.check_node(s)
        g.check_node(t)
        by_source.setdefault(s, []).append(t)
    for s, ts in by_source.items():
        dg = kernels.dijkstra(*g_csr, s)
        do = kernels.dijkstra(*o_csr, s)
        for t in ts:
            if s == t:
                out[(s, t)] = 1.0
            elif not np.isfinite(dg[t]) or dg[t] <= 0.0:
                out[(s, t)] = math.inf
            else:
                out[(s, t)] = float(do[t] / dg[t])
    return out


def connected_components(g: UnitDiskGraph) -> np.ndarray:
    """Component label per node (labels are the smallest member id)."""
    indptr, indices = g.adjacency
    labels = np.full(g.n, -1, dtype=np.int64)
    for root in range(g.n):
        if labels[root] >= 0:
            continue
        stack = [root]
        labels[root] = root
        while stack:
            u = stack.pop()
            for v in indices[indptr[u] : indptr[u + 1]]:
                if labels[v] < 0:
                    labels[v] = root
                    stack.append(int(v))
    return labels


def sample_connected_pairs(
    g: UnitDiskGraph, count: int, rng: np.random.Generator
) -> list[tuple[NodeId, NodeId]]:
    """Ordered (s, t) pairs, s != t, uniform among UDG-connected pairs."""
    labels = connected_components(g)
    comps: dict[int, np.ndarray] = {
        int(lbl): np.nonzero(labels == lbl)[0] for lbl in np.unique(labels)
    }
    members = [m for m in comps.values() if len(m) >= 2]
    if not members:
        return []
    weights = np.array([len(m) * (len(m) - 1) for m in members], dtype=np.float64)
    weights /= weights.sum()
    out = []
    for _ in range(count):
        comp = members[int(rng.choice(len(members), p=weights))]
        s, t = rng.choice(len(comp), size=2, replace=False)
        out.append((int(comp[s]), int(comp[t])))
    return out


def certificate_path(
    overlay: PlanarOverlay, u: NodeId, v: NodeId, max_steps: Optional[int] = None
) -> list[NodeId]:
    """Overlay path certifying the per-edge length bound for a graph edge.

    Repeatedly follows, from whichever endpoint sees the other inside one
    of its greedy regions, the selected out-edge of that region; the walk
    shrinks the gap each step and meets in the middle.  The returned node
    sequence is monotone in one coordinate and its straight-line length is
    at most twice the u-v distance (checked by the test suite, not here).
    """
    g = overlay.base
    g.check_node(u)
    g.check_node(v)
    if u == v:
        return [u]
    limit = max_steps if max_steps is not None else 10 * g.n + 20
    front = [u]
    back = [v]
    a, b = u, v
    for _ in range(limit):
        if a == b:
            break
        kind, k = region_idx(g.coords, a, b, EPS_GEO)
        if kind == "cone":
            t = overlay.edges.out_target(a, k)
            if t is None:
                raise RuntimeError(f"no out-edge at {a} toward region {k} (gap {a}-{b})")
            front.append(t)
            a = t
        else:
            kind2, k2 = region_idx(g.coords, b, a, EPS_GEO)
            if kind2 != "cone":
                raise RuntimeError(f"degenerate pair {a}, {b}")
            t = overlay.edges.out_target(b, k2)
            if t is None:
                raise RuntimeError(f"no out-edge at {b} toward region {k2} (gap {b}-{a})")
            back.append(t)
            b = t
    else:
        raise RuntimeError(f"walk from {u} to {v} did not converge")
    return front + back[-2::-1]


def path_length(g: UnitDiskGraph, path: Iterable[NodeId]) -> float:
    nodes = list(path)
    return sum(g.dist(a, b) for a, b in zip(nodes, nodes[1:]))
