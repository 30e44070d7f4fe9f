"""Geographic routing over the planar overlay.

The main algorithm has two modes.  While the destination sits in a greedy
region of the current node, the message follows that region's selected
out-edge (a step that never increases the distance to the destination, up
to rare long virtual edges).  When the destination falls between two
greedy regions, a restricted phase zig-zags between the two adjacent
region sides, descending in the remaining coordinate, until it lands on a
node inside the in-between wedge; the full strategy then restarts there.

A plain greedy comparator (move to the overlay neighbor closest to the
destination, undirected) is provided for the simulation study.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .geometry import EPS_GEO, less_idx, region_idx
from .planarize import PlanarOverlay

#: Radius multiple within which the delivery guarantee needs full out-degree.
DENSITY_RADIUS_FACTOR = 4.0 / math.sqrt(3.0)


class HopMode(Enum):
    DIRECT = "direct"
    GREEDY = "greedy"
    ZIGZAG_P1 = "zigzag-p1"
    ZIGZAG_P2 = "zigzag-p2"
    RESTART = "restart"


class RouteOutcome(Enum):
    DELIVERED = "delivered"
    NO_PROGRESS = "no-progress"
    HOP_LIMIT = "hop-limit"
    MISSING_OUT_NEIGHBOR = "missing-out-neighbor"


@dataclass(frozen=True)
class RouterConfig:
    """Knobs for a routing run.

    ``hop_limit`` defaults to 10n, enough to turn any unforeseen cycle into
    a measurable failure instead of a hang.  ``density_check`` additionally
    verifies, at every (re)start node, that all nodes within 4r/sqrt(3)
    have full out-degree, recording violations in the trace.
    """

    hop_limit: Optional[int] = None
    density_check: bool = False

    def __post_init__(self):
        if self.hop_limit is not None and self.hop_limit < 1:
            raise ValueError("hop_limit must be at least 1")


@dataclass
class RouteTrace:
    """Hop-by-hop record of one routing attempt.

    Each entry is (node, mode of arrival); the first entry and every
    restricted-phase endpoint carry the RESTART marker.  Extra counters
    surface events the delivery guarantees do not cover: greedy hops that
    increased the distance (possible over long virtual edges), greedy
    regions lacking an out-edge, restricted phases whose two-path
    structure broke down (both symptoms of too-low density), and
    density-hypothesis violations when checking is enabled.
    """

    hops: list[tuple[int, HopMode]] = field(default_factory=list)
    outcome: RouteOutcome = RouteOutcome.NO_PROGRESS
    euclid_length: float = 0.0
    hop_count: int = 0
    greedy_regressions: int = 0
    region_gaps: int = 0
    structure_breaks: int = 0
    density_violations: int = 0

    @property
    def delivered(self) -> bool:
        return self.outcome is RouteOutcome.DELIVERED

    def nodes(self) -> list[int]:
        return [u for u, _ in self.hops]


def _finish(trace: RouteTrace, overlay: PlanarOverlay, outcome: RouteOutcome) -> RouteTrace:
    g = overlay.base
    nodes = trace.nodes()
    trace.outcome = outcome
    trace.hop_count = len(nodes) - 1
    trace.euclid_length = sum(g.dist(a, b) for a, b in zip(nodes, nodes[1:]))
    return trace


def route_zigzag(
    overlay: PlanarOverlay, s: int, t: int, cfg: RouterConfig = RouterConfig()
) -> RouteTrace:
    """Route s -> t with the two-mode strategy described above."""
    g = overlay.base
    g.check_node(s)
    g.check_node(t)
    coords = g.coords
    r = g.radius + EPS_GEO
    limit = cfg.hop_limit if cfg.hop_limit is not None else 10 * max(g.n, 1)
    trace = RouteTrace(hops=[(s, HopMode.RESTART)])
    cur = s
    phase = None  # (frame, p, q, c, side) during the restricted process

    def hop(nxt: int, mode: HopMode) -> int:
        trace.hops.append((nxt, mode))
        return nxt

    while True:
        if cur == t:
            return _finish(trace, overlay, RouteOutcome.DELIVERED)
        if g.dist(cur, t) <= r:
            hop(t, HopMode.DIRECT)
            return _finish(trace, overlay, RouteOutcome.DELIVERED)
        if len(trace.hops) - 1 >= limit:
            return _finish(trace, overlay, RouteOutcome.HOP_LIMIT)

        # every holder applies the greedy rule first; an active restricted
        # phase persists only while the destination stays out of reach of it
        kind, k = region_idx(coords, cur, t, EPS_GEO)
        if kind == "cone":
            nxt = overlay.edges.out_target(cur, k)
            if nxt is not None:
                if g.dist(nxt, t) > g.dist(cur, t) + EPS_GEO:
                    trace.greedy_regressions += 1
                phase = None
                cur = hop(nxt, HopMode.GREEDY)
                continue
            if phase is None:
                trace.region_gaps += 1

        if phase is None:
            if kind == "cone":
                # region without an out-edge: fall through to the
                # restricted process via the adjacent wedge
                wedge = _leaning_wedge(coords, cur, t, k)
            elif kind == "wedge":
                wedge = k
            else:
                return _finish(trace, overlay, RouteOutcome.NO_PROGRESS)
            if cfg.density_check and not verify_density_hypothesis(overlay, cur):
                trace.density_violations += 1
            p = wedge
            q = p % 3 + 1
            c = 6 - p - q
            tp = overlay.edges.out_target(cur, p)
            tq = overlay.edges.out_target(cur, q)
            if tp is None and tq is None:
                return _finish(trace, overlay, RouteOutcome.MISSING_OUT_NEIGHBOR)
            if tp is None:
                nxt, side = tq, "q"
            elif tq is None:
                nxt, side = tp, "p"
            elif less_idx(coords, c, tq, tp, EPS_GEO):
                nxt, side = tp, "p"  # tp has the higher remaining coordinate
            else:
                nxt, side = tq, "q"
            phase = (cur, p, q, c, side)
            cur = hop(nxt, HopMode.ZIGZAG_P1 if side == "p" else HopMode.ZIGZAG_P2)
            continue

        frame, p, q, c, side = phase
        # cross to the other side: the only out-edge that can satisfy the
        # forwarding conditions is the one toward the opposite region
        want = q if side == "p" else p
        gate = want  # the frame coordinate the next node must stay above
        nxt = overlay.edges.out_target(cur, want)
        if nxt is None:
            # the two-path structure the guarantee relies on does not
            # exist here (density too low for the delivery theorem)
            trace.structure_breaks += 1
            return _finish(trace, overlay, RouteOutcome.MISSING_OUT_NEIGHBOR)
        if not (
            less_idx(coords, c, nxt, cur, EPS_GEO)
            and less_idx(coords, gate, frame, nxt, EPS_GEO)
        ):
            trace.structure_breaks += 1
            return _finish(trace, overlay, RouteOutcome.NO_PROGRESS)
        if less_idx(coords, p, frame, nxt, EPS_GEO) and less_idx(coords, q, frame, nxt, EPS_GEO):
            # landed in the in-between wedge: restart the full strategy
            phase = None
            cur = hop(nxt, HopMode.RESTART)
            continue
        side = "q" if side == "p" else "p"
        phase = (frame, p, q, c, side)
        cur = hop(nxt, HopMode.ZIGZAG_P1 if side == "p" else HopMode.ZIGZAG_P2)


def _leaning_wedge(coords, cur: int, t: int, k: int) -> int:
    """Of the two wedges flanking greedy region k, the one t leans toward."""
    j1 = k % 3 + 1
    j2 = j1 % 3 + 1
    d1 = coords[cur, j1 - 1] - coords[t, j1 - 1]
    d2 = coords[cur, j2 - 1] - coords[t, j2 - 1]
    prev = (k - 2) % 3 + 1
    return prev if d1 >= d2 else k


def route_greedy(
    overlay: PlanarOverlay, s: int, t: int, cfg: RouterConfig = RouterConfig()
) -> RouteTrace:
    """Plain greedy comparator: forward along the out-edge whose target is
    strictly closest to the destination.

    The overlay is used as the digraph the selection naturally orients, and
    there is no direct-radio fallback, so this measures the overlay's
    intrinsic greedy routability; it fails with NO_PROGRESS at a local
    minimum.
    """
    g = overlay.base
    g.check_node(s)
    g.check_node(t)
    limit = cfg.hop_limit if cfg.hop_limit is not None else 10 * max(g.n, 1)
    trace = RouteTrace(hops=[(s, HopMode.RESTART)])
    cur = s
    while True:
        if cur == t:
            return _finish(trace, overlay, RouteOutcome.DELIVERED)
        if len(trace.hops) - 1 >= limit:
            return _finish(trace, overlay, RouteOutcome.HOP_LIMIT)
        best = None
        best_d = g.dist(cur, t)
        for k in (1, 2, 3):
            v = overlay.edges.out_target(cur, k)
            if v is not None:
                d = g.dist(v, t)
                if d < best_d:
                    best, best_d = v, d
        if best is None:
            return _finish(trace, overlay, RouteOutcome.NO_PROGRESS)
        trace.hops.append((best, HopMode.GREEDY))
        cur = best


def verify_density_hypothesis(overlay: PlanarOverlay, x: int) -> bool:
    """All nodes within 4r/sqrt(3) of x have out-degree three."""
    g = overlay.base
    g.check_node(x)
    d = g.positions - g.positions[x]
    within = (d[:, 0] ** 2 + d[:, 1] ** 2) < (DENSITY_RADIUS_FACTOR * g.radius) ** 2
    deg = overlay.out_degrees
    return bool((deg[within] == 3).all())
