"""Anchor-relative coordinates, order relations and geometric predicates.

Nodes are located by a triple of scalars measured against three fixed
anchors instead of by their (x, y) position.  Two flavours are supported:

* raw anchor distances: the Euclidean distance to each anchor,
* triangle heights: the height, through the node, of the triangle spanned
  by the two other anchors, normalized so the three values sum to one
  (requires equilateral anchors).

Three total orders ``<_k`` compare nodes on the k-th component.  All the
spanner and routing machinery in this package is built from those orders
alone; this module is the single source of truth for how they are
evaluated (including the tolerance and node-id tie-break).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import NotEquilateral, PointOutsideTriangle, VariantMismatch

#: Absolute tolerance, in plane units, for every geometric comparison.
EPS_GEO = 1e-9

ORDERS = (1, 2, 3)


class CoordVariant(Enum):
    """Which measurement backs the coordinate triple."""

    EUCLIDEAN_DISTANCE = "euclidean"
    TRIANGLE_HEIGHT = "height"


@dataclass(frozen=True)
class Point2D:
    x: float
    y: float

    def dist(self, other: "Point2D") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=np.float64)


@dataclass(frozen=True)
class VracCoord:
    """A node's coordinate triple relative to the three anchors."""

    c1: float
    c2: float
    c3: float
    variant: CoordVariant

    def get(self, k: int) -> float:
        _check_order(k)
        return (self.c1, self.c2, self.c3)[k - 1]

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class AnchorConfig:
    """Three non-collinear anchor positions."""

    a1: Point2D
    a2: Point2D
    a3: Point2D
    equilateral: bool
    side: float

    def __post_init__(self):
        area2 = _orient(self.a1, self.a2, self.a3)
        if abs(area2) <= EPS_GEO:
            raise ValueError("anchors are collinear")

    @classmethod
    def from_points(cls, a1: Point2D, a2: Point2D, a3: Point2D) -> "AnchorConfig":
        """Build a config, auto-detecting the equilateral case."""
        d12, d13, d23 = a1.dist(a2), a1.dist(a3), a2.dist(a3)
        side = (d12 + d13 + d23) / 3.0
        equi = (
            abs(d12 - side) <= EPS_GEO
            and abs(d13 - side) <= EPS_GEO
            and abs(d23 - side) <= EPS_GEO
        )
        return cls(a1, a2, a3, equilateral=equi, side=side if equi else 0.0)

    def points(self) -> tuple[Point2D, Point2D, Point2D]:
        return (self.a1, self.a2, self.a3)

    def as_array(self) -> np.ndarray:
        return np.array(
            [[self.a1.x, self.a1.y], [self.a2.x, self.a2.y], [self.a3.x, self.a3.y]],
            dtype=np.float64,
        )


def unit_square_anchors() -> AnchorConfig:
    """The standard equilateral anchor triangle enclosing [0, 1] x [0, 1].

    Apex above the square at (0.5, 3.5), the two base anchors below it at
    (0.5 -/+ 5/sqrt(3), -1.5); all pairwise distances are 10/sqrt(3).
    """
    h = 5.0 / math.sqrt(3.0)
    return AnchorConfig.from_points(
        Point2D(0.5, 3.5), Point2D(0.5 - h, -1.5), Point2D(0.5 + h, -1.5)
    )


def _check_order(k: int) -> None:
    if k not in (1, 2, 3):
        raise ValueError(f"order index must be 1, 2 or 3, got {k!r}")


def _orient(a: Point2D, b: Point2D, c: Point2D) -> float:
    """Twice the signed area of triangle (a, b, c)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def point_in_triangle(p: Point2D, anchors: AnchorConfig, eps: float = EPS_GEO) -> bool:
    """Closed-triangle membership with an absolute tolerance band."""
    a1, a2, a3 = anchors.points()
    ref = _orient(a1, a2, a3)
    sign = 1.0 if ref > 0 else -1.0
    for u, v in ((a1, a2), (a2, a3), (a3, a1)):
        # normalize to a true distance so eps is in plane units
        edge = u.dist(v)
        if sign * _orient(u, v, p) < -eps * edge:
            return False
    return True


# ---------------------------------------------------------------------------
# coordinate computation
# ---------------------------------------------------------------------------


def vrac_coords(
    positions: np.ndarray, anchors: AnchorConfig, variant: CoordVariant
) -> np.ndarray:
    """Coordinate triples for an (n, 2) array of positions, vectorized.

    Positions are not validated here; use the scalar wrappers for checked
    single-point conversion.
    """
    pts = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    apts = anchors.as_array()
    if variant is CoordVariant.EUCLIDEAN_DISTANCE:
        diff = pts[:, None, :] - apts[None, :, :]
        return np.sqrt((diff**2).sum(axis=2))
    if not anchors.equilateral:
        raise NotEquilateral("triangle-height coordinates need equilateral anchors")
    # height i = perpendicular distance to the side opposite anchor i,
    # normalized by the sum (constant inside the triangle) so the triple
    # sums to exactly 1.0.
    out = np.empty((len(pts), 3), dtype=np.float64)
    for i, (j, l) in enumerate(((1, 2), (0, 2), (0, 1))):
        a, b = apts[j], apts[l]
        ab = b - a
        norm = math.hypot(ab[0], ab[1])
        cross = ab[0] * (pts[:, 1] - a[1]) - ab[1] * (pts[:, 0] - a[0])
        out[:, i] = np.abs(cross) / norm
    out /= out.sum(axis=1, keepdims=True)
    return out


def vrac_euclidean(p: Point2D, anchors: AnchorConfig) -> VracCoord:
    """Raw-distance coordinates of a point inside the anchor triangle."""
    if not point_in_triangle(p, anchors):
        raise PointOutsideTriangle(f"({p.x}, {p.y}) is outside the anchor triangle")
    c = vrac_coords(p.as_array(), anchors, CoordVariant.EUCLIDEAN_DISTANCE)[0]
    return VracCoord(float(c[0]), float(c[1]), float(c[2]), CoordVariant.EUCLIDEAN_DISTANCE)


def vrac_height(p: Point2D, anchors: AnchorConfig) -> VracCoord:
    """Normalized triangle-height coordinates (components sum to 1)."""
    if not anchors.equilateral:
        raise NotEquilateral("triangle-height coordinates need equilateral anchors")
    if not point_in_triangle(p, anchors):
        raise PointOutsideTriangle(f"({p.x}, {p.y}) is outside the anchor triangle")
    c = vrac_coords(p.as_array(), anchors, CoordVariant.TRIANGLE_HEIGHT)[0]
    return VracCoord(float(c[0]), float(c[1]), float(c[2]), CoordVariant.TRIANGLE_HEIGHT)


# ---------------------------------------------------------------------------
# order relations
# ---------------------------------------------------------------------------


def _less_core(
    ca: float, cb: float, ia: Optional[int], ib: Optional[int], eps: float
) -> bool:
    if abs(ca - cb) <= eps:
        if ia is None or ib is None:
            return False
        return ia < ib
    return ca < cb


def _check_variants(a: VracCoord, b: VracCoord) -> None:
    if a.variant is not b.variant:
        raise VariantMismatch(f"cannot compare {a.variant.value} with {b.variant.value}")


def less(
    k: int,
    a: VracCoord,
    b: VracCoord,
    a_id: Optional[int] = None,
    b_id: Optional[int] = None,
    eps: float = EPS_GEO,
) -> bool:
    """Strict total order on component k, ids breaking near-ties.

    When the k-th components differ by at most ``eps`` the comparison falls
    back to the node ids, which keeps the order total and antisymmetric on
    id-tagged node sets.  Without ids, near-ties compare False.
    """
    _check_order(k)
    _check_variants(a, b)
    return _less_core(a.get(k), b.get(k), a_id, b_id, eps)


def tilde_less(
    k: int,
    a: VracCoord,
    b: VracCoord,
    a_id: Optional[int] = None,
    b_id: Optional[int] = None,
    eps: float = EPS_GEO,
) -> bool:
    """True iff b beats a on order k and a beats b on both other orders."""
    _check_order(k)
    _check_variants(a, b)
    if not _less_core(a.get(k), b.get(k), a_id, b_id, eps):
        return False
    for j in ORDERS:
        if j != k and not _less_core(b.get(j), a.get(j), b_id, a_id, eps):
            return False
    return True


def greedy_region_of(
    x: VracCoord,
    y: VracCoord,
    x_id: Optional[int] = None,
    y_id: Optional[int] = None,
    eps: float = EPS_GEO,
) -> Optional[int]:
    """The unique k with ``tilde_less(k, x, y)``, or None.

    None means y lies in one of the intermediate regions between two
    adjacent greedy regions of x (or coincides with x up to tie-break).
    """
    _check_variants(x, y)
    for k in ORDERS:
        if tilde_less(k, x, y, x_id, y_id, eps):
            return k
    return None


# Index-level variants operating on an (n, 3) coordinate array, with the
# row index doubling as the node id.  Routing and the pure kernels use
# these; the compiled kernels mirror the same definitions.


def less_idx(coords: np.ndarray, k: int, i: int, j: int, eps: float = EPS_GEO) -> bool:
    return _less_core(coords[i, k - 1], coords[j, k - 1], i, j, eps)


def dominance_idx(
    coords: np.ndarray, x: int, z: int, eps: float = EPS_GEO
) -> tuple[bool, bool, bool]:
    """For each order k, whether z beats x (i.e. ``x <_k z``)."""
    return tuple(less_idx(coords, k, x, z, eps) for k in ORDERS)


def region_idx(
    coords: np.ndarray, x: int, z: int, eps: float = EPS_GEO
) -> tuple[Optional[str], Optional[int]]:
    """Classify z against x's six regions.

    Returns ("cone", k) when z is in the k-th greedy region, ("wedge", i)
    when z sits between greedy regions i and (i mod 3)+1, and (None, None)
    for the degenerate coincident case.
    """
    dom = dominance_idx(coords, x, z, eps)
    ups = sum(dom)
    if ups == 1:
        return "cone", dom.index(True) + 1
    if ups == 2:
        c = dom.index(False) + 1  # the single order where z is below x
        return "wedge", (c % 3) + 1
    return None, None


# ---------------------------------------------------------------------------
# segment predicates
# ---------------------------------------------------------------------------


def segments_intersect(
    p1: Point2D, p2: Point2D, q1: Point2D, q2: Point2D, eps: float = EPS_GEO
) -> bool:
    """Proper crossing test for two segments.

    True iff the open segments cross (interiors straddle each other), or
    the segments are collinear and overlap over more than a point.  Merely
    sharing an endpoint, or touching in a T shape, is not a crossing.
    """

    def s(v: float) -> int:
        if v > eps:
            return 1
        if v < -eps:
            return -1
        return 0

    o1 = s(_orient(p1, p2, q1))
    o2 = s(_orient(p1, p2, q2))
    o3 = s(_orient(q1, q2, p1))
    o4 = s(_orient(q1, q2, p2))
    if o1 == o2 == o3 == o4 == 0:
        # collinear: overlap along the dominant axis
        if abs(p2.x - p1.x) >= abs(p2.y - p1.y):
            lo1, hi1 = sorted((p1.x, p2.x))
            lo2, hi2 = sorted((q1.x, q2.x))
        else:
            lo1, hi1 = sorted((p1.y, p2.y))
            lo2, hi2 = sorted((q1.y, q2.y))
        return min(hi1, hi2) - max(lo1, lo2) > eps
    return o1 * o2 < 0 and o3 * o4 < 0


def sample_in_triangle(
    rng: np.random.Generator, n: int, anchors: AnchorConfig
) -> np.ndarray:
    """n points uniform in the anchor triangle, as an (n, 2) array."""
    a = anchors.as_array()
    r1 = np.sqrt(rng.random(n))
    r2 = rng.random(n)
    w1 = 1.0 - r1
    w2 = r1 * (1.0 - r2)
    w3 = r1 * r2
    return (
        w1[:, None] * a[0][None, :]
        + w2[:, None] * a[1][None, :]
        + w3[:, None] * a[2][None, :]
    )
