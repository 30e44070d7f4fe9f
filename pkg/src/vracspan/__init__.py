"""Planar 2-spanners of unit disk graphs from anchor-relative coordinates,
zig-zag routing on them, and a reproducible simulation harness."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .errors import (
    NotEquilateral,
    PointOutsideTriangle,
    RecursionGuardTripped,
    RegionOutsideTriangle,
    UnknownNode,
    VariantMismatch,
    VracspanError,
)
from .geometry import (
    EPS_GEO,
    AnchorConfig,
    CoordVariant,
    Point2D,
    VracCoord,
    greedy_region_of,
    less,
    segments_intersect,
    tilde_less,
    unit_square_anchors,
    vrac_euclidean,
    vrac_height,
)
from .graph import (
    DirectedEdgeSet,
    EdgeKind,
    Metric,
    NodeId,
    OverlayEdge,
    Rect,
    UNIT_SQUARE,
    UnitDiskGraph,
    check_planarity,
    generate_random_udg,
    half_theta6,
    neighbors,
    shortest_path_length,
)
from .harness import ExperimentConfig, ExperimentRecord, emit_csv, read_csv, run_experiment
from .planarize import (
    MessageLedger,
    PlanarOverlay,
    REAL_EDGE_CAP,
    VIRTUAL_EDGE_CAP,
    build_gtilde,
    build_gtilde_prime,
    build_gtilde_prime_euclidean_announce,
    stretch_report,
)
from .render import render_svg
from .routing import (
    HopMode,
    RouteOutcome,
    RouteTrace,
    RouterConfig,
    route_greedy,
    route_zigzag,
    verify_density_hypothesis,
)

__version__ = "0.1.0"
