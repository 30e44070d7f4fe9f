"""Cross-checks between the compiled and pure kernel backends.

The pure module defines the semantics; the compiled core must reproduce
its outputs bit for bit on any input.
"""

import numpy as np
import pytest

from vracspan import _kernels
from vracspan.geometry import EPS_GEO, CoordVariant, unit_square_anchors, vrac_coords
from vracspan.graph import UNIT_SQUARE, generate_random_udg

BACKENDS = _kernels.backends()
needs_both = pytest.mark.skipif(
    "cython" not in BACKENDS, reason="compiled kernels not built"
)

ANCHORS = unit_square_anchors()


def instance(seed, n=120, r=0.15, variant=CoordVariant.TRIANGLE_HEIGHT):
    return generate_random_udg(n, r, UNIT_SQUARE, ANCHORS, seed=seed, variant=variant)


def test_disk_adjacency_exact_radius_boundary():
    pts = np.array([[0.3, 0.5], [0.6, 0.5], [0.95, 0.5]])
    indptr, indices = _kernels.disk_adjacency(pts, 0.3, EPS_GEO)
    assert list(indices[indptr[0] : indptr[1]]) == [1]
    assert list(indices[indptr[1] : indptr[2]]) == [0]  # 0.35 to node 2: not linked


def test_disk_adjacency_empty():
    indptr, indices = _kernels.disk_adjacency(np.zeros((0, 2)), 0.3, EPS_GEO)
    assert len(indptr) == 1 and len(indices) == 0


@needs_both
@pytest.mark.parametrize("seed", range(12))
def test_backends_agree_on_random_instances(seed):
    pure, comp = BACKENDS["python"], BACKENDS["cython"]
    variant = (
        CoordVariant.TRIANGLE_HEIGHT if seed % 3 else CoordVariant.EUCLIDEAN_DISTANCE
    )
    g = instance(seed, n=100 + seed * 17, r=0.12 + 0.01 * (seed % 5), variant=variant)
    p_ip, p_ix = pure.disk_adjacency(g.positions, g.radius, EPS_GEO)
    c_ip, c_ix = comp.disk_adjacency(g.positions, g.radius, EPS_GEO)
    assert np.array_equal(p_ip, c_ip) and np.array_equal(p_ix, c_ix)

    p_cand = pure.region_minima(g.coords, p_ip, p_ix, EPS_GEO)
    c_cand = comp.region_minima(g.coords, c_ip, c_ix, EPS_GEO)
    assert np.array_equal(p_cand, c_cand)

    recursive = variant is CoordVariant.EUCLIDEAN_DISTANCE
    p_rw = pure.rewire(g.coords, g.positions, g.radius, p_cand, EPS_GEO, recursive)
    c_rw = comp.rewire(g.coords, g.positions, g.radius, c_cand, EPS_GEO, recursive)
    for a, b in zip(p_rw, c_rw):
        assert np.array_equal(a, b)

    p_ht = pure.half_theta6_select(g.coords, EPS_GEO)
    c_ht = comp.half_theta6_select(g.coords, EPS_GEO)
    assert np.array_equal(p_ht, c_ht)


@needs_both
def test_backends_agree_on_tied_coordinates():
    pure, comp = BACKENDS["python"], BACKENDS["cython"]
    rng = np.random.default_rng(5)
    pts = rng.uniform(0.2, 0.8, size=(40, 2))
    pts[7] = pts[3]  # exact duplicates exercise the id tie-break
    pts[21] = pts[3]
    coords = vrac_coords(pts, ANCHORS, CoordVariant.TRIANGLE_HEIGHT)
    ip, ix = pure.disk_adjacency(pts, 0.2, EPS_GEO)
    assert np.array_equal(
        pure.region_minima(coords, ip, ix, EPS_GEO),
        comp.region_minima(coords, ip, ix, EPS_GEO),
    )
    assert np.array_equal(
        pure.half_theta6_select(coords, EPS_GEO),
        comp.half_theta6_select(coords, EPS_GEO),
    )


@needs_both
@pytest.mark.parametrize("seed", range(6))
def test_crossing_pairs_backends_agree(seed):
    pure, comp = BACKENDS["python"], BACKENDS["cython"]
    rng = np.random.default_rng(seed)
    m = 120
    segs = rng.random((m, 4))
    nodes = rng.integers(0, 60, size=(m, 2)).astype(np.int32)
    a = pure.crossing_pairs(segs, nodes, EPS_GEO)
    b = comp.crossing_pairs(segs, nodes, EPS_GEO)
    assert np.array_equal(a, b)
    assert len(a) > 0  # random chords do cross


def test_crossing_pairs_match_scalar_predicate():
    from vracspan.geometry import Point2D, segments_intersect

    rng = np.random.default_rng(44)
    m = 60
    segs = rng.random((m, 4))
    nodes = np.arange(2 * m, dtype=np.int32).reshape(m, 2)
    got = {tuple(p) for p in _kernels.crossing_pairs(segs, nodes, EPS_GEO)}
    exp = set()
    for i in range(m):
        for j in range(i + 1, m):
            if segments_intersect(
                Point2D(*segs[i, :2]), Point2D(*segs[i, 2:]),
                Point2D(*segs[j, :2]), Point2D(*segs[j, 2:]),
            ):
                exp.add((i, j))
    assert got == exp


@needs_both
@pytest.mark.parametrize("seed", range(6))
def test_dijkstra_backends_bit_identical(seed):
    pure, comp = BACKENDS["python"], BACKENDS["cython"]
    g = instance(seed, n=150, r=0.14)
    indptr, indices = g.adjacency
    rows = np.repeat(np.arange(g.n), np.diff(indptr))
    d = g.positions[rows] - g.positions[indices]
    w = np.hypot(d[:, 0], d[:, 1])
    for src in (0, 3, g.n - 1):
        assert np.array_equal(
            pure.dijkstra(indptr, indices, w, src),
            comp.dijkstra(indptr, indices, w, src),
        )


def test_default_backend_reported():
    assert _kernels.BACKEND in BACKENDS
