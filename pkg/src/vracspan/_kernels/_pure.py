"""Numpy/Python reference implementations of the hot kernels.

This module defines the exact semantics (tolerances, tie-breaks, scan
orders); the compiled Cython module mirrors it operation for operation and
the test suite cross-checks the two backends on random instances.

Conventions shared by both backends:

* node ids are row indices into the coordinate/position arrays;
* ``x <_k z`` compares component k with tolerance ``eps``, falling back to
  id order when the components differ by at most ``eps``;
* "minimum of a set" means: smallest component value, and among values
  within ``eps`` of that minimum, the lowest node id;
* adjacency is the closed disk: distance <= r (+ eps slack).
"""

from __future__ import annotations

import heapq

import numpy as np


def _up_masks(coords: np.ndarray, x: int, eps: float) -> np.ndarray:
    """(n, 3) booleans: whether ``x <_k z`` for every node z and order k."""
    diff = coords - coords[x]
    ids = np.arange(len(coords))
    tie = np.abs(diff) <= eps
    return (diff > eps) | (tie & (ids[:, None] > x))


def _region_masks(up: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Greedy-region membership masks A_1, A_2, A_3 from an up-mask."""
    u1, u2, u3 = up[:, 0], up[:, 1], up[:, 2]
    return (u1 & ~u2 & ~u3, u2 & ~u1 & ~u3, u3 & ~u1 & ~u2)


def _band_min(values: np.ndarray, ids: np.ndarray, eps: float) -> int:
    """Lowest id among the values within eps of the minimum."""
    v = values[ids]
    return int(ids[v <= v.min() + eps].min())


def disk_adjacency(positions: np.ndarray, r: float, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """CSR adjacency (indptr, indices) of the closed-disk graph."""
    pts = np.asarray(positions, dtype=np.float64)
    n = len(pts)
    if n == 0:
        return np.zeros(1, dtype=np.int64), np.zeros(0, dtype=np.int32)
    d2 = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    mask = d2 <= (r + eps) ** 2
    np.fill_diagonal(mask, False)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(mask.sum(axis=1), out=indptr[1:])
    indices = np.nonzero(mask)[1].astype(np.int32)
    return indptr, indices


def region_minima(
    coords: np.ndarray, indptr: np.ndarray, indices: np.ndarray, eps: float
) -> np.ndarray:
    """Per node and order, the in-range minimum of the greedy region.

    Entry (x, k-1) is the neighbor of x minimizing component k among the
    neighbors z with x tilde-below z in order k, or -1 when the region has
    no node in range.
    """
    n = len(coords)
    cand = np.full((n, 3), -1, dtype=np.int32)
    for x in range(n):
        nbrs = indices[indptr[x] : indptr[x + 1]].astype(np.int64)
        if len(nbrs) == 0:
            continue
        diff = coords[nbrs] - coords[x]
        tie = np.abs(diff) <= eps
        up = (diff > eps) | (tie & (nbrs[:, None] > x))
        for k in range(3):
            j, l = (k + 1) % 3, (k + 2) % 3
            mask = up[:, k] & ~up[:, j] & ~up[:, l]
            if mask.any():
                cand[x, k] = _band_min(coords[:, k], nbrs[mask], eps)
    return cand


def rewire(
    coords: np.ndarray,
    positions: np.ndarray,
    r: float,
    cand: np.ndarray,
    eps: float,
    recursive: bool,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Replace selected edges whose region holds a better out-of-range node.

    For each (x, k) with a selected in-range minimum y, walks to the
    minimum of the region within disk(y), then (only when ``recursive``)
    keeps walking from each new endpoint until a fixpoint.  Returns

    * ``to``: final endpoint per (x, k), -1 when there is no edge;
    * ``path_flat``/``path_indptr``: for rewired entries, the relay path
      x, y, ..., endpoint (empty slice for direct edges), indexed by
      3*x + k;
    * ``tripped``: (x, k) pairs whose walk revisited a node or exhausted
      the depth cap (possible only in recursive mode).
    """
    n = len(coords)
    to = np.array(cand, dtype=np.int32, copy=True)
    ids = np.arange(n)
    r2 = (r + eps) ** 2
    budget = n if recursive else 1
    path_indptr = np.zeros(3 * n + 1, dtype=np.int64)
    flat: list[int] = []
    tripped: list[tuple[int, int]] = []
    for x in range(n):
        if cand[x].max() < 0:
            path_indptr[3 * x + 1 : 3 * x + 4] = len(flat)
            continue
        up = _up_masks(coords, x, eps)
        regions = _region_masks(up)
        for k in range(3):
            e = 3 * x + k
            c0 = int(cand[x, k])
            if c0 >= 0:
                chain = [c0]
                c = c0
                for _ in range(budget):
                    near = ((positions - positions[c]) ** 2).sum(axis=1) <= r2
                    pool = ids[regions[k] & near]
                    w = _band_min(coords[:, k], pool, eps)
                    if w == c:
                        break
                    if w in chain:
                        tripped.append((x, k))
                        break
                    chain.append(w)
                    c = w
                else:
                    if recursive:
                        tripped.append((x, k))
                if len(chain) > 1:
                    to[x, k] = chain[-1]
                    flat.extend([x] + chain)
            path_indptr[e + 1] = len(flat)
    return (
        to,
        np.array(flat, dtype=np.int32),
        path_indptr,
        np.array(tripped, dtype=np.int32).reshape(-1, 2),
    )


def half_theta6_select(coords: np.ndarray, eps: float) -> np.ndarray:
    """Per node and order, the global minimum of the greedy region.

    Same as :func:`region_minima` but over all nodes, with no radius
    restriction: the Schnyder graph of the three orders.
    """
    n = len(coords)
    out = np.full((n, 3), -1, dtype=np.int32)
    ids = np.arange(n)
    for x in range(n):
        regions = _region_masks(_up_masks(coords, x, eps))
        for k in range(3):
            pool = ids[regions[k]]
            if len(pool):
                out[x, k] = _band_min(coords[:, k], pool, eps)
    return out


def crossing_pairs(
    segments: np.ndarray, seg_nodes: np.ndarray, eps: float
) -> np.ndarray:
    """Indices (i, j), i < j, of segment pairs that properly cross.

    Segments are rows (x1, y1, x2, y2); pairs sharing a node id (per
    ``seg_nodes``) are never reported.  Orientation signs use ``eps`` on
    the raw cross product; collinear overlapping pairs count as crossings.
    """
    segs = np.asarray(segments, dtype=np.float64).reshape(-1, 4)
    m = len(segs)
    if m < 2:
        return np.zeros((0, 2), dtype=np.int32)
    iu, ju = np.triu_indices(m, 1)
    a = np.asarray(seg_nodes)
    share = (
        (a[iu, 0] == a[ju, 0])
        | (a[iu, 0] == a[ju, 1])
        | (a[iu, 1] == a[ju, 0])
        | (a[iu, 1] == a[ju, 1])
    )
    iu, ju = iu[~share], ju[~share]
    lo = np.minimum(segs[:, :2], segs[:, 2:])
    hi = np.maximum(segs[:, :2], segs[:, 2:])
    boxed = ~(
        (hi[iu, 0] < lo[ju, 0] - eps)
        | (hi[ju, 0] < lo[iu, 0] - eps)
        | (hi[iu, 1] < lo[ju, 1] - eps)
        | (hi[ju, 1] < lo[iu, 1] - eps)
    )
    iu, ju = iu[boxed], ju[boxed]
    if len(iu) == 0:
        return np.zeros((0, 2), dtype=np.int32)
    p1, p2 = segs[iu, :2], segs[iu, 2:]
    q1, q2 = segs[ju, :2], segs[ju, 2:]

    def osign(o1, o2, q):
        v = (o2[:, 0] - o1[:, 0]) * (q[:, 1] - o1[:, 1]) - (o2[:, 1] - o1[:, 1]) * (
            q[:, 0] - o1[:, 0]
        )
        return np.where(v > eps, 1, np.where(v < -eps, -1, 0))

    s1 = osign(p1, p2, q1)
    s2 = osign(p1, p2, q2)
    s3 = osign(q1, q2, p1)
    s4 = osign(q1, q2, p2)
    res = (s1 * s2 < 0) & (s3 * s4 < 0)
    colin = (s1 == 0) & (s2 == 0) & (s3 == 0) & (s4 == 0)
    for idx in np.nonzero(colin)[0]:
        res[idx] = _collinear_overlap(p1[idx], p2[idx], q1[idx], q2[idx], eps)
    return np.column_stack([iu[res], ju[res]]).astype(np.int32)


def _collinear_overlap(p1, p2, q1, q2, eps: float) -> bool:
    axis = 0 if abs(p2[0] - p1[0]) >= abs(p2[1] - p1[1]) else 1
    lo1, hi1 = sorted((p1[axis], p2[axis]))
    lo2, hi2 = sorted((q1[axis], q2[axis]))
    return min(hi1, hi2) - max(lo1, lo2) > eps


def dijkstra(
    indptr: np.ndarray, indices: np.ndarray, weights: np.ndarray, source: int
) -> np.ndarray:
    """Single-source shortest path distances on a CSR graph (label-setting)."""
    n = len(indptr) - 1
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for e in range(indptr[u], indptr[u + 1]):
            v = int(indices[e])
            nd = d + weights[e]
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist
