# cython: language_level=3
"""Compiled kernels; exact mirror of the pure backend in ``_pure``.

Semantics (tolerances, tie-breaks, scan orders) are defined by the pure
module; any behavioural difference between the two backends is a bug, and
the test suite compares them on random instances.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY
from libc.stdlib cimport free, malloc

cnp.import_array()


cdef inline bint _lt(double ca, double cb, Py_ssize_t ia, Py_ssize_t ib, double eps) nogil:
    # ``a <_k b`` on one component: tolerance band falls back to id order.
    cdef double d = ca - cb
    if -eps <= d <= eps:
        return ia < ib
    return d < 0.0


cdef inline bint _in_region(const double[:, ::1] coords, Py_ssize_t x, Py_ssize_t z,
                            int k, double eps) nogil:
    # z in the k-th greedy region of x (0-based k).
    cdef int j
    if z == x:
        return False
    if not _lt(coords[x, k], coords[z, k], x, z, eps):
        return False
    for j in range(3):
        if j != k and not _lt(coords[z, j], coords[x, j], z, x, eps):
            return False
    return True


def disk_adjacency(positions, double r, double eps):
    """CSR adjacency (indptr, indices) of the closed-disk graph."""
    cdef const double[:, ::1] pts = np.ascontiguousarray(positions, dtype=np.float64).reshape(-1, 2)
    cdef Py_ssize_t n = pts.shape[0]
    indptr_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] indptr = indptr_arr
    if n == 0:
        return indptr_arr, np.zeros(0, dtype=np.int32)
    cdef double r2 = (r + eps) * (r + eps)
    cdef Py_ssize_t i, j
    cdef double dx, dy
    cdef Py_ssize_t total = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                dx = pts[i, 0] - pts[j, 0]
                dy = pts[i, 1] - pts[j, 1]
                if dx * dx + dy * dy <= r2:
                    total += 1
        indptr[i + 1] = total
    indices_arr = np.empty(total, dtype=np.int32)
    cdef cnp.int32_t[::1] indices = indices_arr
    cdef Py_ssize_t pos = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                dx = pts[i, 0] - pts[j, 0]
                dy = pts[i, 1] - pts[j, 1]
                if dx * dx + dy * dy <= r2:
                    indices[pos] = <cnp.int32_t> j
                    pos += 1
    return indptr_arr, indices_arr


def region_minima(coords, indptr, indices, double eps):
    """Per node and order, the in-range minimum of the greedy region."""
    cdef const double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef const cnp.int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int32_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = c.shape[0]
    cand_arr = np.full((n, 3), -1, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] cand = cand_arr
    cdef Py_ssize_t x, e, z
    cdef int k
    cdef double minv
    cdef bint found
    for x in range(n):
        for k in range(3):
            found = False
            minv = 0.0
            for e in range(ip[x], ip[x + 1]):
                z = idx[e]
                if _in_region(c, x, z, k, eps):
                    if not found or c[z, k] < minv:
                        minv = c[z, k]
                        found = True
            if found:
                for e in range(ip[x], ip[x + 1]):
                    z = idx[e]
                    if c[z, k] <= minv + eps and _in_region(c, x, z, k, eps):
                        cand[x, k] = <cnp.int32_t> z
                        break
    return cand_arr


cdef Py_ssize_t _region_ball_min(const double[:, ::1] c, const double[:, ::1] pts,
                                 Py_ssize_t x, int k, Py_ssize_t center,
                                 double r2, double eps) nogil:
    # minimum of region k of x restricted to disk(center); two passes so the
    # result matches the pure backend's band rule exactly.
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t z
    cdef double dx, dy, minv = 0.0
    cdef bint found = False
    for z in range(n):
        if _in_region(c, x, z, k, eps):
            dx = pts[z, 0] - pts[center, 0]
            dy = pts[z, 1] - pts[center, 1]
            if dx * dx + dy * dy <= r2:
                if not found or c[z, k] < minv:
                    minv = c[z, k]
                    found = True
    if not found:
        return -1
    for z in range(n):
        if c[z, k] <= minv + eps and _in_region(c, x, z, k, eps):
            dx = pts[z, 0] - pts[center, 0]
            dy = pts[z, 1] - pts[center, 1]
            if dx * dx + dy * dy <= r2:
                return z
    return -1


def rewire(coords, positions, double r, cand, double eps, bint recursive):
    """Replace selected edges whose region holds a better out-of-range node."""
    cdef const double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef const double[:, ::1] pts = np.ascontiguousarray(positions, dtype=np.float64).reshape(-1, 2)
    cdef Py_ssize_t n = c.shape[0]
    to_arr = np.array(cand, dtype=np.int32, copy=True).reshape(n, 3)
    cdef cnp.int32_t[:, ::1] to = to_arr
    indptr_arr = np.zeros(3 * n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] pip = indptr_arr
    cdef double r2 = (r + eps) * (r + eps)
    cdef Py_ssize_t budget = n if recursive else 1
    flat = []
    tripped = []
    cdef Py_ssize_t x, cur, w, step, t
    cdef int k
    cdef list chain
    cdef bint revisit
    for x in range(n):
        for k in range(3):
            cur = to[x, k]
            if cur >= 0:
                chain = [cur]
                for step in range(budget):
                    w = _region_ball_min(c, pts, x, k, cur, r2, eps)
                    if w == cur:
                        break
                    revisit = False
                    for t in chain:
                        if t == w:
                            revisit = True
                            break
                    if revisit:
                        tripped.append((x, k))
                        break
                    chain.append(w)
                    cur = w
                else:
                    if recursive:
                        tripped.append((x, k))
                if len(chain) > 1:
                    to[x, k] = <cnp.int32_t> chain[len(chain) - 1]
                    flat.append(x)
                    flat.extend(chain)
            pip[3 * x + k + 1] = len(flat)
    return (
        to_arr,
        np.array(flat, dtype=np.int32),
        indptr_arr,
        np.array(tripped, dtype=np.int32).reshape(-1, 2),
    )


def half_theta6_select(coords, double eps):
    """Per node and order, the global minimum of the greedy region."""
    cdef const double[:, ::1] c = np.ascontiguousarray(coords, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0]
    out_arr = np.full((n, 3), -1, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] out = out_arr
    cdef Py_ssize_t x, z
    cdef int k
    cdef double minv
    cdef bint found
    for x in range(n):
        for k in range(3):
            found = False
            minv = 0.0
            for z in range(n):
                if _in_region(c, x, z, k, eps):
                    if not found or c[z, k] < minv:
                        minv = c[z, k]
                        found = True
            if found:
                for z in range(n):
                    if c[z, k] <= minv + eps and _in_region(c, x, z, k, eps):
                        out[x, k] = <cnp.int32_t> z
                        break
    return out_arr


cdef inline int _osign(double ax, double ay, double bx, double by,
                       double qx, double qy, double eps) nogil:
    cdef double v = (bx - ax) * (qy - ay) - (by - ay) * (qx - ax)
    if v > eps:
        return 1
    if v < -eps:
        return -1
    return 0


cdef bint _collinear_overlap(double p1x, double p1y, double p2x, double p2y,
                             double q1x, double q1y, double q2x, double q2y,
                             double eps) nogil:
    cdef double lo1, hi1, lo2, hi2
    if (p2x - p1x if p2x >= p1x else p1x - p2x) >= (p2y - p1y if p2y >= p1y else p1y - p2y):
        lo1 = p1x if p1x < p2x else p2x
        hi1 = p2x if p1x < p2x else p1x
        lo2 = q1x if q1x < q2x else q2x
        hi2 = q2x if q1x < q2x else q1x
    else:
        lo1 = p1y if p1y < p2y else p2y
        hi1 = p2y if p1y < p2y else p1y
        lo2 = q1y if q1y < q2y else q2y
        hi2 = q2y if q1y < q2y else q1y
    return (hi1 if hi1 < hi2 else hi2) - (lo1 if lo1 > lo2 else lo2) > eps


def crossing_pairs(segments, seg_nodes, double eps):
    """Indices (i, j), i < j, of segment pairs that properly cross."""
    cdef const double[:, ::1] s = np.ascontiguousarray(segments, dtype=np.float64).reshape(-1, 4)
    cdef const cnp.int32_t[:, ::1] nodes = np.ascontiguousarray(seg_nodes, dtype=np.int32).reshape(-1, 2)
    cdef Py_ssize_t m = s.shape[0]
    out = []
    if m < 2:
        return np.zeros((0, 2), dtype=np.int32)
    lo_arr = np.minimum(np.asarray(s)[:, :2], np.asarray(s)[:, 2:])
    hi_arr = np.maximum(np.asarray(s)[:, :2], np.asarray(s)[:, 2:])
    cdef const double[:, ::1] lo = lo_arr
    cdef const double[:, ::1] hi = hi_arr
    cdef Py_ssize_t i, j
    cdef int s1, s2, s3, s4
    cdef bint hit
    for i in range(m):
        for j in range(i + 1, m):
            if (nodes[i, 0] == nodes[j, 0] or nodes[i, 0] == nodes[j, 1]
                    or nodes[i, 1] == nodes[j, 0] or nodes[i, 1] == nodes[j, 1]):
                continue
            if (hi[i, 0] < lo[j, 0] - eps or hi[j, 0] < lo[i, 0] - eps
                    or hi[i, 1] < lo[j, 1] - eps or hi[j, 1] < lo[i, 1] - eps):
                continue
            s1 = _osign(s[i, 0], s[i, 1], s[i, 2], s[i, 3], s[j, 0], s[j, 1], eps)
            s2 = _osign(s[i, 0], s[i, 1], s[i, 2], s[i, 3], s[j, 2], s[j, 3], eps)
            s3 = _osign(s[j, 0], s[j, 1], s[j, 2], s[j, 3], s[i, 0], s[i, 1], eps)
            s4 = _osign(s[j, 0], s[j, 1], s[j, 2], s[j, 3], s[i, 2], s[i, 3], eps)
            if s1 == 0 and s2 == 0 and s3 == 0 and s4 == 0:
                hit = _collinear_overlap(s[i, 0], s[i, 1], s[i, 2], s[i, 3],
                                         s[j, 0], s[j, 1], s[j, 2], s[j, 3], eps)
            else:
                hit = s1 * s2 < 0 and s3 * s4 < 0
            if hit:
                out.append((i, j))
    return np.array(out, dtype=np.int32).reshape(-1, 2)


def dijkstra(indptr, indices, weights, Py_ssize_t source):
    """Single-source shortest path distances on a CSR graph (label-setting).

    Heap ties on distance break on node id, matching the pure backend's
    tuple heap, so the two backends relax in the same order.
    """
    cdef const cnp.int64_t[::1] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const cnp.int32_t[::1] idx = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t n = ip.shape[0] - 1
    dist_arr = np.full(n, np.inf)
    cdef double[::1] dist = dist_arr
    cdef Py_ssize_t cap = idx.shape[0] + 2
    cdef double* hd = <double*> malloc(cap * sizeof(double))
    cdef Py_ssize_t* hn = <Py_ssize_t*> malloc(cap * sizeof(Py_ssize_t))
    if hd == NULL or hn == NULL:
        free(hd)
        free(hn)
        raise MemoryError()
    cdef Py_ssize_t size = 0
    cdef Py_ssize_t u, v, e, pos, parent, child
    cdef double d, nd

    dist[source] = 0.0
    hd[0] = 0.0
    hn[0] = source
    size = 1
    while size > 0:
        d = hd[0]
        u = hn[0]
        size -= 1
        # sift down the last element
        hd[0] = hd[size]
        hn[0] = hn[size]
        pos = 0
        while True:
            child = 2 * pos + 1
            if child >= size:
                break
            if child + 1 < size and (hd[child + 1] < hd[child] or
                                     (hd[child + 1] == hd[child] and hn[child + 1] < hn[child])):
                child += 1
            if hd[child] < hd[pos] or (hd[child] == hd[pos] and hn[child] < hn[pos]):
                hd[pos], hd[child] = hd[child], hd[pos]
                hn[pos], hn[child] = hn[child], hn[pos]
                pos = child
            else:
                break
        if d > dist[u]:
            continue
        for e in range(ip[u], ip[u + 1]):
            v = idx[e]
            nd = d + w[e]
            if nd < dist[v]:
                dist[v] = nd
                # push
                hd[size] = nd
                hn[size] = v
                pos = size
                size += 1
                while pos > 0:
                    parent = (pos - 1) // 2
                    if hd[pos] < hd[parent] or (hd[pos] == hd[parent] and hn[pos] < hn[parent]):
                        hd[pos], hd[parent] = hd[parent], hd[pos]
                        hn[pos], hn[parent] = hn[parent], hn[pos]
                        pos = parent
                    else:
                        break
    free(hd)
    free(hn)
    return dist_arr
