"""Independent brute-force oracles shared by the test modules.

Deliberately written against different primitives than the package code
(simple-path enumeration instead of label-setting, plain dict adjacency
instead of CSR) so they can confirm the fast paths.
"""

import math

from vracspan.graph import Metric, neighbors


def enumerate_shortest(adj, s, t):
    """Exhaustive simple-path minimum (pruning branches already >= best)."""
    best = [math.inf]

    def walk(u, seen, total):
        if total >= best[0]:
            return
        if u == t:
            best[0] = total
            return
        for v, w in adj[u]:
            if v not in seen:
                walk(v, seen | {v}, total + w)

    walk(s, {s}, 0.0)
    return best[0]


def udg_adj(g, metric=Metric.EUCLIDEAN_LENGTH):
    return {
        u: [
            (v, 1.0 if metric is Metric.HOP_COUNT else g.dist(u, v))
            for v in neighbors(g, u)
        ]
        for u in range(g.n)
    }


def overlay_adj(overlay, metric=Metric.EUCLIDEAN_LENGTH):
    g = overlay.base
    adj = {u: [] for u in range(g.n)}
    for e in overlay.edges:
        w = 1.0 if metric is Metric.HOP_COUNT else g.dist(e.source, e.target)
        adj[e.source].append((e.target, w))
        adj[e.target].append((e.source, w))
    return adj
