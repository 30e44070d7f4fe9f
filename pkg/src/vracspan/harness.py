"""Experiment runner: ensembles over the communication radius.

For each radius, generates random deployments, builds the augmented
overlay, verifies planarity, routes sampled messages with both algorithms
and aggregates virtual-edge counts, stretch, success rates and message
totals.  Everything is keyed off one seed: per-trial generators are
derived as (seed, radius index, trial index), so results do not depend on
the number of workers.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from typing import Callable, Optional, Sequence

import numpy as np

from .geometry import AnchorConfig, CoordVariant, unit_square_anchors
from .graph import Rect, UNIT_SQUARE, check_planarity, generate_random_udg
from .planarize import build_gtilde_prime, sample_connected_pairs
from .routing import RouterConfig, route_greedy, route_zigzag


@dataclass(frozen=True)
class ExperimentConfig:
    n: int = 300
    r_values: tuple[float, ...] = (0.11, 0.14, 0.17, 0.20, 0.225)
    trials_per_r: int = 1000
    region: Rect = UNIT_SQUARE
    anchors: AnchorConfig = field(default_factory=unit_square_anchors)
    route_samples_per_trial: int = 30
    seed: int = 0
    coordinate_variant: CoordVariant = CoordVariant.TRIANGLE_HEIGHT

    def __post_init__(self):
        if not self.r_values or any(r <= 0 for r in self.r_values):
            raise ValueError("r_values must be non-empty and positive")
        if self.trials_per_r < 1:
            raise ValueError("trials_per_r must be at least 1")
        if self.n < 0 or self.route_samples_per_trial < 0:
            raise ValueError("counts must be non-negative")


@dataclass(frozen=True)
class ExperimentRecord:
    """Aggregates for one radius value."""

    r: float
    avg_degree_udg: float
    avg_virtual_edges: float
    avg_zigzag_stretch: float
    avg_greedy_stretch: float
    zigzag_success_rate: float
    greedy_success_rate: float
    avg_ids_broadcast: float
    planarity_violations: int


@dataclass(frozen=True)
class _TrialStats:
    degree: float
    virtual_edges: int
    ids_broadcast: int
    crossings: int
    routes: int
    zz_delivered: int
    zz_stretch_sum: float
    gr_delivered: int
    gr_stretch_sum: float


def _trial_seed(seed: int, r_idx: int, trial: int, stream: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=seed, spawn_key=(r_idx, trial, stream))


def _run_trial(args: tuple[ExperimentConfig, int, int]) -> _TrialStats:
    cfg, r_idx, trial = args
    r = cfg.r_values[r_idx]
    gseed = int(_trial_seed(cfg.seed, r_idx, trial, 0).generate_state(1, np.uint64)[0])
    g = generate_random_udg(
        cfg.n, r, cfg.region, cfg.anchors, gseed, cfg.coordinate_variant
    )
    overlay, ledger = build_gtilde_prime(g)
    crossings = len(check_planarity(g, overlay))
    route_rng = np.random.Generator(
        np.random.PCG64(_trial_seed(cfg.seed, r_idx, trial, 1))
    )
    pairs = sample_connected_pairs(g, cfg.route_samples_per_trial, route_rng)
    rcfg = RouterConfig()
    zz_del = gr_del = 0
    zz_sum = gr_sum = 0.0
    for s, t in pairs:
        denom = g.dist(s, t)
        zz = route_zigzag(overlay, s, t, rcfg)
        if zz.delivered:
            zz_del += 1
            zz_sum += zz.euclid_length / denom
        gr = route_greedy(overlay, s, t, rcfg)
        if gr.delivered:
            gr_del += 1
            gr_sum += gr.euclid_length / denom
    degree = (2.0 * g.edge_count / g.n) if g.n else 0.0
    return _TrialStats(
        degree=degree,
        virtual_edges=overlay.virtual_count,
        ids_broadcast=ledger.ids_broadcast,
        crossings=crossings,
        routes=len(pairs),
        zz_delivered=zz_del,
        zz_stretch_sum=zz_sum,
        gr_delivered=gr_del,
        gr_stretch_sum=gr_sum,
    )


def _fold(r: float, stats: Sequence[_TrialStats]) -> ExperimentRecord:
    trials = len(stats)
    routes = sum(s.routes for s in stats)
    zz_del = sum(s.zz_delivered for s in stats)
    gr_del = sum(s.gr_delivered for s in stats)
    return ExperimentRecord(
        r=r,
        avg_degree_udg=sum(s.degree for s in stats) / trials,
        avg_virtual_edges=sum(s.virtual_edges for s in stats) / trials,
        avg_zigzag_stretch=(
            sum(s.zz_stretch_sum for s in stats) / zz_del if zz_del else math.nan
        ),
        avg_greedy_stretch=(
            sum(s.gr_stretch_sum for s in stats) / gr_del if gr_del else math.nan
        ),
        zigzag_success_rate=zz_del / routes if routes else 0.0,
        greedy_success_rate=gr_del / routes if routes else 0.0,
        avg_ids_broadcast=sum(s.ids_broadcast for s in stats) / trials,
        planarity_violations=sum(s.crossings for s in stats),
    )


def run_experiment(
    cfg: ExperimentConfig,
    workers: int = 1,
    on_record: Optional[Callable[[ExperimentRecord], None]] = None,
) -> list[ExperimentRecord]:
    """One record per radius value; deterministic given cfg (incl. seed).

    ``workers`` > 1 runs trials in separate processes; the aggregation
    folds results in trial order either way, so the output is identical.
    ``on_record`` is invoked as each radius completes (progress reporting).
    """
    records = []
    for r_idx, r in enumerate(cfg.r_values):
        tasks = [(cfg, r_idx, trial) for trial in range(cfg.trials_per_r)]
        if workers <= 1:
            stats = [_run_trial(a) for a in tasks]
        else:
            with ProcessPoolExecutor(max_workers=workers) as ex:
                stats = list(ex.map(_run_trial, tasks, chunksize=4))
        rec = _fold(r, stats)
        records.append(rec)
        if on_record is not None:
            on_record(rec)
    return records


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------

CSV_COLUMNS = tuple(f.name for f in fields(ExperimentRecord))


def emit_csv(
    records: Sequence[ExperimentRecord], path, comments: Sequence[str] = ()
) -> None:
    """Header plus one row per record; full-precision decimal notation.

    Optional comment lines (prefixed ``#``) document the sampling protocol
    ahead of the header.  Values are written with ``repr`` so a parse-back
    reproduces the records bit for bit.
    """
    try:
        with open(path, "w", newline="") as f:
            for line in comments:
                f.write(f"# {line}\n")
            w = csv.writer(f, lineterminator="\n")
            w.writerow(CSV_COLUMNS)
            for rec in records:
                w.writerow([repr(getattr(rec, c)) for c in CSV_COLUMNS])
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc}") from exc


def read_csv(path) -> list[ExperimentRecord]:
    """Parse a file produced by :func:`emit_csv` back into records."""
    types = {f.name: f.type for f in fields(ExperimentRecord)}
    out = []
    try:
        with open(path, newline="") as f:
            rows = [ln for ln in f if not ln.startswith("#")]
    except OSError as exc:
        raise OSError(f"cannot read CSV from {path}: {exc}") from exc
    reader = csv.reader(rows)
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header in {path}: {header}")
    for row in reader:
        kw = {}
        for name, value in zip(CSV_COLUMNS, row):
            kw[name] = int(value) if types[name] in ("int", int) else float(value)
        out.append(ExperimentRecord(**kw))
    return out
