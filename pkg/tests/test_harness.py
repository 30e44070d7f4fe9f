"""Experiment runner, CSV emission, SVG rendering."""

import math

import numpy as np
import pytest

from vracspan.geometry import unit_square_anchors
from vracspan.graph import Rect, UNIT_SQUARE, generate_random_udg
from vracspan.harness import (
    ExperimentConfig,
    ExperimentRecord,
    emit_csv,
    read_csv,
    run_experiment,
)
from vracspan.planarize import build_gtilde_prime
from vracspan.render import render_svg
from vracspan.routing import route_zigzag

ANCHORS = unit_square_anchors()


def tiny_config(**kw):
    defaults = dict(
        n=40,
        r_values=(0.2, 0.3),
        trials_per_r=3,
        region=UNIT_SQUARE,
        anchors=ANCHORS,
        route_samples_per_trial=5,
        seed=4,
    )
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def test_config_validation():
    with pytest.raises(ValueError):
        tiny_config(r_values=())
    with pytest.raises(ValueError):
        tiny_config(trials_per_r=0)
    with pytest.raises(ValueError):
        tiny_config(r_values=(0.1, -0.2))


def test_trivial_experiment_consistent_fields():
    records = run_experiment(tiny_config(n=2, r_values=(0.3,), trials_per_r=1))
    assert len(records) == 1
    rec = records[0]
    assert rec.r == 0.3
    assert 0.0 <= rec.zigzag_success_rate <= 1.0
    assert 0.0 <= rec.greedy_success_rate <= 1.0
    assert rec.planarity_violations == 0
    assert rec.avg_virtual_edges >= 0.0
    assert rec.avg_ids_broadcast <= 6 * 2


def test_experiment_deterministic_and_worker_invariant():
    cfg = tiny_config()
    a = run_experiment(cfg, workers=1)
    b = run_experiment(cfg, workers=1)
    assert a == b
    c = run_experiment(cfg, workers=2)
    assert a == c


def test_experiment_progress_callback():
    seen = []
    run_experiment(tiny_config(trials_per_r=1), on_record=seen.append)
    assert [rec.r for rec in seen] == [0.2, 0.3]


def test_emit_csv_empty_and_single(tmp_path):
    path = tmp_path / "out.csv"
    emit_csv([], path)
    assert path.read_text().splitlines() == [
        "r,avg_degree_udg,avg_virtual_edges,avg_zigzag_stretch,avg_greedy_stretch,"
        "zigzag_success_rate,greedy_success_rate,avg_ids_broadcast,planarity_violations"
    ]
    rec = ExperimentRecord(0.11, 10.5, 1.625, 1.4, 1.3, 0.97, 0.55, 850.25, 0)
    emit_csv([rec], path)
    assert len(path.read_text().splitlines()) == 2


def test_csv_roundtrip_exact(tmp_path):
    records = run_experiment(tiny_config())
    path = tmp_path / "out.csv"
    emit_csv(records, path, comments=["protocol: uniform connected pairs"])
    assert path.read_text().startswith("# protocol")
    parsed = read_csv(path)
    assert parsed == records


def test_csv_rejects_foreign_header(tmp_path):
    path = tmp_path / "out.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_csv(path)


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def test_render_empty_graph(tmp_path):
    g = generate_random_udg(0, 0.1, UNIT_SQUARE, ANCHORS, seed=0)
    out = tmp_path / "empty.svg"
    text = render_svg(g, path=out)
    assert text.startswith("<?xml")
    assert "</svg>" in text
    assert out.read_text() == text


def test_render_virtual_edge_distinguished(tmp_path):
    # instance known to carry virtual edges
    g = generate_random_udg(150, 0.12, UNIT_SQUARE, ANCHORS, seed=7)
    overlay, _ = build_gtilde_prime(g)
    assert overlay.virtual_count > 0
    text = render_svg(g, overlay)
    assert 'class="virtual-edge"' in text
    assert 'class="virtual-path"' in text
    assert 'class="real-edge"' in text


def test_render_route_and_determinism(tmp_path):
    g = generate_random_udg(120, 0.2, UNIT_SQUARE, ANCHORS, seed=9)
    overlay, _ = build_gtilde_prime(g)
    trace = route_zigzag(overlay, 0, g.n - 1)
    p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
    render_svg(g, overlay, trace, p1)
    render_svg(g, overlay, trace, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert 'class="route"' in p1.read_text()
