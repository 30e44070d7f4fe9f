"""Command line interface.

Subcommands: ``generate`` (random instance to a graph file), ``planarize``
(build an overlay and save its edge set), ``route`` (print a hop-by-hop
trace), ``experiment`` (full ensemble sweep to CSV) and ``render`` (SVG).
Default output locations honor the VRACSPAN_OUTDIR environment variable.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import formats, harness, render
from .geometry import CoordVariant, unit_square_anchors
from .graph import Rect, check_planarity, generate_random_udg
from .planarize import (
    PlanarOverlay,
    build_gtilde,
    build_gtilde_prime,
    build_gtilde_prime_euclidean_announce,
)
from .routing import route_greedy, route_zigzag


def _outdir() -> str:
    return os.environ.get("VRACSPAN_OUTDIR", ".")


def _outpath(name: str, override) -> str:
    return override if override else os.path.join(_outdir(), name)


def _parse_region(text: str) -> Rect:
    vals = [float(v) for v in text.split(",")]
    if len(vals) != 4:
        raise argparse.ArgumentTypeError("region must be x0,y0,x1,y1")
    return Rect(*vals)


def _parse_rvalues(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _variant(name: str) -> CoordVariant:
    return CoordVariant.TRIANGLE_HEIGHT if name == "height" else CoordVariant.EUCLIDEAN_DISTANCE


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="vracspan", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("generate", help="generate a random unit disk graph")
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--region", type=_parse_region, default=Rect(0.0, 0.0, 1.0, 1.0))
    p.add_argument("--variant", choices=("height", "euclidean"), default="height")
    p.add_argument("--out", default=None)

    p = sub.add_parser("planarize", help="build an overlay from a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument(
        "--mode",
        choices=("gtilde-capped", "gtilde-prime", "euclidean-announce"),
        default="gtilde-prime",
    )
    p.add_argument("--out", default=None)

    p = sub.add_parser("route", help="route one message and print the trace")
    p.add_argument("--graph", required=True)
    p.add_argument("--overlay", required=True)
    p.add_argument("--from", dest="src", type=int, required=True)
    p.add_argument("--to", dest="dst", type=int, required=True)
    p.add_argument("--algo", choices=("zigzag", "greedy"), default="zigzag")

    p = sub.add_parser("experiment", help="run the ensemble sweep and emit CSV")
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--r-values", type=_parse_rvalues, default=(0.11, 0.14, 0.17, 0.20, 0.225))
    p.add_argument("--trials-per-r", type=int, default=1000)
    p.add_argument("--route-samples", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--region", type=_parse_region, default=Rect(0.0, 0.0, 1.0, 1.0))
    p.add_argument("--variant", choices=("height", "euclidean"), default="height")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fast", action="store_true", help="drop to 100 trials per radius")
    p.add_argument("--out", default=None)

    p = sub.add_parser("render", help="render a graph (and overlay/route) to SVG")
    p.add_argument("--graph", required=True)
    p.add_argument("--overlay", default=None)
    p.add_argument("--route", default=None, metavar="FROM,TO,ALGO")
    p.add_argument("--out", default=None)

    args = ap.parse_args(argv)
    return {
        "generate": _cmd_generate,
        "planarize": _cmd_planarize,
        "route": _cmd_route,
        "experiment": _cmd_experiment,
        "render": _cmd_render,
    }[args.cmd](args)


def _cmd_generate(args) -> int:
    g = generate_random_udg(
        args.n, args.r, args.region, unit_square_anchors(), args.seed, _variant(args.variant)
    )
    out = _outpath("graph.txt", args.out)
    formats.save_graph(g, out)
    print(f"wrote {out}: n={g.n} r={g.radius} variant={g.variant.value}")
    return 0


def _build(mode: str, g):
    if mode == "gtilde-capped":
        return build_gtilde(g, cap_edges=True), None
    if mode == "gtilde-prime":
        overlay, ledger = build_gtilde_prime(g)
        return overlay, ledger
    overlay, ledger = build_gtilde_prime_euclidean_announce(g)
    return overlay, ledger


def _cmd_planarize(args) -> int:
    g = formats.load_graph(args.graph)
    overlay, ledger = _build(args.mode, g)
    crossings = len(check_planarity(g, overlay))
    out = _outpath("edges.txt", args.out)
    formats.save_edges(overlay.edges, out)
    msg = f"wrote {out}: edges={len(overlay.edges)} virtual={overlay.virtual_count} crossings={crossings}"
    if ledger is not None:
        msg += f" ids_broadcast={ledger.ids_broadcast} rounds={ledger.rounds}"
    print(msg)
    return 0 if crossings == 0 else 1


def _cmd_route(args) -> int:
    g = formats.load_graph(args.graph)
    edges = formats.load_edges(args.overlay)
    overlay = PlanarOverlay(
        g, edges, sum(1 for e in edges if e.kind.value == "virtual")
    )
    router = route_zigzag if args.algo == "zigzag" else route_greedy
    trace = router(overlay, args.src, args.dst)
    for node, mode in trace.hops:
        print(f"{node} {mode.value} {g.dist(node, args.dst):.6f}")
    print(f"outcome={trace.outcome.value} hops={trace.hop_count} length={trace.euclid_length:.6f}")
    return 0 if trace.delivered else 1


def _cmd_experiment(args) -> int:
    cfg = harness.ExperimentConfig(
        n=args.n,
        r_values=args.r_values,
        trials_per_r=100 if args.fast else args.trials_per_r,
        region=args.region,
        anchors=unit_square_anchors(),
        route_samples_per_trial=args.route_samples,
        seed=args.seed,
        coordinate_variant=_variant(args.variant),
    )
    def progress(rec):
        print(
            f"r={rec.r:<6g} degree={rec.avg_degree_udg:6.2f} "
            f"virtual={rec.avg_virtual_edges:6.3f} "
            f"zigzag={rec.zigzag_success_rate:6.1%} greedy={rec.greedy_success_rate:6.1%} "
            f"stretch={rec.avg_zigzag_stretch:5.3f} crossings={rec.planarity_violations}",
            file=sys.stderr,
        )

    try:
        records = harness.run_experiment(cfg, workers=max(1, args.workers), on_record=progress)
    except Exception as exc:  # a trial aborted
        print(f"experiment aborted: {exc}", file=sys.stderr)
        return 1
    out = _outpath("experiment.csv", args.out)
    harness.emit_csv(
        records,
        out,
        comments=[
            "route pairs sampled uniformly among UDG-connected ordered pairs; "
            "failed routes excluded from stretch averages",
            f"n={cfg.n} trials_per_r={cfg.trials_per_r} "
            f"route_samples_per_trial={cfg.route_samples_per_trial} seed={cfg.seed} "
            f"variant={cfg.coordinate_variant.value}",
        ],
    )
    print(f"wrote {out}")
    violations = sum(rec.planarity_violations for rec in records)
    return 0 if violations == 0 else 1


def _cmd_render(args) -> int:
    g = formats.load_graph(args.graph)
    overlay = None
    trace = None
    if args.overlay:
        edges = formats.load_edges(args.overlay)
        overlay = PlanarOverlay(
            g, edges, sum(1 for e in edges if e.kind.value == "virtual")
        )
    if args.route:
        if overlay is None:
            print("--route needs --overlay", file=sys.stderr)
            return 2
        src, dst, algo = args.route.split(",")
        router = route_zigzag if algo == "zigzag" else route_greedy
        trace = router(overlay, int(src), int(dst))
    out = _outpath("graph.svg", args.out)
    render.render_svg(g, overlay, trace, out)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
