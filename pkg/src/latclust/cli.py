"""Command-line front end: cluster at one threshold, sweep K(T), or generate data.

Exit codes: 0 success, 2 usage error, 3 input/validation error, 4
nonconvergence. Every run echoes its full effective configuration to stderr
so any output can be reproduced from the log alone.
"""

import argparse
import sys

from .dynamics import (
    DEFAULT_ALPHA,
    DEFAULT_MAX_ITERS,
    DynamicsConfig,
    cluster_at_threshold,
)
from .errors import LatclustError, NonConvergenceError, ParameterError
from .io import (
    BlobSpec,
    gen_blobs,
    load_iris,
    read_distance_csv,
    read_points_csv,
    render_curve_svg,
    write_curve_tsv,
    write_plateau_json,
    write_result_json,
)
from .model import distances_from_points
from .sweep import DEFAULT_STEPS, detect_plateaus, make_grid, sweep

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NONCONVERGENCE = 4


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latclust",
        description="Distance-based clustering via lateral-inhibition activity "
        "transfer, with K(T) plateau analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="partition the input at a single threshold")
    _add_input_args(cluster)
    cluster.add_argument("--t", type=float, required=True, help="interaction threshold")
    _add_dynamics_args(cluster)
    cluster.add_argument("--out-json", metavar="PATH", help="write the result document here")

    sw = sub.add_parser("sweep", help="evaluate K(T) over a threshold grid")
    _add_input_args(sw)
    sw.add_argument("--grid", choices=["uniform", "distance-quantile"], default="uniform")
    sw.add_argument("--steps", type=int, default=DEFAULT_STEPS, help="grid points (uniform mode)")
    sw.add_argument("--t-min", type=float, default=0.0)
    sw.add_argument("--t-max", default="auto", help='threshold ceiling, or "auto" for 1.01 x max distance')
    _add_dynamics_args(sw)
    sw.add_argument("--min-class-size", type=int, default=1,
                    help="classes smaller than this are dropped from the filtered count")
    sw.add_argument("--top", type=int, default=5, help="plateaus to print")
    sw.add_argument("--out-tsv", metavar="PATH", help="write the K(T) samples here")
    sw.add_argument("--out-plateaus", metavar="PATH", help="write the ranked plateau report here")
    sw.add_argument("--out-svg", metavar="PATH", help="render the K(T) figure here")

    gen = sub.add_parser("gen", help="generate seeded Gaussian blobs as a points CSV")
    gen.add_argument("--clusters", type=int, required=True)
    gen.add_argument("--points-per", type=int, required=True)
    gen.add_argument("--dim", type=int, default=2)
    gen.add_argument("--sigma", type=float, default=1.0)
    gen.add_argument("--center-box", type=float, default=10.0)
    gen.add_argument("--min-separation", type=float, default=0.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", metavar="PATH", required=True)
    return parser


def _add_input_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="points or distance CSV")
    src.add_argument("--iris", action="store_true", help="use the bundled iris dataset")
    p.add_argument("--kind", choices=["points", "distances"], default="points")
    p.add_argument("--has-header", action="store_true", help="skip the first CSV row")
    p.add_argument("--label-column", type=int, default=None,
                   help="0-based index of a label column to hold out")


def _add_dynamics_args(p):
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="transfer speed")
    p.add_argument("--max-iters", type=int, default=DEFAULT_MAX_ITERS)


def _load_distances(args):
    if args.iris:
        points, _ = load_iris()
        return distances_from_points(points), "iris"
    if args.kind == "distances":
        return read_distance_csv(args.input), args.input
    points, _ = read_points_csv(args.input, has_header=args.has_header,
                                label_column=args.label_column)
    return distances_from_points(points), args.input


def _log(line):
    print(f"[latclust] {line}", file=sys.stderr)


def cmd_cluster(args):
    dm, source = _load_distances(args)
    cfg = DynamicsConfig(alpha=args.alpha, max_iters=args.max_iters)
    _log(f"cluster: input={source} kind={args.kind} n={dm.n} t={args.t} "
         f"alpha={cfg.alpha} max_iters={cfg.max_iters} stagnation_eps={cfg.stagnation_eps}")
    result = cluster_at_threshold(dm, args.t, cfg)
    if args.out_json:
        write_result_json(result, args.out_json)
    print(f"k={result.k}")
    print("class_sizes=" + ",".join(str(int(c)) for c in result.class_sizes))
    return EXIT_OK


def cmd_sweep(args):
    dm, source = _load_distances(args)
    cfg = DynamicsConfig(alpha=args.alpha, max_iters=args.max_iters)
    if args.t_max == "auto":
        t_max = None
    else:
        try:
            t_max = float(args.t_max)
        except ValueError:
            raise ParameterError(f"--t-max must be a number or 'auto', got {args.t_max!r}") from None
    grid = make_grid(dm, mode=args.grid, steps=args.steps, t_min=args.t_min, t_max=t_max)
    _log(f"sweep: input={source} kind={args.kind} n={dm.n} grid={grid.mode} "
         f"points={grid.t_values.size} t_min={grid.t_min} t_max={grid.t_max} "
         f"alpha={cfg.alpha} max_iters={cfg.max_iters} stagnation_eps={cfg.stagnation_eps} "
         f"min_class_size={args.min_class_size}")
    curve = sweep(dm, grid, cfg, min_class_size=args.min_class_size)
    plateaus = detect_plateaus(curve, use_filtered=args.min_class_size > 1)
    if args.out_tsv:
        write_curve_tsv(curve, args.out_tsv)
    if args.out_plateaus:
        write_plateau_json(plateaus, args.out_plateaus)
    if args.out_svg:
        render_curve_svg(curve, plateaus, args.out_svg)
    bad = sum(1 for s in curve.samples if not s.converged)
    if bad:
        _log(f"sweep: {bad} grid point(s) did not converge")
    for p in plateaus[: args.top]:
        print(f"K={p.k} t=[{p.t_start:.6g}, {p.t_end:.6g}] width={p.width:.6g} "
              f"samples={p.sample_count}")
    return EXIT_OK


def cmd_gen(args):
    spec = BlobSpec(
        clusters=args.clusters,
        points_per_cluster=args.points_per,
        sigma=args.sigma,
        dim=args.dim,
        center_box=args.center_box,
        seed=args.seed,
        min_center_separation=args.min_separation,
    )
    _log(f"gen: clusters={spec.clusters} points_per={spec.points_per_cluster} "
         f"dim={spec.dim} sigma={spec.sigma} center_box={spec.center_box} "
         f"min_separation={spec.min_center_separation} seed={spec.seed}")
    points, labels = gen_blobs(spec)
    lines = []
    for row, label in zip(points.points, labels):
        lines.append(",".join(repr(float(v)) for v in row) + f",{int(label)}")
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"generated n={points.n} m={points.m} clusters={spec.clusters} -> {args.out}")
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"cluster": cmd_cluster, "sweep": cmd_sweep, "gen": cmd_gen}[args.command]
    try:
        return handler(args)
    except NonConvergenceError as exc:
        print(f"latclust: error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (LatclustError, OSError) as exc:
        print(f"latclust: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
