"""Command-line interface.

Subcommands: synth, superpixels, graph, solve, pipeline, eval, gridsearch,
render. Every run with fixed flags and inputs is bit-reproducible. Exit
codes: 0 ok, 2 validation error, 3 infeasible input or solver failure.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .errors import InfeasibleError, ValidationError
from .gridsearch import grid_search
from .metrics import evaluate
from .model import ClassSet, ScoreGrid, SolverParams, build_region_graph, make_pair_prior
from .objective import extract_instances
from .pixels import watershed
from .scenes import SyntheticScene, synth
from .solvers import solve_instance

SOLVERS = ("local", "oracle", "crf", "greedy")


def _parse_floats(text: str):
    return [float(v) for v in text.split(",") if v.strip()]


def _parse_classes(text: str):
    return frozenset(int(v) for v in text.split(",") if v.strip())


def _add_solver_flags(parser):
    parser.add_argument("--w", type=float, default=1.0, help="pairwise balance weight")
    parser.add_argument("--beta-small", type=float, default=-4.0)
    parser.add_argument("--beta-big", type=float, default=-4.0)
    parser.add_argument("--big-classes", type=_parse_classes, default=frozenset(),
                        help="comma-separated class ids using beta-big")
    parser.add_argument("--solver", choices=SOLVERS, default="local")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-rounds", type=int, default=10_000)
    parser.add_argument("--restarts", type=int, default=1)


def _params(args) -> SolverParams:
    return SolverParams(
        w=args.w, beta_small=args.beta_small, beta_big=args.beta_big,
        big_classes=args.big_classes, max_rounds=args.max_rounds, seed=args.seed,
    )


def _solve_graph(graph, args):
    classes = ClassSet(graph.num_labels)
    params = _params(args)
    prior = make_pair_prior(params, classes)
    result = solve_instance(graph, prior, params, args.solver, restarts=args.restarts)
    print(f"objective {result.objective!r} components {result.solution.num_components} "
          f"rounds {result.rounds} moves {result.moves_applied}")
    return result


def cmd_synth(args):
    scene = synth(args.height, args.width, args.instances, args.sigma,
                  args.seed, args.labels)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    io.write_score_grid(scene.semantic, out / "semantic.sgm")
    io.write_score_grid(scene.edge, out / "edge.sgm")
    io.write_instance_map(scene.gt, out / "gt.lbm")
    print(f"wrote scene with {args.instances} instances to {out}")
    return 0


def cmd_superpixels(args):
    spx = watershed(io.read_score_grid(args.edge), args.levels)
    io.write_superpixels(spx, args.output)
    print(f"{spx.region_count} superpixels -> {args.output}")
    return 0


def cmd_graph(args):
    graph = build_region_graph(
        io.read_superpixels(args.superpixels),
        io.read_score_grid(args.semantic),
        io.read_score_grid(args.edges),
    )
    io.write_region_graph(graph, args.output)
    print(f"{graph.node_count} nodes, {graph.edge_count} edges -> {args.output}")
    return 0


def cmd_solve(args):
    spx = io.read_superpixels(args.superpixels)
    graph = build_region_graph(
        spx, io.read_score_grid(args.semantic), io.read_score_grid(args.edges)
    )
    result = _solve_graph(graph, args)
    io.write_instance_map(extract_instances(spx, result.solution), args.output)
    return 0


def cmd_pipeline(args):
    edge = io.read_score_grid(args.edges)
    spx = watershed(edge, args.levels)
    if args.spx_out:
        io.write_superpixels(spx, args.spx_out)
    graph = build_region_graph(spx, io.read_score_grid(args.semantic), edge)
    result = _solve_graph(graph, args)
    io.write_instance_map(extract_instances(spx, result.solution), args.output)
    return 0


def cmd_eval(args):
    report = evaluate(io.read_instance_map(args.pred), io.read_instance_map(args.gt))
    lines = ["metric,class,precision,recall"]
    for cls in sorted(report.per_class):
        m = report.per_class[cls]
        lines.append(f"class,{cls},{m.precision!r},{m.recall!r}")
    lines.append(f"mean,,{report.mean_precision!r},{report.mean_recall!r}")
    lines.append(f"overall,,{report.precision!r},{report.recall!r}")
    lines.append(f"exact_match,,{int(report.exact_match)},{int(report.exact_match)}")
    text = "\n".join(lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(text, encoding="ascii")
    print(f"precision {report.precision:.4f} recall {report.recall:.4f} "
          f"f1 {report.f1:.4f} exact_match {report.exact_match}")
    if args.figure:
        from .render import save_report_figure

        save_report_figure(report, args.figure)
    return 0


def _load_scene(directory: Path) -> SyntheticScene:
    gt = io.read_instance_map(directory / "gt.lbm")
    return SyntheticScene(
        gt,
        io.read_score_grid(directory / "semantic.sgm"),
        io.read_score_grid(directory / "edge.sgm"),
        noise_level=0.0,
        seed=0,
    )


def cmd_gridsearch(args):
    scenes = [_load_scene(Path(d)) for d in args.scene_dirs]
    result = grid_search(
        scenes, args.w, args.beta_small, args.beta_big,
        folds=args.folds, big_classes=args.big_classes,
        quantization_levels=args.levels, max_rounds=args.max_rounds, seed=args.seed,
    )
    lines = ["w,beta_small,beta_big,mean_f1," +
             ",".join(f"fold{i}_f1" for i in range(args.folds))]
    for row in result.rows:
        folds = ",".join(repr(v) for v in row.fold_f1)
        lines.append(f"{row.w!r},{row.beta_small!r},{row.beta_big!r},{row.mean_f1!r},{folds}")
    text = "\n".join(lines) + "\n"
    if args.csv:
        Path(args.csv).write_text(text, encoding="ascii")
    best = result.best
    print(f"best w={best.w:g} beta_small={best.beta_small:g} beta_big={best.beta_big:g} "
          f"({result.n_solves} solver runs)")
    if args.figure:
        from .render import save_grid_figure

        save_grid_figure(result.rows, args.figure)
    return 0


def cmd_render(args):
    from .render import save_instance_figure

    save_instance_figure(io.read_instance_map(args.instances), args.output)
    print(f"wrote {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regioncut",
        description="Superpixel region-graph instance segmentation toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a synthetic scene")
    p.add_argument("--height", type=int, default=128)
    p.add_argument("--width", type=int, default=128)
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--labels", type=int, default=8)
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("superpixels", help="watershed an edge map into superpixels")
    p.add_argument("edge", help="edge score grid (.sgm)")
    p.add_argument("-o", "--output", required=True, help="superpixel map (.lbm)")
    p.add_argument("--levels", type=int, default=256)
    p.set_defaults(func=cmd_superpixels)

    p = sub.add_parser("graph", help="dump the region adjacency graph")
    p.add_argument("--superpixels", required=True)
    p.add_argument("--semantic", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("solve", help="solve on existing superpixels")
    p.add_argument("--superpixels", required=True)
    p.add_argument("--semantic", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("-o", "--output", required=True, help="instance map (.lbm)")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("pipeline", help="superpixels + graph + solve in one shot")
    p.add_argument("--semantic", required=True)
    p.add_argument("--edges", required=True)
    p.add_argument("-o", "--output", required=True, help="instance map (.lbm)")
    p.add_argument("--levels", type=int, default=256)
    p.add_argument("--spx-out", default=None)
    _add_solver_flags(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("eval", help="compare predicted and ground-truth instances")
    p.add_argument("--pred", required=True)
    p.add_argument("--gt", required=True)
    p.add_argument("--csv", default=None)
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gridsearch", help="cross-validated parameter search")
    p.add_argument("scene_dirs", nargs="+",
                   help="directories holding semantic.sgm, edge.sgm, gt.lbm")
    p.add_argument("--w", type=_parse_floats, required=True)
    p.add_argument("--beta-small", type=_parse_floats, required=True)
    p.add_argument("--beta-big", type=_parse_floats, required=True)
    p.add_argument("--folds", type=int, default=2)
    p.add_argument("--big-classes", type=_parse_classes, default=frozenset())
    p.add_argument("--levels", type=int, default=256)
    p.add_argument("--max-rounds", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_gridsearch)

    p = sub.add_parser("render", help="render an instance map to an image")
    p.add_argument("instances", help="instance map (.lbm)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
