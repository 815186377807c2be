"""Command-line front end: tile, tree, plan and bench subcommands."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from . import bench, brick_tiling, grid_map, pipeline, render, tree_builder
from .coverage_path import RobotParams


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".turncover-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        _write_atomic(path, text)


class CliError(Exception):
    def __init__(self, category: str, detail: str):
        super().__init__(f"{category}: {detail}")
        self.category = category


def _load_map(args) -> grid_map.GridMap:
    if args.map is None:
        raise CliError("usage error", "--map is required")
    try:
        data = Path(args.map).read_bytes()
    except OSError as exc:
        raise CliError("io error", str(exc)) from exc
    try:
        return grid_map.parse_map(data, args.format, args.d)
    except grid_map.MapFormatError as exc:
        raise CliError("parse error", str(exc)) from exc


def _params(args) -> RobotParams:
    return RobotParams(accel=args.accel, v_max=args.vmax,
                       omega=args.omega, tool_width=args.d)


def _parse_start(value: str) -> tuple[int, int]:
    try:
        x, y = value.split(",")
        return (int(x), int(y))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"start must look like x,y — got {value!r}"
        ) from exc


def _component(grid):
    try:
        return pipeline.build_component(grid, None)
    except grid_map.MapFormatError as exc:
        raise CliError("parse error", str(exc)) from exc


def cmd_tile(args) -> int:
    grid = _load_map(args)
    try:
        span = _component(grid)
        seg_graph = brick_tiling.build_segment_graph(span)
        matching = brick_tiling.maximum_matching(seg_graph)
        keep = brick_tiling.max_independent_set(seg_graph, matching)
        bricks = brick_tiling.tiling_from_independent_set(span, seg_graph, keep)
    except grid_map.DisconnectedGraphError as exc:
        raise CliError("disconnected", str(exc)) from exc
    s, t, r = len(span.nodes), len(keep), len(bricks)
    if r != s - t:
        raise AssertionError(f"tiling identity violated: R={r} S={s} T={t}")
    _emit(args.out, brick_tiling.tiling_to_text(span, bricks))
    print(f"S={s} T={t} R={r}")
    return 0


def cmd_tree(args) -> int:
    grid = _load_map(args)
    try:
        span = _component(grid)
        tree, bricks = pipeline.build_tree(span, args.method, args.seed)
    except grid_map.DisconnectedGraphError as exc:
        raise CliError("disconnected", str(exc)) from exc
    _emit(args.out, tree_builder.tree_to_text(tree))
    if args.svg:
        _write_atomic(args.svg, render.render_svg(grid, bricks, tree))
    print(f"edges={len(tree.edges)} turns={tree_builder.tree_turns(tree)}")
    return 0


def plan_record_text(result: pipeline.PlanResult, d: float) -> str:
    """One line per robot: id, anchored loop index, twist count, time
    (3 decimals), then metric waypoints as x:y pairs."""
    lines = []
    for robot in result.plan.robots:
        waypoints = " ".join(
            f"{(x + 0.5) * d:.3f}:{(y + 0.5) * d:.3f}" for x, y in robot.sequence
        )
        lines.append(
            f"robot={robot.robot_id} anchor={robot.anchored} "
            f"twists={robot.twists.n} time={robot.time:.3f} "
            f"waypoints={waypoints}"
        )
    return "\n".join(lines) + "\n"


def cmd_plan(args) -> int:
    grid = _load_map(args)
    starts = args.start or None
    if starts is not None and len(starts) != args.robots:
        raise CliError(
            "usage error",
            f"{len(starts)} --start values for --robots {args.robots}",
        )
    try:
        result = pipeline.plan(
            grid,
            k=args.robots,
            starts=starts,
            params=_params(args),
            tree_method=args.method,
            seed=args.seed,
        )
    except grid_map.DisconnectedGraphError as exc:
        raise CliError("disconnected", str(exc)) from exc
    except grid_map.MapFormatError as exc:
        raise CliError("parse error", str(exc)) from exc
    except ValueError as exc:
        raise CliError("planning error", str(exc)) from exc
    _emit(args.out, plan_record_text(result, args.d))
    if args.svg:
        _write_atomic(
            args.svg, render.render_svg(grid, result.bricks, result.tree,
                                        result.plan)
        )
    return 0


def cmd_bench(args) -> int:
    if args.maps < 0:
        raise CliError("usage error", "--maps must be nonnegative")
    mega = args.mega
    grids = []
    for i in range(args.maps):
        seed = args.seed + i
        try:
            grids.append(
                (f"random-{seed}",
                 bench.generate_random_map(mega, args.obstacle_ratio, seed,
                                           args.d))
            )
        except ValueError as exc:
            raise CliError("planning error", str(exc)) from exc
    rows = bench.compare_trees(grids, args.seed)
    reports = []
    for name, grid in grids:
        for k in args.robots:
            scenario = bench.Scenario(
                name=name, grid=grid, k=k, params=_params(args),
                tree_method=args.method, seed=args.seed,
            )
            reports.append(bench.run_scenario(scenario))
    text = bench.turns_table(rows) + "\n" + bench.report_table(reports)
    if args.records:
        _write_atomic(
            args.records,
            "".join(r.record_line() + "\n" for r in reports),
        )
    _emit(args.out, text)
    return 0


def _int_pair(value: str) -> tuple[int, int]:
    try:
        a, b = value.split(",")
        return (int(a), int(b))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected W,H — got {value!r}"
        ) from exc


def _int_list(value: str) -> list[int]:
    try:
        return [int(tok) for tok in value.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated integers — got {value!r}"
        ) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turncover",
        description="Turn-minimizing multi-robot coverage planning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_map=True):
        if needs_map:
            p.add_argument("--map", help="map file path")
            p.add_argument("--format", choices=("movingai", "grid01"),
                           default="grid01")
        p.add_argument("--d", type=float, default=0.5,
                       help="tool width / unit cell size in meters")
        p.add_argument("--vmax", type=float, default=0.5)
        p.add_argument("--omega", type=float, default=0.8)
        p.add_argument("--accel", type=float, default=0.6)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output path (default stdout)")

    p_tile = sub.add_parser("tile", help="minimum brick tiling")
    common(p_tile)
    p_tile.set_defaults(func=cmd_tile)

    p_tree = sub.add_parser("tree", help="spanning tree construction")
    common(p_tree)
    p_tree.add_argument("--method", choices=bench.TREE_METHODS, default="tmstc")
    p_tree.add_argument("--svg", default=None)
    p_tree.set_defaults(func=cmd_tree)

    p_plan = sub.add_parser("plan", help="multi-robot coverage plan")
    common(p_plan)
    p_plan.add_argument("--robots", type=int, default=1)
    p_plan.add_argument("--start", action="append", type=_parse_start,
                        help="robot start cell x,y (repeatable)")
    p_plan.add_argument("--method", choices=bench.TREE_METHODS, default="tmstc")
    p_plan.add_argument("--svg", default=None)
    p_plan.set_defaults(func=cmd_plan)

    p_bench = sub.add_parser("bench", help="experiment harness")
    common(p_bench, needs_map=False)
    p_bench.add_argument("--maps", type=int, default=5,
                         help="number of generated random maps")
    p_bench.add_argument("--mega", type=_int_pair, default=(10, 10),
                         help="mega-cell dimensions W,H of generated maps")
    p_bench.add_argument("--obstacle-ratio", type=float, default=0.1)
    p_bench.add_argument("--robots", type=_int_list, default=[1, 2, 4],
                         help="robot counts, comma-separated")
    p_bench.add_argument("--method", choices=bench.TREE_METHODS,
                         default="tmstc")
    p_bench.add_argument("--records", default=None,
                         help="machine-readable record file")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
