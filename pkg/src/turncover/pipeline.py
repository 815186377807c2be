"""End-to-end planning pipeline shared by the CLI and the bench harness."""

from __future__ import annotations

from dataclasses import dataclass

from . import balance, brick_tiling, coverage_path, grid_map, tree_builder
from .balance import CoveragePlan, RobotStart
from .brick_tiling import BrickSet
from .coverage_path import CoverageLoop, RobotParams
from .grid_map import Coord, GridMap, SpanningGraph
from .tree_builder import SpanningTree


@dataclass(frozen=True)
class PlanResult:
    span: SpanningGraph
    bricks: BrickSet | None
    tree: SpanningTree
    loop: CoverageLoop
    plan: CoveragePlan
    tree_turns: int

    @property
    def brick_count(self) -> int:
        return len(self.bricks) if self.bricks is not None else 0


def build_component(grid: GridMap, starts: list[Coord] | None) -> SpanningGraph:
    """Spanning graph restricted to the component holding the starts."""
    span, _cover = grid_map.build_spanning_graph(grid)
    seeds = [(x // 2, y // 2) for x, y in starts] if starts else []
    return grid_map.connected_component(span, seeds)


def build_tree(span: SpanningGraph, method: str, seed: int = 0
               ) -> tuple[SpanningTree, BrickSet | None]:
    if method == "tmstc":
        bricks = brick_tiling.min_brick_tiling(span)
        return tree_builder.merge_bricks(bricks, span), bricks
    if method == "dfs":
        return tree_builder.dfs_tree(span, min(span.nodes)), None
    if method == "kruskal":
        return tree_builder.kruskal_tree(span, seed), None
    raise ValueError(f"unknown tree method {method!r}")


def plan(
    grid: GridMap,
    k: int = 1,
    starts: list[Coord] | None = None,
    params: RobotParams | None = None,
    tree_method: str = "tmstc",
    seed: int = 0,
) -> PlanResult:
    """Map -> component -> tree -> loop -> balanced multi-robot plan.

    ``starts`` are unit-cell coordinates; without them the robots are
    spread evenly along the loop.
    """
    params = params or RobotParams()
    if starts:
        for cell in starts:
            if not grid.is_free(*cell):
                raise ValueError(f"start {cell} is not a free map cell")
    span = build_component(grid, starts)
    tree, bricks = build_tree(span, tree_method, seed)
    start_cell = starts[0] if starts else min(
        grid_map.coverage_nodes_of(span)
    )
    loop = coverage_path.circumnavigate(tree, _nearest_cover_cell(span, start_cell),
                                        grid.resolution_d)
    if starts:
        if len(starts) != k:
            raise ValueError(f"{len(starts)} starts given for {k} robots")
        anchored = balance.anchor_starts(loop, starts)
    else:
        size = len(loop)
        if k > size:
            raise ValueError(f"{k} robots exceed loop length {size}")
        anchored = [
            RobotStart(i, loop.nodes[i * size // k], i * size // k)
            for i in range(k)
        ]
    robot_plan = balance.balance_partition(loop, anchored, params)
    return PlanResult(
        span=span,
        bricks=bricks,
        tree=tree,
        loop=loop,
        plan=robot_plan,
        tree_turns=tree_builder.tree_turns(tree),
    )


def _nearest_cover_cell(span: SpanningGraph, cell: Coord) -> Coord:
    """Clamp a requested unit cell into the component's coverage nodes."""
    cover = grid_map.coverage_nodes_of(span)
    if cell in cover:
        return cell
    return min(
        cover,
        key=lambda c: ((c[0] - cell[0]) ** 2 + (c[1] - cell[1]) ** 2, c),
    )


def turns_by_method(grid: GridMap, kruskal_seed: int = 0) -> dict[str, int]:
    """Turn counts of all three tree methods on one map."""
    span = build_component(grid, None)
    out = {}
    for method in ("tmstc", "dfs", "kruskal"):
        tree, _ = build_tree(span, method, kruskal_seed)
        out[method] = tree_builder.tree_turns(tree)
    return out
