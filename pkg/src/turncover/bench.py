"""Experiment harness: seeded map generation, tree-method comparison and
multi-robot timing runs."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import pipeline
from .coverage_path import RobotParams
from .grid_map import Coord, GridMap

TREE_METHODS = ("tmstc", "dfs", "kruskal")


@dataclass(frozen=True)
class Scenario:
    name: str
    grid: GridMap
    k: int = 1
    starts: tuple[Coord, ...] | None = None
    params: RobotParams = field(default_factory=RobotParams)
    tree_method: str = "tmstc"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("robot count must be at least 1")
        if self.tree_method not in TREE_METHODS:
            raise ValueError(f"unknown tree method {self.tree_method!r}")


@dataclass(frozen=True)
class RunReport:
    scenario: str
    tree_method: str
    k: int
    brick_count: int
    loop_length: int
    turns_by_method: dict[str, int]
    max_time: float
    min_time: float
    planning_seconds: float

    def record_line(self) -> str:
        """Machine-readable record; field order is fixed and documented in
        the README. Wall time is excluded so records stay reproducible."""
        turns = " ".join(
            f"{m}={self.turns_by_method[m]}" for m in TREE_METHODS
        )
        return (
            f"scenario={self.scenario} method={self.tree_method} k={self.k} "
            f"bricks={self.brick_count} loop={self.loop_length} {turns} "
            f"max={self.max_time:.3f} min={self.min_time:.3f}"
        )


def generate_random_map(
    mega_dims: tuple[int, int], obstacle_ratio: float, seed: int,
    resolution_d: float = 0.5, max_attempts: int = 1000,
) -> GridMap:
    """Seeded random map with obstacles placed per mega cell; retries
    until the free mega-cell region is connected."""
    mw, mh = mega_dims
    if not 0 <= obstacle_ratio < 1:
        raise ValueError("obstacle ratio must be in [0, 1)")
    rng = random.Random(seed)
    cells_all = [(x, y) for y in range(mh) for x in range(mw)]
    n_obstacles = int(mw * mh * obstacle_ratio)
    for _ in range(max_attempts):
        occupied = set(rng.sample(cells_all, n_obstacles))
        free = [c for c in cells_all if c not in occupied]
        if free and _connected(set(free)):
            unit = [
                (2 * mx + dx, 2 * my + dy)
                for mx, my in occupied
                for dx in (0, 1)
                for dy in (0, 1)
            ]
            occupied_units = set(unit)
            cells = tuple(
                (x, y) in occupied_units
                for y in range(2 * mh)
                for x in range(2 * mw)
            )
            return GridMap(2 * mw, 2 * mh, cells, resolution_d)
    raise ValueError(
        f"no connected map found for {mw}x{mh} at ratio {obstacle_ratio} "
        f"after {max_attempts} attempts"
    )


def _connected(nodes: set[Coord]) -> bool:
    root = min(nodes)
    seen = {root}
    stack = [root]
    while stack:
        x, y = stack.pop()
        for nb in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if nb in nodes and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(nodes)


def compare_trees(grids: list[tuple[str, GridMap]],
                  kruskal_seed: int = 0) -> list[dict]:
    """Turn counts of each tree method on each map, plus totals."""
    rows = []
    for name, grid in grids:
        turns = pipeline.turns_by_method(grid, kruskal_seed)
        rows.append({"map": name, **turns})
    return rows


def run_scenario(scenario: Scenario) -> RunReport:
    """Full pipeline run; wall time covers plan construction only."""
    t0 = time.perf_counter()
    result = pipeline.plan(
        scenario.grid,
        k=scenario.k,
        starts=list(scenario.starts) if scenario.starts else None,
        params=scenario.params,
        tree_method=scenario.tree_method,
        seed=scenario.seed,
    )
    planning = time.perf_counter() - t0
    turns = pipeline.turns_by_method(scenario.grid, scenario.seed)
    return RunReport(
        scenario=scenario.name,
        tree_method=scenario.tree_method,
        k=scenario.k,
        brick_count=result.brick_count,
        loop_length=len(result.loop),
        turns_by_method=turns,
        max_time=result.plan.makespan,
        min_time=result.plan.min_time(),
        planning_seconds=planning,
    )


def turns_table(rows: list[dict]) -> str:
    """Human-readable turn-count comparison table."""
    header = f"{'map':<20} {'dfs':>8} {'kruskal':>8} {'tmstc':>8}"
    lines = [header, "-" * len(header)]
    totals = {"dfs": 0, "kruskal": 0, "tmstc": 0}
    for row in rows:
        lines.append(
            f"{row['map']:<20} {row['dfs']:>8} {row['kruskal']:>8} "
            f"{row['tmstc']:>8}"
        )
        for m in totals:
            totals[m] += row[m]
    lines.append(
        f"{'total':<20} {totals['dfs']:>8} {totals['kruskal']:>8} "
        f"{totals['tmstc']:>8}"
    )
    return "\n".join(lines) + "\n"


def report_table(reports: list[RunReport]) -> str:
    """Human-readable per-scenario timing table."""
    header = (
        f"{'scenario':<20} {'method':<8} {'k':>3} {'bricks':>7} {'loop':>6} "
        f"{'max(s)':>10} {'min(s)':>10} {'plan(s)':>8}"
    )
    lines = [header, "-" * len(header)]
    for r in reports:
        lines.append(
            f"{r.scenario:<20} {r.tree_method:<8} {r.k:>3} {r.brick_count:>7} "
            f"{r.loop_length:>6} {r.max_time:>10.3f} {r.min_time:>10.3f} "
            f"{r.planning_seconds:>8.3f}"
        )
    return "\n".join(lines) + "\n"
