"""Min-max partition of the circumnavigation loop among k robots.

Each robot owns one contiguous arc of the loop containing its anchored
start. An arc is covered by sweeping from the anchor to one end,
reversing, and sweeping to the other end; its cost is the cheaper of
the two sweep orders under the turn-aware time model. Cut points
between consecutive anchors are chosen by binary search on the makespan
with a greedy feasibility sweep, then polished by local moves.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass

from .coverage_path import (
    CoverageLoop,
    RobotParams,
    TwistSet,
    extract_twists,
    leg_time,
    path_time,
)
from .grid_map import Coord


@dataclass(frozen=True)
class RobotStart:
    robot_id: int
    requested: Coord
    anchored: int  # loop index


@dataclass(frozen=True)
class RobotAssignment:
    robot_id: int
    anchored: int
    arc_start: int  # loop index of first arc node
    arc_length: int
    sequence: tuple[Coord, ...]  # concrete traversal, reversal included
    twists: TwistSet
    time: float


@dataclass(frozen=True)
class CoveragePlan:
    loop: CoverageLoop
    robots: tuple[RobotAssignment, ...]

    @property
    def makespan(self) -> float:
        return max(r.time for r in self.robots)

    def min_time(self) -> float:
        return min(r.time for r in self.robots)


def anchor_starts(loop: CoverageLoop, requested: list[Coord]) -> list[RobotStart]:
    """Map each requested start cell to its nearest loop node.

    Ties go to the lowest loop index; a collision sends the later robot
    to the next free index clockwise (against the loop's
    counterclockwise storage order).
    """
    size = len(loop)
    if len(requested) > size:
        raise ValueError(f"{len(requested)} robots exceed loop length {size}")
    taken: set[int] = set()
    starts = []
    for rid, (rx, ry) in enumerate(requested):
        best = min(
            range(size),
            key=lambda i: ((loop.nodes[i][0] - rx) ** 2
                           + (loop.nodes[i][1] - ry) ** 2, i),
        )
        while best in taken:
            best = (best - 1) % size
        taken.add(best)
        starts.append(RobotStart(rid, (rx, ry), best))
    return starts


def _arc_sequences(
    loop: CoverageLoop, arc_start: int, arc_length: int, anchor: int
) -> list[list[Coord]]:
    """Concrete node sequences for the two sweep strategies."""
    size = len(loop)
    if arc_length < 1 or arc_length > size:
        raise ValueError(f"bad arc length {arc_length}")
    idx = [(arc_start + t) % size for t in range(arc_length)]
    try:
        p = idx.index(anchor)
    except ValueError:
        raise ValueError(f"anchor {anchor} outside arc") from None
    nodes = [loop.nodes[i] for i in idx]
    seq_a = nodes[p::-1] + nodes[1:]          # near start end first
    seq_b = nodes[p:] + nodes[-2::-1]         # far end first
    return [seq_a, seq_b]


def arc_cost(
    loop: CoverageLoop, arc_start: int, arc_length: int, anchor: int,
    params: RobotParams,
) -> float:
    """Cheaper of the two anchored sweep strategies, timed on the
    concrete node sequence (reversal twists included)."""
    seqs = _arc_sequences(loop, arc_start, arc_length, anchor)
    return min(
        path_time(extract_twists(s), params, loop.resolution_d) for s in seqs
    )


class LoopCostModel:
    """O(log n) arc-cost evaluation via precomputed twist prefix sums.

    Produces exactly the same values as :func:`arc_cost`; used by the
    partition search where arcs are probed many times.
    """

    def __init__(self, loop: CoverageLoop, params: RobotParams):
        self.loop = loop
        self.params = params
        self.size = len(loop)
        d = loop.resolution_d
        nodes = loop.nodes
        dirs = [
            (nodes[(i + 1) % self.size][0] - nodes[i][0],
             nodes[(i + 1) % self.size][1] - nodes[i][1])
            for i in range(self.size)
        ]
        self.turn_idx = [
            i for i in range(self.size) if dirs[i - 1] != dirs[i]
        ]
        # two unrolled periods of turning positions with leg-time prefix sums
        doubled = self.turn_idx + [t + self.size for t in self.turn_idx]
        self._turns2 = doubled
        prefix = [0.0]
        for a, b in zip(doubled, doubled[1:]):
            prefix.append(prefix[-1] + leg_time((b - a) * d, params))
        self._leg_prefix = prefix
        self._rot = math.pi / (4 * params.omega)

    def sweep(self, start: int, span: int) -> float:
        """Time of a one-way sweep covering ``span + 1`` nodes forward
        from loop index ``start`` (span 0 is a standstill)."""
        if span == 0:
            return 0.0
        d = self.loop.resolution_d
        lo = bisect_left(self._turns2, start + 1)
        hi = bisect_right(self._turns2, start + span - 1)
        if hi <= lo:
            return leg_time(span * d, self.params)
        first, last = self._turns2[lo], self._turns2[hi - 1]
        interior = hi - lo
        mid = self._leg_prefix[hi - 1] - self._leg_prefix[lo]
        return (
            leg_time((first - start) * d, self.params)
            + mid
            + leg_time((start + span - last) * d, self.params)
            + interior * self._rot
        )

    def arc_cost(self, arc_start: int, arc_length: int, anchor: int) -> float:
        """Equivalent of module-level :func:`arc_cost` on cyclic indices."""
        size = self.size
        start = arc_start % size
        span = arc_length - 1
        offset = (anchor - arc_start) % size
        if not 0 <= offset <= span:
            raise ValueError(f"anchor {anchor} outside arc")
        full = self.sweep(start, span)
        to_start = self.sweep(start, offset)
        to_end = self.sweep((start + offset) % size, span - offset)
        options = [full + to_start + (2 * self._rot if offset > 0 else 0.0),
                   full + to_end + (2 * self._rot if offset < span else 0.0)]
        return min(options)


def _sorted_anchor_order(starts: list[RobotStart]) -> list[RobotStart]:
    return sorted(starts, key=lambda s: s.anchored)


def _greedy_cuts(
    model: LoopCostModel, anchors: list[int], budget: float
) -> list[int] | None:
    """Find cut positions (virtual indices, one per inter-anchor gap)
    keeping every arc within ``budget``, or None.

    Scans the first gap's cut candidates; for the rest, each arc is
    extended as far as the budget allows (arc cost is monotone in arc
    growth, so binary search applies).
    """
    k = len(anchors)
    size = model.size
    a = anchors
    a_virtual = a + [a[0] + size]
    for c0 in range(a[0], a_virtual[1]):
        cuts = [c0]
        prev = c0
        feasible = True
        for i in range(1, k):
            start = prev + 1
            lo, hi = a_virtual[i], a_virtual[i + 1] - 1
            if model.arc_cost(start, lo - start + 1, a_virtual[i]) > budget:
                feasible = False
                break
            while lo < hi:
                midc = (lo + hi + 1) // 2
                if model.arc_cost(start, midc - start + 1, a_virtual[i]) <= budget:
                    lo = midc
                else:
                    hi = midc - 1
            cuts.append(lo)
            prev = lo
        if not feasible:
            continue
        start0 = prev + 1
        end0 = c0 + size
        if model.arc_cost(start0, end0 - start0 + 1, a[0] + size) <= budget:
            return cuts
    return None


def _cut_makespan(model: LoopCostModel, anchors: list[int],
                  cuts: list[int]) -> float:
    size = model.size
    k = len(anchors)
    worst = 0.0
    for i in range(k):
        start = cuts[i - 1] + 1
        end = cuts[i]
        length = (end - start) % size + 1
        worst = max(worst, model.arc_cost(start % size, length, anchors[i]))
    return worst


def balance_partition(
    loop: CoverageLoop, starts: list[RobotStart], params: RobotParams
) -> CoveragePlan:
    """Choose one cut per inter-anchor gap minimizing the maximum
    arc cost, then build per-robot traversals."""
    if not starts:
        raise ValueError("at least one robot start is required")
    size = len(loop)
    model = LoopCostModel(loop, params)
    ordered = _sorted_anchor_order(starts)
    anchors = [s.anchored for s in ordered]
    if len(set(anchors)) != len(anchors):
        raise ValueError("robot anchors must be distinct loop indices")

    if len(starts) == 1:
        arcs = [(anchors[0], size)]
    else:
        # upper bound: every arc runs from its anchor to just before the next
        init = [anchors[i + 1] - 1 if i + 1 < len(anchors)
                else anchors[0] + size - 1 for i in range(len(anchors))]
        ub = _cut_makespan(model, anchors, init)
        lb = 0.0
        best = init
        while ub - lb > 1e-9 * max(1.0, ub):
            mid = (lb + ub) / 2
            cuts = _greedy_cuts(model, anchors, mid)
            if cuts is None:
                lb = mid
            else:
                ub = mid
                best = cuts
        best = _refine_cuts(model, anchors, best)
        arcs = []
        for i in range(len(anchors)):
            start = (best[i - 1] + 1) % size
            length = (best[i] - best[i - 1] - 1) % size + 1
            arcs.append((start, length))

    assignments = []
    for (arc_start, arc_length), robot in zip(arcs, ordered):
        seqs = _arc_sequences(loop, arc_start, arc_length, robot.anchored)
        timed = [
            (path_time(extract_twists(s), params, loop.resolution_d), j, s)
            for j, s in enumerate(seqs)
        ]
        t, _, seq = min(timed)
        assignments.append(
            RobotAssignment(
                robot.robot_id, robot.anchored, arc_start, arc_length,
                tuple(seq), extract_twists(seq), t,
            )
        )
    assignments.sort(key=lambda r: r.robot_id)
    return CoveragePlan(loop, tuple(assignments))


def _refine_cuts(model: LoopCostModel, anchors: list[int],
                 cuts: list[int]) -> list[int]:
    """Move each cut one step while the makespan improves."""
    k = len(anchors)
    size = model.size
    a_virtual = anchors + [anchors[0] + size]
    current = _cut_makespan(model, anchors, cuts)
    improved = True
    while improved:
        improved = False
        for i in range(k):
            for delta in (-1, 1):
                trial = list(cuts)
                trial[i] = cuts[i] + delta
                if not a_virtual[i] <= trial[i] <= a_virtual[i + 1] - 1:
                    continue
                score = _cut_makespan(model, anchors, trial)
                if score < current - 1e-12:
                    cuts, current = trial, score
                    improved = True
    return cuts


def brute_force_partition(
    loop: CoverageLoop, starts: list[RobotStart], params: RobotParams
) -> float:
    """Exhaustive optimum over all cut placements; oracle for small loops."""
    size = len(loop)
    ordered = _sorted_anchor_order(starts)
    anchors = [s.anchored for s in ordered]
    if len(starts) == 1:
        return arc_cost(loop, anchors[0], size, anchors[0], params)
    a_virtual = anchors + [anchors[0] + size]
    k = len(anchors)
    best = math.inf

    def recurse(i: int, cuts: list[int]) -> None:
        nonlocal best
        if i == k:
            worst = 0.0
            for j in range(k):
                start = (cuts[j - 1] + 1) % size
                length = (cuts[j] - cuts[j - 1] - 1) % size + 1
                worst = max(
                    worst, arc_cost(loop, start, length, anchors[j], params)
                )
            best = min(best, worst)
            return
        for c in range(a_virtual[i], a_virtual[i + 1]):
            recurse(i + 1, cuts + [c])

    recurse(0, [])
    return best
