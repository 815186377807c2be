"""Minimum brick tiling of the spanning graph.

A brick is a straight run of mega cells (width or height of one cell).
Tiling with the fewest bricks is solved exactly by deleting borders
between adjacent free cells: borders become vertices of a bipartite
conflict graph (horizontal vs. vertical, edges between perpendicular
borders sharing a lattice endpoint), a maximum independent set of that
graph is the largest deletable border set, and brick count equals
free cells minus deleted borders. The independent set comes from a
maximum matching (Dinic max-flow) and the Koenig vertex-cover
construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .grid_map import Coord, SpanningGraph

HORIZONTAL = "horizontal"
VERTICAL = "vertical"


@dataclass(frozen=True)
class Segment:
    """Border between two adjacent free mega cells.

    A vertical segment separates horizontally adjacent cells and vice
    versa. ``cells`` is ordered (left-right or top-bottom).
    """

    id: int
    orientation: str
    cells: tuple[Coord, Coord]

    def endpoints(self) -> tuple[Coord, Coord]:
        """Lattice endpoints of the border line (mega-cell corner grid)."""
        (x, y), _ = self.cells
        if self.orientation == VERTICAL:
            return ((x + 1, y), (x + 1, y + 1))
        return ((x, y + 1), (x + 1, y + 1))


@dataclass(frozen=True)
class SegmentGraph:
    segments: tuple[Segment, ...]
    edges: tuple[tuple[int, int], ...]  # (horizontal id, vertical id)

    def horizontal_ids(self) -> list[int]:
        return [s.id for s in self.segments if s.orientation == HORIZONTAL]

    def vertical_ids(self) -> list[int]:
        return [s.id for s in self.segments if s.orientation == VERTICAL]


@dataclass(frozen=True)
class BrickSet:
    """Disjoint straight bricks covering every node of the spanning graph."""

    bricks: tuple[tuple[Coord, ...], ...]

    def __len__(self) -> int:
        return len(self.bricks)

    def cell_count(self) -> int:
        return sum(len(b) for b in self.bricks)


def build_segment_graph(span: SpanningGraph) -> SegmentGraph:
    """One segment per adjacent free pair; edges join perpendicular
    segments sharing a geometric endpoint (parallel ones never connect)."""
    segments: list[Segment] = []
    for x, y in span.sorted_nodes():
        if (x, y + 1) in span.nodes:
            segments.append(
                Segment(len(segments), HORIZONTAL, ((x, y), (x, y + 1)))
            )
        if (x + 1, y) in span.nodes:
            segments.append(
                Segment(len(segments), VERTICAL, ((x, y), (x + 1, y)))
            )
    by_point: dict[Coord, dict[str, list[int]]] = {}
    for seg in segments:
        for pt in seg.endpoints():
            by_point.setdefault(pt, {HORIZONTAL: [], VERTICAL: []})[
                seg.orientation
            ].append(seg.id)
    edges = set()
    for buckets in by_point.values():
        for h in buckets[HORIZONTAL]:
            for v in buckets[VERTICAL]:
                edges.add((h, v))
    return SegmentGraph(tuple(segments), tuple(sorted(edges)))


class _Dinic:
    """Dinic max-flow on unit-capacity arcs; neighbor scan order follows
    insertion order so results are deterministic."""

    def __init__(self, n: int):
        self.n = n
        self.graph: list[list[list[int]]] = [[] for _ in range(n)]  # [to, cap, rev]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.graph[u].append([v, cap, len(self.graph[v])])
        self.graph[v].append([u, 0, len(self.graph[u]) - 1])

    def _bfs(self, s: int, t: int) -> list[int]:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for to, cap, _ in self.graph[u]:
                if cap > 0 and level[to] < 0:
                    level[to] = level[u] + 1
                    queue.append(to)
        return level

    def _dfs(self, u: int, t: int, f: int, level: list[int], it: list[int]) -> int:
        if u == t:
            return f
        while it[u] < len(self.graph[u]):
            edge = self.graph[u][it[u]]
            to, cap, rev = edge
            if cap > 0 and level[u] < level[to]:
                d = self._dfs(to, t, min(f, cap), level, it)
                if d > 0:
                    edge[1] -= d
                    self.graph[to][rev][1] += d
                    return d
            it[u] += 1
        return 0

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._bfs(s, t)
            if level[t] < 0:
                return flow
            it = [0] * self.n
            while True:
                f = self._dfs(s, t, 1 << 30, level, it)
                if f == 0:
                    break
                flow += f


def maximum_matching(graph: SegmentGraph) -> frozenset[tuple[int, int]]:
    """Maximum-cardinality matching of the bipartite segment graph.

    Flow network: source -> horizontal segments -> vertical segments -> sink,
    unit capacities throughout.
    """
    n_seg = len(graph.segments)
    source, sink = n_seg, n_seg + 1
    dinic = _Dinic(n_seg + 2)
    for h in graph.horizontal_ids():
        dinic.add_edge(source, h, 1)
    for h, v in sorted(graph.edges):
        dinic.add_edge(h, v, 1)
    for v in graph.vertical_ids():
        dinic.add_edge(v, sink, 1)
    dinic.max_flow(source, sink)
    matched = set()
    for h in graph.horizontal_ids():
        for to, cap, _ in dinic.graph[h]:
            if to != source and cap == 0:  # saturated forward arc
                matched.add((h, to))
    return frozenset(matched)


def max_independent_set(
    graph: SegmentGraph, matching: frozenset[tuple[int, int]]
) -> frozenset[int]:
    """Koenig construction: alternating-path reachability from unmatched
    horizontal vertices yields the minimum vertex cover; its complement
    is a maximum independent set of size |segments| - |matching|."""
    match_h = {h: v for h, v in matching}
    match_v = {v: h for h, v in matching}
    adj_h: dict[int, list[int]] = {h: [] for h in graph.horizontal_ids()}
    for h, v in sorted(graph.edges):
        adj_h[h].append(v)
    reachable: set[int] = set()
    frontier = [h for h in graph.horizontal_ids() if h not in match_h]
    reachable.update(frontier)
    while frontier:
        nxt = []
        for h in frontier:
            for v in adj_h[h]:
                if v in reachable or match_h.get(h) == v:
                    continue
                reachable.add(v)
                back = match_v.get(v)
                if back is not None and back not in reachable:
                    reachable.add(back)
                    nxt.append(back)
        frontier = nxt
    h_ids = set(graph.horizontal_ids())
    v_ids = set(graph.vertical_ids())
    cover = (h_ids - reachable) | (v_ids & reachable)
    return frozenset((h_ids | v_ids) - cover)


def tiling_from_independent_set(
    span: SpanningGraph, graph: SegmentGraph, keep: frozenset[int]
) -> BrickSet:
    """Merge the two cells across every deleted border in ``keep``.

    Independence guarantees every merged block is a straight brick; a
    non-straight block means the input set was not independent.
    """
    parent: dict[Coord, Coord] = {c: c for c in span.nodes}

    def find(c: Coord) -> Coord:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    for seg_id in keep:
        a, b = graph.segments[seg_id].cells
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[Coord, list[Coord]] = {}
    for cell in span.sorted_nodes():
        groups.setdefault(find(cell), []).append(cell)
    bricks = []
    for cells in groups.values():
        xs = {c[0] for c in cells}
        ys = {c[1] for c in cells}
        if len(xs) == 1:
            cells.sort(key=lambda c: c[1])
            straight = all(
                cells[i + 1][1] == cells[i][1] + 1 for i in range(len(cells) - 1)
            )
        elif len(ys) == 1:
            cells.sort(key=lambda c: c[0])
            straight = all(
                cells[i + 1][0] == cells[i][0] + 1 for i in range(len(cells) - 1)
            )
        else:
            straight = False
        if not straight:
            raise ValueError(
                f"merged block {cells} is not a straight brick; the kept "
                "border set was not independent"
            )
        bricks.append(tuple(cells))
    bricks.sort(key=lambda b: (b[0][1], b[0][0]))
    return BrickSet(tuple(bricks))


def min_brick_tiling(span: SpanningGraph) -> BrickSet:
    """Provably minimum brick tiling (segments -> matching -> independent
    set -> merge)."""
    seg_graph = build_segment_graph(span)
    matching = maximum_matching(seg_graph)
    keep = max_independent_set(seg_graph, matching)
    return tiling_from_independent_set(span, seg_graph, keep)


def brute_force_min_tiling(span: SpanningGraph) -> int:
    """Exact minimum brick count by exhaustive partition enumeration.

    Oracle for small instances only; refuses more than 16 free cells.
    """
    if len(span.nodes) > 16:
        raise ValueError(f"instance too large for oracle: {len(span.nodes)} cells")
    memo: dict[frozenset[Coord], int] = {frozenset(): 0}

    def solve(remaining: frozenset[Coord]) -> int:
        if remaining in memo:
            return memo[remaining]
        x0, y0 = min(remaining, key=lambda c: (c[1], c[0]))
        best = None
        # horizontal bricks growing right from the row-major minimum
        cells: list[Coord] = []
        length = 0
        while (x0 + length, y0) in remaining:
            cells.append((x0 + length, y0))
            length += 1
            sub = solve(remaining - frozenset(cells))
            if best is None or sub + 1 < best:
                best = sub + 1
        # vertical bricks growing down (length >= 2; length 1 covered above)
        cells = [(x0, y0)]
        length = 1
        while (x0, y0 + length) in remaining:
            cells.append((x0, y0 + length))
            length += 1
            sub = solve(remaining - frozenset(cells))
            if sub + 1 < best:
                best = sub + 1
        memo[remaining] = best
        return best

    return solve(frozenset(span.nodes))


def tiling_to_text(span: SpanningGraph, bricks: BrickSet) -> str:
    """Debug grid with one brick id per cell; ids follow row-major order
    of brick top-left cells, '.' marks occupied mega cells."""
    ordered = sorted(
        bricks.bricks, key=lambda b: (min(c[1] for c in b), min(c[0] for c in b))
    )
    ids: dict[Coord, int] = {}
    for i, brick in enumerate(ordered):
        for cell in brick:
            ids[cell] = i
    width = max(2, len(str(max(len(ordered) - 1, 0))))
    rows = []
    for y in range(span.mega_height):
        row = []
        for x in range(span.mega_width):
            row.append(str(ids[(x, y)]).rjust(width) if (x, y) in ids
                       else ".".rjust(width))
        rows.append(" ".join(row))
    return "\n".join(rows) + "\n"
