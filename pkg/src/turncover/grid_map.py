"""Occupancy grid parsing and discretization into coverage / spanning graphs.

The planner works on two grids derived from the same map: the coverage
graph of unit cells (edge length d, the tool width) and the spanning
graph of mega cells (2d x 2d blocks of four unit cells). A mega cell is
a spanning node only when all four of its unit cells are free, so every
spanning node owns exactly four coverage nodes.

Coordinates are (x=column, y=row) with the origin at the top-left;
serialization is row-major.
"""

from __future__ import annotations

from dataclasses import dataclass, field

Coord = tuple[int, int]
Edge = tuple[Coord, Coord]

MOVINGAI_FREE = frozenset(".G")
MOVINGAI_OCCUPIED = frozenset("@OTSW")


class MapFormatError(ValueError):
    """Raised for malformed map files."""


class DisconnectedGraphError(ValueError):
    """Raised when an operation needs a single connected component."""


def normalize_edge(a: Coord, b: Coord) -> Edge:
    """Canonical undirected edge representation (lexicographically sorted)."""
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class GridMap:
    """Occupancy grid of unit cells; ``cells[y * width + x]`` is True when occupied."""

    width: int
    height: int
    cells: tuple[bool, ...]
    resolution_d: float = 0.5

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise MapFormatError("map dimensions must be at least 1x1")
        if len(self.cells) != self.width * self.height:
            raise MapFormatError(
                f"cell count {len(self.cells)} does not match "
                f"{self.width}x{self.height}"
            )
        if self.resolution_d <= 0:
            raise MapFormatError("resolution_d must be positive")

    def is_occupied(self, x: int, y: int) -> bool:
        """Cells outside the map count as occupied."""
        if not (0 <= x < self.width and 0 <= y < self.height):
            return True
        return self.cells[y * self.width + x]

    def is_free(self, x: int, y: int) -> bool:
        return not self.is_occupied(x, y)

    def free_count(self) -> int:
        return sum(1 for c in self.cells if not c)

    def occupied_cells(self) -> list[Coord]:
        return [
            (x, y)
            for y in range(self.height)
            for x in range(self.width)
            if self.cells[y * self.width + x]
        ]


@dataclass(frozen=True)
class SpanningGraph:
    """Grid graph of free mega cells with 4-adjacency; edge length is 2d."""

    mega_width: int
    mega_height: int
    nodes: frozenset[Coord]
    resolution_d: float = 0.5
    _adj: dict[Coord, tuple[Coord, ...]] = field(
        default=None, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        adj: dict[Coord, tuple[Coord, ...]] = {}
        for x, y in self.nodes:
            # fixed scan order: right, down, left, up
            candidates = ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))
            adj[(x, y)] = tuple(c for c in candidates if c in self.nodes)
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, node: Coord) -> tuple[Coord, ...]:
        return self._adj[node]

    def edges(self) -> list[Edge]:
        """All undirected edges, sorted for determinism."""
        out = []
        for node in self.nodes:
            for nb in self._adj[node]:
                if node < nb:
                    out.append((node, nb))
        out.sort()
        return out

    def sorted_nodes(self) -> list[Coord]:
        return sorted(self.nodes)


@dataclass(frozen=True)
class CoverageGraph:
    """Unit-cell graph restricted to cells inside free mega cells; edge length d."""

    nodes: frozenset[Coord]
    resolution_d: float = 0.5

    def neighbors(self, node: Coord) -> list[Coord]:
        x, y = node
        candidates = ((x + 1, y), (x, y + 1), (x - 1, y), (x, y - 1))
        return [c for c in candidates if c in self.nodes]


def parse_map(content: bytes | str, fmt: str, resolution_d: float = 0.5) -> GridMap:
    """Parse a map file in ``movingai`` or ``grid01`` format."""
    if isinstance(content, bytes):
        text = content.decode("ascii")
    else:
        text = content
    if fmt == "movingai":
        return _parse_movingai(text, resolution_d)
    if fmt == "grid01":
        return _parse_grid01(text, resolution_d)
    raise MapFormatError(f"unknown map format: {fmt!r}")


def _parse_movingai(text: str, resolution_d: float) -> GridMap:
    lines = text.splitlines()
    if len(lines) < 4:
        raise MapFormatError("movingai header requires 4 lines")
    if lines[0].strip().split() != ["type", "octile"]:
        raise MapFormatError(f"bad movingai type line: {lines[0]!r}")
    try:
        h_key, h_val = lines[1].split()
        w_key, w_val = lines[2].split()
        height, width = int(h_val), int(w_val)
    except ValueError as exc:
        raise MapFormatError("bad movingai dimension lines") from exc
    if h_key != "height" or w_key != "width":
        raise MapFormatError("movingai header must declare height then width")
    if lines[3].strip() != "map":
        raise MapFormatError("missing 'map' marker line")
    rows = [ln for ln in lines[4:] if ln.strip() != ""]
    if len(rows) != height:
        raise MapFormatError(f"expected {height} map rows, found {len(rows)}")
    cells: list[bool] = []
    for y, row in enumerate(rows):
        if len(row) != width:
            raise MapFormatError(f"row {y} has length {len(row)}, expected {width}")
        for glyph in row:
            if glyph in MOVINGAI_FREE:
                cells.append(False)
            elif glyph in MOVINGAI_OCCUPIED:
                cells.append(True)
            else:
                raise MapFormatError(f"unknown glyph {glyph!r} in row {y}")
    return GridMap(width, height, tuple(cells), resolution_d)


def _parse_grid01(text: str, resolution_d: float) -> GridMap:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() != ""]
    if not lines:
        raise MapFormatError("empty map")
    declared: tuple[int, int] | None = None
    first = lines[0].split()
    if len(first) == 2 and all(tok.isdigit() for tok in first):
        declared = (int(first[0]), int(first[1]))  # height, width
        lines = lines[1:]
    if not lines:
        raise MapFormatError("grid01 map has no body rows")
    width = len(lines[0])
    cells: list[bool] = []
    for y, row in enumerate(lines):
        if len(row) != width:
            raise MapFormatError(f"row {y} has length {len(row)}, expected {width}")
        for glyph in row:
            if glyph == "0":
                cells.append(False)
            elif glyph == "1":
                cells.append(True)
            else:
                raise MapFormatError(f"unknown glyph {glyph!r} in row {y}")
    height = len(lines)
    if declared is not None and declared != (height, width):
        raise MapFormatError(
            f"declared {declared[0]}x{declared[1]} but body is {height}x{width}"
        )
    return GridMap(width, height, tuple(cells), resolution_d)


def pad_to_even(grid: GridMap) -> GridMap:
    """Pad odd dimensions on the right/bottom with occupied cells."""
    width = grid.width + (grid.width % 2)
    height = grid.height + (grid.height % 2)
    if (width, height) == (grid.width, grid.height):
        return grid
    cells = [
        grid.is_occupied(x, y) for y in range(height) for x in range(width)
    ]
    return GridMap(width, height, tuple(cells), grid.resolution_d)


def build_spanning_graph(grid: GridMap) -> tuple[SpanningGraph, CoverageGraph]:
    """Discretize a map into the mega-cell spanning graph and the unit-cell
    coverage graph restricted to free mega cells."""
    padded = pad_to_even(grid)
    mega_w = padded.width // 2
    mega_h = padded.height // 2
    nodes = set()
    for my in range(mega_h):
        for mx in range(mega_w):
            if all(
                padded.is_free(2 * mx + dx, 2 * my + dy)
                for dx in (0, 1)
                for dy in (0, 1)
            ):
                nodes.add((mx, my))
    if not nodes:
        raise MapFormatError("map has no fully free mega cell")
    span = SpanningGraph(mega_w, mega_h, frozenset(nodes), padded.resolution_d)
    cover_nodes = frozenset(
        (2 * mx + dx, 2 * my + dy)
        for mx, my in nodes
        for dx in (0, 1)
        for dy in (0, 1)
    )
    cover = CoverageGraph(cover_nodes, padded.resolution_d)
    return span, cover


def coverage_nodes_of(span: SpanningGraph) -> frozenset[Coord]:
    """Unit cells belonging to the mega cells of a spanning (sub)graph."""
    return frozenset(
        (2 * mx + dx, 2 * my + dy)
        for mx, my in span.nodes
        for dx in (0, 1)
        for dy in (0, 1)
    )


def connected_component(span: SpanningGraph, seeds: list[Coord]) -> SpanningGraph:
    """Sub-graph of the component containing every seed.

    With no seeds the graph must already be a single component. Seeds in
    different components raise ``DisconnectedGraphError`` naming them.
    """
    for seed in seeds:
        if seed not in span.nodes:
            raise DisconnectedGraphError(f"seed {seed} is not a free mega cell")
    components: list[set[Coord]] = []
    unseen = set(span.nodes)
    while unseen:
        root = min(unseen)
        comp = {root}
        frontier = [root]
        while frontier:
            cur = frontier.pop()
            for nb in span.neighbors(cur):
                if nb not in comp:
                    comp.add(nb)
                    frontier.append(nb)
        unseen -= comp
        components.append(comp)

    if not seeds:
        if len(components) > 1:
            raise DisconnectedGraphError(
                f"map splits into {len(components)} components and no seeds "
                "were given to pick one"
            )
        return span

    homes = {seed: next(i for i, c in enumerate(components) if seed in c)
             for seed in seeds}
    if len(set(homes.values())) > 1:
        offenders = sorted(homes.items(), key=lambda kv: kv[1])
        detail = ", ".join(f"{seed} in component {idx}" for seed, idx in offenders)
        raise DisconnectedGraphError(f"seeds span multiple components: {detail}")
    comp = components[next(iter(homes.values()))]
    return SpanningGraph(
        span.mega_width, span.mega_height, frozenset(comp), span.resolution_d
    )
