import random

import pytest

from turncover.grid_map import SpanningGraph


def make_span(width, height, obstacles=()):
    nodes = frozenset(
        (x, y)
        for x in range(width)
        for y in range(height)
        if (x, y) not in set(obstacles)
    )
    return SpanningGraph(width, height, nodes)


def random_connected_span(rng: random.Random, max_dim=5, max_cells=16):
    """Random connected spanning graph grown cell by cell."""
    w = rng.randint(1, max_dim)
    h = rng.randint(1, max_dim)
    target = rng.randint(1, min(w * h, max_cells))
    start = (rng.randrange(w), rng.randrange(h))
    cells = {start}
    frontier = {start}
    while len(cells) < target:
        base = rng.choice(sorted(frontier))
        x, y = base
        options = [
            (nx, ny)
            for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1))
            if 0 <= nx < w and 0 <= ny < h and (nx, ny) not in cells
        ]
        if not options:
            frontier.discard(base)
            if not frontier:
                break
            continue
        new = rng.choice(options)
        cells.add(new)
        frontier.add(new)
    return SpanningGraph(w, h, frozenset(cells))


@pytest.fixture
def rng():
    return random.Random(1234)
