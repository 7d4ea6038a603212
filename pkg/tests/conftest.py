from __future__ import annotations

import pytest

from steinercut import EmbeddedGraph, build_graph
from steinercut.oracle_gen import gen_grid


# Shared fixtures. Dart ids follow 2*edge + side throughout:
# the triangle has edges ab=0 (w 1), bc=1 (w 2), ca=2 (w 3), so its darts
# are a->b=0, b->a=1, b->c=2, c->b=3, c->a=4, a->c=5.


@pytest.fixture
def fx_edge() -> EmbeddedGraph:
    return build_graph(2, [(0, 1, 5)], [[0], [1]])


@pytest.fixture
def fx_tri() -> EmbeddedGraph:
    return build_graph(3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)], [[0, 5], [2, 1], [4, 3]])


@pytest.fixture
def fx_grid3() -> tuple[EmbeddedGraph, list[int]]:
    return gen_grid(3, 3, "unit", "corners", 0)


# K4 embedded with one vertex inside the triangle of the other three;
# rotations read counterclockwise off that drawing.
K4_EDGES = [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)]
K4_ROT = [[0, 4, 2], [6, 8, 1], [3, 10, 7], [11, 5, 9]]


@pytest.fixture
def fx_k4() -> EmbeddedGraph:
    return build_graph(4, K4_EDGES, K4_ROT)
