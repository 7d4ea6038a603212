"""Spanning trees, coduals, fundamental cycles, and orientation."""

from __future__ import annotations

import random

import numpy as np
import pytest

from steinercut import (
    EdgeInTree,
    NotSpanningTree,
    build_graph,
    ccw_orientation,
    dual,
    face_sides,
    fundamental_cycle,
    gen_grid,
    interdigitating,
    shortest_path_tree,
    tree_from_mask,
    triangulate,
)

# ---------------------------------------------------------------------------
# shortest-path trees


def test_tri_distances(fx_tri):
    t = shortest_path_tree(fx_tri, 0)
    # b costs 1 directly; c costs 3 either way (direct, or 1 + 2 around)
    assert t.dist.tolist() == [0.0, 1.0, 3.0]
    assert t.root == 0
    assert int(t.in_tree.sum()) == 2
    assert t.parent_dart[0] == -1


def test_parent_darts_point_at_child(fx_grid3):
    g, _ = fx_grid3
    t = shortest_path_tree(g, 4)
    for v in range(g.n):
        if v == t.root:
            continue
        d = int(t.parent_dart[v])
        assert g.tail(d) == v
        assert g.head(d) == t.parent_vertex[v]
        assert t.depth[v] == t.depth[t.parent_vertex[v]] + 1
        assert t.in_tree[d >> 1]


def test_path_to_root_chains(fx_grid3):
    g, _ = fx_grid3
    t = shortest_path_tree(g, 0)
    walk = t.path_to_root(8)
    assert g.tail(int(walk[0])) == 8
    assert g.head(int(walk[-1])) == 0
    for a, b in zip(walk, walk[1:]):
        assert g.head(int(a)) == g.tail(int(b))
    assert walk.size == t.depth[8]


def test_distances_match_reference():
    rng = random.Random(20)
    for _ in range(30):
        g, _ = gen_grid(
            rng.randint(2, 6),
            rng.randint(2, 6),
            (1, 9),
            "corners",
            rng.randint(0, 10_000),
        )
        root = rng.randrange(g.n)
        t = shortest_path_tree(g, root)
        ref = _bellman_ford(g, root)
        assert t.dist.tolist() == ref
        # tree distances realize the shortest-path distances
        for v in range(g.n):
            walk = t.path_to_root(v)
            assert sum(g.weights[d >> 1] for d in walk) == ref[v]


def _bellman_ford(g, root):
    dist = [float("inf")] * g.n
    dist[root] = 0.0
    for _ in range(g.n):
        for e in range(g.m):
            u, v, w = int(g.edges_u[e]), int(g.edges_v[e]), float(g.weights[e])
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
    return dist


def test_infinity_edge_still_spanned():
    g = build_graph(2, [(0, 1, np.inf)], [[0], [1]])
    t = shortest_path_tree(g, 0)
    assert t.dist.tolist() == [0.0, np.inf]
    assert t.in_tree.tolist() == [True]
    assert t.parent_dart[1] == 1


def test_hub_vertices_spanned_with_infinite_distance(fx_grid3):
    g, _ = fx_grid3
    gd, _ = dual(g)
    tri = triangulate(gd)
    t = shortest_path_tree(tri.graph, 0)
    assert int(t.in_tree.sum()) == tri.graph.n - 1
    # hub vertices sit behind Infinity spokes only and are appended last
    np.testing.assert_array_equal(
        np.isinf(t.dist), np.arange(tri.graph.n) >= gd.n
    )


def test_deterministic():
    g, _ = gen_grid(5, 7, (1, 4), "corners", 3)
    a = shortest_path_tree(g, 2)
    b = shortest_path_tree(g, 2)
    np.testing.assert_array_equal(a.parent_dart, b.parent_dart)
    np.testing.assert_array_equal(a.dist, b.dist)


# ---------------------------------------------------------------------------
# interdigitating trees


def test_tri_codual_is_single_edge(fx_tri):
    t = interdigitating(fx_tri, np.array([True, True, False]))
    assert t.host.n == 2
    assert t.in_tree.tolist() == [False, False, True]
    assert t.root == 0
    assert t.parent_dart.tolist() == [-1, 4]
    assert t.depth.tolist() == [0, 1]


def test_k4_codual_spans_four_faces(fx_k4):
    t = shortest_path_tree(fx_k4, 0)
    cod = interdigitating(fx_k4, t)
    assert cod.host.n == 4
    assert int(cod.in_tree.sum()) == 3
    assert (cod.depth[np.arange(4) != cod.root] >= 1).all()


def test_partition_counts():
    rng = random.Random(7)
    for _ in range(40):
        g, _ = gen_grid(
            rng.randint(2, 7),
            rng.randint(2, 7),
            (1, 9),
            "corners",
            rng.randint(0, 10_000),
        )
        t = shortest_path_tree(g, rng.randrange(g.n))
        gd, _ = dual(g)
        cod = interdigitating(g, t, host_dual=gd, root=rng.randrange(gd.n))
        assert int(t.in_tree.sum()) == g.n - 1
        assert int(cod.in_tree.sum()) == gd.n - 1
        assert not (t.in_tree & cod.in_tree).any()
        assert (t.in_tree | cod.in_tree).all()


def test_rejects_wrong_count(fx_grid3):
    g, _ = fx_grid3
    mask = np.zeros(g.m, dtype=bool)
    mask[: g.n - 2] = True
    with pytest.raises(NotSpanningTree):
        interdigitating(g, mask)


def test_rejects_cyclic_mask(fx_grid3):
    # 8 edges containing the square 0-1-4-3 and missing vertex 6's side
    g, _ = fx_grid3
    mask = np.zeros(g.m, dtype=bool)
    mask[[0, 1, 2, 3, 4, 5, 6, 7]] = True
    with pytest.raises(NotSpanningTree):
        interdigitating(g, mask)
    with pytest.raises(NotSpanningTree):
        tree_from_mask(g, mask)


# ---------------------------------------------------------------------------
# fundamental cycles


def test_tri_fundamental_cycle(fx_tri):
    t = tree_from_mask(fx_tri, np.array([True, True, False]))
    cyc = fundamental_cycle(t, 2)
    assert cyc.tolist() == [4, 0, 2]  # c->a, a->b, b->c
    with pytest.raises(EdgeInTree):
        fundamental_cycle(t, 0)


def _check_simple_cycle(g, cyc):
    tails = [g.tail(int(d)) for d in cyc]
    for i, d in enumerate(cyc):
        assert g.head(int(d)) == tails[(i + 1) % len(cyc)]
    assert len(set(tails)) == len(tails)


def test_fundamental_cycles_are_simple():
    rng = random.Random(11)
    for _ in range(25):
        g, _ = gen_grid(
            rng.randint(2, 7),
            rng.randint(2, 7),
            (1, 9),
            "corners",
            rng.randint(0, 10_000),
        )
        t = shortest_path_tree(g, rng.randrange(g.n))
        for e in t.nontree_edges():
            cyc = fundamental_cycle(t, int(e))
            _check_simple_cycle(g, cyc)
            assert cyc[0] == 2 * e
            assert not t.in_tree[int(e)]
            assert all(t.in_tree[int(d) >> 1] for d in cyc[1:])


# ---------------------------------------------------------------------------
# counterclockwise orientation


def test_tri_chosen_dart_keeps_inner_face_left(fx_tri):
    t = tree_from_mask(fx_tri, np.array([True, True, False]))
    t.codual = interdigitating(fx_tri, t, root=0)  # root at the outer face
    orient = ccw_orientation(t)
    assert orient.domain.tolist() == [2]
    assert orient.chosen.tolist() == [4]
    cyc = fundamental_cycle(t, 2, first_dart=orient.dart_of(2))
    assert all(fx_tri.left_face(int(d)) == 1 for d in cyc)
    mask = orient.dart_mask(fx_tri.m)
    assert mask.tolist() == [False, False, False, False, True, False]


def test_chosen_darts_enclose_away_from_codual_root():
    rng = random.Random(13)
    for _ in range(25):
        g, _ = gen_grid(
            rng.randint(2, 6),
            rng.randint(2, 6),
            (1, 9),
            "corners",
            rng.randint(0, 10_000),
        )
        gd, _ = dual(g)
        t = shortest_path_tree(g, rng.randrange(g.n))
        t.codual = interdigitating(g, t, host_dual=gd, root=rng.randrange(gd.n))
        orient = ccw_orientation(t)
        assert orient.domain.tolist() == sorted(t.nontree_edges().tolist())
        for e in rng.sample(list(orient.domain), min(5, orient.domain.size)):
            cyc = fundamental_cycle(t, int(e), first_dart=orient.dart_of(int(e)))
            labels = face_sides(g, np.unique(cyc >> 1))
            left = {int(labels[g.left_face(int(d))]) for d in cyc}
            assert len(left) == 1  # one enclosed side, kept on the left
            assert labels[t.codual.root] != left.pop()
