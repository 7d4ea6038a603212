from __future__ import annotations

import numpy as np
import pytest

from steinercut import (
    DegenerateDual,
    EulerViolation,
    FaceMarks,
    MalformedRotation,
    NotAPath,
    NotConnected,
    NotSimple,
    NotSimpleCycle,
    SameFace,
    SelfLoop,
    bridge_mask,
    build_graph,
    contract_edges,
    cut_along_path,
    dual,
    split_by_cycle,
    triangulate,
)
from steinercut._sssp import reduce_undirected, run_dijkstra
from steinercut.oracle_gen import gen_grid

from conftest import K4_EDGES, K4_ROT


def euler(g) -> int:
    return g.n - g.m + g.nfaces


# ---------------------------------------------------------------------------
# construction and face tracing


def test_edge_faces(fx_edge):
    assert fx_edge.nfaces == 1
    assert euler(fx_edge) == 2
    assert fx_edge.face_size.tolist() == [2]


def test_tri_faces(fx_tri):
    assert fx_tri.nfaces == 2
    assert euler(fx_tri) == 2
    # outer face carries darts {a->b, b->c, c->a}, inner the reversals
    assert fx_tri.face_darts(0).tolist() == [0, 2, 4]
    assert fx_tri.face_darts(1).tolist() == [1, 5, 3]


def test_grid3_counts(fx_grid3):
    g, X = fx_grid3
    assert (g.n, g.m, g.nfaces) == (9, 12, 5)
    assert X == [0, 2, 6, 8]
    assert sorted(g.face_size.tolist()) == [4, 4, 4, 4, 8]


def test_k4_faces(fx_k4):
    assert fx_k4.nfaces == 4
    assert (fx_k4.face_size == 3).all()
    tris = {frozenset(fx_k4.face_vertices(f).tolist()) for f in range(4)}
    assert tris == {
        frozenset({0, 1, 2}),
        frozenset({0, 1, 3}),
        frozenset({0, 2, 3}),
        frozenset({1, 2, 3}),
    }


def test_face_sizes_sum_to_darts():
    for seed in range(10):
        g, _ = gen_grid(2 + seed % 4, 2 + (seed * 7) % 4, (1, 9), "corners", seed)
        assert int(g.face_size.sum()) == 2 * g.m
        assert euler(g) == 2


def test_rotation_views(fx_tri):
    assert fx_tri.rotation(0).tolist() == [0, 5]
    assert fx_tri.degree(0) == 2
    assert fx_tri.head(0) == 1 and fx_tri.tail(0) == 0
    # successor of a->b within its face is b->c
    assert fx_tri.succ(0) == 2
    assert fx_tri.left_face(0) == 1


def test_build_rejects_self_loop():
    with pytest.raises(SelfLoop):
        build_graph(2, [(0, 0, 1), (0, 1, 1)], [[0, 1, 2], [3]])


def test_build_rejects_missing_dart():
    with pytest.raises(MalformedRotation):
        build_graph(2, [(0, 1, 1)], [[0, 0], []])
    with pytest.raises(MalformedRotation):
        build_graph(2, [(0, 1, 1)], [[0], []])


def test_build_rejects_wrong_tail():
    with pytest.raises(MalformedRotation):
        build_graph(2, [(0, 1, 1)], [[1], [0]])


def test_build_rejects_disconnected():
    with pytest.raises(NotConnected):
        build_graph(4, [(0, 1, 1), (2, 3, 1)], [[0], [1], [2], [3]])


def test_build_rejects_negative_weight():
    with pytest.raises(ValueError):
        build_graph(2, [(0, 1, -3)], [[0], [1]])


def test_nonplanar_rotation_fails_euler():
    # reversing one rotation of K4 flips a vertex onto the "wrong side";
    # the system then traces a torus embedding: 2 faces, 4-6+2 != 2
    rot = [list(reversed(K4_ROT[0]))] + [list(r) for r in K4_ROT[1:]]
    with pytest.raises(EulerViolation):
        build_graph(4, K4_EDGES, rot)


def test_degree_two_rotation_reversal_is_noop(fx_tri):
    # at degree-2 vertices a reversed rotation is the same cyclic order
    g = build_graph(
        3, [(0, 1, 1), (1, 2, 2), (2, 0, 3)], [[5, 0], [2, 1], [4, 3]]
    )
    assert g.nfaces == fx_tri.nfaces == 2


# ---------------------------------------------------------------------------
# duality


def test_dual_tri(fx_tri):
    gd, pv = dual(fx_tri)
    assert gd.n == 2 and gd.m == 3
    assert sorted(gd.weights.tolist()) == [1.0, 2.0, 3.0]
    # all three edges parallel between the two face-vertices
    assert all(
        {int(u), int(v)} == {0, 1} for u, v in zip(gd.edges_u, gd.edges_v)
    )
    # dual faces correspond to primal vertices a, b, c
    assert sorted(pv.tolist()) == [0, 1, 2]
    assert euler(gd) == 2


def test_dual_rejects_bridge(fx_edge):
    with pytest.raises(DegenerateDual):
        dual(fx_edge)


def test_dual_preserves_weights_and_ids(fx_grid3):
    g, _ = fx_grid3
    gd, pv = dual(g)
    assert gd.n == g.nfaces and gd.m == g.m and gd.nfaces == g.n
    assert np.array_equal(gd.weights, g.weights)
    assert np.array_equal(np.sort(pv), np.arange(g.n))
    # dual dart d runs from the face left of primal d to the face right of it
    for d in range(2 * g.m):
        assert int(gd.dart_tail[d]) == int(g.dart_face[d ^ 1])


def cyclic_eq(a: list[int], b: list[int]) -> bool:
    return len(a) == len(b) and any(a == b[i:] + b[:i] for i in range(len(b)))


def dual_dual_matches(g) -> bool:
    gd, pv = dual(g)
    gdd, pv2 = dual(gd)
    # canonical correspondence: dual-of-dual dart d is primal dart rev(d)
    if not (
        np.array_equal(gdd.edges_u, g.edges_v)
        and np.array_equal(gdd.edges_v, g.edges_u)
    ):
        return False
    for v in range(g.n):
        f = int(np.flatnonzero(pv == v)[0])
        got = (gdd.rotation(f) ^ 1).tolist()
        if not cyclic_eq(got, g.rotation(v).tolist()):
            return False
    return True


def test_dual_of_dual_k4(fx_k4):
    assert dual_dual_matches(fx_k4)


def test_dual_of_dual_random_grids():
    for seed in range(25):
        g, _ = gen_grid(2 + seed % 5, 2 + (seed * 3) % 5, (1, 9), "corners", seed)
        assert dual_dual_matches(g)


# ---------------------------------------------------------------------------
# triangulation


def test_triangulate_grid_dual(fx_grid3):
    g, _ = fx_grid3
    gd, _ = dual(g)
    tr = triangulate(gd)
    assert (tr.graph.face_size == 3).all()
    assert np.isinf(tr.graph.weights[tr.added_edges]).all()
    # original edges untouched
    assert np.array_equal(tr.graph.weights[: gd.m], gd.weights)
    assert np.array_equal(tr.graph.edges_u[: gd.m], gd.edges_u)
    # every new face maps to the host face it subdivides
    assert tr.face_map.min() >= 0 and np.unique(tr.face_map).size == gd.nfaces


def test_triangulate_identity_when_triangular(fx_k4):
    gd, _ = dual(fx_k4)
    tr = triangulate(gd)
    assert tr.graph is gd
    assert tr.added_edges.size == 0


def test_triangulate_square_adds_one_chord_per_quad():
    sq = build_graph(
        4,
        [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)],
        [[0, 7], [2, 1], [4, 3], [6, 5]],
    )
    tr = triangulate(sq)
    # each of the two quadrilateral faces gains one chord
    assert tr.added_edges.size == 2
    assert tr.graph.nfaces == sq.nfaces + 2
    assert (tr.graph.face_size == 3).all()


def test_triangulate_random_duals():
    for seed in range(12):
        g, _ = gen_grid(2 + seed % 4, 3 + seed % 3, (1, 9), "corners", seed)
        gd, _ = dual(g)
        tr = triangulate(gd)
        assert (tr.graph.face_size == 3).all()
        assert euler(tr.graph) == 2
        assert np.isinf(tr.graph.weights[tr.added_edges]).all()
        assert (tr.face_map >= 0).all()


# ---------------------------------------------------------------------------
# cutting open along a path


def test_cut_two_edge_path_euler(fx_grid3):
    g, _ = fx_grid3
    gd, _ = dual(g)
    d1 = int(gd.rotation(0)[0])
    v1 = gd.head(d1)
    d2 = next(
        int(d)
        for d in gd.rotation(v1)
        if (d ^ 1) != d1 and gd.head(d) != 0
    )
    co = cut_along_path(gd, [d1, d2])
    assert co.graph.n == gd.n + 3
    assert co.graph.m == gd.m + 2
    assert euler(co.graph) == 2
    # total weight grows by exactly the duplicated path edges
    dup = gd.weights[np.asarray([d1, d2]) >> 1].sum()
    assert co.graph.weights.sum() == gd.weights.sum() + dup


def test_cut_open_distance_equals_min_cut(fx_tri):
    # slice the dual between the faces around a and b; the shortest
    # reconnect distance is the minimum a-b cut weight
    gd, pv = dual(fx_tri)
    fa = int(np.flatnonzero(pv == 0)[0])
    fb = int(np.flatnonzero(pv == 1)[0])
    co = cut_along_path(gd, [0], start_face=fa, end_face=fb)
    red = reduce_undirected(
        co.graph.n, co.graph.edges_u, co.graph.edges_v, co.graph.weights
    )
    best = min(
        float(run_dijkstra(red, int(keep))[0][int(new)])
        for keep, new in co.pairs.tolist()
    )
    assert best == 3.0


def test_cut_single_edge_splits_both_endpoints(fx_tri):
    co = cut_along_path(fx_tri, [0])
    assert co.graph.n == 5 and co.graph.m == 4
    assert co.pairs.tolist() == [[0, 3], [1, 4]]
    assert euler(co.graph) == 2


def test_cut_zero_length_vertex_split(fx_tri):
    gd, pv = dual(fx_tri)
    fa = int(np.flatnonzero(pv == 0)[0])
    fc = int(np.flatnonzero(pv == 2)[0])
    co = cut_along_path(gd, [], at_vertex=0, start_face=fa, end_face=fc)
    red = reduce_undirected(
        co.graph.n, co.graph.edges_u, co.graph.edges_v, co.graph.weights
    )
    dist, _ = run_dijkstra(red, int(co.pairs[0, 0]))
    # min a-c cut in the triangle: ca plus the cheaper of ab, bc
    assert float(dist[int(co.pairs[0, 1])]) == 4.0
    with pytest.raises(SameFace):
        cut_along_path(gd, [], at_vertex=0, start_face=fa, end_face=fa)
    with pytest.raises(NotAPath):
        cut_along_path(gd, [], at_vertex=0)


def test_cut_rejects_broken_chains(fx_k4):
    with pytest.raises(NotAPath):
        cut_along_path(fx_k4, [0, 0])  # repeats the same dart
    with pytest.raises(NotAPath):
        cut_along_path(fx_k4, [999])
    # closed walk repeats its first vertex
    g = fx_k4
    walk = [0]
    v = g.head(0)
    while v != 0:
        d = next(int(d) for d in g.rotation(v) if g.head(d) not in (g.tail(walk[-1]),))
        walk.append(d)
        v = g.head(d)
    with pytest.raises(NotSimple):
        cut_along_path(g, walk)


def test_cut_random_paths_preserve_euler():
    for seed in range(15):
        g, _ = gen_grid(3 + seed % 3, 3 + (seed * 5) % 3, (1, 9), "corners", seed)
        gd, _ = dual(g)
        # walk two darts from dual vertex seed % n
        v0 = seed % gd.n
        d1 = int(gd.rotation(v0)[seed % gd.degree(v0)])
        v1 = gd.head(d1)
        cands = [
            int(d)
            for d in gd.rotation(v1)
            if (d ^ 1) != d1 and gd.head(d) != v0
        ]
        darts = [d1] + ([cands[seed % len(cands)]] if cands else [])
        co = cut_along_path(gd, darts)
        assert euler(co.graph) == 2 - (co.graph.ncomp - 1)
        assert co.graph.n == gd.n + len(darts) + 1


# ---------------------------------------------------------------------------
# splitting along a cycle


def corner_bigon(gd, pv) -> list[int]:
    """Boundary of the dual face around primal vertex 0, oriented to
    enclose it on the left."""
    fb = int(np.flatnonzero(pv == 0)[0])
    B = gd.face_darts(fb)
    return [int(d) ^ 1 for d in B[::-1]]


def test_split_corner_face(fx_grid3):
    g, X = fx_grid3
    gd, pv = dual(g)
    term = frozenset(int(np.flatnonzero(pv == t)[0]) for t in X)
    marks = FaceMarks(terminals=term, origin=pv.copy())
    inter, exter = split_by_cycle(gd, corner_bigon(gd, pv), marks)
    assert int((inter.face_map >= 0).sum()) == 1
    assert int((exter.face_map >= 0).sum()) == gd.nfaces - 1
    # conservation of real faces
    assert (inter.face_map >= 0).sum() + (exter.face_map >= 0).sum() == gd.nfaces
    # terminals on both sides: each piece keeps its own plus a marked pseudo
    assert inter.pseudo_face in inter.marks.terminals
    assert exter.pseudo_face in exter.marks.terminals
    real_in = {f for f in inter.marks.terminals if f != inter.pseudo_face}
    real_ex = {f for f in exter.marks.terminals if f != exter.pseudo_face}
    assert len(real_in) + len(real_ex) == len(term)


def test_split_pseudo_unmarked_when_no_terminal_lost(fx_grid3):
    g, _ = fx_grid3
    gd, pv = dual(g)
    # only terminal is the corner face itself: exterior loses none
    fb = int(np.flatnonzero(pv == 0)[0])
    marks = FaceMarks(terminals=frozenset({fb}))
    inter, exter = split_by_cycle(gd, corner_bigon(gd, pv), marks)
    assert inter.marks.terminals == frozenset({0}) or fb in {
        int(inter.face_map[f])
        for f in inter.marks.terminals
        if f != inter.pseudo_face
    }
    assert exter.pseudo_face in exter.marks.terminals
    assert all(f == exter.pseudo_face for f in exter.marks.terminals)
    assert inter.pseudo_face not in inter.marks.terminals


def test_split_pieces_are_valid_graphs(fx_grid3):
    g, _ = fx_grid3
    gd, pv = dual(g)
    inter, exter = split_by_cycle(gd, corner_bigon(gd, pv))
    for piece in (inter, exter):
        assert euler(piece.graph) == 2
        # edge maps give host ids back
        assert np.array_equal(
            piece.graph.weights, gd.weights[piece.edge_map]
        )
    # cycle edges shared, everything else on exactly one side
    both = set(inter.edge_map.tolist()) & set(exter.edge_map.tolist())
    assert len(both) == 2
    assert len(set(inter.edge_map.tolist()) | set(exter.edge_map.tolist())) == gd.m


def test_split_rejects_bad_cycles(fx_k4):
    gd, _ = dual(fx_k4)
    with pytest.raises(NotSimpleCycle):
        split_by_cycle(gd, [0])
    with pytest.raises(NotSimpleCycle):
        split_by_cycle(gd, [0, 2])  # does not close up


# ---------------------------------------------------------------------------
# bridges and contraction


def test_bridge_mask_path_and_grid(fx_grid3):
    p = build_graph(3, [(0, 1, 4), (1, 2, 7)], [[0], [2, 1], [3]])
    assert bridge_mask(p).tolist() == [True, True]
    g, _ = fx_grid3
    assert not bridge_mask(g).any()


def test_contract_bridge_barbell():
    bb = build_graph(
        6,
        [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 9), (3, 4, 1), (4, 5, 1), (5, 3, 1)],
        [[0, 5], [2, 1], [4, 6, 3], [8, 7, 13], [10, 9], [12, 11]],
    )
    assert np.flatnonzero(bridge_mask(bb)).tolist() == [3]
    g2, vmap = contract_edges(bb, [3])
    assert g2.n == 5 and g2.m == 6
    assert vmap.tolist() == [0, 1, 2, 2, 3, 4]
    assert euler(g2) == 2
    assert not bridge_mask(g2).any()


def test_contract_rejects_cycles(fx_tri):
    with pytest.raises(SelfLoop):
        contract_edges(fx_tri, [0, 1, 2])


def test_contract_whole_path_to_point():
    p = build_graph(3, [(0, 1, 4), (1, 2, 7)], [[0], [2, 1], [3]])
    g2, vmap = contract_edges(p, [0, 1])
    assert g2.n == 1 and g2.m == 0
    assert vmap.tolist() == [0, 0, 0]
