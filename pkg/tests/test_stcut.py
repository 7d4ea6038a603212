"""Shortest separating cycles: two-face cuts and the swept family."""

from __future__ import annotations

import numpy as np
import pytest

from steinercut import SameFace, dual, gen_grid, min_st_cycle, reif_sweep
from steinercut.oracle_gen import delta_edges, oracle_pairflow
from steinercut.stcut import _face_flood, _open_between


def dual_faces(g):
    gd, pv = dual(g)
    inv = np.empty(pv.size, dtype=np.int64)
    inv[pv] = np.arange(pv.size)
    return gd, pv, inv


def cut_between(g, s, t):
    gd, pv, inv = dual_faces(g)
    return min_st_cycle(gd, int(inv[s]), int(inv[t]), origin=pv)


# ---------------------------------------------------------------------------
# two-face cuts


def test_tri_all_pairs(fx_tri):
    # weights ab=1, bc=2, ca=3; values confirmed by subset enumeration
    r = cut_between(fx_tri, 0, 1)
    assert r.weight.value == 3
    assert r.edges.tolist() == [0, 1] and r.side.tolist() == [0, 2]
    r = cut_between(fx_tri, 0, 2)
    assert r.weight.value == 4
    assert r.edges.tolist() == [0, 2] and r.side.tolist() == [0]
    r = cut_between(fx_tri, 1, 2)
    assert r.weight.value == 3
    assert r.edges.tolist() == [0, 1] and r.side.tolist() == [1]


def test_same_face_rejected(fx_tri):
    gd, pv, inv = dual_faces(fx_tri)
    with pytest.raises(SameFace):
        min_st_cycle(gd, int(inv[1]), int(inv[1]))


def test_side_without_origin(fx_tri):
    gd, pv, inv = dual_faces(fx_tri)
    r = min_st_cycle(gd, int(inv[0]), int(inv[1]))
    # raw face ids of the searched graph, still holding the start face
    assert int(inv[0]) in r.side.tolist()
    assert int(inv[1]) not in r.side.tolist()


def test_adjacent_terminal_faces(fx_grid3):
    # neighbouring primal vertices force the degenerate zero-length arc
    g, _ = fx_grid3
    for s, t in [(0, 1), (4, 5), (7, 8)]:
        r = cut_between(g, s, t)
        rep = oracle_pairflow(g, [s, t])
        assert r.weight == rep.weight


def test_matches_maxflow_on_grids():
    for seed in range(100):
        g, terms = gen_grid(8, 8, (1, 100), ("random-k", 2), seed)
        r = cut_between(g, terms[0], terms[1])
        rep = oracle_pairflow(g, terms)
        assert r.weight == rep.weight, f"seed {seed}"
        assert np.array_equal(np.sort(delta_edges(g, r.side)), r.edges), f"seed {seed}"


def test_unit_weights_and_ties():
    for seed in range(30):
        g, terms = gen_grid(6, 6, "unit", ("random-k", 2), seed)
        r = cut_between(g, terms[0], terms[1])
        rep = oracle_pairflow(g, terms)
        assert r.weight == rep.weight, f"seed {seed}"


def test_exhaustive_pairs_small_grid():
    g, _ = gen_grid(3, 4, (1, 7), "corners", 11)
    gd, pv, inv = dual_faces(g)
    for s in range(g.n):
        for t in range(s + 1, g.n):
            r = min_st_cycle(gd, int(inv[s]), int(inv[t]), origin=pv)
            rep = oracle_pairflow(g, [s, t])
            assert r.weight == rep.weight, (s, t)


def test_deterministic():
    g, terms = gen_grid(7, 7, (1, 50), ("random-k", 2), 13)
    a = cut_between(g, terms[0], terms[1])
    b = cut_between(g, terms[0], terms[1])
    assert a.weight == b.weight
    assert np.array_equal(a.edges, b.edges)
    assert np.array_equal(a.side, b.side)


def test_witness_is_a_real_cut():
    for seed in range(20):
        g, terms = gen_grid(6, 6, (1, 30), ("random-k", 2), seed)
        r = cut_between(g, terms[0], terms[1])
        side = np.zeros(g.n, dtype=bool)
        side[r.side] = True
        assert side[terms[0]] != side[terms[1]]
        de = np.sort(delta_edges(g, r.side))
        assert np.array_equal(de, r.edges)
        assert r.weight.value == int(g.weights[de].sum())


# ---------------------------------------------------------------------------
# the swept family


def sweep_for(g, s, t, terminal_faces=None):
    gd, pv, inv = dual_faces(g)
    s_face, t_face = int(inv[s]), int(inv[t])
    co = _open_between(gd, s_face, t_face)
    tf = (s_face, t_face) if terminal_faces is None else terminal_faces
    fam, i = reif_sweep(co, tf)
    return gd, co, fam, i


def test_walks_close_through_their_vertex():
    for seed in range(15):
        g, terms = gen_grid(7, 7, (1, 40), ("random-k", 2), seed)
        gd, co, fam, _ = sweep_for(g, terms[0], terms[1])
        l = fam.path_vertices.size
        for j in range(l):
            if fam.cycles[j] is None:
                assert not np.isfinite(fam.weights[j])
                continue
            q = fam.cycles[j]
            # vertex-simple left-to-right walk between the copies of v_j
            tails = co.graph.dart_tail[q]
            assert tails.size == np.unique(tails).size
            assert tails[0] == co.pairs[j, 1]
            assert co.graph.dart_tail[q[-1] ^ 1] == co.pairs[j, 0]
            # the projection closes up in the host exactly at v_j
            walk = fam.host_cycle(j)
            ht = gd.dart_tail[walk]
            hh = gd.dart_tail[walk ^ 1]
            assert np.array_equal(hh[:-1], ht[1:])
            assert ht[0] == hh[-1] == fam.path_vertices[j]
            assert fam.weights[j] == float(gd.weights[walk >> 1].sum())


def test_interiors_nest():
    for seed in range(25):
        g, terms = gen_grid(6, 6, (1, 20), ("random-k", 2), seed)
        gd, co, fam, _ = sweep_for(g, terms[0], terms[1])
        s_face = int(np.flatnonzero(dual(g)[1] == terms[0])[0])
        prev = None
        for j in range(fam.path_vertices.size):
            if fam.cycles[j] is None:
                continue
            walk = fam.host_cycle(j)
            S = _face_flood(gd, np.unique(walk >> 1), s_face)
            # enclosed side grows with the crossing index, counts match
            assert int(S.sum()) - 1 == int(fam.inside_faces[j])
            if prev is not None:
                assert not (prev & ~S).any()
            prev = S


def test_annuli_are_the_gaps_between_walks():
    g, terms = gen_grid(6, 6, (1, 25), ("random-k", 2), 3)
    gd, co, fam, _ = sweep_for(g, terms[0], terms[1])
    s_face = int(np.flatnonzero(dual(g)[1] == terms[0])[0])
    l = fam.path_vertices.size
    for key, cut_faces in fam.annuli.items():
        assert 1 <= key <= l - 1
        lo = _face_flood(gd, np.unique(fam.host_cycle(key - 1) >> 1), s_face)
        hi = _face_flood(gd, np.unique(fam.host_cycle(key) >> 1), s_face)
        want = np.flatnonzero(hi & ~lo)
        got = np.sort(fam.face_src[cut_faces])
        assert np.array_equal(got, want)


def test_enclosure_index_extremes():
    g, terms = gen_grid(5, 5, (1, 9), ("random-k", 2), 4)
    gd, pv, inv = dual_faces(g)
    s_face, t_face = int(inv[int(terms[0])]), int(inv[int(terms[1])])
    co = _open_between(gd, s_face, t_face)

    # the start anchor is enclosed by every walk, so nothing is empty
    fam, i = reif_sweep(co, (s_face, t_face))
    assert i == 0
    assert (fam.inside_terms[np.isfinite(fam.weights)] >= 1).all()

    # the end anchor is enclosed by none, so every finite walk is empty
    fam, i = reif_sweep(co, (t_face,))
    assert (fam.inside_terms[np.isfinite(fam.weights)] == 0).all()
    fin = np.flatnonzero(np.isfinite(fam.weights))
    assert i == (int(fin[-1]) + 1 if fin.size else 0)


def test_separating_mask_tracks_counts():
    for seed in range(10):
        g, terms = gen_grid(6, 6, (1, 15), ("random-k", 3), seed)
        gd, pv, inv = dual_faces(g)
        s_face, t_face = int(inv[int(terms[0])]), int(inv[int(terms[-1])])
        co = _open_between(gd, s_face, t_face)
        tf = tuple(int(inv[t]) for t in terms)
        fam, _ = reif_sweep(co, tf)
        mask = fam.separating_mask()
        for j in np.flatnonzero(mask):
            assert 0 < fam.inside_terms[j] < fam.k_total
