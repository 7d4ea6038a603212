"""Minimum Steiner cut on embedded planar graphs.

The solver works in the dual, where terminals become marked faces and a
terminal-separating cut becomes a cycle with marked faces on both sides.
A balanced fundamental-cycle separator splits each instance in two; the
candidates that cross the separator are recovered by slitting the graph
open along a tree path and sweeping the shortest crossing walk at every
slit vertex, plus one two-layer shortest-path search in the annulus the
sweep cannot certify on its own. Bridges never embed in a dual cycle, so
they are scanned directly and contracted away up front.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ._sssp import Reduced, reduce_directed, run_dijkstra, walk_preds
from .core import (
    CutOpen,
    EmbeddedGraph,
    FaceMarks,
    _assemble,
    bridge_mask,
    carry_marks,
    contract_edges,
    cut_along_path,
    dual,
    split_by_cycle,
    triangulate,
)
from .errors import GraphError, TooFewTerminals
from .separator import CycleSeparator, root_near_terminal, terminal_separator
from .stats import SolveStats
from .stcut import (
    CutResult,
    CycleFamily,
    _face_edge_darts,
    _face_flood,
    min_st_cycle,
    reif_sweep,
)
from .trees import TreePair, ccw_orientation, interdigitating, shortest_path_tree
from .weights import ExtWeight

__all__ = [
    "ConquerContext",
    "LayeredGraph",
    "annulus_search",
    "conquer",
    "min_steiner_cut",
    "red_darts",
    "solve_recursive",
    "trivial_cut",
]


class _Irregular(GraphError):
    """Internal: the annulus at the special slit vertex is too degenerate
    for the layered search (pinched bounding walk, merged boundary face,
    lost crossing edge); the caller covers the same candidates with direct
    two-face cuts instead."""


# ---------------------------------------------------------------------------
# contexts


@dataclass
class ConquerContext:
    """Everything the crossing-candidate search sees at one recursion node.

    Lives on the triangulated graph. ``v_e_face`` is enclosed by the
    separator and touches its non-tree edge, ``v_face`` is the face on the
    other side of the separator at its parentmost leafward edge, and
    ``v_t_face`` is a terminal face at the tree root. ``cut_path`` walks
    from the non-tree edge endpoint up to the root; the annulus fields stay
    unset until the search at the special index actually assembles one.
    """

    host: EmbeddedGraph
    marks: FaceMarks
    v_e_face: int
    v_face: int
    v_t_face: int
    cut_path: np.ndarray
    opening: CutOpen
    family: CycleFamily
    index: int
    stats: SolveStats
    annulus: EmbeddedGraph | None = None
    v_int: int = -1
    v_ext: int = -1
    sp_tree_i: TreePair | None = None
    red: np.ndarray | None = None


@dataclass
class LayeredGraph:
    """Two directed copies of a cut-open annulus.

    Tree darts appear in both copies; a non-tree dart survives only when
    it agrees with the reference orientation (hole on its left); agreeing
    red darts jump from copy 0 to copy 1 and also stay inside copy 1. Any
    source -> target walk therefore winds once around the hole and uses at
    least one red dart.
    """

    nnodes: int
    arcs: Reduced
    source: int
    target: int


# ---------------------------------------------------------------------------
# embedded subgraphs


def _edge_subgraph(g: EmbeddedGraph, keep_edges) -> tuple[EmbeddedGraph, np.ndarray, np.ndarray]:
    """Embedded subgraph on the given edges; isolated vertices drop.

    Returns (sub, vmap, emap) where vmap/emap give the host vertex and
    edge id of every new element. Rotations are filtered in place, so the
    embedding is the restriction of the host's.
    """
    ek = np.unique(np.asarray(keep_edges, dtype=np.int64))
    assert ek.size and ek.min() >= 0 and ek.max() < g.m
    dk = np.zeros(2 * g.m, dtype=bool)
    dk[2 * ek] = True
    dk[2 * ek + 1] = True
    flat = g.rot_flat[dk[g.rot_flat]]
    vkeep = np.zeros(g.n, dtype=bool)
    vkeep[g.dart_tail[2 * ek]] = True
    vkeep[g.dart_tail[2 * ek + 1]] = True
    vmap = np.flatnonzero(vkeep).astype(np.int64)
    vnew = np.full(g.n, -1, dtype=np.int64)
    vnew[vmap] = np.arange(vmap.size, dtype=np.int64)
    enew = np.full(g.m, -1, dtype=np.int64)
    enew[ek] = np.arange(ek.size, dtype=np.int64)
    new_flat = 2 * enew[flat >> 1] + (flat & 1)
    tails = vnew[g.dart_tail[flat]]
    assert (np.diff(tails) >= 0).all()
    start = np.zeros(vmap.size + 1, dtype=np.int64)
    np.cumsum(np.bincount(tails, minlength=vmap.size), out=start[1:])
    sub = _assemble(
        int(vmap.size),
        vnew[g.edges_u[ek]],
        vnew[g.edges_v[ek]],
        g.weights[ek].copy(),
        new_flat,
        start,
        orig_edge=g.orig_edge[ek].copy(),
        orig_vertex=g.orig_vertex[vmap].copy(),
        allow_disconnected=True,
    )
    return sub, vmap, ek


def _vertex_components(g: EmbeddedGraph, edge_ids: np.ndarray) -> np.ndarray:
    """Component label per vertex when only the given edges are kept."""
    u = g.edges_u[edge_ids]
    v = g.edges_v[edge_ids]
    mat = csr_matrix(
        (np.ones(2 * u.size, dtype=np.int8), (np.concatenate([u, v]), np.concatenate([v, u]))),
        shape=(g.n, g.n),
    )
    return connected_components(mat, directed=False)[1]


# ---------------------------------------------------------------------------
# candidates


def _walk_candidate(gd: EmbeddedGraph, walk, hole_face: int, marks: FaceMarks, st: SolveStats):
    """Validated cut from a closed walk known to keep ``hole_face`` inside.

    Floods faces from the hole across non-walk edges; the flooded side must
    hold some but not all terminal faces, and its boundary (never heavier
    than the walk) becomes the candidate. Returns None otherwise.
    """
    walk = np.asarray(walk, dtype=np.int64)
    side = _face_flood(gd, np.unique(walk >> 1), int(hole_face))
    tarr = np.fromiter((int(t) for t in marks.terminals), dtype=np.int64, count=marks.k)
    cnt = int(side[tarr].sum())
    if not 0 < cnt < marks.k:
        st.discarded += 1
        return None
    cut = np.flatnonzero(side[gd.dart_face[0::2]] != side[gd.dart_face[1::2]])
    w = float(gd.weights[cut].sum())
    if not np.isfinite(w):
        st.discarded += 1
        return None
    edges = np.sort(gd.orig_edge[cut]).astype(np.int64)
    assert cut.size and edges.min() >= 0
    sf = np.flatnonzero(side).astype(np.int64)
    if marks.origin is not None:
        ov = np.asarray(marks.origin, dtype=np.int64)[sf]
        sf = np.unique(ov[ov >= 0])
    st.candidates += 1
    return CutResult(ExtWeight.from_float(w), edges, sf)


# ---------------------------------------------------------------------------
# red darts and the layered annulus search


def red_darts(t_i: TreePair, marks) -> np.ndarray:
    """Parent darts of every tree vertex on a root path to a marked vertex.

    ``t_i`` is the interdigitating tree of an annulus (one vertex per
    face), rooted at the outer face; ``marks`` lists its marked face ids.
    A vertex is red when it or a descendant is marked; the returned darts
    are the parent darts of red vertices, unique and ascending, and each
    one read primally is the chosen counterclockwise dart of its edge.
    """
    tf = np.unique(np.asarray(list(marks), dtype=np.int64))
    seen = np.zeros(t_i.parent_vertex.size, dtype=bool)
    root = int(t_i.root)
    for t in tf.tolist():
        v = int(t)
        while v != root and not seen[v]:
            seen[v] = True
            v = int(t_i.parent_vertex[v])
    return np.unique(t_i.parent_dart[np.flatnonzero(seen)]).astype(np.int64)


def _build_layered(
    co2: CutOpen,
    in_tree: np.ndarray,
    lam_dart: np.ndarray,
    red_edge: np.ndarray,
    pin: int = 0,
) -> LayeredGraph:
    """Directed two-layer arc list over a cut-open annulus.

    The search is pinned at the path vertex of offset `pin`: it starts on
    that vertex's left copy in the plain layer and ends on the right copy
    in the jumped layer, so walks close up around the hole there.
    """
    g2 = co2.graph
    n2 = g2.n
    d2 = np.arange(2 * g2.m, dtype=np.int64)
    tails = g2.dart_tail
    heads = g2.dart_tail[d2 ^ 1]
    w = g2.weights[d2 >> 1]
    fin = np.isfinite(w)
    es = co2.edge_src[d2 >> 1]
    proj = co2.project(d2)
    treed = in_tree[es]
    agree = ~treed & (lam_dart[es] == proj)
    redd = agree & red_edge[es]
    lay0 = fin & (treed | (agree & ~redd))
    lay1 = fin & (treed | agree)
    cross = fin & redd
    a = np.concatenate([tails[lay0], n2 + tails[lay1], tails[cross]])
    b = np.concatenate([heads[lay0], n2 + heads[lay1], n2 + heads[cross]])
    ww = np.concatenate([w[lay0], w[lay1], w[cross]])
    ids = np.concatenate([d2[lay0], d2[lay1], d2[cross]])
    return LayeredGraph(
        nnodes=2 * n2,
        arcs=reduce_directed(2 * n2, a, b, ww, ids),
        source=int(co2.pairs[pin, 1]),
        target=n2 + int(co2.pairs[pin, 0]),
    )


def annulus_search(ctx: ConquerContext):
    """Shortest terminal-separating cycle crossing the special slit vertex.

    Builds the annulus between the last terminal-free swept walk and the
    next one, orients non-tree darts so that agreeing closed walks keep
    the hole on their left, marks darts whose fundamental cycle encloses a
    terminal red, and runs one Dijkstra over the two-layer cut-open
    annulus. Returns None when no crossing candidate exists there; raises
    _Irregular whenever the region falls outside the clean disk-with-hole
    shape the construction relies on.
    """
    st = ctx.stats
    st.annulus_searches += 1
    fam, i, hg = ctx.family, ctx.index, ctx.host
    co = ctx.opening

    A = fam.annuli.get(i)
    if A is None:
        raise _Irregular("missing bounding walk")
    # bounding walks may touch a cut-path vertex from both banks; that is
    # fine as long as the face classification below still merges cleanly
    walk_in = fam.host_cycle(i - 1)
    walk_out = fam.host_cycle(i)
    hostA = np.unique(fam.face_src[A])
    assert hostA.min(initial=0) >= 0
    term_mask = np.zeros(hg.nfaces, dtype=bool)
    term_mask[np.fromiter((int(t) for t in ctx.marks.terminals), dtype=np.int64)] = True
    if not term_mask[hostA].any():
        return None

    f_i = int(fam.path_vertices[i - 1])
    portion = int(co.path_darts[i - 1])

    be = _face_edge_darts(hg, hostA) >> 1
    ek = np.unique(np.concatenate([be, walk_in >> 1, walk_out >> 1, [portion >> 1]]))
    sub, vmap, emap = _edge_subgraph(hg, ek)

    # restrict to the crossing vertex's component and shave bridges until
    # stable; cycles never ride a bridge, so no candidate is lost
    while True:
        pos = np.flatnonzero(vmap == f_i)
        if pos.size != 1:
            raise _Irregular("crossing vertex dropped")
        fi_s = int(pos[0])
        drop = bridge_mask(sub)
        if sub.ncomp > 1:
            drop |= sub.vcomp[sub.edges_u] != sub.vcomp[fi_s]
        if not drop.any():
            break
        keep = emap[~drop]
        if keep.size == 0:
            raise _Irregular("annulus collapsed")
        sub, vmap, emap = _edge_subgraph(hg, keep)

    # classify sub faces by what their darts border in the host: the faces
    # inside the inner walk must merge into one hole, everything beyond the
    # outer walk into one outer face, and each region face must survive
    flood_in = _face_flood(hg, np.unique(walk_in >> 1), ctx.v_e_face)
    if flood_in[hostA].any():
        raise _Irregular("region bleeds into the hole")
    hclass = np.full(hg.nfaces, 2, dtype=np.int8)
    hclass[flood_in] = 0
    hclass[hostA] = 1
    dsub = np.arange(2 * sub.m, dtype=np.int64)
    dh = 2 * emap[dsub >> 1] + (dsub & 1)
    cls = hclass[hg.dart_face[dh]]
    fcls = np.full(sub.nfaces, -1, dtype=np.int8)
    fcls[sub.dart_face[dsub]] = cls
    if (fcls[sub.dart_face[dsub]] != cls).any():
        raise _Irregular("mixed boundary face")
    hole = np.flatnonzero(fcls == 0)
    outer = np.flatnonzero(fcls == 2)
    if hole.size != 1 or outer.size != 1:
        raise _Irregular("boundary did not merge cleanly")
    v_int, v_ext = int(hole[0]), int(outer[0])
    host_face = np.full(sub.nfaces, -1, dtype=np.int64)
    host_face[sub.dart_face[dsub]] = hg.dart_face[dh]
    reg = np.flatnonzero(fcls == 1)
    bad = (host_face[sub.dart_face[dsub]] != hg.dart_face[dh]) & (cls == 1)
    if bad.any() or np.unique(host_face[reg]).size != hostA.size:
        raise _Irregular("region face split or lost")

    # the slit rides the special path through the crossing vertex, extended
    # backward until it touches the hole and forward until it touches the
    # outer face; walks that double back along the path can pull either
    # boundary away from the crossing edge, and the extension restores a
    # hole-to-outer barrier crossed by admissible cycles exactly once
    inv = np.full(hg.n, -1, dtype=np.int64)
    inv[vmap] = np.arange(sub.n, dtype=np.int64)
    corner = sub.dart_face[dsub ^ 1]
    hole_inc = np.zeros(sub.n, dtype=bool)
    hole_inc[sub.dart_tail[dsub[corner == v_int]]] = True
    outer_inc = np.zeros(sub.n, dtype=bool)
    outer_inc[sub.dart_tail[dsub[corner == v_ext]]] = True
    pv_s = inv[co.path_vertices]
    ai = i - 1
    lo = ai
    while pv_s[lo] < 0 or not hole_inc[pv_s[lo]]:
        if pv_s[lo] < 0:
            raise _Irregular("slit vertex dropped")
        if lo == 0:
            raise _Irregular("no hole anchor on the path")
        lo -= 1
    hi = ai + 1
    while pv_s[hi] < 0 or not outer_inc[pv_s[hi]]:
        if pv_s[hi] < 0:
            raise _Irregular("slit vertex dropped")
        if hi == pv_s.size - 1:
            raise _Irregular("no outer anchor on the path")
        hi += 1
    einv = np.full(hg.m, -1, dtype=np.int64)
    einv[emap] = np.arange(sub.m, dtype=np.int64)
    pd = co.path_darts[lo:hi]
    if (einv[pd >> 1] < 0).any():
        raise _Irregular("slit edge dropped")
    slit = 2 * einv[pd >> 1] + (pd & 1)
    assert (sub.dart_tail[slit] == pv_s[lo:hi]).all()
    assert (sub.dart_tail[slit ^ 1] == pv_s[lo + 1 : hi + 1]).all()
    pin = ai - lo
    assert int(sub.dart_tail[slit[pin]]) == fi_s

    tstar_i = shortest_path_tree(sub, fi_s)
    cod = interdigitating(sub, tstar_i, root=v_ext)
    tstar_i.codual = cod
    lam = ccw_orientation(tstar_i)
    lam_dart = np.full(sub.m, -1, dtype=np.int64)
    lam_dart[lam.domain] = lam.chosen
    red = red_darts(cod, reg[term_mask[host_face[reg]]])
    ctx.annulus, ctx.v_int, ctx.v_ext = sub, v_int, v_ext
    ctx.sp_tree_i, ctx.red = tstar_i, red
    if red.size == 0:
        return None
    assert (lam_dart[red >> 1] == red).all()
    red_edge = np.zeros(sub.m, dtype=bool)
    red_edge[red >> 1] = True

    try:
        co2 = cut_along_path(sub, slit, start_face=v_int, end_face=v_ext)
    except GraphError as exc:
        raise _Irregular(f"slit rejected: {exc}") from None
    lg = _build_layered(co2, tstar_i.in_tree, lam_dart, red_edge, pin)
    dist, pred = run_dijkstra(lg.arcs, lg.source)
    if not np.isfinite(dist[lg.target]):
        return None
    nodes = walk_preds(pred, lg.target)
    assert int(nodes[0]) == lg.source
    steps = co2.project(lg.arcs.lookup(nodes[:-1], nodes[1:]))

    # the projection is a closed walk through the crossing vertex of
    # exactly the searched length; it revisits a vertex when the shortest
    # two-layer walk rides both banks of the slit or doubles back once per
    # layer, in which case the flooded boundary below still extracts a
    # valid cut no heavier than the walk, and anything it cannot extract
    # is recovered by the caller's fallback
    tw = sub.dart_tail[steps]
    hw = sub.dart_tail[steps ^ 1]
    assert (hw[:-1] == tw[1:]).all()
    assert int(tw[0]) == fi_s and int(hw[-1]) == fi_s
    assert float(sub.weights[steps >> 1].sum()) == float(dist[lg.target])
    pinched = np.unique(tw).size != tw.size

    walk_hg = 2 * emap[steps >> 1] + (steps & 1)
    cand = _walk_candidate(hg, walk_hg, ctx.v_e_face, ctx.marks, st)
    if pinched:
        st.pinched_projections += 1
        if cand is None:
            raise _Irregular("pinched crossing walk")
    return cand


def _crossing_fallback(ctx: ConquerContext):
    """Crossing candidates of an irregular annulus via direct two-face cuts.

    Every terminal-separating cycle through the special slit vertex
    encloses some terminal face outside the last terminal-free walk while
    leaving the root terminal face outside, so the best cut separating
    such a terminal from the root face is at least as good as anything the
    layered search could have returned, at the price of one cut per
    candidate terminal.
    """
    st = ctx.stats
    st.extra["fallbacks"] = int(st.extra.get("fallbacks", 0)) + 1
    fam, hg = ctx.family, ctx.host
    walk_in = fam.host_cycle(ctx.index - 1)
    inside = _face_flood(hg, np.unique(walk_in >> 1), ctx.v_e_face)
    best = None
    for t in sorted(int(t) for t in ctx.marks.terminals):
        if t == ctx.v_t_face or inside[t]:
            continue
        r = min_st_cycle(hg, t, ctx.v_t_face, origin=ctx.marks.origin, stats=st)
        if r is not None and (best is None or r.weight < best.weight):
            best = r
    return best


# ---------------------------------------------------------------------------
# one recursion node


def conquer(gd: EmbeddedGraph, marks: FaceMarks, sep: CycleSeparator, tstar: TreePair, *, stats: SolveStats | None = None):
    """Best terminal-separating cycle that crosses the separator, if any.

    Slits the graph open along the separator's rootward path extended to
    the root, takes the best terminal-separating walk from the sweep, and
    closes the one gap the sweep can leave with the annulus search (or,
    when the annulus is degenerate, with direct two-face cuts). Returns
    None when every crossing candidate is provably dominated by one that
    does not cross.
    """
    st = stats if stats is not None else SolveStats()
    e_dart = int(sep.cycle[0])
    v_e = int(gd.dart_face[e_dart ^ 1])
    v_out = int(gd.dart_face[int(sep.path_b[0]) if sep.path_b.size else e_dart])

    tm = np.zeros(gd.nfaces, dtype=bool)
    tm[np.fromiter((int(t) for t in marks.terminals), dtype=np.int64)] = True
    root = int(tstar.root)
    around = gd.dart_face[gd.rotation(root) ^ 1]
    tfr = around[tm[around] & (around != v_e)]
    if tfr.size == 0:
        # the only terminal face at the root is the enclosed one; every
        # crossing candidate is then dominated by a non-crossing cycle
        return None
    v_t = int(tfr.min())

    pa = sep.path_a.astype(np.int64)
    lca = int(gd.dart_tail[(int(pa[-1]) if pa.size else e_dart) ^ 1])
    cut_path = np.concatenate([pa, tstar.path_to_root(lca)]).astype(np.int64)
    if cut_path.size:
        co = cut_along_path(gd, cut_path, start_face=v_e, end_face=v_t)
    else:
        co = cut_along_path(gd, [], start_face=v_e, end_face=v_t, at_vertex=lca)

    fam, i = reif_sweep(co, np.flatnonzero(tm), stats=st)
    ctx = ConquerContext(
        host=gd,
        marks=marks,
        v_e_face=v_e,
        v_face=v_out,
        v_t_face=v_t,
        cut_path=cut_path,
        opening=co,
        family=fam,
        index=i,
        stats=st,
    )

    best = None
    mask = fam.separating_mask()
    if mask.any():
        idx = np.flatnonzero(mask)
        j = int(idx[np.argmin(fam.weights[idx])])
        best = _walk_candidate(gd, fam.host_cycle(j), v_e, marks, st)
    if 0 < i < int(co.path_vertices.size):
        try:
            cand = annulus_search(ctx)
        except _Irregular as exc:
            key = f"irr:{exc}"
            st.extra[key] = int(st.extra.get(key, 0)) + 1
            cand = _crossing_fallback(ctx)
        if cand is not None and (best is None or cand.weight < best.weight):
            best = cand
    return best


# ---------------------------------------------------------------------------
# recursion


def trivial_cut(gd: EmbeddedGraph, marks: FaceMarks, *, stats: SolveStats | None = None):
    """Minimum cut splitting the smallest terminal face from another.

    Scans the other terminal faces in ascending order and keeps the first
    strict minimum; exact for any number of terminals because an optimal
    cut always separates the smallest terminal from some other one.
    """
    st = stats if stats is not None else SolveStats()
    terms = sorted(int(t) for t in marks.terminals)
    best = None
    for t in terms[1:]:
        r = min_st_cycle(gd, terms[0], t, origin=marks.origin, stats=st)
        if r is not None and (best is None or r.weight < best.weight):
            best = r
    return best


def solve_recursive(gd: EmbeddedGraph, marks: FaceMarks, *, stats: SolveStats | None = None, depth: int = 1):
    """Best terminal-separating cycle, or None when none has finite weight.

    Small instances fall through to the pairwise base case; otherwise the
    graph is triangulated, split on a terminal-balanced separator, and the
    answer is the best of the crossing candidate and the two recursive
    calls, ties resolved in that order.
    """
    st = stats if stats is not None else SolveStats()
    st.enter(depth)
    k = marks.k
    assert k >= 2
    if k <= 4 or gd.n < 3:
        return trivial_cut(gd, marks, stats=st)

    tri = triangulate(gd)
    hg = tri.graph
    m2 = carry_marks(tri, marks)
    tstar = shortest_path_tree(hg, root_near_terminal(hg, m2))
    sep = terminal_separator(hg, m2, tstar)
    best = conquer(hg, m2, sep, tstar, stats=st)

    cap = -(-3 * k // 4) + 1
    for piece in split_by_cycle(hg, sep.cycle, m2):
        pk = piece.marks.k
        assert 2 <= pk <= cap and pk < k
        sub = solve_recursive(piece.graph, piece.marks, stats=st, depth=depth + 1)
        if sub is not None and (best is None or sub.weight < best.weight):
            best = sub
    return best


# ---------------------------------------------------------------------------
# bridges and the public entry


def _bridge_candidate(g: EmbeddedGraph, X: np.ndarray, bridges: np.ndarray):
    """Lightest single bridge whose removal separates the terminals."""
    nb = np.ones(g.m, dtype=bool)
    nb[bridges] = False
    lab = _vertex_components(g, np.flatnonzero(nb))
    k = int(X.size)
    nl = int(lab.max()) + 1
    cnt = np.bincount(lab[X], minlength=nl)
    bu = lab[g.edges_u[bridges]]
    bv = lab[g.edges_v[bridges]]
    assert (bu != bv).all()

    # the 2-edge-connected blocks joined by the bridges form one tree
    adj: list[list[tuple[int, int]]] = [[] for _ in range(nl)]
    for j, (a, b) in enumerate(zip(bu.tolist(), bv.tolist())):
        adj[a].append((b, j))
        adj[b].append((a, j))
    parent = np.full(nl, -1, dtype=np.int64)
    down = np.full(bridges.size, -1, dtype=np.int64)  # child label per bridge
    order = [0]
    parent[0] = 0
    for a in order:
        for b, j in adj[a]:
            if parent[b] < 0:
                parent[b] = a
                down[j] = b
                order.append(b)
    assert len(order) == nl and (down >= 0).all()
    sub = cnt.astype(np.int64)
    for a in reversed(order[1:]):
        sub[parent[a]] += sub[a]

    best = None
    for j in range(bridges.size):
        c = int(sub[down[j]])
        if not 0 < c < k:
            continue
        e = int(bridges[j])
        key = (float(g.weights[e]), int(g.orig_edge[e]))
        if best is None or key < best:
            best = key
    if best is None:
        return None
    w, oe = best
    assert oe >= 0
    return CutResult(
        ExtWeight.from_float(w), np.array([oe], dtype=np.int64), np.empty(0, dtype=np.int64)
    )


def _finalize(gc: EmbeddedGraph, X: np.ndarray, best: CutResult) -> CutResult:
    """Canonical cut from a winning candidate's edge set.

    Floods vertices from the smallest terminal across non-candidate edges;
    the component's boundary is the reported cut. It can only shed edges
    the candidate never needed, so the weight must come out equal.
    """
    win = np.isin(gc.orig_edge, best.edges)
    lab = _vertex_components(gc, np.flatnonzero(~win))
    t0 = int(X[0])
    side = lab == lab[t0]
    assert not side[X].all()
    cut = np.flatnonzero(side[gc.edges_u] != side[gc.edges_v])
    w = ExtWeight.from_float(float(gc.weights[cut].sum()))
    assert w == best.weight
    edges = np.sort(gc.orig_edge[cut]).astype(np.int64)
    if not w.is_infinite:
        assert edges.min() >= 0
    sv = gc.orig_vertex[np.flatnonzero(side)]
    return CutResult(w, edges, np.unique(sv[sv >= 0]))


def _solve_connected(gc: EmbeddedGraph, X: np.ndarray, st: SolveStats) -> CutResult:
    """Full pipeline on a connected graph: bridges, dual, recursion."""
    cands = []
    br = np.flatnonzero(bridge_mask(gc))
    if br.size:
        bc = _bridge_candidate(gc, X, br)
        if bc is not None:
            cands.append(bc)
        g2, vmap2 = contract_edges(gc, br)
        X2 = np.unique(vmap2[X])
    else:
        g2, X2 = gc, X

    if X2.size >= 2:
        gd, pv = dual(g2)
        inv = np.full(g2.n, -1, dtype=np.int64)
        inv[pv] = np.arange(gd.nfaces, dtype=np.int64)
        faces = inv[X2]
        assert faces.min() >= 0
        marks = FaceMarks(
            terminals=frozenset(int(f) for f in faces), origin=g2.orig_vertex[pv]
        )
        main = solve_recursive(gd, marks, stats=st, depth=1)
        if main is not None:
            cands.append(main)

    if not cands:
        # every terminal-separating cut weighs Infinity; report the one
        # around the smallest terminal
        t0 = int(X[0])
        inc = np.flatnonzero((gc.edges_u == t0) | (gc.edges_v == t0))
        w = float(gc.weights[inc].sum())
        assert not np.isfinite(w)
        cands.append(
            CutResult(
                ExtWeight.from_float(w),
                np.sort(gc.orig_edge[inc]).astype(np.int64),
                np.empty(0, dtype=np.int64),
            )
        )

    best = cands[0]
    for c in cands[1:]:
        if c.weight < best.weight:
            best = c
    return _finalize(gc, X, best)


def min_steiner_cut(g: EmbeddedGraph, X, *, stats: SolveStats | None = None) -> CutResult:
    """Minimum-weight edge cut leaving terminals on both sides.

    ``X`` holds at least two distinct vertex ids. The result reports the
    exact weight, the ascending cut edge ids, and the full vertex side
    containing the smallest terminal (ids of the outermost ancestor graph,
    which for a freshly built graph are just its own). Terminals spread
    over several components make the answer weight 0 with one component as
    the witness side.
    """
    st = stats if stats is not None else SolveStats()
    t_start = time.perf_counter()
    try:
        Xs = np.unique(np.asarray(sorted(int(x) for x in X), dtype=np.int64))
        if Xs.size < 2:
            raise TooFewTerminals("need at least two distinct terminals")
        if Xs[0] < 0 or Xs[-1] >= g.n:
            raise ValueError("terminal id out of range")
        if g.ncomp > 1:
            t0 = int(Xs[0])
            if (g.vcomp[Xs] != g.vcomp[t0]).any():
                sv = g.orig_vertex[np.flatnonzero(g.vcomp == g.vcomp[t0])]
                return CutResult(
                    ExtWeight(0), np.empty(0, dtype=np.int64), np.unique(sv[sv >= 0])
                )
            keep = np.flatnonzero(g.vcomp[g.edges_u] == g.vcomp[t0])
            sub, vmap, _ = _edge_subgraph(g, keep)
            inv = np.full(g.n, -1, dtype=np.int64)
            inv[vmap] = np.arange(vmap.size, dtype=np.int64)
            Xc = inv[Xs]
            assert Xc.min() >= 0
            return _solve_connected(sub, Xc, st)
        return _solve_connected(g, Xs, st)
    finally:
        st.elapsed_ms += (time.perf_counter() - t_start) * 1000.0
