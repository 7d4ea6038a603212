"""Shortest separating cycles in an embedded graph, swept along a cut path.

A cycle separates two faces exactly when it crosses an arc joining their
interiors an odd number of times.  Cutting the graph open along a path
realizes such an arc combinatorially: every path vertex splits into a
right and a left copy, and any left-to-right walk between the copies of
one path vertex projects back to a closed walk crossing the arc exactly
once, there.  When the path is shortest, the minimum over all crossing
points is the weight of the shortest separating cycle.

The sweep fills in the crossing points in midpoint order.  Every finished
walk is a closed curve, and the walks for the indices between two
finished ones can be found among the faces strictly between those curves,
so each subproblem is restricted to that face set plus the bounding walk
edges.  The restriction forces the whole family to be nested, which keeps
the per-index enclosed-face and enclosed-terminal counts exact while the
total work stays near linear.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from ._sssp import reduce_undirected, run_dijkstra, walk_preds
from .core import CutOpen, EmbeddedGraph, cut_along_path
from .errors import NotConnected, SameFace
from .stats import SolveStats
from .weights import ExtWeight

# Dijkstra never relaxes through infinities, so the cut-path search runs on
# weights capped at a finite ceiling: the path only needs to exist, its own
# weight never enters any reported cut value.
_CAP = float(2**60)


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class CutResult:
    """A verified separating cut.

    ``edges`` holds ascending edge ids of the outermost ancestor graph
    (through ``orig_edge``).  ``side`` lists one side of the witness
    partition, ascending: face ids of the searched graph, or their images
    under the ``origin`` mapping when one was supplied.
    """

    weight: ExtWeight
    edges: np.ndarray
    side: np.ndarray


@dataclass
class CycleFamily:
    """All shortest crossing walks along one cut path.

    ``cycles[j]`` holds darts of the cut-open graph whose projection into
    the host is a closed walk through ``path_vertices[j]`` crossing the
    cut arc exactly once, or None when no finite walk crosses there.
    ``inside_terms[j]`` / ``inside_faces[j]`` count terminal faces and all
    faces strictly enclosed on the start-face side; exact wherever the
    weight is finite, and the face counts certify nesting.  ``annuli``
    maps a 1-based index ``i`` whose neighbouring walks both exist to the
    cut-open faces strictly between ``cycles[i-1]`` and ``cycles[i]``.
    """

    co: CutOpen
    weights: np.ndarray
    cycles: list
    inside_terms: np.ndarray
    inside_faces: np.ndarray
    k_total: int
    slit_face: int
    face_src: np.ndarray
    annuli: dict

    @property
    def path_vertices(self) -> np.ndarray:
        return self.co.path_vertices

    def host_cycle(self, j: int):
        cyc = self.cycles[j]
        return None if cyc is None else self.co.project(cyc)

    def separating_mask(self) -> np.ndarray:
        fin = np.isfinite(self.weights)
        return fin & (self.inside_terms > 0) & (self.inside_terms < self.k_total)


# ---------------------------------------------------------------------------
# shared helpers


def _grouped_ranges(offsets: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    # concatenated [o, o+len) index ranges, one per group
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(lengths)
    shift = np.repeat(offsets.astype(np.int64) - np.concatenate(([0], ends[:-1])), lengths)
    return np.arange(total, dtype=np.int64) + shift


def _face_edge_darts(g: EmbeddedGraph, faces: np.ndarray) -> np.ndarray:
    """Boundary darts of the given faces, concatenated in trace order."""
    flat, start = g.ordered_faces()
    return flat[_grouped_ranges(start[faces], g.face_size[faces])]


def _face_flood(g: EmbeddedGraph, blocked_edges: np.ndarray, start_face: int) -> np.ndarray:
    """Faces reachable from ``start_face`` without stepping over a blocked edge."""
    keep = np.ones(g.m, dtype=bool)
    keep[blocked_edges] = False
    e = np.flatnonzero(keep)
    adj = csr_matrix(
        (np.ones(e.size, dtype=np.int8), (g.dart_face[2 * e], g.dart_face[2 * e + 1])),
        shape=(g.nfaces, g.nfaces),
    )
    order = breadth_first_order(adj, int(start_face), directed=False, return_predecessors=False)
    side = np.zeros(g.nfaces, dtype=bool)
    side[order] = True
    return side


def _slit_and_sources(co: CutOpen) -> tuple[int, np.ndarray]:
    """The merged slit face, and the host face behind every other face."""
    g, host = co.graph, co.host
    orig = np.arange(2 * host.m, dtype=np.int64)
    src = np.full(g.nfaces, -1, dtype=np.int64)
    src[g.dart_face[orig]] = host.dart_face[orig]
    s_own = np.unique(g.dart_face[orig[host.dart_face[orig] == co.start_face]])
    t_own = np.unique(g.dart_face[orig[host.dart_face[orig] == co.end_face]])
    assert s_own.size == 1 and t_own.size == 1 and s_own[0] == t_own[0]
    slit = int(s_own[0])
    src[slit] = -1
    rest = src[np.arange(g.nfaces) != slit]
    assert g.nfaces == host.nfaces - 1
    assert rest.min(initial=0) >= 0 and np.unique(rest).size == rest.size
    return slit, src


def _restricted_path(g: EmbeddedGraph, edges: np.ndarray, src: int, dst: int):
    """Shortest src-dst dart path using only the given edges, or None."""
    if edges.size == 0:
        return None
    eu = g.edges_u[edges]
    ev = g.edges_v[edges]
    verts = np.unique(np.concatenate((eu, ev)))
    pos = np.searchsorted(verts, (src, dst))
    if pos.max() >= verts.size or verts[pos[0]] != src or verts[pos[1]] != dst:
        return None
    red = reduce_undirected(
        verts.size, np.searchsorted(verts, eu), np.searchsorted(verts, ev), g.weights[edges]
    )
    dist, pred = run_dijkstra(red, int(pos[0]))
    if not np.isfinite(dist[pos[1]]):
        return None
    vp = np.asarray(walk_preds(pred, int(pos[1])), dtype=np.int64)
    e = edges[red.lookup(vp[:-1], vp[1:])]
    darts = 2 * e + (g.edges_u[e] != verts[vp[:-1]])
    assert float(g.weights[e].sum()) == float(dist[pos[1]])
    return darts


# ---------------------------------------------------------------------------
# the sweep


def reif_sweep(co: CutOpen, terminal_faces, *, stats: SolveStats | None = None):
    """Shortest crossing walk per cut-path vertex, with enclosure counts.

    ``terminal_faces`` are host face ids and may include the two cut
    anchors.  Returns ``(family, i)`` where ``i`` is the largest 1-based
    index whose walk exists and strictly encloses no terminal, 0 when no
    such walk does.  The midpoint recursion is at most ``ceil(log2 l)+1``
    deep and touches each face of a level once plus the bounding walks.
    """
    gdc, host = co.graph, co.host
    slit, face_src = _slit_and_sources(co)
    terms_host = np.unique(np.asarray(sorted({int(t) for t in terminal_faces}), dtype=np.int64))
    k_total = int(terms_host.size)
    anchor_in = int(bool((terms_host == co.start_face).any()))
    inv = np.full(host.nfaces, -1, dtype=np.int64)
    keep = face_src >= 0
    inv[face_src[keep]] = np.flatnonzero(keep)
    other = terms_host[(terms_host != co.start_face) & (terms_host != co.end_face)]
    term_cut = inv[other]
    assert term_cut.min(initial=0) >= 0

    l = int(co.path_vertices.size)
    weights = np.full(l, np.inf)
    cycles: list = [None] * l
    inside_t = np.zeros(l, dtype=np.int64)
    inside_f = np.zeros(l, dtype=np.int64)
    annuli: dict[int, np.ndarray] = {}
    max_depth = (int(np.ceil(np.log2(l))) + 1) if l > 1 else 1
    if stats is not None:
        stats.sweeps += 1

    # reusable scratch, reset after every node
    in_region = np.zeros(gdc.nfaces, dtype=bool)
    side_of = np.full(gdc.nfaces, -1, dtype=np.int8)
    q_edge = np.zeros(gdc.m, dtype=bool)

    # position of every dart within its tail's rotation, for batch lookups
    deg_all = np.diff(gdc.rot_start)
    dart_pos = np.empty(2 * gdc.m, dtype=np.int64)
    dart_pos[gdc.rot_flat] = np.arange(2 * gdc.m, dtype=np.int64) - np.repeat(
        gdc.rot_start[:-1], deg_all
    )

    # which walk last put a face strictly inside / outside itself; a face
    # outside the current region is below it iff its inside mark precedes
    # the region, above it iff its outside mark follows (nesting)
    in_mark = np.full(gdc.nfaces, l, dtype=np.int64)
    out_mark = np.full(gdc.nfaces, -1, dtype=np.int64)

    # edges with exactly one side on the slit, tagged by what they border
    # in the host: -1 for the start blob, l for the end blob, j for a copy
    # of cut-path edge j
    one_slit = np.flatnonzero(
        (gdc.dart_face[0::2] == slit) ^ (gdc.dart_face[1::2] == slit)
    )
    stretch = np.full(host.m, -2, dtype=np.int64)
    stretch[co.path_darts >> 1] = np.arange(co.path_darts.size, dtype=np.int64)
    he = co.edge_src[one_slit]
    st = stretch[he]
    on_s = (host.dart_face[2 * he] == co.start_face) | (host.dart_face[2 * he + 1] == co.start_face)
    on_t = (host.dart_face[2 * he] == co.end_face) | (host.dart_face[2 * he + 1] == co.end_face)
    assert ((st >= 0) | on_s | on_t).all()
    slit_hint = np.full(gdc.m, -2, dtype=np.int64)
    slit_hint[one_slit] = np.where(st >= 0, st, np.where(on_s, -1, l))

    def label(faces: np.ndarray, q: np.ndarray, qe: np.ndarray, terms: np.ndarray,
              mid: int, lo: int, hi: int):
        """Side of every region face w.r.t. the closed curve of ``q``.

        Side 0 is the walk's left, which by the slit geometry is always
        the start-face side.  Seeds come from the faces flanking each walk
        dart plus the corner sectors at every walk vertex, with the two
        endpoint copies bounded by their nearest slit corner.
        """
        in_region[faces] = True
        q_edge[qe] = True
        sf = [gdc.dart_face[q ^ 1], gdc.dart_face[q]]
        ss = [np.zeros(q.size, dtype=np.int8), np.ones(q.size, dtype=np.int8)]
        tails = gdc.dart_tail[q]
        if q.size > 1:
            # corner sectors at every interior walk vertex, batched: a dart
            # sits left of the walk iff it lies ccw-between the outgoing
            # walk dart and the reversed incoming one
            vt = tails[1:]
            beg = gdc.rot_start[vt]
            deg = deg_all[vt]
            p0 = dart_pos[q[1:]]
            steps = (dart_pos[q[:-1] ^ 1] - p0) % deg
            grp = np.repeat(np.arange(vt.size, dtype=np.int64), deg)
            ys = gdc.rot_flat[_grouped_ranges(beg, deg)]
            off = (dart_pos[ys] - p0[grp]) % deg[grp]
            sf.append(gdc.dart_face[ys ^ 1])
            ss.append((off >= steps[grp]).astype(np.int8))
        # the curve closes through the slit face, so at each endpoint copy
        # the sectors are bounded by the walk dart and the nearest slit
        # corner; the closing arc's exact route inside the slit face never
        # sweeps a real corner, so "nearest" is a free canonical choice
        for d0, inner in ((int(q[0]), 0), (int(q[-1]) ^ 1, 1)):
            rot = gdc.rotation(int(gdc.dart_tail[d0]))
            p0 = int(np.flatnonzero(rot == d0)[0])
            gapf = gdc.dart_face[np.roll(rot, -p0) ^ 1]
            hit = np.flatnonzero(gapf == slit)
            assert hit.size, "endpoint copy does not touch the slit face"
            sd = np.full(rot.size, 1 - inner, dtype=np.int8)
            sd[: hit[0] + 1] = inner
            sf.append(gapf)
            ss.append(sd)
        seed_f = np.concatenate(sf)
        seed_s = np.concatenate(ss)
        ok = (seed_f >= 0) & (seed_f != slit) & in_region[seed_f]
        seed_f, seed_s = seed_f[ok], seed_s[ok]

        # flood across region edges not on the walk
        f0 = gdc.dart_face[2 * edges]
        f1 = gdc.dart_face[2 * edges + 1]
        use = in_region[f0] & in_region[f1] & ~q_edge[edges]
        ra = np.searchsorted(faces, f0[use])
        rb = np.searchsorted(faces, f1[use])
        adj = csr_matrix(
            (np.ones(ra.size, dtype=np.int8), (ra, rb)), shape=(faces.size, faces.size)
        )
        ncomp, comp = connected_components(adj, directed=False)
        cmin = np.full(ncomp, 2, dtype=np.int8)
        cmax = np.full(ncomp, -1, dtype=np.int8)
        sc = comp[np.searchsorted(faces, seed_f)]
        np.minimum.at(cmin, sc, seed_s)
        np.maximum.at(cmax, sc, seed_s)
        assert ((cmin == cmax) | (cmax < 0)).all(), "walk sides bled into each other"
        fside = cmin[comp] if ncomp else np.empty(0, dtype=np.int8)

        # a component no seed reached never touches the walk, so it is
        # walled off by the slit or by faces outside the region, and any
        # wall decides its side: below-the-region faces and the slit rim
        # before the crossing are side 0, the mirror cases side 1
        for ci in np.flatnonzero(cmax < 0):
            pick = comp == ci
            darts = _face_edge_darts(gdc, faces[pick])
            other = gdc.dart_face[darts ^ 1]
            inr = other[in_region[other]]
            assert (comp[np.searchsorted(faces, inr)] == ci).all()
            wall = other[~in_region[other]]
            wd = darts[~in_region[other]]
            sl = wall == slit
            votes = []
            if sl.any():
                hint = slit_hint[wd[sl] >> 1]
                assert (hint > -2).all() and (hint != mid).all()
                votes.append((hint > mid).astype(np.int8))
            if (~sl).any():
                below = in_mark[wall[~sl]] < lo
                above = out_mark[wall[~sl]] > hi
                assert (below ^ above).all(), "wall face has no decided side"
                votes.append(np.where(below, 0, 1).astype(np.int8))
            votes = np.concatenate(votes)
            assert votes.size and (votes == votes[0]).all(), "pocket walls disagree"
            fside[pick] = votes[0]

        side_of[faces] = fside
        t_pos = side_of[terms] if terms.size else np.empty(0, dtype=np.int8)
        in_t, out_t = terms[t_pos == 0], terms[t_pos == 1]
        in_f, out_f = faces[fside == 0], faces[fside == 1]
        in_region[faces] = False
        q_edge[qe] = False
        side_of[faces] = -1
        return in_f, out_f, in_t, out_t

    all_faces = np.delete(np.arange(gdc.nfaces, dtype=np.int64), slit)
    none_e = np.empty(0, dtype=np.int64)
    # edges walled in by the slit on both sides (host edges joining the two
    # anchor faces) border no region face yet stay usable by every walk
    slit_edges = np.flatnonzero(
        (gdc.dart_face[0::2] == slit) & (gdc.dart_face[1::2] == slit)
    ).astype(np.int64)
    stack = [(0, l - 1, all_faces, none_e, none_e, 0, 0, term_cut, 1)]
    while stack:
        lo, hi, faces, blo, bhi, base_t, base_f, terms, depth = stack.pop()
        if lo > hi:
            if 1 <= lo <= l - 1 and np.isfinite(weights[lo - 1]) and np.isfinite(weights[lo]):
                annuli[lo] = faces
            continue
        assert depth <= max_depth
        if stats is not None:
            stats.sweep_nodes += 1
        mid = (lo + hi) // 2
        edges = np.unique(
            np.concatenate((_face_edge_darts(gdc, faces) >> 1, blo, bhi, slit_edges))
        )
        q = _restricted_path(gdc, edges, int(co.pairs[mid, 1]), int(co.pairs[mid, 0]))
        if q is None:
            # no finite walk crosses here; the bounds stay as they were
            stack.append((lo, mid - 1, faces, blo, bhi, base_t, base_f, terms, depth + 1))
            stack.append((mid + 1, hi, faces, blo, bhi, base_t, base_f, terms, depth + 1))
            continue
        qe = np.unique(q >> 1)
        weights[mid] = float(gdc.weights[q >> 1].sum())
        cycles[mid] = q
        in_f, out_f, in_t, out_t = label(faces, q, qe, terms, mid, lo, hi)
        in_mark[in_f] = mid
        out_mark[out_f] = mid
        inside_t[mid] = base_t + in_t.size
        inside_f[mid] = base_f + in_f.size
        stack.append((lo, mid - 1, in_f, blo, qe, base_t, base_f, in_t, depth + 1))
        stack.append((mid + 1, hi, out_f, qe, bhi, base_t + in_t.size, base_f + in_f.size, out_t, depth + 1))

    inside_t += anchor_in
    zero = np.isfinite(weights) & (inside_t == 0)
    i = int(np.flatnonzero(zero)[-1]) + 1 if zero.any() else 0
    fam = CycleFamily(
        co=co,
        weights=weights,
        cycles=cycles,
        inside_terms=inside_t,
        inside_faces=inside_f,
        k_total=k_total,
        slit_face=slit,
        face_src=face_src,
        annuli=annuli,
    )
    return fam, i


# ---------------------------------------------------------------------------
# two-face minimum cut


def _open_between(gd: EmbeddedGraph, s_face: int, t_face: int) -> CutOpen:
    """Cut the graph open along a shortest arc between two face interiors."""
    fs = np.unique(gd.dart_tail[gd.face_darts(s_face)])
    ft = np.unique(gd.dart_tail[gd.face_darts(t_face)])
    shared = np.intersect1d(fs, ft)
    if shared.size:
        return cut_along_path(gd, [], start_face=s_face, end_face=t_face, at_vertex=int(shared[0]))
    red = reduce_undirected(gd.n, gd.edges_u, gd.edges_v, np.minimum(gd.weights, _CAP))
    dist, pred = run_dijkstra(red, fs, min_only=True)
    dt = dist[ft]
    assert np.isfinite(dt.min())
    tv = int(ft[dt == dt.min()].min())
    vp = np.asarray(walk_preds(pred, tv), dtype=np.int64)
    e = red.lookup(vp[:-1], vp[1:])
    darts = 2 * e + (gd.edges_u[e] != vp[:-1])
    return cut_along_path(gd, darts, start_face=s_face, end_face=t_face)


def min_st_cycle(gd: EmbeddedGraph, s_face, t_face, *, origin=None, stats: SolveStats | None = None):
    """Minimum-weight cycle separating two faces, or None when none is finite.

    On the dual of a planar graph with ``s_face``/``t_face`` the duals of
    two vertices this is their minimum cut.  The best crossing walk is
    canonicalized by flooding faces from ``s_face`` across non-walk edges;
    the boundary of the flooded side is the reported cut, which never
    weighs more than the walk.  ``origin`` optionally maps faces of ``gd``
    to primal vertex ids for the reported ``side``.
    """
    if gd.ncomp != 1:
        raise NotConnected("cycle search needs a connected graph")
    s_face, t_face = int(s_face), int(t_face)
    if s_face == t_face:
        raise SameFace("cannot separate a face from itself")
    co = _open_between(gd, s_face, t_face)
    fam, _ = reif_sweep(co, (s_face, t_face), stats=stats)
    idx = np.flatnonzero(np.isfinite(fam.weights))
    if idx.size == 0:
        return None
    j = int(idx[np.argmin(fam.weights[idx])])
    walk = fam.host_cycle(j)
    side = _face_flood(gd, np.unique(walk >> 1), s_face)
    assert not side[t_face]
    cut = np.flatnonzero(side[gd.dart_face[0::2]] != side[gd.dart_face[1::2]])
    w = float(gd.weights[cut].sum())
    assert cut.size > 0 and w <= fam.weights[j]
    edges = np.sort(gd.orig_edge[cut]).astype(np.int64)
    assert edges.min() >= 0
    sf = np.flatnonzero(side).astype(np.int64)
    if origin is not None:
        ov = np.asarray(origin, dtype=np.int64)[sf]
        sf = np.unique(ov[ov >= 0])
    return CutResult(ExtWeight.from_float(w), edges, sf)
