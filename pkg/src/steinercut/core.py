"""Planar embedded multigraphs: rotation systems, faces, duality, surgery.

A graph is an edge list plus one counterclockwise rotation per vertex. A
dart is one of an edge's two directions, identified as ``2 * edge + side``;
side 0 points from the edge's ``u`` endpoint to ``v``, and ``d ^ 1`` is the
reversal. Faces are orbits of the trace whose successor of ``d`` is the
dart after ``rev(d)`` in the counterclockwise rotation at ``head(d)``; with
that convention ``face(d)`` lies to the right of ``d``, and the rotation
gap just counterclockwise of a dart ``x`` belongs to ``face(rev(x))``. That
corner rule drives every surgical operation below.

Faces are numbered by their smallest dart, so all derived ids are
deterministic functions of the input arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (
    DegenerateDual,
    EulerViolation,
    MalformedRotation,
    NotAPath,
    NotConnected,
    NotSimple,
    NotSimpleCycle,
    SameFace,
    SelfLoop,
    TooSmall,
)
from .weights import MAX_FINITE, ExtWeight

__all__ = [
    "EmbeddedGraph",
    "FaceMarks",
    "Triangulation",
    "CutOpen",
    "Piece",
    "rev",
    "dart",
    "build_graph",
    "dual",
    "triangulate",
    "cut_along_path",
    "split_by_cycle",
    "face_sides",
    "bridge_mask",
    "contract_edges",
]


def rev(d: int) -> int:
    """The opposite dart of the same edge."""
    return d ^ 1


def dart(e: int, side: int) -> int:
    """The dart of edge e leaving its u (side 0) or v (side 1) endpoint."""
    return 2 * e + side


# ---------------------------------------------------------------------------
# orbit machinery


def _orbit_min_labels(perm: np.ndarray) -> np.ndarray:
    """Minimum element of each orbit of a permutation, by pointer doubling.

    Windows double each pass, so this runs O(log n) vectorized rounds; the
    final no-change pass certifies convergence because the minimum of each
    orbit is unique.
    """
    lab = np.arange(perm.size, dtype=np.int64)
    jmp = perm.astype(np.int64, copy=True)
    while True:
        new = np.minimum(lab, lab[jmp])
        if np.array_equal(new, lab):
            return lab
        lab = new
        jmp = jmp[jmp]


def _cycle_ranks(perm: np.ndarray, roots: np.ndarray) -> np.ndarray:
    """Steps from each element to its orbit's root, following perm forward."""
    idx = np.arange(perm.size, dtype=np.int64)
    nxt = np.where(roots, idx, perm)
    rank = (~roots).astype(np.int64)
    while True:
        add = rank[nxt]
        if not add.any():
            return rank
        rank = rank + add
        nxt = nxt[nxt]


# ---------------------------------------------------------------------------
# the graph type


@dataclass(eq=False)
class EmbeddedGraph:
    """Immutable edge-weighted planar multigraph with a fixed embedding.

    Weights are stored as float64 (numpy.inf for Infinity edges); finite
    values are exact integers. ``orig_edge`` / ``orig_vertex`` track ids in
    the root graph through surgery, with -1 for synthetic elements.
    """

    n: int
    edges_u: np.ndarray
    edges_v: np.ndarray
    weights: np.ndarray
    rot_flat: np.ndarray  # darts grouped by tail vertex, ccw within each group
    rot_start: np.ndarray  # [n + 1] group offsets into rot_flat
    rot_next: np.ndarray  # next dart ccw around the shared tail
    rot_prev: np.ndarray
    dart_tail: np.ndarray
    dart_face: np.ndarray  # face on the right of each dart
    nfaces: int
    face_first: np.ndarray  # smallest dart of each face
    face_size: np.ndarray
    orig_edge: np.ndarray
    orig_vertex: np.ndarray
    ncomp: int
    vcomp: np.ndarray
    _face_order: tuple[np.ndarray, np.ndarray] | None = field(
        default=None, repr=False, compare=False
    )

    # -- basic accessors -----------------------------------------------------

    @property
    def m(self) -> int:
        return int(self.edges_u.size)

    def head(self, d: int) -> int:
        return int(self.dart_tail[d ^ 1])

    def tail(self, d: int) -> int:
        return int(self.dart_tail[d])

    def succ(self, d: int) -> int:
        """Next dart of face(d): the dart after rev(d) ccw at head(d)."""
        return int(self.rot_next[d ^ 1])

    def left_face(self, d: int) -> int:
        return int(self.dart_face[d ^ 1])

    def rotation(self, v: int) -> np.ndarray:
        """Darts leaving v in counterclockwise order (a view)."""
        return self.rot_flat[self.rot_start[v] : self.rot_start[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.rot_start[v + 1] - self.rot_start[v])

    def edge_weight(self, e: int) -> ExtWeight:
        return ExtWeight.from_float(float(self.weights[e]))

    def face_darts(self, f: int) -> np.ndarray:
        """Darts of face f in trace order, starting at its smallest dart."""
        out = np.empty(int(self.face_size[f]), dtype=np.int64)
        d = int(self.face_first[f])
        for i in range(out.size):
            out[i] = d
            d = int(self.rot_next[d ^ 1])
        assert d == int(self.face_first[f])
        return out

    def face_vertices(self, f: int) -> np.ndarray:
        """Vertices incident to face f, in trace order (may repeat)."""
        return self.dart_tail[self.face_darts(f)]

    def ordered_faces(self) -> tuple[np.ndarray, np.ndarray]:
        """All face cycles at once: (flat darts grouped by face, offsets).

        Within each group darts appear in trace order starting from the
        face's smallest dart. Computed lazily and cached.
        """
        if self._face_order is None:
            idx = np.arange(2 * self.m, dtype=np.int64)
            succ = self.rot_next[idx ^ 1]
            roots = self.face_first[self.dart_face] == idx
            rank = _cycle_ranks(succ, roots)
            size = self.face_size[self.dart_face]
            pos = np.where(roots, 0, size - rank)
            start = np.zeros(self.nfaces + 1, dtype=np.int64)
            np.cumsum(self.face_size, out=start[1:])
            flat = np.empty(2 * self.m, dtype=np.int64)
            flat[start[self.dart_face] + pos] = idx
            self._face_order = (flat, start)
        return self._face_order


# ---------------------------------------------------------------------------
# construction


def _coerce_weights(ws: Sequence) -> np.ndarray:
    out = np.empty(len(ws), dtype=np.float64)
    for i, w in enumerate(ws):
        out[i] = ExtWeight(w).to_float()
    return out


def build_graph(
    n: int,
    edges: Iterable[tuple],
    rotations: Sequence[Sequence[int]],
    *,
    allow_disconnected: bool = False,
) -> EmbeddedGraph:
    """Validate and index an embedded graph given as plain Python data.

    ``edges`` yields (u, v, weight) triples; weights are non-negative ints
    or ExtWeight (Infinity allowed). ``rotations[v]`` lists the darts with
    tail v in counterclockwise order. Raises SelfLoop, MalformedRotation,
    NotConnected, or EulerViolation when the data does not describe a
    planar embedding.
    """
    edges = list(edges)
    m = len(edges)
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    w = _coerce_weights([e[2] for e in edges])
    if len(rotations) != n:
        raise MalformedRotation(f"expected {n} rotation lists, got {len(rotations)}")
    counts = np.array([len(r) for r in rotations], dtype=np.int64)
    rot_start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=rot_start[1:])
    if rot_start[-1] != 2 * m:
        raise MalformedRotation(
            f"rotations list {int(rot_start[-1])} darts, expected {2 * m}"
        )
    flat_list: list[int] = []
    for r in rotations:
        flat_list.extend(int(d) for d in r)
    rot_flat = np.array(flat_list, dtype=np.int64)
    return _assemble(
        n,
        eu,
        ev,
        w,
        rot_flat,
        rot_start,
        orig_edge=np.arange(m, dtype=np.int64),
        orig_vertex=np.arange(n, dtype=np.int64),
        allow_disconnected=allow_disconnected,
    )


def _assemble(
    n: int,
    eu: np.ndarray,
    ev: np.ndarray,
    w: np.ndarray,
    rot_flat: np.ndarray,
    rot_start: np.ndarray,
    *,
    orig_edge: np.ndarray,
    orig_vertex: np.ndarray,
    allow_disconnected: bool = False,
) -> EmbeddedGraph:
    """Array-level constructor shared by build_graph and all surgery."""
    m = eu.size
    if n < 1:
        raise TooSmall("a graph needs at least one vertex")
    if m:
        if eu.min() < 0 or ev.min() < 0 or max(eu.max(), ev.max()) >= n:
            raise MalformedRotation("edge endpoint out of range")
        if (eu == ev).any():
            raise SelfLoop("self-loops are not supported")
        finite = np.isfinite(w)
        wf = w[finite]
        if np.isnan(w).any() or (wf < 0).any() or (wf != np.floor(wf)).any():
            raise ValueError("weights must be non-negative integers or Infinity")
        if wf.size and wf.max() > MAX_FINITE:
            raise ValueError("finite weight exceeds exact float64 range")

    # dart tails from the edge list
    dart_tail = np.empty(2 * m, dtype=np.int64)
    dart_tail[0::2] = eu
    dart_tail[1::2] = ev

    # every dart listed exactly once, at its own tail
    if rot_flat.size != 2 * m:
        raise MalformedRotation("rotation dart count mismatch")
    if m:
        if rot_flat.min() < 0 or rot_flat.max() >= 2 * m:
            raise MalformedRotation("rotation lists an unknown dart")
        if (np.bincount(rot_flat, minlength=2 * m) != 1).any():
            raise MalformedRotation("each dart must appear exactly once")
        seg = np.repeat(np.arange(n, dtype=np.int64), np.diff(rot_start))
        if (dart_tail[rot_flat] != seg).any():
            raise MalformedRotation("dart listed at a vertex that is not its tail")

    # cyclic next/prev within each vertex group
    rot_next = np.empty(2 * m, dtype=np.int64)
    rot_prev = np.empty(2 * m, dtype=np.int64)
    if m:
        pos = np.arange(2 * m, dtype=np.int64)
        nxt = pos + 1
        last = nxt == rot_start[seg + 1]
        nxt[last] = rot_start[seg[last]]
        prv = pos - 1
        first = pos == rot_start[seg]
        prv[first] = rot_start[seg[first] + 1] - 1
        rot_next[rot_flat] = rot_flat[nxt]
        rot_prev[rot_flat] = rot_flat[prv]

    idx = np.arange(2 * m, dtype=np.int64)

    # faces: orbits of d -> rot_next[rev(d)]
    if m:
        labels = _orbit_min_labels(rot_next[idx ^ 1])
        face_first, dart_face = np.unique(labels, return_inverse=True)
        nfaces = face_first.size
        face_size = np.bincount(dart_face, minlength=nfaces).astype(np.int64)
    else:
        dart_face = np.empty(0, dtype=np.int64)
        face_first = np.empty(0, dtype=np.int64)
        face_size = np.empty(0, dtype=np.int64)
        nfaces = 0

    # connectivity
    if m:
        adj = csr_matrix(
            (np.ones(2 * m, dtype=np.int8), (dart_tail, dart_tail[idx ^ 1])),
            shape=(n, n),
        )
        ncomp, vcomp = connected_components(adj, directed=False)
    else:
        ncomp, vcomp = n, np.arange(n, dtype=np.int64)
    vcomp = vcomp.astype(np.int64)
    if ncomp > 1 and not allow_disconnected:
        raise NotConnected(f"graph has {ncomp} components")

    # Euler per component: n_c - m_c + f_c == 2 wherever edges exist
    if m:
        n_c = np.bincount(vcomp, minlength=ncomp)
        m_c = np.bincount(vcomp[eu], minlength=ncomp)
        f_c = np.bincount(vcomp[dart_tail[face_first]], minlength=ncomp)
        bad = (m_c > 0) & (n_c - m_c + f_c != 2)
        if bad.any():
            c = int(np.flatnonzero(bad)[0])
            raise EulerViolation(
                f"component {c}: V-E+F = "
                f"{int(n_c[c])}-{int(m_c[c])}+{int(f_c[c])} != 2"
            )

    return EmbeddedGraph(
        n=n,
        edges_u=eu,
        edges_v=ev,
        weights=w,
        rot_flat=rot_flat,
        rot_start=rot_start,
        rot_next=rot_next,
        rot_prev=rot_prev,
        dart_tail=dart_tail,
        dart_face=dart_face,
        nfaces=nfaces,
        face_first=face_first,
        face_size=face_size,
        orig_edge=orig_edge,
        orig_vertex=orig_vertex,
        ncomp=ncomp,
        vcomp=vcomp,
    )


# ---------------------------------------------------------------------------
# marks


@dataclass(frozen=True)
class FaceMarks:
    """Terminal marks on faces of a dual graph.

    ``origin`` optionally maps each face back to the primal vertex it
    surrounds (-1 for synthetic faces such as pseudo-faces).
    """

    terminals: frozenset
    origin: np.ndarray | None = None

    @property
    def k(self) -> int:
        return len(self.terminals)


def carry_marks(tri: Triangulation, marks: FaceMarks) -> FaceMarks:
    """Marks for a triangulated graph: one triangle per old terminal face.

    A finite-weight cycle cannot enter a subdivided face, so it encloses
    either all of its triangles or none; marking the smallest-id triangle
    keeps terminal counts and separations unchanged.
    """
    g = tri.graph
    rep = np.full(int(tri.face_map.max()) + 1, g.nfaces, dtype=np.int64)
    np.minimum.at(rep, tri.face_map, np.arange(g.nfaces, dtype=np.int64))
    terms = frozenset(int(rep[f]) for f in marks.terminals)
    assert len(terms) == marks.k
    origin = None if marks.origin is None else marks.origin[tri.face_map]
    return FaceMarks(terminals=terms, origin=origin)


# ---------------------------------------------------------------------------
# duality


def dual(g: EmbeddedGraph) -> tuple[EmbeddedGraph, np.ndarray]:
    """The planar dual, sharing dart ids with the primal.

    Dual vertex f is primal face f; dual dart d points from the face on
    d's left to the face on d's right, so dual edge e joins
    (face(rev(2e)), face(2e)). The rotation at a dual vertex f lists the
    reversals of f's face cycle in reverse trace order, which is their
    counterclockwise order around f.

    Returns (dual graph, array mapping each dual face to the primal vertex
    it surrounds). Raises NotConnected or, when the primal has a bridge,
    DegenerateDual.
    """
    if g.ncomp != 1:
        raise NotConnected("dual requires a connected graph")
    if g.m == 0:
        raise TooSmall("dual requires at least one edge")
    f_right = g.dart_face[0::2]
    f_left = g.dart_face[1::2]
    if (f_left == f_right).any():
        e = int(np.flatnonzero(f_left == f_right)[0])
        raise DegenerateDual(f"edge {e} is a bridge; its dual would be a self-loop")
    flat, start = g.ordered_faces()
    # reverse each face segment and flip the darts
    fid = np.repeat(np.arange(g.nfaces, dtype=np.int64), g.face_size)
    pos = np.arange(2 * g.m, dtype=np.int64) - start[fid]
    rev_pos = start[fid] + (g.face_size[fid] - 1 - pos)
    dual_flat = flat[rev_pos] ^ 1
    gd = _assemble(
        g.nfaces,
        f_left.copy(),
        f_right.copy(),
        g.weights.copy(),
        dual_flat,
        start.copy(),
        orig_edge=g.orig_edge.copy(),
        orig_vertex=np.full(g.nfaces, -1, dtype=np.int64),
    )
    assert gd.nfaces == g.n
    # a dual face's darts share one primal tail: that is the enclosed vertex
    primal_vertex = g.dart_tail[gd.face_first]
    assert np.unique(primal_vertex).size == g.n
    return gd, primal_vertex


# ---------------------------------------------------------------------------
# triangulation


@dataclass
class Triangulation:
    """Result of triangulate(): every face of ``graph`` has three sides.

    ``face_map`` sends each new face to the face it subdivides;
    ``added_edges`` / ``added_vertices`` list the synthetic ids (all added
    edges carry Infinity weight, so no finite cycle can use them).
    """

    graph: EmbeddedGraph
    face_map: np.ndarray
    added_edges: np.ndarray
    added_vertices: np.ndarray


def triangulate(g: EmbeddedGraph) -> Triangulation:
    """Subdivide every non-triangle face using Infinity-weight edges.

    Faces with at least four sides and a corner whose vertex appears only
    once get a chord fan from that corner. Two-sided faces, and faces whose
    corners all repeat vertices, get a hub: a new vertex joined to every
    corner. Either way the face's boundary is unchanged, so weights and
    enclosures of finite cycles are preserved.
    """
    if g.ncomp != 1:
        raise NotConnected("triangulate requires a connected graph")
    if g.n < 3:
        raise TooSmall("triangulate requires at least three vertices")
    if bool((g.face_size == 3).all()):
        return Triangulation(
            graph=g,
            face_map=np.arange(g.nfaces, dtype=np.int64),
            added_edges=np.empty(0, dtype=np.int64),
            added_vertices=np.empty(0, dtype=np.int64),
        )

    flat, start = g.ordered_faces()
    m0, n0 = g.m, g.n
    new_u: list[int] = []
    new_v: list[int] = []
    # darts inserted immediately ccw-after an existing dart, in order; the
    # gap after rev(D[i-1]) and before D[i] is the face's corner at D[i]
    after: dict[int, list[int]] = {}
    hub_rots: list[list[int]] = []
    next_v = n0

    for f in np.flatnonzero(g.face_size != 3):
        D = flat[start[f] : start[f + 1]]
        T = g.dart_tail[D]
        L = D.size
        uniq, cnt = np.unique(T, return_counts=True)
        once = set(uniq[cnt == 1].tolist())
        apex = -1
        if L >= 4:
            for i in range(L):
                if int(T[i]) in once:
                    apex = i
                    break
        if apex >= 0:
            # chord fan from the apex corner; farthest target first keeps
            # the chords counterclockwise inside the apex corner gap
            a = int(T[apex])
            anchor = int(D[(apex - 1) % L] ^ 1)
            fan: list[int] = []
            for off in range(2, L - 1):
                q = (apex + off) % L
                e = m0 + len(new_u)
                new_u.append(a)
                new_v.append(int(T[q]))
                fan.append(2 * e)
                after.setdefault(int(D[(q - 1) % L] ^ 1), []).append(2 * e + 1)
            after.setdefault(anchor, []).extend(fan[::-1])
        else:
            # hub: new vertex joined to every corner; seen from the hub the
            # corners wind clockwise, so its ccw rotation reverses face order
            x = next_v
            next_v += 1
            spokes = []
            for i in range(L):
                e = m0 + len(new_u)
                new_u.append(int(T[i]))
                new_v.append(x)
                after.setdefault(int(D[(i - 1) % L] ^ 1), []).append(2 * e)
                spokes.append(2 * e + 1)
            hub_rots.append(spokes[::-1])

    m1 = m0 + len(new_u)
    eu = np.concatenate([g.edges_u, np.array(new_u, dtype=np.int64)])
    ev = np.concatenate([g.edges_v, np.array(new_v, dtype=np.int64)])
    w = np.concatenate([g.weights, np.full(len(new_u), np.inf)])

    # splice insertions into the flat rotation order; each insertion list
    # follows its anchor dart, so existing groups stay contiguous, and hub
    # groups are appended at the end in hub-vertex order
    expanded: list[int] = []
    for p in range(2 * m0):
        d = int(g.rot_flat[p])
        expanded.append(d)
        if d in after:
            expanded.extend(after[d])
    for spokes in hub_rots:
        expanded.extend(spokes)
    flat1 = np.array(expanded, dtype=np.int64)
    tail1 = np.empty(2 * m1, dtype=np.int64)
    tail1[0::2] = eu
    tail1[1::2] = ev
    grp = tail1[flat1]
    assert (np.diff(grp) >= 0).all()
    start1 = np.zeros(next_v + 1, dtype=np.int64)
    np.cumsum(np.bincount(grp, minlength=next_v), out=start1[1:])

    g2 = _assemble(
        next_v,
        eu,
        ev,
        w,
        flat1,
        start1,
        orig_edge=np.concatenate(
            [g.orig_edge, np.full(len(new_u), -1, dtype=np.int64)]
        ),
        orig_vertex=np.concatenate(
            [g.orig_vertex, np.full(next_v - n0, -1, dtype=np.int64)]
        ),
    )
    assert bool((g2.face_size == 3).all())
    face_map = np.full(g2.nfaces, -1, dtype=np.int64)
    orig_darts = np.arange(2 * m0, dtype=np.int64)
    face_map[g2.dart_face[orig_darts]] = g.dart_face[orig_darts]
    assert (face_map >= 0).all()
    return Triangulation(
        graph=g2,
        face_map=face_map,
        added_edges=np.arange(m0, m1, dtype=np.int64),
        added_vertices=np.arange(n0, next_v, dtype=np.int64),
    )


# ---------------------------------------------------------------------------
# cutting open along a path


@dataclass
class CutOpen:
    """A graph slit open along a path between two anchor faces.

    Every path vertex v_j is split in two: the copy keeping its id takes
    the darts on the right of the walk, the fresh copy takes the left.
    ``pairs[j]`` is (kept right copy, new left copy). Path edge j is
    duplicated: its original id becomes the right-side copy, ``host.m + j``
    the left-side copy, both aligned with the host edge's (u, v) order.
    ``graph`` is a valid embedded graph (possibly disconnected when the
    barrier closes up on itself).
    """

    host: EmbeddedGraph
    graph: EmbeddedGraph
    edge_src: np.ndarray  # host edge id per edge
    vertex_src: np.ndarray  # host vertex id per vertex
    pairs: np.ndarray  # [len(path_vertices), 2]
    path_vertices: np.ndarray
    path_darts: np.ndarray
    start_face: int
    end_face: int

    def project(self, darts) -> np.ndarray:
        """Host darts for the given darts of the cut-open graph."""
        d = np.asarray(darts, dtype=np.int64)
        return 2 * self.edge_src[d >> 1] + (d & 1)


def cut_along_path(
    g: EmbeddedGraph,
    path_darts: Sequence[int],
    *,
    start_face: int | None = None,
    end_face: int | None = None,
    at_vertex: int | None = None,
) -> CutOpen:
    """Slit g open along a simple path anchored in two faces.

    ``path_darts`` walk the path tail-to-head; the barrier is extended into
    ``start_face`` at the first vertex and ``end_face`` at the last. The
    anchors default to the face left of the first dart and the face right
    of the last. With an empty path, ``at_vertex`` names a single vertex to
    split between two distinct incident faces.

    Raises NotAPath if the darts do not chain or an anchor face is not
    incident to its endpoint, NotSimple if a vertex repeats, SameFace for
    a zero-length cut with equal anchors.
    """
    darts = np.asarray(list(path_darts), dtype=np.int64)
    p = darts.size

    if p == 0:
        if at_vertex is None:
            raise NotAPath("an empty path needs at_vertex")
        if start_face is None or end_face is None:
            raise NotAPath("an empty path needs explicit anchor faces")
        if start_face == end_face:
            raise SameFace("anchor faces must differ")
        pv = np.array([at_vertex], dtype=np.int64)
    else:
        if ((darts < 0) | (darts >= 2 * g.m)).any():
            raise NotAPath("dart id out of range")
        heads = g.dart_tail[darts ^ 1]
        tails = g.dart_tail[darts]
        if p > 1 and (heads[:-1] != tails[1:]).any():
            raise NotAPath("darts do not chain head to tail")
        pv = np.concatenate([tails, heads[-1:]])
        if np.unique(pv).size != pv.size:
            raise NotSimple("path repeats a vertex")
        if start_face is None:
            start_face = int(g.dart_face[darts[0] ^ 1])
        if end_face is None:
            end_face = int(g.dart_face[darts[-1]])

    n, m = g.n, g.m

    def corner_scan(R: np.ndarray, from_pos: int, f: int) -> int:
        """First position q, scanning ccw from from_pos inclusive, whose
        following gap belongs to face f (the gap after R[q] is a corner of
        face(rev(R[q])))."""
        deg = R.size
        for step in range(deg):
            q = (from_pos + step) % deg
            if int(g.dart_face[R[q] ^ 1]) == f:
                return q
        raise NotAPath(f"face {f} is not incident to the path endpoint")

    def cyc_range(R: np.ndarray, a: int, b: int) -> list[int]:
        """R[a..b] walking cyclically, inclusive of both ends."""
        out = []
        q = a
        while True:
            out.append(int(R[q]))
            if q == b:
                return out
            q = (q + 1) % R.size

    # per path vertex: darts going to the left copy, in original ccw order
    left_arcs: list[list[int]] = []
    right_arcs: list[list[int]] = []
    for j in range(pv.size):
        v = int(pv[j])
        R = g.rotation(v)
        deg = R.size
        if p == 0:
            # left means left of the barrier oriented start -> end, matching
            # the split at path endpoints below
            qs = corner_scan(R, 0, int(start_face))
            qt = corner_scan(R, (qs + 1) % deg, int(end_face))
            arc_l = cyc_range(R, (qt + 1) % deg, qs)
            arc_r = cyc_range(R, (qs + 1) % deg, qt)
        elif j == 0:
            i_f = int(np.flatnonzero(R == darts[0])[0])
            q = corner_scan(R, i_f, int(start_face))
            arc_l = [] if q == i_f else cyc_range(R, (i_f + 1) % deg, q)
            arc_r = (
                []
                if (q + 1) % deg == i_f
                else cyc_range(R, (q + 1) % deg, (i_f - 1) % deg)
            )
        elif j == p:
            i_b = int(np.flatnonzero(R == (darts[-1] ^ 1))[0])
            q = corner_scan(R, i_b, int(end_face))
            arc_r = [] if q == i_b else cyc_range(R, (i_b + 1) % deg, q)
            arc_l = (
                []
                if (q + 1) % deg == i_b
                else cyc_range(R, (q + 1) % deg, (i_b - 1) % deg)
            )
        else:
            i_f = int(np.flatnonzero(R == darts[j])[0])
            stop = int(darts[j - 1] ^ 1)
            arc_l = []
            q = (i_f + 1) % deg
            while int(R[q]) != stop:
                arc_l.append(int(R[q]))
                q = (q + 1) % deg
            arc_r = []
            q = (q + 1) % deg
            while int(R[q]) != int(darts[j]):
                arc_r.append(int(R[q]))
                q = (q + 1) % deg
        left_arcs.append(arc_l)
        right_arcs.append(arc_r)

    left_of: dict[int, int] = {}
    for j, arc in enumerate(left_arcs):
        for d in arc:
            left_of[d] = n + j

    # edges: host ids keep their (possibly re-targeted) endpoints; path edge
    # j keeps its id as the right copy and gains id m + t as the left copy
    eu1 = g.edges_u.copy()
    ev1 = g.edges_v.copy()
    pos_of = {int(pv[j]): j for j in range(pv.size)}
    for d, nv in left_of.items():
        e, s = d >> 1, d & 1
        if s == 0:
            eu1[e] = nv
        else:
            ev1[e] = nv
    add_u = np.empty(p, dtype=np.int64)
    add_v = np.empty(p, dtype=np.int64)
    for t, d in enumerate(darts.tolist()):
        e = d >> 1
        add_u[t] = n + pos_of[int(g.edges_u[e])]
        add_v[t] = n + pos_of[int(g.edges_v[e])]
    eu1 = np.concatenate([eu1, add_u])
    ev1 = np.concatenate([ev1, add_v])
    w1 = np.concatenate([g.weights, g.weights[darts >> 1]])
    edge_src = np.concatenate(
        [np.arange(m, dtype=np.int64), (darts >> 1).astype(np.int64)]
    )

    def left_dart(t: int, d: int) -> int:
        """The left-side copy of path dart d, which crosses path edge t."""
        return 2 * (m + t) + (d & 1)

    # rotations: unsplit vertices unchanged; each copy keeps its darts in
    # the original cyclic order, with the slit copies replacing the host
    # path darts in place
    rots: list[list[int]] = [g.rotation(v).tolist() for v in range(n)]
    for j in range(pv.size):
        if p == 0:
            right = right_arcs[j]
            left = left_arcs[j]
        elif j == 0:
            fwd = int(darts[0])
            right = [fwd] + right_arcs[j]
            left = [left_dart(0, fwd)] + left_arcs[j]
        elif j == p:
            back = int(darts[-1] ^ 1)
            right = [back] + right_arcs[j]
            left = [left_dart(p - 1, back)] + left_arcs[j]
        else:
            # host ccw order at v_j is [fwd, arc_l.., back, arc_r..]
            fwd = int(darts[j])
            back = int(darts[j - 1] ^ 1)
            right = [fwd, back] + right_arcs[j]
            left = [left_dart(j, fwd)] + left_arcs[j] + [left_dart(j - 1, back)]
        rots[int(pv[j])] = right
        rots.append(left)

    flat = np.array([d for r in rots for d in r], dtype=np.int64)
    startr = np.zeros(n + pv.size + 1, dtype=np.int64)
    np.cumsum(np.array([len(r) for r in rots], dtype=np.int64), out=startr[1:])
    g2 = _assemble(
        n + pv.size,
        eu1,
        ev1,
        w1,
        flat,
        startr,
        orig_edge=np.concatenate([g.orig_edge, g.orig_edge[darts >> 1]]),
        orig_vertex=np.concatenate([g.orig_vertex, g.orig_vertex[pv]]),
        allow_disconnected=True,
    )
    pairs = np.stack([pv.astype(np.int64), n + np.arange(pv.size)], axis=1)
    vertex_src = np.concatenate([np.arange(n, dtype=np.int64), pv])
    return CutOpen(
        host=g,
        graph=g2,
        edge_src=edge_src,
        vertex_src=vertex_src,
        pairs=pairs,
        path_vertices=pv,
        path_darts=darts,
        start_face=int(start_face),
        end_face=int(end_face),
    )


# ---------------------------------------------------------------------------
# splitting along a cycle


@dataclass
class Piece:
    """One side of a graph split along a simple cycle.

    The discarded side is coalesced into a single pseudo-face;
    ``face_map[pseudo_face] == -1``. Edge and vertex maps give host ids.
    ``marks`` restricts the host's terminal marks to this piece; the
    pseudo-face is marked terminal exactly when the discarded side held at
    least one terminal, so a cycle separating terminals within the piece
    still separates terminals of the host.
    """

    graph: EmbeddedGraph
    face_map: np.ndarray
    pseudo_face: int
    edge_map: np.ndarray
    vertex_map: np.ndarray
    marks: FaceMarks | None = None


def split_by_cycle(
    g: EmbeddedGraph,
    cycle_darts: Sequence[int],
    marks: FaceMarks | None = None,
) -> tuple[Piece, Piece]:
    """Split a connected graph along a simple cycle into two pieces.

    The cycle's edges appear in both pieces; every other edge lands on the
    side of its faces. Returns (interior, exterior) where the interior is
    the side on the left of the given darts. Face ids of kept faces map
    injectively to host faces; the opposite side becomes one pseudo-face.
    When ``marks`` is given each piece carries restricted marks.
    """
    darts = np.asarray(list(cycle_darts), dtype=np.int64)
    c = darts.size
    if c < 2:
        raise NotSimpleCycle("a simple cycle has at least two darts")
    heads = g.dart_tail[darts ^ 1]
    tails = g.dart_tail[darts]
    if (heads != np.roll(tails, -1)).any():
        raise NotSimpleCycle("darts do not close up head to tail")
    if np.unique(tails).size != c:
        raise NotSimpleCycle("cycle repeats a vertex")
    eids = darts >> 1
    if np.unique(eids).size != c:
        raise NotSimpleCycle("cycle repeats an edge")

    labels = face_sides(g, eids)
    left = labels[g.dart_face[darts ^ 1]]
    if np.unique(left).size != 1:
        raise NotSimpleCycle("cycle darts do not bound a single side")
    side_int = int(left[0])

    cyc_mask = np.zeros(g.m, dtype=bool)
    cyc_mask[eids] = True

    pieces = []
    for side in (side_int, 1 - side_int):
        keep_edge = cyc_mask | (labels[g.dart_face[0::2]] == side)
        ek = np.flatnonzero(keep_edge)
        vk = np.unique(np.concatenate([g.edges_u[ek], g.edges_v[ek]]))
        inv_e = np.full(g.m, -1, dtype=np.int64)
        inv_e[ek] = np.arange(ek.size, dtype=np.int64)
        inv_v = np.full(g.n, -1, dtype=np.int64)
        inv_v[vk] = np.arange(vk.size, dtype=np.int64)

        keep_dart = keep_edge[g.rot_flat >> 1]
        sub_flat_host = g.rot_flat[keep_dart]
        sub_flat = 2 * inv_e[sub_flat_host >> 1] + (sub_flat_host & 1)
        grp = inv_v[g.dart_tail[sub_flat_host]]
        start = np.zeros(vk.size + 1, dtype=np.int64)
        np.cumsum(np.bincount(grp, minlength=vk.size), out=start[1:])
        # rot_flat is grouped by tail in host order; filtering preserves
        # both the grouping and the ccw order inside each group
        pg = _assemble(
            vk.size,
            inv_v[g.edges_u[ek]],
            inv_v[g.edges_v[ek]],
            g.weights[ek].copy(),
            sub_flat,
            start,
            orig_edge=g.orig_edge[ek],
            orig_vertex=g.orig_vertex[vk],
        )
        # face identification via shared darts
        fmap = np.full(pg.nfaces, -2, dtype=np.int64)
        host_face = g.dart_face[sub_flat_host]
        val = np.where(labels[host_face] == side, host_face, -1)
        fmap[pg.dart_face[sub_flat]] = val
        # a kept face inherits all its darts, so the scatter is consistent;
        # the lost side collapses into exactly one pseudo-face
        assert (fmap != -2).all()
        pseudo = np.flatnonzero(fmap == -1)
        assert pseudo.size == 1, "expected exactly one pseudo-face"
        pseudo_face = int(pseudo[0])

        new_marks = None
        if marks is not None:
            kept = {
                f
                for f in range(pg.nfaces)
                if f != pseudo_face and int(fmap[f]) in marks.terminals
            }
            lost = marks.terminals - {int(fmap[f]) for f in kept}
            if lost:
                kept.add(pseudo_face)
            origin = None
            if marks.origin is not None:
                origin = np.where(fmap >= 0, marks.origin[fmap], -1)
            new_marks = FaceMarks(terminals=frozenset(kept), origin=origin)

        pieces.append(
            Piece(
                graph=pg,
                face_map=fmap,
                pseudo_face=pseudo_face,
                edge_map=ek,
                vertex_map=vk,
                marks=new_marks,
            )
        )
    return pieces[0], pieces[1]


def face_sides(g: EmbeddedGraph, cycle_edges: np.ndarray) -> np.ndarray:
    """Two-color the faces of g by the given cycle's edge set.

    Returns a {0, 1} label per face: faces are adjacent when they share a
    non-cycle edge. Raises NotSimpleCycle when the edge set does not split
    the face adjacency into exactly two parts.
    """
    mask = np.zeros(g.m, dtype=bool)
    mask[np.asarray(cycle_edges, dtype=np.int64)] = True
    rest = np.flatnonzero(~mask)
    f0 = g.dart_face[2 * rest]
    f1 = g.dart_face[2 * rest + 1]
    adj = csr_matrix(
        (np.ones(rest.size, dtype=np.int8), (f0, f1)), shape=(g.nfaces, g.nfaces)
    )
    ncomp, labels = connected_components(adj, directed=False)
    if ncomp != 2:
        raise NotSimpleCycle(f"edge set splits faces into {ncomp} parts, not 2")
    return labels.astype(np.int64)


# ---------------------------------------------------------------------------
# bridges and contraction


def bridge_mask(g: EmbeddedGraph) -> np.ndarray:
    """Boolean mask of bridge edges: an edge whose two sides are one face."""
    return g.dart_face[0::2] == g.dart_face[1::2]


def contract_edges(
    g: EmbeddedGraph, edge_ids: Sequence[int]
) -> tuple[EmbeddedGraph, np.ndarray]:
    """Contract a forest of edges, merging rotations at the seams.

    Returns (contracted graph, old vertex -> new vertex map). The edge set
    must be acyclic (contracting a cycle would create self-loops); in this
    package it is only ever a set of bridges.
    """
    ids = sorted(int(e) for e in edge_ids)
    parent = np.arange(g.n, dtype=np.int64)

    def find(x: int) -> int:
        r = x
        while parent[r] != r:
            r = int(parent[r])
        while parent[x] != r:
            parent[x], x = r, int(parent[x])
        return r

    rots: dict[int, list[int]] = {}

    def rot_of(r: int) -> list[int]:
        if r not in rots:
            rots[r] = g.rotation(r).tolist()
        return rots[r]

    for e in ids:
        ru = find(int(g.edges_u[e]))
        rv = find(int(g.edges_v[e]))
        if ru == rv:
            raise SelfLoop(f"edge set contains a cycle through edge {e}")
        lu = rot_of(ru)
        lv = rot_of(rv)
        iu = lu.index(2 * e)
        iv = lv.index(2 * e + 1)
        merged = lu[:iu] + lv[iv + 1 :] + lv[:iv] + lu[iu + 1 :]
        parent[rv] = ru
        rots[ru] = merged
        rots.pop(rv, None)

    roots = np.array(sorted({find(v) for v in range(g.n)}), dtype=np.int64)
    new_id = np.full(g.n, -1, dtype=np.int64)
    new_id[roots] = np.arange(roots.size, dtype=np.int64)
    vmap = np.array([new_id[find(v)] for v in range(g.n)], dtype=np.int64)

    keep = np.ones(g.m, dtype=bool)
    keep[ids] = False
    ek = np.flatnonzero(keep)
    inv_e = np.full(g.m, -1, dtype=np.int64)
    inv_e[ek] = np.arange(ek.size, dtype=np.int64)

    rotations = []
    for r in roots.tolist():
        lst = rots.get(r, g.rotation(r).tolist())
        rotations.append([2 * int(inv_e[d >> 1]) + (d & 1) for d in lst])
    flat = np.array([d for lst in rotations for d in lst], dtype=np.int64)
    start = np.zeros(roots.size + 1, dtype=np.int64)
    np.cumsum(np.array([len(r) for r in rotations], dtype=np.int64), out=start[1:])

    singleton = np.bincount(vmap, minlength=roots.size) == 1
    ov = np.where(singleton, g.orig_vertex[roots], -1)
    g2 = _assemble(
        roots.size,
        vmap[g.edges_u[ek]],
        vmap[g.edges_v[ek]],
        g.weights[ek].copy(),
        flat,
        start,
        orig_edge=g.orig_edge[ek],
        orig_vertex=ov,
        allow_disconnected=g.ncomp > 1,
    )
    return g2, vmap
