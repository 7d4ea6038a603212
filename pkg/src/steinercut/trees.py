"""Spanning trees, shortest-path trees, and their interdigitating duals.

A spanning tree of an embedded graph leaves exactly f - 1 non-tree edges,
and their dual edges always form a spanning tree of the dual graph. Rooting
that codual tree orients every non-tree edge: the parent dart of a codual
vertex, read as a primal dart, starts the fundamental cycle that keeps the
child side's faces on its left. With the root's side counted as outside,
that is the counterclockwise traversal of the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from ._sssp import Reduced, reduce_undirected, run_dijkstra
from .core import EmbeddedGraph, _cycle_ranks, dual
from .errors import EdgeInTree, NotConnected, NotSpanningTree

__all__ = [
    "TreePair",
    "Orientation",
    "shortest_path_tree",
    "tree_from_mask",
    "interdigitating",
    "fundamental_cycle",
    "ccw_orientation",
]


@dataclass
class TreePair:
    """A rooted spanning tree, optionally paired with its codual tree.

    ``parent_dart[v]`` points from v toward its parent (-1 at the root);
    ``dist`` is present for shortest-path trees (numpy.inf marks vertices
    that no finite-weight route reaches; they are still spanned).
    """

    host: EmbeddedGraph
    root: int
    parent_dart: np.ndarray
    parent_vertex: np.ndarray
    depth: np.ndarray
    in_tree: np.ndarray  # per edge
    dist: np.ndarray | None = None
    codual: TreePair | None = None
    sp: Reduced | None = field(default=None, repr=False)

    def tree_edges(self) -> np.ndarray:
        return np.flatnonzero(self.in_tree)

    def nontree_edges(self) -> np.ndarray:
        return np.flatnonzero(~self.in_tree)

    def path_to_root(self, v: int) -> np.ndarray:
        """Parent darts from v up to the root, in walk order."""
        out = []
        while v != self.root:
            d = int(self.parent_dart[v])
            out.append(d)
            v = int(self.parent_vertex[v])
        return np.array(out, dtype=np.int64)


@dataclass
class Orientation:
    """One chosen dart per non-tree edge, keyed by ascending edge id."""

    domain: np.ndarray
    chosen: np.ndarray

    def dart_of(self, e: int) -> int:
        i = int(np.searchsorted(self.domain, e))
        assert i < self.domain.size and self.domain[i] == e
        return int(self.chosen[i])

    def dart_mask(self, m: int) -> np.ndarray:
        """Boolean over all 2m darts, true exactly on chosen darts."""
        mask = np.zeros(2 * m, dtype=bool)
        mask[self.chosen] = True
        return mask


def _depths(parent_vertex: np.ndarray, root: int) -> np.ndarray:
    idx = np.arange(parent_vertex.size, dtype=np.int64)
    perm = parent_vertex.copy()
    perm[root] = root
    return _cycle_ranks(perm, idx == root)


def _dart_toward(g: EmbeddedGraph, e: np.ndarray, frm: np.ndarray) -> np.ndarray:
    """The dart of edge e whose tail is frm."""
    side = (g.edges_u[e] != frm).astype(np.int64)
    assert (np.where(side == 0, g.edges_u[e], g.edges_v[e]) == frm).all()
    return 2 * e + side


def shortest_path_tree(g: EmbeddedGraph, root: int) -> TreePair:
    """Exact-distance shortest-path tree, deterministically completed.

    Parallel edges are reduced to the cheapest representative (ties to the
    smallest edge id). Vertices only reachable through Infinity edges get
    dist = inf but are still attached, smallest candidate dart first, so
    the result always spans.
    """
    if g.ncomp != 1:
        raise NotConnected("shortest-path tree requires a connected graph")
    red = reduce_undirected(g.n, g.edges_u, g.edges_v, g.weights)
    dist, pred = run_dijkstra(red, root)
    dist = np.asarray(dist, dtype=np.float64)
    pred = np.asarray(pred, dtype=np.int64)

    parent_dart = np.full(g.n, -1, dtype=np.int64)
    parent_vertex = np.full(g.n, -1, dtype=np.int64)
    reached = np.flatnonzero(pred >= 0)
    if reached.size:
        eids = red.lookup(reached, pred[reached])
        parent_dart[reached] = _dart_toward(g, eids, reached)
        parent_vertex[reached] = pred[reached]
    parent_vertex[root] = root

    # attach Infinity-distance vertices round by round, smallest dart first
    attached = (pred >= 0) | (np.arange(g.n) == root)
    while not attached.all():
        du = attached[g.edges_u] & ~attached[g.edges_v]
        dv = attached[g.edges_v] & ~attached[g.edges_u]
        cand_e = np.concatenate([np.flatnonzero(du), np.flatnonzero(dv)])
        cand_w = np.concatenate(
            [g.edges_v[np.flatnonzero(du)], g.edges_u[np.flatnonzero(dv)]]
        )
        assert cand_e.size, "graph is connected; a crossing edge must exist"
        darts = _dart_toward(g, cand_e, cand_w)
        best = np.full(g.n, 2 * g.m, dtype=np.int64)
        np.minimum.at(best, cand_w, darts)
        newly = np.flatnonzero(best < 2 * g.m)
        parent_dart[newly] = best[newly]
        parent_vertex[newly] = g.dart_tail[best[newly] ^ 1]
        attached[newly] = True

    in_tree = np.zeros(g.m, dtype=bool)
    keep = parent_dart[parent_dart >= 0]
    in_tree[keep >> 1] = True
    assert int(in_tree.sum()) == g.n - 1

    return TreePair(
        host=g,
        root=int(root),
        parent_dart=parent_dart,
        parent_vertex=parent_vertex,
        depth=_depths(parent_vertex, int(root)),
        in_tree=in_tree,
        dist=dist,
        sp=red,
    )


def _root_tree(
    g: EmbeddedGraph, edge_ids: np.ndarray, root: int
) -> tuple[np.ndarray, np.ndarray] | None:
    """BFS-root the given edge set; None when it does not span.

    Ties between parallel edges go to the smallest edge id. Returns
    (parent_dart, parent_vertex).
    """
    adj = csr_matrix(
        (
            np.ones(2 * edge_ids.size, dtype=np.int64),
            (
                np.concatenate([g.edges_u[edge_ids], g.edges_v[edge_ids]]),
                np.concatenate([g.edges_v[edge_ids], g.edges_u[edge_ids]]),
            ),
        ),
        shape=(g.n, g.n),
    )
    order, pred = breadth_first_order(adj, root, return_predecessors=True)
    if order.size != g.n:
        return None
    lut = reduce_undirected(
        g.n, g.edges_u[edge_ids], g.edges_v[edge_ids], edge_ids.astype(np.float64)
    )
    pred = np.asarray(pred, dtype=np.int64)
    kids = np.flatnonzero(pred >= 0)
    eids = edge_ids[lut.lookup(kids, pred[kids])]
    parent_dart = np.full(g.n, -1, dtype=np.int64)
    parent_vertex = np.full(g.n, -1, dtype=np.int64)
    parent_dart[kids] = _dart_toward(g, eids, kids)
    parent_vertex[kids] = pred[kids]
    parent_vertex[root] = root
    return parent_dart, parent_vertex


def tree_from_mask(g: EmbeddedGraph, in_tree: np.ndarray, root: int = 0) -> TreePair:
    """Root an explicit spanning-tree edge mask at the given vertex."""
    in_tree = np.asarray(in_tree, dtype=bool)
    if in_tree.size != g.m or int(in_tree.sum()) != g.n - 1:
        raise NotSpanningTree(
            f"tree has {int(in_tree.sum())} edges, expected {g.n - 1}"
        )
    rooted = _root_tree(g, np.flatnonzero(in_tree), root)
    if rooted is None:
        raise NotSpanningTree("edge set does not span the graph")
    parent_dart, parent_vertex = rooted
    return TreePair(
        host=g,
        root=int(root),
        parent_dart=parent_dart,
        parent_vertex=parent_vertex,
        depth=_depths(parent_vertex, int(root)),
        in_tree=in_tree.copy(),
    )


def interdigitating(
    g: EmbeddedGraph,
    t: TreePair | np.ndarray,
    *,
    host_dual: EmbeddedGraph | None = None,
    root: int = 0,
) -> TreePair:
    """The spanning tree of the dual formed by the non-tree edges' duals.

    ``t`` is a TreePair or a boolean in-tree mask over g's edges; ``host_dual``
    may supply a precomputed dual (it must share edge ids with g). The
    returned tree is rooted at the dual vertex ``root``. Raises
    NotSpanningTree when t is not a spanning tree of g or the complement
    duals fail to span the dual.
    """
    in_tree = t.in_tree if isinstance(t, TreePair) else np.asarray(t, dtype=bool)
    if in_tree.size != g.m or int(in_tree.sum()) != g.n - 1:
        raise NotSpanningTree(
            f"tree has {int(in_tree.sum())} edges, expected {g.n - 1}"
        )
    if _root_tree(g, np.flatnonzero(in_tree), 0) is None:
        raise NotSpanningTree("edge set does not span the graph")

    if host_dual is None:
        host_dual, _ = dual(g)
    ne = np.flatnonzero(~in_tree)
    assert ne.size == host_dual.n - 1, "complement size must match a dual tree"
    rooted = _root_tree(host_dual, ne, root)
    if rooted is None:
        raise NotSpanningTree("complement duals do not span the dual")
    parent_dart, parent_vertex = rooted

    dual_in_tree = np.zeros(host_dual.m, dtype=bool)
    dual_in_tree[ne] = True
    return TreePair(
        host=host_dual,
        root=int(root),
        parent_dart=parent_dart,
        parent_vertex=parent_vertex,
        depth=_depths(parent_vertex, int(root)),
        in_tree=dual_in_tree,
    )


def fundamental_cycle(
    t: TreePair, e: int, *, first_dart: int | None = None
) -> np.ndarray:
    """The non-tree edge e plus the tree path joining its endpoints.

    Returns chained darts starting with ``first_dart`` (a dart of e;
    defaults to 2e) followed by the tree path from its head back to its
    tail. Raises EdgeInTree if e is a tree edge.
    """
    if t.in_tree[e]:
        raise EdgeInTree(f"edge {e} is in the tree")
    g = t.host
    d0 = 2 * e if first_dart is None else int(first_dart)
    assert d0 >> 1 == e
    a = int(g.dart_tail[d0 ^ 1])  # walk starts here, back toward tail(d0)
    b = int(g.dart_tail[d0])

    up_a: list[int] = []
    up_b: list[int] = []
    da, db = int(t.depth[a]), int(t.depth[b])
    while da > db:
        up_a.append(int(t.parent_dart[a]))
        a = int(t.parent_vertex[a])
        da -= 1
    while db > da:
        up_b.append(int(t.parent_dart[b]))
        b = int(t.parent_vertex[b])
        db -= 1
    while a != b:
        up_a.append(int(t.parent_dart[a]))
        a = int(t.parent_vertex[a])
        up_b.append(int(t.parent_dart[b]))
        b = int(t.parent_vertex[b])
    # head(d0) ..up_a.. lca ..reversed(up_b).. tail(d0)
    darts = [d0] + up_a + [d ^ 1 for d in reversed(up_b)]
    return np.array(darts, dtype=np.int64)


def ccw_orientation(t: TreePair) -> Orientation:
    """Chosen darts whose fundamental cycles keep their interior left.

    Requires t.codual to be rooted. For every non-tree edge, the codual
    parent dart of its child endpoint is, read primally, the dart whose
    cycle traversal has the child-side faces (the cycle's interior, with
    the codual root outside) on the left.
    """
    cod = t.codual
    assert cod is not None, "orientation needs a rooted codual"
    kids = np.flatnonzero(np.arange(cod.host.n) != cod.root)
    darts = cod.parent_dart[kids]
    edges = darts >> 1
    order = np.argsort(edges)
    return Orientation(domain=edges[order], chosen=darts[order])
