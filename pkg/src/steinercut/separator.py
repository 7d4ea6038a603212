"""Terminal-balancing cycle separators in a triangulated dual graph.

The separator is a fundamental cycle: two shortest-path-tree arms joined by
one non-tree edge. That edge is found on the interdigitating tree, rooted
at a leaf, by walking toward subtrees that hold more than 3/4 of the
terminal faces and then cutting off the heaviest child. All fractional
comparisons run as exact integer tests (4 * count vs 3 * k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import EmbeddedGraph, FaceMarks, dual
from .errors import BalanceFailure, NotTriangulated, TooFewTerminals
from .trees import TreePair, fundamental_cycle, interdigitating

__all__ = ["CycleSeparator", "root_near_terminal", "terminal_separator"]


def root_near_terminal(gd: EmbeddedGraph, marks: FaceMarks) -> int:
    """Smallest vertex id incident to a terminal face."""
    term = np.zeros(gd.nfaces, dtype=bool)
    term[np.fromiter(marks.terminals, dtype=np.int64)] = True
    return int(gd.dart_tail[term[gd.dart_face]].min())


@dataclass
class CycleSeparator:
    """A simple dual cycle with at most 3/4 of the terminals per side.

    ``cycle`` = one dart of ``nontree_edge`` followed by ``path_a``
    (rootward tree darts) then ``path_b`` (leafward); the side the darts
    keep on their left holds ``inside_terminals`` terminal faces.
    """

    cycle: np.ndarray
    path_a: np.ndarray
    path_b: np.ndarray
    nontree_edge: int
    inside_terminals: int
    outside_terminals: int


def _subtree_counts(t: TreePair, base: np.ndarray) -> np.ndarray:
    """Per-vertex sums of ``base`` over subtrees, by descending depth."""
    cnt = base.astype(np.int64, copy=True)
    order = np.argsort(t.depth, kind="stable")
    bounds = np.searchsorted(t.depth[order], np.arange(int(t.depth.max()) + 2))
    for lvl in range(bounds.size - 2, 0, -1):
        chunk = order[bounds[lvl] : bounds[lvl + 1]]
        np.add.at(cnt, t.parent_vertex[chunk], cnt[chunk])
    return cnt


def terminal_separator(
    gd: EmbeddedGraph, marks: FaceMarks, tstar: TreePair
) -> CycleSeparator:
    """Balanced separator for k >= 4 terminal faces of a triangulated graph.

    ``tstar`` must be a spanning tree of gd rooted at a vertex incident to
    a terminal face. The returned cycle is independent of edge weights and
    keeps its enclosed side on the left of its darts.
    """
    if not (gd.face_size == 3).all():
        raise NotTriangulated("separator requires every face to be a triangle")
    k = marks.k
    if k < 4:
        raise TooFewTerminals(f"separator needs k >= 4, got {k}")
    assert tstar.host is gd

    root_faces = gd.dart_face[gd.rotation(tstar.root) ^ 1]
    assert any(int(f) in marks.terminals for f in root_faces), (
        "tree root must touch a terminal face"
    )

    dd, _ = dual(gd)
    ne = tstar.nontree_edges()
    deg = np.bincount(dd.edges_u[ne], minlength=dd.n) + np.bincount(
        dd.edges_v[ne], minlength=dd.n
    )
    leaf = int(np.argmax(deg == 1))
    t = interdigitating(gd, tstar, host_dual=dd, root=leaf)

    term = np.zeros(dd.n, dtype=np.int64)
    term[np.fromiter(marks.terminals, dtype=np.int64)] = 1
    cnt = _subtree_counts(t, term)
    assert cnt[leaf] == k

    # children grouped by parent, ascending child id within each group
    kids = np.flatnonzero(np.arange(dd.n) != leaf)
    kids = kids[np.argsort(t.parent_vertex[kids], kind="stable")]
    par_sorted = t.parent_vertex[kids]

    def children(v: int) -> np.ndarray:
        lo = np.searchsorted(par_sorted, v)
        hi = np.searchsorted(par_sorted, v, side="right")
        return kids[lo:hi]

    v = leaf
    while True:
        heavy = [int(u) for u in children(v) if 4 * cnt[u] > 3 * k]
        if not heavy:
            break
        v = heavy[0]
    ch = children(v)
    if ch.size == 0:
        raise BalanceFailure("descent ended at a leaf")
    u_prime = int(ch[np.argmax(cnt[ch])])

    first = int(t.parent_dart[u_prime])  # same id read as a dart of gd
    e = first >> 1
    cycle = fundamental_cycle(tstar, e, first_dart=first)

    inside = int(cnt[u_prime])
    outside = k - inside
    if 4 * inside > 3 * k or 4 * outside > 3 * k:
        raise BalanceFailure(
            f"separator sides {inside}/{outside} exceed 3/4 of {k}"
        )

    rest = cycle[1:]
    rootward = rest == tstar.parent_dart[gd.dart_tail[rest]]
    split = int(np.argmin(rootward)) if not rootward.all() else rest.size
    path_a, path_b = rest[:split], rest[split:]
    assert (
        path_b == tstar.parent_dart[gd.dart_tail[path_b ^ 1]] ^ 1
    ).all(), "second arm must be leafward"

    return CycleSeparator(
        cycle=cycle,
        path_a=path_a,
        path_b=path_b,
        nontree_edge=int(e),
        inside_terminals=inside,
        outside_terminals=outside,
    )
