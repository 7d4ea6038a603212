"""Shared shortest-path plumbing on top of scipy's Dijkstra.

Planar duals are multigraphs, and scipy's sparse constructors sum duplicate
entries instead of taking the minimum. Every caller therefore reduces
parallel edges first: one representative per endpoint pair, minimum weight,
ties broken by smallest edge id. The reduction also provides the vectorized
pair -> representative lookup needed to turn predecessor arrays back into
edge sequences.

Weights are float64 with numpy.inf for infinite edges; finite values are
integers below 2**53 so all arithmetic here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _dijkstra


@dataclass
class Reduced:
    """Parallel-reduced arc list with a packed-key pair lookup."""

    n: int
    keys: np.ndarray  # sorted packed a * n + b, one per surviving pair
    arc_a: np.ndarray
    arc_b: np.ndarray
    arc_w: np.ndarray
    arc_id: np.ndarray  # representative original arc / edge id per pair

    def lookup(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Representative arc ids for the given endpoint pairs.

        Every queried pair must exist; that is asserted.
        """
        q = np.asarray(a, dtype=np.int64) * self.n + np.asarray(b, dtype=np.int64)
        pos = np.searchsorted(self.keys, q)
        assert np.all(pos < self.keys.size) and np.all(self.keys[pos] == q)
        return self.arc_id[pos]

    def matrix(self) -> csr_matrix:
        return csr_matrix(
            (self.arc_w, (self.arc_a, self.arc_b)), shape=(self.n, self.n)
        )


def _reduce(n: int, a: np.ndarray, b: np.ndarray, w: np.ndarray, ids: np.ndarray) -> Reduced:
    # Stable pick: per packed key keep the (weight, id)-lexicographic minimum.
    key = a.astype(np.int64) * n + b.astype(np.int64)
    order = np.lexsort((ids, w, key))
    key_s = key[order]
    first = np.ones(key_s.size, dtype=bool)
    first[1:] = key_s[1:] != key_s[:-1]
    sel = order[first]
    return Reduced(n, key_s[first], a[sel], b[sel], w[sel], ids[sel])


def reduce_undirected(n: int, eu: np.ndarray, ev: np.ndarray, w: np.ndarray) -> Reduced:
    """Symmetric reduction of an undirected edge list; both arc directions kept."""
    a = np.concatenate([eu, ev])
    b = np.concatenate([ev, eu])
    ww = np.concatenate([w, w])
    ids = np.concatenate([np.arange(eu.size, dtype=np.int64)] * 2)
    return _reduce(n, a, b, ww, ids)


def reduce_directed(n: int, a: np.ndarray, b: np.ndarray, w: np.ndarray, ids: np.ndarray) -> Reduced:
    """Reduction of an already-directed arc list."""
    return _reduce(
        n,
        np.asarray(a, dtype=np.int64),
        np.asarray(b, dtype=np.int64),
        np.asarray(w, dtype=np.float64),
        np.asarray(ids, dtype=np.int64),
    )


def run_dijkstra(red: Reduced, sources, *, min_only: bool = False):
    """Distances and predecessors from the given source vertices.

    Returns (dist, pred); pred[v] is a vertex id or -9999 for sources and
    unreached vertices. With min_only=True the arrays are flat over all
    sources (nearest-source semantics).
    """
    mat = red.matrix()
    dist, pred = _dijkstra(
        mat,
        directed=True,
        indices=sources,
        return_predecessors=True,
        min_only=min_only,
    )[:2]
    return dist, pred


def walk_preds(pred: np.ndarray, target: int) -> np.ndarray:
    """Vertex path source..target recovered from a predecessor array."""
    chain = [target]
    v = target
    while pred[v] >= 0:
        v = int(pred[v])
        chain.append(v)
    return np.array(chain[::-1], dtype=np.int64)
