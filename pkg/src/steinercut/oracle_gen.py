"""Brute-force oracles and reproducible instance generators.

Everything here is deliberately independent of the solver: the subset
oracle enumerates vertex sets, the pairflow oracle reduces to max-flow on
the plain (non-embedded) graph. They exist to be disagreed with.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .core import EmbeddedGraph, build_graph
from .errors import BadSpec, TooLarge
from .weights import ExtWeight

__all__ = [
    "OracleReport",
    "oracle_subset",
    "oracle_pairflow",
    "gen_grid",
    "delta_edges",
]


@dataclass
class OracleReport:
    weight: ExtWeight
    witness_side: np.ndarray  # vertex ids, ascending
    method: str
    elapsed: float


def delta_edges(g: EmbeddedGraph, side: np.ndarray) -> np.ndarray:
    """Edge ids with exactly one endpoint in the given vertex set."""
    mask = np.zeros(g.n, dtype=bool)
    mask[np.asarray(side, dtype=np.int64)] = True
    return np.flatnonzero(mask[g.edges_u] != mask[g.edges_v])


# ---------------------------------------------------------------------------
# subset enumeration


def oracle_subset(g: EmbeddedGraph, X) -> OracleReport:
    """Exact minimum by enumerating all terminal-separating vertex sets.

    Fixes vertex 0 outside the candidate side (complement symmetry), so
    2^(n-1) sets are scored, fully vectorized. Raises TooLarge for n > 20.
    """
    t0 = time.perf_counter()
    X = sorted(int(x) for x in X)
    if g.n > 20:
        raise TooLarge(f"subset oracle handles n <= 20, got {g.n}")
    if len(X) < 2:
        raise ValueError("need at least two terminals")

    n = g.n
    masks = np.arange(1 << (n - 1), dtype=np.int64) << 1  # bit 0 fixed clear

    def bit(v: int) -> np.ndarray:
        return ((masks >> v) & 1).astype(bool)

    some_in = np.zeros(masks.size, dtype=bool)
    some_out = np.zeros(masks.size, dtype=bool)
    for t in X:
        b = bit(t)
        some_in |= b
        some_out |= ~b
    sep = some_in & some_out

    weight = np.zeros(masks.size, dtype=np.float64)
    for e in range(g.m):
        crossed = bit(int(g.edges_u[e])) ^ bit(int(g.edges_v[e]))
        we = float(g.weights[e])
        if np.isinf(we):
            weight[crossed] = np.inf
        else:
            weight[crossed] += we
    weight[~sep] = np.inf

    best = int(np.flatnonzero(weight == weight.min())[0])
    w = float(weight[best])
    side = np.flatnonzero((masks[best] >> np.arange(n)) & 1)
    return OracleReport(
        weight=ExtWeight.from_float(w),
        witness_side=side.astype(np.int64),
        method="subset",
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# repeated max-flow


def _edmonds_karp(n: int, arcs: list[tuple[int, int, int]], s: int, t: int) -> int:
    """Reference max-flow: BFS augmenting paths on an adjacency list."""
    head: list[int] = []
    cap: list[int] = []
    nxt: list[int] = []
    first = [-1] * n

    def add(a: int, b: int, c: int) -> None:
        head.append(b)
        cap.append(c)
        nxt.append(first[a])
        first[a] = len(head) - 1

    for a, b, c in arcs:
        add(a, b, c)
        add(b, a, c)  # undirected edge: full capacity both ways

    flow = 0
    while True:
        prev_arc = [-1] * n
        prev_arc[s] = -2
        queue = [s]
        qi = 0
        while qi < len(queue) and prev_arc[t] == -1:
            v = queue[qi]
            qi += 1
            a = first[v]
            while a != -1:
                u = head[a]
                if prev_arc[u] == -1 and cap[a] > 0:
                    prev_arc[u] = a
                    queue.append(u)
                a = nxt[a]
        if prev_arc[t] == -1:
            return flow
        push = None
        v = t
        while v != s:
            a = prev_arc[v]
            push = cap[a] if push is None else min(push, cap[a])
            v = head[a ^ 1]
        v = t
        while v != s:
            a = prev_arc[v]
            cap[a] -= push
            cap[a ^ 1] += push
            v = head[a ^ 1]
        flow += push


def _scipy_cut(g: EmbeddedGraph, caps: np.ndarray, s: int, t: int) -> tuple[int, np.ndarray]:
    """Max-flow value and source-side vertex set via the residual graph."""
    n = g.n
    a = np.concatenate([g.edges_u, g.edges_v])
    b = np.concatenate([g.edges_v, g.edges_u])
    c = np.concatenate([caps, caps]).astype(np.int64)
    # collapse parallel arcs; maximum_flow wants one entry per ordered pair
    key = a * n + b
    order = np.argsort(key, kind="stable")
    key_s = key[order]
    first = np.ones(key_s.size, dtype=bool)
    first[1:] = key_s[1:] != key_s[:-1]
    group = np.cumsum(first) - 1
    csum = np.zeros(int(group[-1]) + 1, dtype=np.int64)
    np.add.at(csum, group, c[order])
    aa = a[order][first]
    bb = b[order][first]
    if csum.max() > np.iinfo(np.int32).max:
        raise ValueError("capacities exceed int32 for the flow backend")
    mat = csr_matrix((csum.astype(np.int32), (aa, bb)), shape=(n, n))
    res = maximum_flow(mat, s, t)
    # residual reachability from s gives the witness side
    resid = mat - res.flow
    resid.data = np.maximum(resid.data, 0)
    reach = np.zeros(n, dtype=bool)
    reach[s] = True
    frontier = [s]
    indptr, indices, data = resid.indptr, resid.indices, resid.data
    while frontier:
        nf = []
        for v in frontier:
            sl = slice(indptr[v], indptr[v + 1])
            for u, rc in zip(indices[sl], data[sl]):
                if rc > 0 and not reach[u]:
                    reach[u] = True
                    nf.append(int(u))
        frontier = nf
    return int(res.flow_value), np.flatnonzero(reach).astype(np.int64)


def oracle_pairflow(g: EmbeddedGraph, X, *, crosscheck: bool | None = None) -> OracleReport:
    """Exact minimum as the best of k-1 max-flows from the first terminal.

    Finite integer weights only. The flow engine is cross-checked against
    an independent augmenting-path implementation on small inputs (always
    when n <= 120, or force with crosscheck=True).
    """
    t0 = time.perf_counter()
    X = sorted(int(x) for x in X)
    if len(X) < 2:
        raise ValueError("need at least two terminals")
    if not np.isfinite(g.weights).all():
        raise ValueError("pairflow oracle needs finite weights")
    caps = g.weights.astype(np.int64)
    check = crosscheck if crosscheck is not None else g.n <= 120

    src = X[0]
    best_w: int | None = None
    best_side: np.ndarray | None = None
    arcs = None
    if check:
        arcs = list(
            zip(g.edges_u.tolist(), g.edges_v.tolist(), caps.tolist())
        )
    for t in X[1:]:
        w, side = _scipy_cut(g, caps, src, t)
        if check:
            ref = _edmonds_karp(g.n, arcs, src, t)
            assert ref == w, f"flow engines disagree: {ref} vs {w}"
        if best_w is None or w < best_w:
            best_w, best_side = w, side
    assert best_w is not None and best_side is not None
    return OracleReport(
        weight=ExtWeight(best_w),
        witness_side=best_side,
        method="pairflow",
        elapsed=time.perf_counter() - t0,
    )


# ---------------------------------------------------------------------------
# generators


def gen_grid(
    rows: int,
    cols: int,
    weight_spec="unit",
    terminal_spec="corners",
    seed: int = 0,
) -> tuple[EmbeddedGraph, list[int]]:
    """A rows x cols grid with its canonical embedding, plus terminals.

    Vertex (r, c) is r*cols + c; horizontal edges come first in row-major
    order, then vertical. Each rotation lists east, north, west, south (the
    counterclockwise order with row 0 drawn on top). weight_spec is "unit"
    or an inclusive integer range (lo, hi); terminal_spec is "corners",
    "all", or ("random-k", k). Weights are drawn before terminals, so the
    same seed always yields the same instance.
    """
    if rows < 2 or cols < 2:
        raise BadSpec("grid needs rows >= 2 and cols >= 2")
    n = rows * cols
    H = rows * (cols - 1)
    rng = random.Random(seed)

    if weight_spec == "unit":
        draw = lambda: 1
    else:
        try:
            lo, hi = int(weight_spec[0]), int(weight_spec[1])
        except (TypeError, ValueError, IndexError):
            raise BadSpec(f"bad weight spec: {weight_spec!r}") from None
        if not (1 <= lo <= hi):
            raise BadSpec(f"bad weight range: {lo}..{hi}")
        draw = lambda: rng.randint(lo, hi)

    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((r * cols + c, r * cols + c + 1, draw()))
    for r in range(rows - 1):
        for c in range(cols):
            edges.append((r * cols + c, (r + 1) * cols + c, draw()))

    rot = []
    for r in range(rows):
        for c in range(cols):
            lst = []
            if c < cols - 1:
                lst.append(2 * (r * (cols - 1) + c))  # east
            if r > 0:
                lst.append(2 * (H + (r - 1) * cols + c) + 1)  # north
            if c > 0:
                lst.append(2 * (r * (cols - 1) + c - 1) + 1)  # west
            if r < rows - 1:
                lst.append(2 * (H + r * cols + c))  # south
            rot.append(lst)

    if terminal_spec == "corners":
        X = sorted({0, cols - 1, (rows - 1) * cols, n - 1})
    elif terminal_spec == "all":
        X = list(range(n))
    else:
        try:
            kind, k = terminal_spec[0], int(terminal_spec[1])
        except (TypeError, ValueError, IndexError):
            raise BadSpec(f"bad terminal spec: {terminal_spec!r}") from None
        if kind != "random-k" or not (2 <= k <= n):
            raise BadSpec(f"bad terminal spec: {terminal_spec!r}")
        X = sorted(rng.sample(range(n), k))

    return build_graph(n, edges, rot), X
