"""Sparse undirected graphs and the random-walk transition operator.

Graphs are stored in compressed (CSR-like) adjacency form and are immutable
after construction.  The transition operator T = D^-1 A is never
materialized densely; it acts through sparse matrix-vector products.
"""
from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class SparseGraph:
    """Simple undirected graph in compressed adjacency form.

    ``indptr``/``indices`` follow the CSR convention: the neighbors of node
    ``i`` are ``indices[indptr[i]:indptr[i+1]]``, sorted ascending.
    """

    n: int
    m: int
    indptr: np.ndarray
    indices: np.ndarray
    degrees: np.ndarray
    coords: np.ndarray | None = None
    labels: np.ndarray | None = None
    build_info: dict = field(default_factory=dict)

    def neighbors(self, i):
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def adjacency(self) -> sp.csr_matrix:
        """Adjacency matrix as a scipy CSR matrix of float64 ones."""
        data = np.ones(len(self.indices))
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def edge_array(self) -> np.ndarray:
        """Canonical (m, 2) edge array with i < j, sorted lexicographically."""
        rows = np.repeat(np.arange(self.n), np.diff(self.indptr))
        cols = self.indices
        keep = rows < cols
        edges = np.stack([rows[keep], cols[keep]], axis=1)
        order = np.lexsort((edges[:, 1], edges[:, 0]))
        return edges[order]

    def fingerprint(self) -> str:
        """sha256 of the canonical edge-list bytes."""
        return hashlib.sha256(edge_list_bytes(self.edge_array())).hexdigest()

    def __post_init__(self):
        if self.coords is not None and len(self.coords) != self.n:
            raise GraphError(
                f"coords length {len(self.coords)} does not match n={self.n}")


def edge_list_bytes(edges: np.ndarray) -> bytes:
    return "".join(f"{i} {j}\n" for i, j in edges).encode()


def build_graph(edges, coords=None, labels=None) -> SparseGraph:
    """Build a canonical SparseGraph from a list of node-id pairs.

    Node ids are compacted to 0..n-1 in order of first appearance (already
    compact ids are kept as-is, making canonical files round-trip stable);
    the original ids are kept in ``labels``.  Self-loops and duplicate edges are
    removed; their counts are reported in ``build_info``.

    Parameters
    ----------
    edges : iterable of (int, int)
        Nonnegative node-id pairs; must be nonempty.
    coords : array-like, optional
        Positions indexed by *original* node id (length >= max id + 1);
        they are re-indexed to the compacted ids.
    """
    edges = np.asarray(list(edges), dtype=np.int64)
    if edges.size == 0:
        raise GraphError("edge list is empty")
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise GraphError("edges must be pairs of node ids")
    if (edges < 0).any():
        raise GraphError("node ids must be nonnegative integers")

    # compact ids in order of first appearance (row-major over the edge list)
    flat = edges.ravel()
    sorted_ids, first_pos = np.unique(flat, return_index=True)
    if sorted_ids[0] == 0 and sorted_ids[-1] == len(sorted_ids) - 1:
        # ids are already compact 0..n-1: keep them as-is so canonical
        # files are a fixed point of the round trip
        ids = sorted_ids
        e = edges
    else:
        appearance = np.argsort(first_pos)
        ids = sorted_ids[appearance]
        new_of_sorted = np.empty(len(ids), dtype=np.int64)
        new_of_sorted[appearance] = np.arange(len(ids))
        e = new_of_sorted[np.searchsorted(sorted_ids, edges)]

    n = len(ids)
    self_loops = int((e[:, 0] == e[:, 1]).sum())
    e = e[e[:, 0] != e[:, 1]]
    lo = np.minimum(e[:, 0], e[:, 1])
    hi = np.maximum(e[:, 0], e[:, 1])
    canon = np.unique(np.stack([lo, hi], axis=1), axis=0)
    duplicates = len(e) - len(canon)
    if self_loops or duplicates:
        logger.warning("removed %d duplicate edge(s) and %d self-loop(s)",
                       duplicates, self_loops)
    if len(canon) == 0:
        raise GraphError("no edges remain after removing self-loops")

    if coords is not None:
        coords = np.asarray(coords, dtype=float)
        if len(coords) <= ids.max():
            raise GraphError(
                f"coords length {len(coords)} does not cover node id {ids.max()}")
        coords = coords[ids]
        if not np.isfinite(coords).all():
            raise GraphError("coords must be finite")

    if labels is None:
        labels = ids
    else:
        labels = np.asarray(labels)
        if len(labels) != n:
            raise GraphError("labels length mismatch")

    return _from_canonical_edges(
        canon, n, coords=coords, labels=labels,
        build_info={"self_loops_removed": self_loops,
                    "duplicates_removed": duplicates},
    )


def _from_canonical_edges(canon, n, coords=None, labels=None, build_info=None):
    """Assemble a SparseGraph from deduplicated i<j edges over ids 0..n-1."""
    both = np.concatenate([canon, canon[:, ::-1]])
    adj = sp.csr_matrix(
        (np.ones(len(both)), (both[:, 0], both[:, 1])), shape=(n, n))
    adj.sort_indices()
    degrees = np.diff(adj.indptr).astype(np.int64)
    return SparseGraph(
        n=n, m=len(canon),
        indptr=adj.indptr.astype(np.int64),
        indices=adj.indices.astype(np.int64),
        degrees=degrees, coords=coords,
        labels=np.arange(n) if labels is None else labels,
        build_info=build_info or {},
    )


def largest_connected_component(g: SparseGraph):
    """Induced subgraph on the largest component plus the old->new id map.

    Ties between equal-size components go to the one containing the smallest
    original node id.  Returns ``(subgraph, mapping)`` where ``mapping`` is a
    length-n array with -1 for dropped nodes.
    """
    ncomp, comp = sp.csgraph.connected_components(
        g.adjacency(), directed=False)
    if ncomp == 1:
        return g, np.arange(g.n, dtype=np.int64)

    sizes = np.bincount(comp, minlength=ncomp)
    best = sizes.max()
    # among max-size components, pick the one whose minimum node id is smallest
    candidates = np.flatnonzero(sizes == best)
    winner = min(candidates, key=lambda c: np.flatnonzero(comp == c)[0])

    keep = np.flatnonzero(comp == winner)
    mapping = np.full(g.n, -1, dtype=np.int64)
    mapping[keep] = np.arange(len(keep))

    rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
    mask = (mapping[rows] >= 0) & (mapping[g.indices] >= 0) & (rows < g.indices)
    sub_edges = np.stack([mapping[rows[mask]], mapping[g.indices[mask]]], axis=1)

    dropped = g.n - len(keep)
    logger.info("largest component: kept %d of %d nodes (%.1f%% dropped)",
                len(keep), g.n, 100.0 * dropped / g.n)

    order = np.lexsort((sub_edges[:, 1], sub_edges[:, 0]))
    sub = _from_canonical_edges(
        sub_edges[order], len(keep),
        coords=None if g.coords is None else g.coords[keep],
        labels=None if g.labels is None else g.labels[keep],
        build_info={"nodes_dropped": dropped,
                    "fraction_dropped": dropped / g.n},
    )
    return sub, mapping


class TransitionOperator:
    """Row-stochastic transition operator T = D^-1 A acting via sparse products."""

    def __init__(self, g: SparseGraph):
        if (g.degrees == 0).any():
            raise GraphError("graph has isolated nodes; extract a component first")
        self.graph = g
        self._adj = g.adjacency()
        self._inv_deg = 1.0 / g.degrees

    @property
    def n(self):
        return self.graph.n

    def apply(self, x, side="row"):
        """Apply the operator to a vector.

        ``side='row'`` computes the distribution push-forward x^T T;
        ``side='column'`` computes T x.
        """
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n,):
            raise GraphError(f"vector length {x.shape} != n={self.n}")
        if side == "row":
            return self._adj.dot(x * self._inv_deg)
        if side == "column":
            return self._adj.dot(x) * self._inv_deg
        raise GraphError(f"unknown side {side!r}")


def transition_apply(op: TransitionOperator, x, side="row"):
    return op.apply(x, side=side)


def load_edge_list(path):
    """Read an edge-list file: one `i j` pair per line, `#` comments ignored."""
    edges = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b = line.split()[:2]
            edges.append((int(a), int(b)))
    return edges


def save_edge_list(g: SparseGraph, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(edge_list_bytes(g.edge_array()).decode())


def load_coords(path, n=None):
    """Read a coordinates file: `id x y z` per line; returns (n, 3) array."""
    rows = {}
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            rows[int(parts[0])] = [float(v) for v in parts[1:4]]
    size = n if n is not None else (max(rows) + 1 if rows else 0)
    coords = np.zeros((size, 3))
    for i, xyz in rows.items():
        coords[i, :len(xyz)] = xyz
    return coords


def save_coords(g: SparseGraph, path):
    if g.coords is None:
        raise GraphError("graph has no coordinates")
    c = np.asarray(g.coords, dtype=float)
    if c.shape[1] < 3:
        c = np.hstack([c, np.zeros((len(c), 3 - c.shape[1]))])
    with open(path, "w", encoding="utf-8") as f:
        for i in range(g.n):
            f.write(f"{i} {c[i, 0]:.17g} {c[i, 1]:.17g} {c[i, 2]:.17g}\n")
