"""Centrality suite: betweenness, closeness, maximal remoteness,
eigenvector centrality, and a GMFPT surrogate from return probabilities.

All measures are min-max normalized for display; raw values are kept.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import GraphError, SparseGraph
from .spectral import SpectralBasis, SpectralError, build_basis


@dataclass(frozen=True)
class CentralityScores:
    measure: str
    raw: np.ndarray
    normalized: np.ndarray
    params: dict = field(default_factory=dict)

    def to_json_dict(self):
        return {"measure": self.measure, "raw": self.raw.tolist(),
                "normalized": self.normalized.tolist()}


def _minmax(raw):
    lo, hi = raw.min(), raw.max()
    if hi > lo:
        return (raw - lo) / (hi - lo)
    # all-equal raw values normalize to 0 by convention
    return np.zeros_like(raw, dtype=float)


def _scores(measure, raw, **params):
    raw = np.asarray(raw, dtype=float)
    return CentralityScores(measure=measure, raw=raw,
                            normalized=_minmax(raw), params=params)


def _bfs(g, source):
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    q = deque([source])
    while q:
        u = q.popleft()
        for v in g.neighbors(u):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def _check_connected(g):
    if (_bfs(g, 0) < 0).any():
        raise GraphError("graph is disconnected")


def betweenness(g: SparseGraph) -> CentralityScores:
    """Shortest-path betweenness over unordered pairs, endpoints excluded,
    unnormalized.  Single-source BFS with dependency accumulation."""
    _check_connected(g)
    score = np.zeros(g.n)
    for s in range(g.n):
        # forward pass
        sigma = np.zeros(g.n)
        sigma[s] = 1.0
        dist = np.full(g.n, -1, dtype=np.int64)
        dist[s] = 0
        order = []
        q = deque([s])
        preds = [[] for _ in range(g.n)]
        while q:
            u = q.popleft()
            order.append(u)
            for v in g.neighbors(u):
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    q.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        # backward accumulation
        delta = np.zeros(g.n)
        for v in reversed(order):
            for u in preds[v]:
                delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v])
            if v != s:
                score[v] += delta[v]
    return _scores("betweenness", score / 2.0)


def closeness(g: SparseGraph) -> CentralityScores:
    """(n-1) / sum of shortest-path lengths from each node."""
    _check_connected(g)
    raw = np.empty(g.n)
    for u in range(g.n):
        raw[u] = (g.n - 1) / _bfs(g, u).sum()
    return _scores("closeness", raw)


def max_remoteness(g: SparseGraph) -> CentralityScores:
    """Eccentricity: maximal shortest-path distance from each node."""
    _check_connected(g)
    raw = np.empty(g.n)
    for u in range(g.n):
        raw[u] = _bfs(g, u).max()
    return _scores("max_remoteness", raw)


def eigenvector_centrality(g: SparseGraph, tol=1e-12,
                           max_iter=100000) -> CentralityScores:
    """Leading eigenvector of the adjacency matrix, L2-normalized, positive.

    Power iteration runs on A + I; the shift leaves the eigenvector
    unchanged and prevents oscillation on (near-)bipartite graphs.
    """
    _check_connected(g)
    A = g.adjacency()
    x = np.full(g.n, 1.0 / np.sqrt(g.n))
    for _ in range(max_iter):
        y = A @ x + x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) < tol:
            x = y
            break
        x = y
    else:
        raise SpectralError("eigenvector centrality did not converge")
    x = np.abs(x)
    return _scores("eigenvector", x)


def gmfpt(g: SparseGraph = None, basis: SpectralBasis = None,
          threshold=0.01) -> CentralityScores:
    """Global-mean-first-passage-time surrogate from return probabilities.

    For each node x, sums (p(x,t=n|x) - pi_x) over n >= 0 and divides by
    pi_x, where return probabilities come from the spectral basis:
    p(x,n|x) - pi_x = sum_{k>=1} lambda_k^n v_k(x)^2.  The series is summed
    per eigenmode in closed form (sum_n lambda^n = 1/(1-lambda)), which is
    exact; the horizon n_cut at which the excess return probability first
    satisfies |p(x,n|x) - pi_x| * N < threshold is still located and
    reported in ``params`` as a convergence diagnostic.
    """
    if basis is None:
        if g is None:
            raise ValueError("need a graph or a spectral basis")
        basis = build_basis(g, K=g.n)
    lams = basis.eigenvalues[1:]
    if len(lams) and np.abs(lams).max() >= 1.0 - 1e-12:
        raise SpectralError("no stationary limit (bipartite graph)")
    W = basis.V[:, 1:] ** 2          # (n, K-1) per-node mode weights
    n = basis.n
    pi = basis.degrees / basis.degrees.sum()

    def excess(t):
        return W @ (lams ** int(t))

    # bracket n_cut by doubling, then bisect to the first passing time
    n_cut = 1
    while np.abs(excess(n_cut)).max() * n >= threshold:
        n_cut *= 2
        if n_cut > 10 ** 9:
            raise SpectralError("GMFPT truncation rule did not converge")
    lo, hi = n_cut // 2, n_cut
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if np.abs(excess(mid)).max() * n < threshold:
            hi = mid
        else:
            lo = mid
    n_cut = hi

    # full geometric series sum_{t>=0} lambda^t = 1/(1-lambda), per mode
    raw = (W @ (1.0 / (1.0 - lams))) / pi
    return _scores("gmfpt", raw, n_cut=int(n_cut), threshold=threshold)
