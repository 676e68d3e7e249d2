"""Brute-force reference implementations for tests and example derivation.

Everything here is dense, literal, and independent of the production code
paths it is used to check.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import SparseGraph

DENSE_CAP = 500


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class DenseChain:
    """Dense transition matrix and eigendecomposition of its symmetrization."""

    T: np.ndarray
    A: np.ndarray
    degrees: np.ndarray
    eigenvalues: np.ndarray   # magnitude-descending
    Psi: np.ndarray
    Phi: np.ndarray
    V: np.ndarray

    @property
    def n(self):
        return self.T.shape[0]

    def stationary(self):
        d = self.degrees.astype(float)
        return d / d.sum()


def dense_chain(g: SparseGraph, cap=DENSE_CAP) -> DenseChain:
    if g.n > cap:
        raise OracleError(f"n={g.n} exceeds dense oracle cap {cap}")
    A = g.adjacency().toarray()
    d = g.degrees.astype(float)
    if (d == 0).any():
        raise OracleError("isolated nodes")
    T = A / d[:, None]
    d_sqrt = np.sqrt(d)
    Ts = A / d_sqrt[:, None] / d_sqrt[None, :]
    lams, V = np.linalg.eigh(Ts)
    order = np.lexsort((-lams, -np.abs(lams)))
    lams, V = lams[order], V[:, order]
    Psi = V / d_sqrt[:, None]
    Phi = V * d_sqrt[:, None]
    recon = Psi @ np.diag(lams) @ Phi.T
    if np.abs(recon - T).max() > 1e-10:
        raise OracleError("dense reconstruction failed")
    return DenseChain(T=T, A=A, degrees=g.degrees.copy(), eigenvalues=lams,
                      Psi=Psi, Phi=Phi, V=V)


def dense_power(chain: DenseChain, t: int) -> np.ndarray:
    """T^t by binary exponentiation."""
    if t < 0:
        raise OracleError("t must be >= 0")
    return np.linalg.matrix_power(chain.T, int(t))


def truncated_dense(chain: DenseChain, K: int, t: int) -> np.ndarray:
    """Rank-K truncation Psi_K Lambda_K^t Phi_K^T, densely."""
    lam_t = chain.eigenvalues[:K] ** int(t)
    return (chain.Psi[:, :K] * lam_t[None, :]) @ chain.Phi[:, :K].T


def spectral_norm(M: np.ndarray) -> float:
    return float(np.linalg.svd(M, compute_uv=False)[0])


def simulate_walkers(g: SparseGraph, source: int, t: int, walkers: int,
                     seed: int = 0) -> np.ndarray:
    """Empirical occupancy of independent random walkers after t steps."""
    if walkers < 1:
        raise OracleError("need at least one walker")
    rng = np.random.default_rng(seed)
    pos = np.full(walkers, source, dtype=np.int64)
    for _ in range(int(t)):
        deg = g.degrees[pos]
        pick = (rng.random(walkers) * deg).astype(np.int64)
        pos = g.indices[g.indptr[pos] + pick]
    counts = np.bincount(pos, minlength=g.n)
    return counts / walkers


def naive_community_features(chain: DenseChain, labels, t: int):
    """Literal double-sum evaluation of <p_in>, <p_out>, and Cheeger mixing.

    Returns dict with arrays indexed by community.
    """
    labels = np.asarray(labels)
    k = labels.max() + 1
    Tt = dense_power(chain, t)
    n = chain.n
    p_in = np.zeros(k)
    p_out = np.zeros(k)
    cheeger = np.zeros(k)
    d = chain.degrees.astype(float)
    for c in range(k):
        in_c = labels == c
        n_c = int(in_c.sum())
        n_cbar = n - n_c
        if n_c == 0 or n_cbar == 0:
            raise OracleError("empty community or complement")
        # walkers starting outside entering C / starting inside leaving C
        p_in[c] = Tt[np.ix_(~in_c, in_c)].sum() / (n_c * n_cbar)
        p_out[c] = Tt[np.ix_(in_c, ~in_c)].sum() / (n_c * n_cbar)
        cut = chain.A[np.ix_(in_c, ~in_c)].sum()
        cheeger[c] = cut / min(d[in_c].sum(), d[~in_c].sum())
    return {"p_in": p_in, "p_out": p_out, "cheeger": cheeger}


def total_variation(p, q) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def floyd_warshall_distances(g: SparseGraph) -> np.ndarray:
    """All-pairs shortest paths by the O(n^3) recurrence (oracle only)."""
    n = g.n
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    rows = np.repeat(np.arange(n), np.diff(g.indptr))
    dist[rows, g.indices] = 1.0
    for k in range(n):
        np.minimum(dist, dist[:, k, None] + dist[None, k, :], out=dist)
    return dist


def betweenness_from_distances(g: SparseGraph) -> np.ndarray:
    """Betweenness by path-count DP over a Floyd-Warshall distance table."""
    dist = floyd_warshall_distances(g)
    n = g.n
    # count shortest paths by dynamic programming over increasing distance
    counts = np.zeros((n, n))
    np.fill_diagonal(counts, 1.0)
    adj = g.adjacency().toarray()
    maxd = int(dist[np.isfinite(dist)].max())
    for L in range(1, maxd + 1):
        for s in range(n):
            at_L = np.flatnonzero(dist[s] == L)
            for v in at_L:
                prev = np.flatnonzero((adj[v] > 0) & (dist[s] == L - 1))
                counts[s, v] = counts[s, prev].sum()
    score = np.zeros(n)
    for s in range(n):
        for tgt in range(s + 1, n):
            for u in range(n):
                if u in (s, tgt):
                    continue
                if dist[s, u] + dist[u, tgt] == dist[s, tgt]:
                    score[u] += counts[s, u] * counts[u, tgt] / counts[s, tgt]
    return score
