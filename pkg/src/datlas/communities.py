"""Diffusion communities and per-community mixing features.

Communities are k-means clusters in diffusion-coordinate space at the
reference time ceil(tau).  Per-community features: Cheeger mixing, mean
degree, volume, and the mean entry/exit probability series over a time grid,
with their degree-only asymptotic limits.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .diffusion import DiffusionEmbedding
from .graph import SparseGraph
from .spectral import SpectralBasis


class CommunityError(ValueError):
    pass


@dataclass(frozen=True)
class CommunityPartition:
    k: int
    labels: np.ndarray     # (n,) ints in 0..k-1
    t_ref: int
    seed: int
    inertia: float
    sizes: np.ndarray      # (k,)

    def to_json(self):
        return json.dumps({"k": self.k, "t_ref": self.t_ref,
                           "seed": self.seed,
                           "labels": self.labels.tolist()})


@dataclass(frozen=True)
class CommunityFeatures:
    k: int
    times: np.ndarray         # (T,) integer time grid
    p_in: np.ndarray          # (T, k)
    p_out: np.ndarray         # (T, k)
    p_in_limit: np.ndarray    # (k,) degree-formula asymptote
    p_out_limit: np.ndarray   # (k,)
    cheeger: np.ndarray       # (k,)
    mean_degree: np.ndarray   # (k,)
    volume: np.ndarray        # (k,)
    sizes: np.ndarray         # (k,)
    summary: dict = field(default_factory=dict)

    def to_json(self):
        per_community = [
            {"community": c, "size": int(self.sizes[c]),
             "volume": float(self.volume[c]),
             "mean_degree": float(self.mean_degree[c]),
             "cheeger": float(self.cheeger[c]),
             "p_in": self.p_in[:, c].tolist(),
             "p_out": self.p_out[:, c].tolist(),
             "p_in_limit": float(self.p_in_limit[c]),
             "p_out_limit": float(self.p_out_limit[c])}
            for c in range(self.k)]
        return json.dumps({"k": self.k, "times": self.times.tolist(),
                           "communities": per_community,
                           "summary": self.summary})


def time_grid(tau_ceil: int, points: int = 50) -> np.ndarray:
    """Geometrically spaced integer times from 1 to 2*ceil(tau), deduplicated."""
    hi = max(2, 2 * int(tau_ceil))
    grid = np.unique(np.rint(np.geomspace(1, hi, points)).astype(np.int64))
    return grid


def _kmeans_pp_init(X, k, rng):
    n = X.shape[0]
    centers = np.empty((k, X.shape[1]))
    centers[0] = X[rng.integers(n)]
    dist2 = ((X - centers[0]) ** 2).sum(axis=1)
    for j in range(1, k):
        total = dist2.sum()
        if total <= 0:
            centers[j] = X[rng.integers(n)]
            continue
        idx = rng.choice(n, p=dist2 / total)
        centers[j] = X[idx]
        dist2 = np.minimum(dist2, ((X - centers[j]) ** 2).sum(axis=1))
    return centers


def _lloyd(X, centers, max_iter=300):
    n, k = X.shape[0], centers.shape[0]
    x2 = (X ** 2).sum(axis=1)
    labels = None
    for _ in range(max_iter):
        d2 = x2[:, None] - 2.0 * (X @ centers.T) + (centers ** 2).sum(axis=1)[None, :]
        new_labels = d2.argmin(axis=1)
        # empty-cluster repair: give the empty cluster the farthest point of
        # the largest cluster
        counts = np.bincount(new_labels, minlength=k)
        while (counts == 0).any():
            empty = int(np.argmin(counts))
            big = int(np.argmax(counts))
            members = np.flatnonzero(new_labels == big)
            far = members[d2[members, big].argmax()]
            new_labels[far] = empty
            counts = np.bincount(new_labels, minlength=k)
        if labels is not None and np.array_equal(labels, new_labels):
            break
        labels = new_labels
        for j in range(k):
            centers[j] = X[labels == j].mean(axis=0)
    d2 = ((X - centers[labels]) ** 2).sum(axis=1)
    return labels, centers, float(d2.sum())


def kmeans_diffusion(emb: DiffusionEmbedding, k: int, seed: int = 0,
                     restarts: int = 8) -> CommunityPartition:
    """k-means (k-means++ seeding, Lloyd iteration) in diffusion space.

    Deterministic given ``seed``; the best of ``restarts`` runs by inertia
    is kept.
    """
    X = emb.coords
    n = X.shape[0]
    if not 2 <= k <= n:
        raise CommunityError(f"k={k} out of range 2..{n}")
    if np.allclose(X, X[0], atol=1e-300):
        raise CommunityError("degenerate embedding: all rows identical")
    rng = np.random.default_rng(seed)
    best = None
    for _ in range(max(1, restarts)):
        centers = _kmeans_pp_init(X, k, rng)
        labels, _, inertia = _lloyd(X, centers)
        if best is None or inertia < best[1]:
            best = (labels, inertia)
    labels, inertia = best
    return CommunityPartition(
        k=k, labels=labels.astype(np.int64), t_ref=emb.t, seed=seed,
        inertia=inertia, sizes=np.bincount(labels, minlength=k))


def cheeger_mixing(g: SparseGraph, part: CommunityPartition, c: int) -> float:
    """Cheeger mixing h(C) = cut(C, C-bar) / min(vol(C), vol(C-bar))."""
    in_c = part.labels == c
    if not in_c.any() or in_c.all():
        raise CommunityError("undefined Cheeger mixing: community empty or full")
    rows = np.repeat(np.arange(g.n), np.diff(g.indptr))
    cut = int((in_c[rows] & ~in_c[g.indices]).sum())
    vol_c = int(g.degrees[in_c].sum())
    vol_cbar = int(g.degrees[~in_c].sum())
    return cut / min(vol_c, vol_cbar)


def entry_exit_probabilities(basis: SpectralBasis, part: CommunityPartition,
                             times) -> CommunityFeatures:
    """Mean entry/exit probability series for every community.

    Uses the factored form: with per-mode community sums
    S_psi_C(k) = sum_{i in C} psi_k(i) and S_phi_C(k) = sum_{i in C} phi_k(i),
    <p_in>_C(t)  = sum_k lambda_k^t S_psi_Cbar(k) S_phi_C(k) / (n_C n_Cbar)
    <p_out>_C(t) = sum_k lambda_k^t S_psi_C(k) S_phi_Cbar(k) / (n_C n_Cbar).
    """
    if part.k < 2:
        raise CommunityError("need at least 2 communities")
    times = np.asarray(times, dtype=np.int64)
    n, k = basis.n, part.k
    onehot = np.zeros((n, k))
    onehot[np.arange(n), part.labels] = 1.0

    S_psi = basis.Psi.T @ onehot      # (K, k)
    S_phi = basis.Phi.T @ onehot      # (K, k)
    S_psi_bar = S_psi.sum(axis=1, keepdims=True) - S_psi
    S_phi_bar = S_phi.sum(axis=1, keepdims=True) - S_phi

    sizes = part.sizes.astype(float)
    pair_norm = sizes * (n - sizes)
    lam_pow = basis.eigenvalues[None, :] ** times[:, None]   # (T, K)
    p_in = (lam_pow @ (S_psi_bar * S_phi)) / pair_norm[None, :]
    p_out = (lam_pow @ (S_psi * S_phi_bar)) / pair_norm[None, :]

    d = basis.degrees.astype(float)
    d_tot = d.sum()
    vol = np.array([d[part.labels == c].sum() for c in range(k)])
    p_in_limit = vol / sizes / d_tot
    p_out_limit = (d_tot - vol) / (n - sizes) / d_tot

    return CommunityFeatures(
        k=k, times=times, p_in=p_in, p_out=p_out,
        p_in_limit=p_in_limit, p_out_limit=p_out_limit,
        cheeger=np.full(k, np.nan), mean_degree=vol / sizes, volume=vol,
        sizes=part.sizes.copy())


def community_features(g: SparseGraph, basis: SpectralBasis,
                       part: CommunityPartition, times) -> CommunityFeatures:
    """Full feature set: entry/exit series plus Cheeger mixing and summary."""
    feats = entry_exit_probabilities(basis, part, times)
    cheeger = np.array([cheeger_mixing(g, part, c) for c in range(part.k)])
    feats = CommunityFeatures(
        k=feats.k, times=feats.times, p_in=feats.p_in, p_out=feats.p_out,
        p_in_limit=feats.p_in_limit, p_out_limit=feats.p_out_limit,
        cheeger=cheeger, mean_degree=feats.mean_degree, volume=feats.volume,
        sizes=feats.sizes)
    feats.summary.update(heterogeneity_summary(feats))
    return feats


def heterogeneity_summary(features: CommunityFeatures) -> dict:
    """Max over time of the across-community SD of <p_in> and <p_out>,
    plus mean Cheeger mixing and the argmax times."""
    sd_in = features.p_in.std(axis=1)
    sd_out = features.p_out.std(axis=1)
    i_in = int(sd_in.argmax())
    i_out = int(sd_out.argmax())
    out = {
        "max_sd_p_in": float(sd_in[i_in]),
        "max_sd_p_out": float(sd_out[i_out]),
        "argmax_t_p_in": int(features.times[i_in]),
        "argmax_t_p_out": int(features.times[i_out]),
    }
    if np.isfinite(features.cheeger).all():
        out["mean_cheeger"] = float(features.cheeger.mean())
    return out


def rank_communities(features: CommunityFeatures, key: str, t: int,
                     m: int = 5):
    """Communities sorted ascending by a feature value at time t.

    Returns a list of records with the value and its percent of the
    cross-community mean; the first ``m`` entries carry highlighted=True.
    """
    if key == "cheeger":
        values = features.cheeger
    elif key in ("p_in", "p_out"):
        series = features.p_in if key == "p_in" else features.p_out
        where = np.flatnonzero(features.times == t)
        if len(where) == 0:
            raise CommunityError(f"t={t} not in the computed time grid")
        values = series[where[0], :]
    else:
        raise CommunityError(f"unknown ranking key {key!r}")
    mean = values.mean()
    order = np.argsort(values, kind="stable")
    return [{"community": int(c), "value": float(values[c]),
             "percent_of_mean": float(100.0 * values[c] / mean) if mean != 0 else 0.0,
             "highlighted": rank < m}
            for rank, c in enumerate(order)]
