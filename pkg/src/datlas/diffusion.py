"""Diffusion coordinates, diffusion distances, and probability fields."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .spectral import SpectralBasis, SpectralError, propagate


@dataclass(frozen=True)
class DiffusionEmbedding:
    """Node embedding X(t) = Psi Lambda^t; rows are diffusion coordinates."""

    t: int
    coords: np.ndarray        # (n, K)
    eigenvalues: np.ndarray   # (K,)
    fingerprint: str
    degree_total: float = 0.0  # sum of degrees, for distance normalization

    @property
    def n(self):
        return self.coords.shape[0]


@dataclass(frozen=True)
class ProbabilityField:
    """A probability vector over nodes at integer time t.

    ``raw`` keeps the unclamped truncated values; ``values`` is the exported
    view (negatives clamped to 0, then renormalized to sum 1).
    """

    t: int
    source: object            # node id, "uniform-aggregate", or a distribution tag
    values: np.ndarray
    raw: np.ndarray

    def to_json(self):
        src = self.source
        if isinstance(src, (np.integer,)):
            src = int(src)
        return json.dumps({"t": int(self.t), "source": src,
                           "values": self.values.tolist()})

    def to_binary(self) -> bytes:
        return self.values.astype("<f8").tobytes()


def _normalize_field(raw):
    v = np.clip(raw, 0.0, None)
    s = v.sum()
    if s <= 0:
        raise SpectralError("field has no positive mass")
    return v / s


def make_field(raw, t, source) -> ProbabilityField:
    return ProbabilityField(t=int(t), source=source,
                            values=_normalize_field(raw), raw=np.asarray(raw))


def embed(basis: SpectralBasis, t: int) -> DiffusionEmbedding:
    """Diffusion embedding X(t) = Psi Lambda^t."""
    if t < 0 or int(t) != t:
        raise SpectralError("t must be a nonnegative integer")
    lam_t = basis.eigenvalues ** int(t)
    return DiffusionEmbedding(
        t=int(t), coords=basis.Psi * lam_t[None, :],
        eigenvalues=basis.eigenvalues, fingerprint=basis.fingerprint,
        degree_total=float(basis.degrees.sum()))


def diffusion_distance2(emb: DiffusionEmbedding, i0: int, i1: int) -> float:
    """Squared diffusion distance between two nodes.

    Computed in the stationary-weighted convention: equal to the weighted
    field distance sum_j (p(j,t|i0) - p(j,t|i1))^2 / pi_j at full rank,
    which is (sum_i d_i) * sum_{k>=1} lambda_k^{2t} (psi_k(i0) - psi_k(i1))^2
    for psi columns taken from Psi = D^{-1/2} V.  The k=0 column is constant
    so it contributes nothing and is excluded for numerical cleanliness.
    """
    n = emb.n
    if not (0 <= i0 < n and 0 <= i1 < n):
        raise SpectralError("node id out of range")
    diff = emb.coords[i0, 1:] - emb.coords[i1, 1:]
    return float(emb.degree_total * (diff @ diff))


def probability_field(basis: SpectralBasis, start, t: int) -> ProbabilityField:
    """Propagated field from a start node or distribution, with export view."""
    raw = propagate(basis, start, t)
    source = int(start) if np.isscalar(start) or isinstance(start, (int, np.integer)) \
        else "distribution"
    return make_field(raw, t, source)


def stationary(basis: SpectralBasis) -> ProbabilityField:
    """Stationary distribution pi_j = d_j / sum_i d_i."""
    d = basis.degrees.astype(float)
    pi = d / d.sum()
    return ProbabilityField(t=-1, source="stationary", values=pi, raw=pi)


def aggregate_field(basis: SpectralBasis, t: int) -> ProbabilityField:
    """Mean field over a uniform choice of departure node."""
    uniform = np.full(basis.n, 1.0 / basis.n)
    raw = propagate(basis, uniform, t)
    return make_field(raw, t, "uniform-aggregate")
