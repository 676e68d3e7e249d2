"""Truncated spectral decomposition of the transition operator.

The row-stochastic operator T = D^-1 A is similar to the symmetric matrix
T_s = D^-1/2 A D^-1/2, whose orthonormal eigenpairs (lambda_k, v_k) give the
biorthogonal factors Psi = D^-1/2 V and Phi = D^1/2 V with
T^t = Psi Lambda^t Phi^T.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .graph import GraphError, SparseGraph, TransitionOperator

MAGIC = b"DATL1"


class SpectralError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralBasis:
    """K leading eigenpairs of the symmetrized transition operator.

    Eigenvalues are sorted by descending magnitude (algebraic value breaks
    ties), so ``eigenvalues[0] == 1``.  ``V`` holds orthonormal eigenvectors
    of T_s; ``Psi``/``Phi`` are the left/right factors of T.
    """

    K: int
    eigenvalues: np.ndarray   # (K,)
    V: np.ndarray             # (n, K)
    Psi: np.ndarray           # (n, K)
    Phi: np.ndarray           # (n, K)
    degrees: np.ndarray       # (n,)
    fingerprint: str

    @property
    def n(self):
        return len(self.degrees)


def symmetrized_operator(g: SparseGraph) -> sp.csr_matrix:
    """T_s = D^-1/2 A D^-1/2 as a sparse matrix."""
    d_isqrt = 1.0 / np.sqrt(g.degrees.astype(float))
    A = g.adjacency()
    return sp.csr_matrix(A.multiply(d_isqrt[:, None]).multiply(d_isqrt[None, :]))


def _order_and_sign(lams, V):
    # magnitude-descending, algebraic value breaks ties (puts +1 before -1)
    order = np.lexsort((-lams, -np.abs(lams)))
    lams = lams[order]
    V = V[:, order]
    # sign convention: largest-magnitude entry of each column positive
    for k in range(V.shape[1]):
        j = np.argmax(np.abs(V[:, k]))
        if V[j, k] < 0:
            V[:, k] = -V[:, k]
    return lams, V


def build_basis(g: SparseGraph, K=None, tol=1e-10) -> SpectralBasis:
    """Compute the K largest-magnitude eigenpairs of the transition operator.

    Uses a dense symmetric solver when K is close to n (or n is small) and a
    sparse Lanczos solver otherwise.  Residuals ||T_s v - lambda v|| are
    verified against ``tol`` for every returned pair.
    """
    if (g.degrees == 0).any():
        raise GraphError("graph has isolated nodes")
    n = g.n
    if K is None:
        K = min(n, 2000)
    if not 1 <= K <= n:
        raise SpectralError(f"K={K} out of range 1..{n}")
    if tol <= 0:
        raise SpectralError("tol must be positive")
    ncomp = sp.csgraph.connected_components(g.adjacency(), directed=False)[0]
    if ncomp != 1:
        raise GraphError("graph is disconnected; extract a component first")

    Ts = symmetrized_operator(g)
    if K >= n - 1 or n <= 512 or K > n // 2:
        lams, V = np.linalg.eigh(Ts.toarray())
        lams, V = _order_and_sign(lams, V)
        lams, V = lams[:K], V[:, :K]
    else:
        try:
            lams, V = spla.eigsh(Ts, k=K, which="LM", tol=tol)
        except spla.ArpackNoConvergence as exc:
            raise SpectralError(f"eigensolver did not converge: {exc}") from exc
        lams, V = _order_and_sign(lams, V)

    resid = np.linalg.norm(Ts @ V - V * lams[None, :], axis=0)
    bad = resid > np.maximum(1.0, np.abs(lams)) * max(tol, 1e-9)
    if bad.any():
        raise SpectralError(
            f"{bad.sum()} eigenpair(s) exceed residual tolerance "
            f"(max residual {resid.max():.3e})")
    if abs(lams[0] - 1.0) > 1e-10:
        raise SpectralError(f"leading eigenvalue {lams[0]} != 1")

    d_sqrt = np.sqrt(g.degrees.astype(float))
    return SpectralBasis(
        K=K, eigenvalues=lams, V=V,
        Psi=V / d_sqrt[:, None], Phi=V * d_sqrt[:, None],
        degrees=g.degrees.copy(), fingerprint=g.fingerprint(),
    )


def relaxation_time(basis: SpectralBasis):
    """Relaxation time tau = 1 / (1 - |lambda_1|).

    Returns ``(tau, ceil(tau))``.  Raises when |lambda_1| is numerically 1
    (bipartite or disconnected input has no finite relaxation time).
    """
    if basis.K < 2:
        raise SpectralError("relaxation time needs K >= 2")
    lam1 = abs(basis.eigenvalues[1])
    if lam1 >= 1.0 - 1e-12:
        raise SpectralError("no finite relaxation time (|lambda_1| = 1)")
    tau = 1.0 / (1.0 - lam1)
    return tau, int(np.ceil(tau))


def _lambda_powers(lams, t):
    # negative eigenvalues require a true integer exponent
    t = int(t)
    return lams ** t


def propagate(basis: SpectralBasis, start, t: int):
    """Probability field p_hat(., t | start) from the truncated decomposition.

    ``start`` is a node id or a distribution over nodes.  Returns the raw
    (unclamped) length-n vector; truncation can make entries slightly
    negative, which the export path clamps (see diffusion.ProbabilityField).
    """
    if t < 0 or int(t) != t:
        raise SpectralError("t must be a nonnegative integer")
    lam_t = _lambda_powers(basis.eigenvalues, t)
    if np.isscalar(start) or isinstance(start, (int, np.integer)):
        i = int(start)
        if not 0 <= i < basis.n:
            raise SpectralError(f"node id {i} out of range")
        coeff = basis.Psi[i, :] * lam_t
    else:
        x = np.asarray(start, dtype=float)
        if x.shape != (basis.n,):
            raise SpectralError("start distribution has wrong length")
        coeff = (x @ basis.Psi) * lam_t
    return basis.Phi @ coeff


def _truncated_apply(basis, lam_t, x, transpose=False):
    if transpose:
        return basis.Phi @ (lam_t * (basis.Psi.T @ x))
    return basis.Psi @ (lam_t * (basis.Phi.T @ x))


def _power_iteration_sigma(matvec, rmatvec, n, rng, rel_tol=1e-6, max_iter=1000):
    """Largest singular value of an implicit operator via power iteration
    on A^T A.  Returns (sigma, converged)."""
    z = rng.standard_normal(n)
    z /= np.linalg.norm(z)
    est = 0.0
    for _ in range(max_iter):
        w = rmatvec(matvec(z))
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0, True
        new_est = z @ w  # Rayleigh quotient for A^T A
        z = w / nw
        if abs(new_est - est) < rel_tol * est + 1e-28:
            return float(np.sqrt(max(new_est, 0.0))), True
        est = new_est
    return float(np.sqrt(max(est, 0.0))), False


def estimate_truncation_error(g: SparseGraph, basis: SpectralBasis, t: int,
                              rel_tol=1e-6, max_iter=1000, seed=0):
    """Relative spectral-norm error ||T^t - That_K^t|| / ||T^t||.

    Both norms are estimated by power iteration using only matrix-vector
    products: t sparse products for T^t and rank-K products for the
    truncation.  Returns ``(estimate, converged)``.
    """
    if t < 1 or int(t) != t:
        raise SpectralError("t must be a positive integer")
    t = int(t)
    op = TransitionOperator(g)
    lam_t = _lambda_powers(basis.eigenvalues, t)
    rng = np.random.default_rng(seed)

    def Tt(x):
        for _ in range(t):
            x = op.apply(x, side="column")
        return x

    def TtT(x):
        for _ in range(t):
            x = op.apply(x, side="row")
        return x

    def delta(x):
        return Tt(x) - _truncated_apply(basis, lam_t, x)

    def delta_T(x):
        return TtT(x) - _truncated_apply(basis, lam_t, x, transpose=True)

    sig_delta, conv1 = _power_iteration_sigma(
        delta, delta_T, g.n, rng, rel_tol, max_iter)
    sig_T, conv2 = _power_iteration_sigma(
        Tt, TtT, g.n, rng, rel_tol, max_iter)
    return sig_delta / sig_T, (conv1 and conv2)


def save_basis(basis: SpectralBasis, path):
    """Write the basis cache: magic `DATL1`, little-endian u64 n and K,
    f64 eigenvalues and V (row-major), then the graph fingerprint."""
    fp = basis.fingerprint.encode()
    with open(path, "wb") as f:
        f.write(MAGIC)
        f.write(struct.pack("<QQ", basis.n, basis.K))
        f.write(basis.eigenvalues.astype("<f8").tobytes())
        f.write(np.ascontiguousarray(basis.V, dtype="<f8").tobytes())
        f.write(struct.pack("<Q", len(fp)))
        f.write(fp)


def load_basis(path, g: SparseGraph) -> SpectralBasis:
    """Load a basis cache and rebuild Psi/Phi from the graph's degrees.

    The stored fingerprint must match the graph.
    """
    with open(path, "rb") as f:
        if f.read(5) != MAGIC:
            raise SpectralError(f"{path}: bad magic bytes")
        n, K = struct.unpack("<QQ", f.read(16))
        lams = np.frombuffer(f.read(8 * K), dtype="<f8").copy()
        V = np.frombuffer(f.read(8 * n * K), dtype="<f8").reshape(n, K).copy()
        (fplen,) = struct.unpack("<Q", f.read(8))
        fp = f.read(fplen).decode()
    if n != g.n:
        raise SpectralError("basis size does not match graph")
    if fp != g.fingerprint():
        raise SpectralError("basis fingerprint does not match graph")
    d_sqrt = np.sqrt(g.degrees.astype(float))
    return SpectralBasis(
        K=int(K), eigenvalues=lams, V=V,
        Psi=V / d_sqrt[:, None], Phi=V * d_sqrt[:, None],
        degrees=g.degrees.copy(), fingerprint=fp,
    )
