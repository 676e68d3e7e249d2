"""Seeded generators for the toy-network families.

Families: iterative-subdivision city street networks (homogeneous and polar
presets), Gaussian random geometric graphs, random regular graphs
(configuration model), Erdos-Renyi, and 3D Voronoi skeletons (homogeneous
jittered grid or two-cloud polar mode).

Every generator is a pure function of its config and seed: identical inputs
give a byte-identical canonical edge list.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial import Voronoi

from .graph import GraphError, SparseGraph, build_graph

# presets for the city model: alpha weights attraction to existing density,
# beta weights cell size; alpha > beta grows dense poles
CITY_HCN_PRESET = {"alpha": 1.0, "beta": 3.0}
CITY_PCN_PRESET = {"alpha": 3.0, "beta": 1.0}


class GeneratorError(ValueError):
    pass


# fallback offset away from the exact midpoint when the wall point is
# already occupied by a node from an adjacent cell's earlier split;
# irrational so fallback points never re-collide with dyadic midpoints
_SPLIT_OFFSET = (np.sqrt(2.0) - 1.0) / 32.0


class _Walls:
    """Nodes living on axis-aligned wall lines, sorted along each line.

    A line is keyed by ('v', x) or ('h', y).  Adjacent nodes on a line that
    bound a query point are exactly the endpoints of the wall edge
    containing it (disjoint collinear segments never interleave nodes).
    """

    def __init__(self):
        self.lines = {}

    def add(self, key, along, node):
        import bisect
        line = self.lines.setdefault(key, [])
        bisect.insort(line, (along, node))

    def occupied(self, key, along):
        import bisect
        line = self.lines.get(key, [])
        i = bisect.bisect_left(line, (along, -1))
        return i < len(line) and line[i][0] == along

    def bounding_nodes(self, key, along):
        import bisect
        line = self.lines[key]
        i = bisect.bisect_left(line, (along, -1))
        return line[i - 1][1], line[i][1]


def generate_city(subdivisions, alpha=1.0, beta=3.0, width=1.6, height=1.0,
                  seed=None):
    """City street network by iterative subdivision of a rectangle.

    Starts from one W x H rectangle (4 corner nodes, 4 boundary edges).
    Each step scores every rectangular cell as
    ``sum_i 1/dist(center, node_i)^alpha * longer_side^beta`` over all
    current nodes, splits the best-scoring cell (ties to the oldest cell)
    perpendicular to its longer side at the midpoint, adding exactly 2
    nodes and 3 edges (when the midpoint wall position is already occupied
    the cut shifts by a small fixed irrational offset so every split still
    adds 2 fresh T-junctions).  Final counts: n = 4 + 2s, m = 4 + 3s.
    Deterministic; ``seed`` is accepted for interface uniformity but unused.
    """
    s = int(subdivisions)
    if s < 0:
        raise GeneratorError("subdivisions must be >= 0")
    if alpha < 0 or beta < 0:
        raise GeneratorError("alpha and beta must be >= 0")

    nodes = [(0.0, 0.0), (width, 0.0), (width, height), (0.0, height)]
    edges = {(0, 1), (1, 2), (2, 3), (0, 3)}
    walls = _Walls()
    walls.add(("h", 0.0), 0.0, 0)
    walls.add(("h", 0.0), width, 1)
    walls.add(("h", height), width, 2)
    walls.add(("h", height), 0.0, 3)
    walls.add(("v", 0.0), 0.0, 0)
    walls.add(("v", 0.0), height, 3)
    walls.add(("v", width), 0.0, 1)
    walls.add(("v", width), height, 2)

    # cells: (x0, y0, x1, y1, creation_index); per-cell density term
    # sum_i 1/dist(center, node_i)^alpha is maintained incrementally
    cells = [(0.0, 0.0, width, height, 0)]
    next_cell_idx = 1
    pts = np.array(nodes)

    def center(c):
        return np.array([(c[0] + c[2]) / 2.0, (c[1] + c[3]) / 2.0])

    density = [float((1.0 / np.linalg.norm(pts - center(cells[0]),
                                           axis=1) ** alpha).sum())]

    def insert_node(key, along, point):
        a, b = walls.bounding_nodes(key, along)
        new = len(nodes)
        nodes.append(point)
        lo, hi = (a, b) if a < b else (b, a)
        pair = (lo, hi) if (lo, hi) in edges else (hi, lo)
        edges.remove(pair)
        edges.add((min(a, new), max(a, new)))
        edges.add((min(b, new), max(b, new)))
        walls.add(key, along, new)
        return new

    def pick_cut(lo, hi, key_a, key_b):
        """Cut coordinate in (lo, hi) whose wall points are both free."""
        mid = (lo + hi) / 2.0
        span = hi - lo
        for j in range(64):
            step = ((j + 1) // 2) * _SPLIT_OFFSET * span
            cand = mid + step if j % 2 == 1 else mid - step if j else mid
            if lo < cand < hi and not walls.occupied(key_a, cand) \
                    and not walls.occupied(key_b, cand):
                return cand
        raise GeneratorError("could not place a free cut position")

    # cells thinner than this cannot host further distinct cut positions;
    # they are skipped so refinement spreads instead of underflowing
    min_span = 1e-7 * max(width, height)

    for _ in range(s):
        sizes = np.array([max(c[2] - c[0], c[3] - c[1]) for c in cells])
        spans = np.array([min(c[2] - c[0], c[3] - c[1]) for c in cells])
        scores = np.asarray(density) * sizes ** beta
        order = np.lexsort(([c[4] for c in cells], -scores))
        best = None
        for cand in order:
            if sizes[cand] > min_span and spans[cand] > 0:
                best = int(cand)
                break
        if best is None:
            raise GeneratorError("all cells below the splittable size floor")
        x0, y0, x1, y1, _ = cells.pop(best)
        density.pop(best)

        if x1 - x0 >= y1 - y0:
            xm = pick_cut(x0, x1, ("h", y0), ("h", y1))
            n1 = insert_node(("h", y0), xm, (xm, y0))
            n2 = insert_node(("h", y1), xm, (xm, y1))
            for node, yy in ((n1, y0), (n2, y1)):
                walls.add(("v", xm), yy, node)
            new_cells = [(x0, y0, xm, y1, next_cell_idx),
                         (xm, y0, x1, y1, next_cell_idx + 1)]
        else:
            ym = pick_cut(y0, y1, ("v", x0), ("v", x1))
            n1 = insert_node(("v", x0), ym, (x0, ym))
            n2 = insert_node(("v", x1), ym, (x1, ym))
            for node, xx in ((n1, x0), (n2, x1)):
                walls.add(("h", ym), xx, node)
            new_cells = [(x0, y0, x1, ym, next_cell_idx),
                         (x0, ym, x1, y1, next_cell_idx + 1)]
        next_cell_idx += 2
        edges.add((min(n1, n2), max(n1, n2)))

        pts = np.array(nodes)
        new_pts = pts[-2:]
        for i, c in enumerate(cells):
            ctr = center(c)
            density[i] += float(
                (1.0 / np.linalg.norm(new_pts - ctr, axis=1) ** alpha).sum())
        for c in new_cells:
            ctr = center(c)
            cells.append(c)
            density.append(float(
                (1.0 / np.linalg.norm(pts - ctr, axis=1) ** alpha).sum()))

    return build_graph(sorted(edges), coords=np.array(nodes))


def generate_geometric(n, sigma=2.0, r=2.1, seed=0):
    """Gaussian random geometric graph in 2D.

    ``n`` points from a centered isotropic Gaussian; nodes closer than the
    threshold ``r`` are connected.  Uses a uniform-grid spatial index with
    cell size ``r`` for near-linear expected time.
    """
    rng = np.random.default_rng(seed)
    pts = rng.normal(scale=sigma, size=(n, 2))
    chunks = []
    if r > 0:
        cell = np.floor(pts / r).astype(np.int64)
        buckets = {}
        for i, key in enumerate(map(tuple, cell)):
            buckets.setdefault(key, []).append(i)
        r2 = r * r
        for (cx, cy), members in buckets.items():
            mem = np.array(members)
            d = pts[mem]
            # same-bucket pairs
            diff = d[:, None, :] - d[None, :, :]
            close = (diff ** 2).sum(axis=2) < r2
            a, b = np.nonzero(np.triu(close, k=1))
            if len(a):
                chunks.append(np.stack([mem[a], mem[b]], axis=1))
            # forward neighbor buckets only, to visit each pair once
            for dx, dy in ((1, -1), (1, 0), (1, 1), (0, 1)):
                other = buckets.get((cx + dx, cy + dy))
                if not other:
                    continue
                oth = np.array(other)
                diff = pts[oth][None, :, :] - d[:, None, :]
                a, b = np.nonzero((diff ** 2).sum(axis=2) < r2)
                if len(a):
                    chunks.append(np.stack([mem[a], oth[b]], axis=1))
    if not chunks:
        raise GeneratorError("geometric graph has no edges at this threshold")
    return build_graph(np.concatenate(chunks), coords=pts)


def generate_regular_random(n, d, seed=0, max_restarts=50000):
    """Random d-regular graph via configuration-model stub pairing.

    Pairings producing self-loops or multi-edges are rejected wholesale and
    redrawn, up to ``max_restarts`` attempts.
    """
    n, d = int(n), int(d)
    if (n * d) % 2 != 0:
        raise GeneratorError("n * degree must be even (handshake parity)")
    if d >= n:
        raise GeneratorError("degree must be < n")
    if d < 1:
        raise GeneratorError("degree must be >= 1")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_restarts):
        perm = rng.permutation(stubs)
        a, b = perm[0::2], perm[1::2]
        if (a == b).any():
            continue
        lo, hi = np.minimum(a, b), np.maximum(a, b)
        pairs = lo * n + hi
        if len(np.unique(pairs)) != len(pairs):
            continue
        return build_graph(np.stack([a, b], axis=1))
    raise GeneratorError("restart budget exhausted without a simple pairing")


def generate_erdos_renyi(n, p, seed=0):
    """G(n, p): each unordered pair is an edge independently with probability p.

    Sparse p uses geometric skipping over the pair index space.
    """
    n = int(n)
    if not 0 < p <= 1:
        raise GeneratorError("p must be in (0, 1]")
    total = n * (n - 1) // 2
    if p >= 1.0:
        picked = np.arange(total)
    else:
        rng = np.random.default_rng(seed)
        picked = []
        idx = -1
        log1p = np.log1p(-p)
        while True:
            # skip ahead by a geometric gap
            u = rng.random()
            idx += 1 + int(np.floor(np.log(u) / log1p))
            if idx >= total:
                break
            picked.append(idx)
        picked = np.array(picked, dtype=np.int64)
    if len(picked) == 0:
        raise GeneratorError("no edges drawn; increase p or n")
    # invert the row-major upper-triangle linear index
    i = (n - 2 - np.floor(
        np.sqrt(-8.0 * picked + 4.0 * n * (n - 1) - 7) / 2.0 - 0.5)).astype(np.int64)
    j = (picked + i + 1 - i * (2 * n - i - 1) // 2).astype(np.int64)
    return build_graph(np.stack([i, j], axis=1))


def _voronoi_skeleton(seeds):
    """Graph of finite Voronoi vertices/edges of a 3D seed cloud.

    Vertices incident to the point at infinity (i.e. touching an unbounded
    ridge) are dropped.
    """
    if len(seeds) < 5:
        raise GeneratorError("need at least 5 seed points in 3D")
    vor = Voronoi(seeds)
    infinite = set()
    edges = set()
    for ridge in vor.ridge_vertices:
        if -1 in ridge:
            infinite.update(v for v in ridge if v >= 0)
        for a, b in zip(ridge, ridge[1:] + ridge[:1]):
            if a >= 0 and b >= 0 and a != b:
                edges.add((min(a, b), max(a, b)))
    kept_edges = [(a, b) for a, b in edges
                  if a not in infinite and b not in infinite]
    if not kept_edges:
        raise GeneratorError(
            "no finite Voronoi edges; seeds may be degenerate (cospherical)")
    return build_graph(kept_edges, coords=vor.vertices)


def generate_voronoi_homogeneous(grid_side, jitter=0.1, sphere_radius=None,
                                 seed=0):
    """Voronoi skeleton of a jittered cubic grid clipped to a sphere.

    ``jitter`` is the uniform per-axis noise amplitude as a fraction of the
    grid spacing (spacing 1).
    """
    g = int(grid_side)
    if g < 2:
        raise GeneratorError("grid side must be >= 2")
    rng = np.random.default_rng(seed)
    axes = np.arange(g, dtype=float)
    pts = np.stack(np.meshgrid(axes, axes, axes, indexing="ij"),
                   axis=-1).reshape(-1, 3)
    pts += rng.uniform(-jitter, jitter, size=pts.shape)
    center = np.full(3, (g - 1) / 2.0)
    if sphere_radius is None:
        sphere_radius = (g - 1) / 2.0
    keep = np.linalg.norm(pts - center, axis=1) <= sphere_radius
    return _voronoi_skeleton(pts[keep])


def generate_voronoi_polar(n1, n2, center1=(-3.0, 0.0, 0.0), sigma1=0.5,
                           center2=(3.0, 0.0, 0.0), sigma2=2.0, seed=0):
    """Voronoi skeleton of the union of two 3D Gaussian seed clouds."""
    rng = np.random.default_rng(seed)
    c1 = rng.normal(loc=center1, scale=sigma1, size=(int(n1), 3))
    c2 = rng.normal(loc=center2, scale=sigma2, size=(int(n2), 3))
    return _voronoi_skeleton(np.vstack([c1, c2]))


def generate(family: str, seed: int = 0, **params) -> SparseGraph:
    """Dispatch by family name; see the individual generators for params."""
    if family == "city":
        return generate_city(seed=seed, **params)
    if family == "city_hcn":
        params = {**CITY_HCN_PRESET, **params}
        return generate_city(seed=seed, **params)
    if family == "city_pcn":
        params = {**CITY_PCN_PRESET, **params}
        return generate_city(seed=seed, **params)
    if family == "geometric":
        return generate_geometric(seed=seed, **params)
    if family == "regular_random":
        return generate_regular_random(seed=seed, **params)
    if family == "erdos_renyi":
        return generate_erdos_renyi(seed=seed, **params)
    if family == "voronoi3d_homogeneous":
        return generate_voronoi_homogeneous(seed=seed, **params)
    if family == "voronoi3d_polar":
        return generate_voronoi_polar(seed=seed, **params)
    raise GeneratorError(f"unknown family {family!r}")
