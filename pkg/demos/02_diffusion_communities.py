"""Diffusion embedding, diffusion distances, and k-means communities.

Uses a barbell graph (two 10-cliques joined by one edge), where the two
lobes are the natural diffusion communities at the relaxation time.
"""
import numpy as np

from datlas import (build_basis, build_graph, cheeger_mixing,
                    community_features, diffusion_distance2, embed,
                    kmeans_diffusion, relaxation_time, time_grid)

clique = 10
edges = [(i, j) for i in range(clique) for j in range(i + 1, clique)]
edges += [(clique + i, clique + j)
          for i in range(clique) for j in range(i + 1, clique)]
edges.append((0, clique))
g = build_graph(edges)

basis = build_basis(g, K=g.n)
tau, tau_ceil = relaxation_time(basis)
emb = embed(basis, tau_ceil)
print(f"barbell: n={g.n} tau={tau:.1f}")

same = diffusion_distance2(emb, 1, 2)
across = diffusion_distance2(emb, 1, clique + 1)
print(f"squared diffusion distance within lobe {same:.3e}, "
      f"across lobes {across:.3e}")

part = kmeans_diffusion(emb, 2, seed=0)
print(f"k-means labels: {part.labels.tolist()}")
for c in range(2):
    print(f"community {c}: size {part.sizes[c]}, "
          f"Cheeger mixing {cheeger_mixing(g, part, c):.4f}")

feats = community_features(g, basis, part, time_grid(tau_ceil))
print("entry probability series (community 0):",
      np.round(feats.p_in[:5, 0], 5))
print("asymptotic limits p_in:", np.round(feats.p_in_limit, 5))
print("heterogeneity summary:", feats.summary)
