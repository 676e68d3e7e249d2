"""Centrality suite on a small spatial network.

Computes all five measures on a random geometric graph and prints the
top-ranked nodes per measure (min-max normalized scores).
"""
import numpy as np

from datlas import (betweenness, closeness, eigenvector_centrality, gmfpt,
                    largest_connected_component, max_remoteness)
from datlas.generators import generate_geometric

g, _ = largest_connected_component(
    generate_geometric(200, sigma=1.0, r=0.3, seed=3))
print(f"graph: n={g.n} m={g.m}")

for scores in (betweenness(g), closeness(g), max_remoteness(g),
               eigenvector_centrality(g), gmfpt(g)):
    top = np.argsort(scores.normalized)[::-1][:5]
    vals = np.round(scores.normalized[top], 3)
    extra = f" (n_cut={scores.params['n_cut']})" if scores.params else ""
    print(f"{scores.measure:15s} top nodes {top.tolist()} "
          f"scores {vals.tolist()}{extra}")
