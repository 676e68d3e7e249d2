import numpy as np
import pytest

from datlas import build_graph, largest_connected_component
from datlas.generators import generate_erdos_renyi


def complete_graph(n):
    return build_graph([(i, j) for i in range(n) for j in range(i + 1, n)])


def path_graph(n):
    return build_graph([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return build_graph([(i, (i + 1) % n) for i in range(n)])


def star_graph(n):
    """Star on n nodes: center 0, n-1 leaves."""
    return build_graph([(0, i) for i in range(1, n)])


def triangle_with_pendant():
    """Triangle {0,1,2} plus pendant node 3 attached to 0."""
    return build_graph([(0, 1), (1, 2), (0, 2), (0, 3)])


def barbell_graph(clique=10):
    """Two cliques joined by a single bridge edge."""
    edges = [(i, j) for i in range(clique) for j in range(i + 1, clique)]
    edges += [(clique + i, clique + j)
              for i in range(clique) for j in range(i + 1, clique)]
    edges.append((0, clique))
    return build_graph(edges)


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + spokes + inner)


def random_connected_graph(n, p, seed, ensure_nonbipartite=True):
    """Largest component of G(n, p); a triangle is appended if needed to
    break bipartiteness."""
    g = generate_erdos_renyi(n, p, seed=seed)
    g, _ = largest_connected_component(g)
    if ensure_nonbipartite:
        from scipy.sparse.csgraph import connected_components
        # bipartite iff the symmetrized spectrum contains -1; cheap test via
        # 2-coloring
        color = np.full(g.n, -1)
        color[0] = 0
        stack = [0]
        bip = True
        while stack and bip:
            u = stack.pop()
            for v in g.neighbors(u):
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    bip = False
                    break
        if bip:
            edges = [tuple(e) for e in g.edge_array()]
            u = g.n
            edges += [(0, u), (u, u + 1), (u + 1, 0)]
            g = build_graph(edges)
    return g


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def p3():
    return path_graph(3)
