"""Small named cubic graphs used as seeds, fixtures and test material."""

from __future__ import annotations

from .graphs import CubicGraph, from_adjacency


def petersen() -> CubicGraph:
    """Outer 5-cycle 0..4, spokes i--i+5, inner pentagram on 5..9."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CubicGraph(10, edges)


def complete_k4() -> CubicGraph:
    return CubicGraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


def k33() -> CubicGraph:
    return CubicGraph(6, [(i, 3 + j) for i in range(3) for j in range(3)])


def prism() -> CubicGraph:
    """Triangular prism (colourable, girth 3)."""
    return CubicGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5),
                          (0, 3), (1, 4), (2, 5)])


def cube() -> CubicGraph:
    """3-cube (bipartite, girth 4)."""
    edges = []
    for v in range(8):
        for bit in range(3):
            w = v ^ (1 << bit)
            if v < w:
                edges.append((v, w))
    return CubicGraph(8, edges)


def heawood() -> CubicGraph:
    """Heawood graph: bipartite, girth 6, colourable."""
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(14) if i % 2 == 0]
    return from_adjacency_from_edges(14, edges)


def from_adjacency_from_edges(n: int, edges) -> CubicGraph:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return from_adjacency(adj)


def flower_snark(k: int = 5) -> CubicGraph:
    """Flower snark J_k for odd k >= 5 (order 4k, girth 5 for k=5).

    Star centres h_i with leaves a_i, b_i, c_i; the a's form a k-cycle and
    the b's and c's a single 2k-cycle crossing over at the seam.
    """
    if k < 5 or k % 2 == 0:
        raise ValueError("flower snark needs odd k >= 5")
    h = lambda i: 4 * i
    a = lambda i: 4 * i + 1
    b = lambda i: 4 * i + 2
    c = lambda i: 4 * i + 3
    edges = []
    for i in range(k):
        edges += [(h(i), a(i)), (h(i), b(i)), (h(i), c(i))]
        edges.append((a(i), a((i + 1) % k)))
    for i in range(k - 1):
        edges.append((b(i), b(i + 1)))
        edges.append((c(i), c(i + 1)))
    edges.append((b(k - 1), c(0)))
    edges.append((c(k - 1), b(0)))
    return from_adjacency_from_edges(4 * k, edges)


def theta_graph() -> CubicGraph:
    """Two vertices joined by three parallel edges."""
    return CubicGraph(2, [(0, 1), (0, 1), (0, 1)])


def digon_block() -> CubicGraph:
    """4 vertices: a digon whose endpoints attach to a second digon."""
    return CubicGraph(4, [(0, 1), (0, 1), (0, 2), (1, 3), (2, 3), (2, 3)])
