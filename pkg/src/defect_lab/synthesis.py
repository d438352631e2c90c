"""Synthesis of defect-3 snarks with removable trivia, for stress-testing
the reduction calculus.

Square insertion across two equally coloured simply covered edges keeps the
defect at 3: the witness array extends over the new quadrilateral, and a
proper colouring of the enlarged graph would force all four stub colours
equal and collapse back to a colouring of the original snark.
"""

from __future__ import annotations

import random
from typing import Optional, Sequence

from .errors import PreconditionError
from .colouring import colourable
from .arrays import ThreeArray, defect_is_three
from .graphs import CubicGraph, Cycle, cycle_boundary
from .clusters import inflate_vertex, three_sum, two_sum
from .named import complete_k4, cube, k33, prism


def insert_square_disjoint(g: CubicGraph, e: int, f: int) -> CubicGraph:
    """Split edges e and f and wire a quadrilateral across the four stubs.

    The halves of e land on opposite corners (likewise f), which is what
    makes a colouring of the result collapse to one of g.
    """
    a, b = g.edges[e]
    c, d = g.edges[f]
    if len({a, b, c, d}) != 4 or None in (a, b, c, d):
        raise PreconditionError("edges must be disjoint full edges")
    n = g.n
    p, q, r, s = n, n + 1, n + 2, n + 3
    edges = [ge for i, ge in enumerate(g.edges) if i not in (e, f)]
    edges += [(a, p), (b, r), (c, q), (d, s)]
    edges += [(p, q), (q, r), (r, s), (s, p)]
    return CubicGraph(n + 4, edges, g.free_loops)


def insert_diamond(g: CubicGraph, e: int) -> CubicGraph:
    """Expand one edge into a ladder gadget (K4 minus an edge).

    The gadget forces its two pendant edges to share a colour, so the result
    is a snark exactly when g is, and a witness array extends over it with
    every new edge simply covered: the defect stays 3.
    """
    u, v = g.edges[e]
    if u is None or v is None or u == v:
        raise PreconditionError("diamond insertion needs a proper non-loop edge")
    n = g.n
    p, q, r, s = n, n + 1, n + 2, n + 3
    edges = [ge for i, ge in enumerate(g.edges) if i != e]
    edges += [(u, p), (v, r), (p, q), (q, r), (r, s), (s, p), (q, s)]
    return CubicGraph(n + 4, edges, g.free_loops)


def insert_square_on_core(g: CubicGraph, core: Cycle, position: int) -> CubicGraph:
    """Grow a quadrilateral that meets the witness core in one uncovered edge.

    ``position`` indexes an uncovered edge of the hexagonal core; the two
    boundary edges at its endpoints are split crosswise and bridged.
    """
    v1 = core.vertices[position]
    v2 = core.vertices[(position + 1) % 6]
    boundary = cycle_boundary(g, core)
    g1 = boundary[position]
    g2 = boundary[(position + 1) % 6]
    w1 = g.other_end(g1, v1)
    w2 = g.other_end(g2, v2)
    if w1 is None or w2 is None:
        raise PreconditionError("core boundary edges must be full edges")
    n = g.n
    u1, u2 = n, n + 1
    edges = [ge for i, ge in enumerate(g.edges) if i not in (g1, g2)]
    edges += [(v1, u1), (u2, w1), (v2, u2), (u1, w2), (u1, u2)]
    return CubicGraph(n + 2, edges, g.free_loops)


COLOURABLE_BLOCKS = (complete_k4, k33, prism, cube)


def random_df3_composition(seed_graph: CubicGraph, steps: int,
                           rng: random.Random) -> Optional[CubicGraph]:
    """Apply random df-3-preserving-ish operations; None when a step breaks df=3.

    Operations: 2-sum or 3-sum with a colourable block, vertex inflation,
    and the two square insertions.  The result is certified df = 3 (or
    rejected) via the hexagon fast path.
    """
    g = seed_graph
    for _ in range(steps):
        op = rng.choice(("two_sum", "three_sum", "inflate", "diamond",
                         "square", "square_core"))
        if op == "diamond":
            g2 = insert_diamond(g, rng.randrange(g.m))
        elif op == "two_sum":
            block = rng.choice(COLOURABLE_BLOCKS)()
            g2 = two_sum(g, rng.randrange(g.m), block,
                         rng.randrange(block.m), rng.randrange(2))
        elif op == "three_sum":
            block = rng.choice(COLOURABLE_BLOCKS)()
            perm = list(range(3))
            rng.shuffle(perm)
            g2 = three_sum(g, rng.randrange(g.n), block,
                           rng.randrange(block.n), tuple(perm))
        elif op == "inflate":
            g2 = inflate_vertex(g, rng.randrange(g.n))
        else:
            witness = defect_is_three(g)
            if witness is None:
                return None
            core, arr = witness
            if op == "square_core":
                w = arr.weight
                positions = [i for i in range(6) if w[core.edges[i]] == 0]
                g2 = insert_square_on_core(g, core, rng.choice(positions))
            else:
                w = arr.weight
                by_colour: dict[tuple[int, ...], list[int]] = {}
                for e in range(g.m):
                    if w[e] == 1:
                        by_colour.setdefault(arr.colour_list(e), []).append(e)
                choices = []
                for es in by_colour.values():
                    for i, e in enumerate(es):
                        for f in es[i + 1:]:
                            if len(set(g.edges[e] + g.edges[f])) == 4:
                                choices.append((e, f))
                if not choices:
                    return None
                e, f = rng.choice(choices)
                g2 = insert_square_disjoint(g, e, f)
        if colourable(g2):
            return None
        g = g2
    if defect_is_three(g) is None:
        return None
    return g


def synthesize_df3_pool(seeds: Sequence[CubicGraph], count: int,
                        rng: random.Random, max_steps: int = 3,
                        max_order: int = 30) -> list[CubicGraph]:
    """A pool of distinct df-3 snarks with small cuts / short cycles."""
    pool: list[CubicGraph] = []
    seen: set = set()
    attempts = 0
    while len(pool) < count and attempts < 50 * count:
        attempts += 1
        seed = seeds[rng.randrange(len(seeds))]
        g = random_df3_composition(seed, rng.randrange(1, max_steps + 1), rng)
        if g is None or g.n > max_order:
            continue
        key = (g.n, g.edges)
        if key in seen:
            continue
        seen.add(key)
        pool.append(g)
    return pool
