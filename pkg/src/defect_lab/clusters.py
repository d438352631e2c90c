"""Clusters of 5-cycles, vertex inflation, sums, and explicit constructions.

The headline fact operationalised here: inflating a vertex of a nontrivial
snark with defect >= 4 produces a defect-3 snark exactly when the vertex
lies in a heavy cluster of 5-cycles (one on which removing any edge together
with its endpoints leaves the graph colourable).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConsistencyError, PreconditionError
from .colouring import (
    BoundaryCondition,
    classify_4pole,
    colourable,
    count_colourings,
    smoothed_colourable,
)
from .arrays import defect_is_three
from .graphs import (
    CubicGraph,
    Cycle,
    Multipole,
    cycles_of_length,
    delete_vertices,
    girth,
    is_cyclically_k_connected,
    is_two_connected,
    junction,
)
from .named import petersen


# ---------------------------------------------------------------------------
# 5-clusters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiveCluster:
    """A maximal connected union of 5-cycles, with its heaviness flag."""

    vertices: frozenset[int]
    edges: frozenset[int]
    cycles: tuple[Cycle, ...]
    heavy: bool


def five_clusters(g: CubicGraph, check_constancy: bool = False
                  ) -> tuple[FiveCluster, ...]:
    """All 5-clusters; heaviness via colourability of the smoothed graph.

    Clusters merge 5-cycles that share at least one vertex.  Heaviness is
    evaluated on one representative edge; ``check_constancy`` re-checks every
    edge of the cluster (they must agree).
    """
    pentagons = cycles_of_length(g, 5, induced=False)
    if not pentagons:
        return ()
    parent = list(range(len(pentagons)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[int, int] = {}
    for i, c in enumerate(pentagons):
        for v in c.vertices:
            if v in by_vertex:
                ra, rb = find(by_vertex[v]), find(i)
                if ra != rb:
                    parent[ra] = rb
            else:
                by_vertex[v] = i
    groups: dict[int, list[int]] = {}
    for i in range(len(pentagons)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for idxs in groups.values():
        cs = tuple(pentagons[i] for i in sorted(idxs))
        vs = frozenset(v for c in cs for v in c.vertices)
        es = frozenset(e for c in cs for e in c.edges)
        rep = min(es)
        heavy = smoothed_colourable(g, rep)
        if check_constancy:
            for e in sorted(es):
                if smoothed_colourable(g, e) != heavy:
                    raise ConsistencyError(
                        "heaviness is not constant on a 5-cluster")
        out.append(FiveCluster(vs, es, cs, heavy))
    out.sort(key=lambda cl: min(cl.vertices))
    return tuple(out)


# ---------------------------------------------------------------------------
# inflation and sums
# ---------------------------------------------------------------------------


def inflate_vertex(g: CubicGraph, v: int) -> CubicGraph:
    """Replace vertex ``v`` by a triangle; the three edges keep their far ends.

    The new triangle occupies the last three vertex ids, attached to v's
    former edges in edge-id order.
    """
    ends = g.ends_at(v)
    if any(g.is_loop(e) for e, _ in ends):
        raise PreconditionError("cannot inflate a vertex with a loop")
    keep = [w for w in range(g.n) if w != v]
    new_id = {w: i for i, w in enumerate(keep)}
    t = [len(keep), len(keep) + 1, len(keep) + 2]
    slot_of = {end: k for k, end in enumerate(ends)}
    new_edges = []
    for i, (a, b) in enumerate(g.edges):
        def img(x, side):
            if x is None:
                return None
            if x == v:
                return t[slot_of[(i, side)]]
            return new_id[x]
        new_edges.append((img(a, 0), img(b, 1)))
    new_edges += [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
    return CubicGraph(len(keep) + 3, new_edges, g.free_loops)


def heavy_inflation_check(k: CubicGraph, v: int) -> tuple[bool, bool]:
    """(predicted, actual) for the defect drop under inflation at ``v``.

    predicted: v lies in a heavy 5-cluster of k.  actual: the inflated graph
    has defect exactly 3.  Requires df(k) >= 4.
    """
    if colourable(k):
        raise PreconditionError("heavy_inflation_check needs a snark")
    if defect_is_three(k) is not None:
        raise PreconditionError("heavy_inflation_check needs defect >= 4")
    predicted = any(v in cl.vertices and cl.heavy for cl in five_clusters(k))
    inflated = inflate_vertex(k, v)
    actual = defect_is_three(inflated) is not None
    return predicted, actual


def two_sum(g: CubicGraph, e: int, h: CubicGraph, f: int,
            pairing: int = 0) -> CubicGraph:
    """Delete edge e of g and f of h; connect the 2-valent vertices crosswise.

    ``pairing`` in {0, 1} selects which of the two cross matchings is used.
    """
    a, b = g.edges[e]
    c, d = h.edges[f]
    if a is None or b is None or a == b or c is None or d is None or c == d:
        raise PreconditionError("2-sum operands must be proper non-loop edges")
    shift = g.n
    edges = [ge for i, ge in enumerate(g.edges) if i != e]
    edges += [(x + shift if x is not None else None,
               y + shift if y is not None else None)
              for i, (x, y) in enumerate(h.edges) if i != f]
    if pairing == 0:
        edges += [(a, c + shift), (b, d + shift)]
    else:
        edges += [(a, d + shift), (b, c + shift)]
    return CubicGraph(g.n + h.n, edges, g.free_loops + h.free_loops)


def three_sum(g: CubicGraph, u: int, h: CubicGraph, v: int,
              matching: Sequence[int] = (0, 1, 2)) -> CubicGraph:
    """Remove u from g and v from h; join the stubs with three edges.

    ``matching`` is a permutation: the i-th edge end at u (in edge order)
    meets the matching[i]-th edge end at v.
    """
    if sorted(matching) != [0, 1, 2]:
        raise PreconditionError("matching must be a permutation of (0, 1, 2)")
    for gr, w in ((g, u), (h, v)):
        if any(gr.is_loop(e) for e, _ in gr.ends_at(w)):
            raise PreconditionError("3-sum endpoints must be loopless")
    gu = [g.other_end(e, u) for e, _ in g.ends_at(u)]
    hv = [h.other_end(e, v) for e, _ in h.ends_at(v)]
    keep_g = [w for w in range(g.n) if w != u]
    keep_h = [w for w in range(h.n) if w != v]
    gid = {w: i for i, w in enumerate(keep_g)}
    hid = {w: len(keep_g) + i for i, w in enumerate(keep_h)}
    edges = []
    for i, (a, b) in enumerate(g.edges):
        if u in (a, b):
            continue
        edges.append((None if a is None else gid[a],
                      None if b is None else gid[b]))
    for i, (a, b) in enumerate(h.edges):
        if v in (a, b):
            continue
        edges.append((None if a is None else hid[a],
                      None if b is None else hid[b]))
    for i in range(3):
        edges.append((gid[gu[i]], hid[hv[matching[i]]]))
    return CubicGraph(g.n + h.n - 2, edges, g.free_loops + h.free_loops)


def relabel_connectors(m: Multipole, mapping: dict[str, str]) -> Multipole:
    return Multipole(m.graph, tuple((mapping.get(n, n), s) for n, s in m.connectors))


# ---------------------------------------------------------------------------
# the Z hexapole and the G_n construction
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZPole:
    """The (2,2,2)-pole cut out of the Petersen graph.

    A hub vertex on a 9-cycle (spokes at distance 3) with the three
    remaining chords severed; severing order around the ring fixes the
    connectors S0, S1, S2, each holding the two halves of one chord.
    """

    pole: Multipole
    hub: int
    hub_edges: tuple[int, int, int]
    ring_edges: tuple[int, ...]


def build_z_hexapole() -> ZPole:
    ring = [(i, (i + 1) % 9) for i in range(9)]          # edges 0..8
    spokes = [(9, 0), (9, 3), (9, 6)]                     # edges 9..11
    # severed chord halves, in ring order: S0 at 1 and 5, S1 at 4 and 8,
    # S2 at 7 and 2
    dangles = [(1, None), (2, None), (4, None), (5, None), (7, None), (8, None)]
    g = CubicGraph(10, ring + spokes + dangles)
    sems = g.semiedges()
    at_vertex = {g.edges[e][0]: i for i, (e, _side) in enumerate(sems)}
    connectors = (
        ("S0", (at_vertex[1], at_vertex[5])),
        ("S1", (at_vertex[4], at_vertex[8])),
        ("S2", (at_vertex[7], at_vertex[2])),
    )
    pole = Multipole(g, connectors)
    return ZPole(pole, hub=9, hub_edges=(9, 10, 11), ring_edges=tuple(range(9)))


def rejoin_z(z: ZPole) -> CubicGraph:
    """Close the Z pole by rejoining each connector's two halves."""
    out = z.pole
    pairs = [tuple(z.pole.connector(f"S{i}")) for i in range(3)]
    closed = junction(z.pole, None, pairs)
    if not isinstance(closed, CubicGraph):
        raise ConsistencyError("rejoined Z pole still has semiedges")
    return closed


@dataclass(frozen=True)
class GnConstruction:
    graph: CubicGraph
    z_vertices: frozenset[int]
    z_internal_edges: frozenset[int]
    wiring: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    input_pairings: tuple[int, ...]


def _output_wirings():
    """All matchings of the six output stubs whose connector graph is a triangle."""
    out = []
    for a1 in range(2):          # out0[0] meets out1[a1]
        for b1 in range(2):      # out0[1] meets out2[b1]
            for c1 in range(2):  # out1[1-a1] meets out2[1-b1]; c1 picks order
                w = (((0, 0), (1, a1)),
                     ((0, 1), (2, b1)),
                     ((1, 1 - a1), (2, 1 - b1)))
                if c1 == 0:
                    out.append(w)
    # c1 adds nothing: the third pair is forced; dedupe
    uniq = []
    for w in out:
        if w not in uniq:
            uniq.append(w)
    return tuple(uniq)


def certify_isochromatic(m: Multipole) -> tuple[str, str]:
    """Return (input connector, output connector) names for a (2,2)-pole.

    The pole must have exactly two connectors of size two, and the first one
    (the designated input) must be a forced-equal pair in every colouring.
    """
    if m.connector_sizes() != (2, 2) or m.n_semiedges != 4:
        raise PreconditionError("a (2,2)-pole is required")
    cls = classify_4pole(m)
    if cls.kind != "isochromatic":
        raise PreconditionError(f"pole is {cls.kind}, not isochromatic")
    (in_name, in_sems), (out_name, _out_sems) = m.connectors
    want = tuple(sorted(in_sems))
    for p in cls.pairings:
        if want in (tuple(sorted(p[0])), tuple(sorted(p[1]))):
            return in_name, out_name
    raise PreconditionError("input connector is not a forced-equal pair")


def build_gn(poles: Sequence[Multipole], wiring=None) -> GnConstruction:
    """Join three certified isochromatic (2,2)-poles onto the Z hexapole.

    The input connector of pole j meets S_j; the six output stubs are closed
    by a matching in which each output connector reaches the two other
    output connectors.  With ``wiring=None`` the lexicographically first
    wiring whose result is a cyclically 4-edge-connected girth-5 snark with
    a heavy Z cluster is chosen.
    """
    if len(poles) != 3:
        raise PreconditionError("exactly three poles are required")
    io = [certify_isochromatic(p) for p in poles]
    z = build_z_hexapole()
    combined = z.pole
    for j, (p, (in_name, out_name)) in enumerate(zip(poles, io)):
        p2 = relabel_connectors(p, {in_name: f"in{j}", out_name: f"out{j}"})
        s_sems = combined.connector(f"S{j}")
        in_sems = p2.connector(f"in{j}")
        combined = junction(combined, p2,
                            [(s_sems[0], in_sems[0]), (s_sems[1], in_sems[1])])

    candidates = _output_wirings() if wiring is None else (wiring,)
    last_error = None
    for w in candidates:
        pairs = []
        for (ja, ta), (jb, tb) in w:
            pairs.append((combined.connector(f"out{ja}")[ta],
                          combined.connector(f"out{jb}")[tb]))
        closed = junction(combined, None, pairs)
        if not isinstance(closed, CubicGraph):
            raise ConsistencyError("wiring left open stubs")
        built = GnConstruction(
            graph=closed,
            z_vertices=frozenset(range(10)),
            z_internal_edges=frozenset(range(12)),
            wiring=w,
            input_pairings=(0, 0, 0),
        )
        problem = _quick_gn_validation(built)
        if problem is None:
            return built
        last_error = problem
    raise PreconditionError(f"no output wiring validates: {last_error}")


def _quick_gn_validation(built: GnConstruction) -> Optional[str]:
    g = built.graph
    if colourable(g):
        return "result is colourable"
    if not is_two_connected(g):
        return "result is not 2-connected"
    if girth(g) < 5:
        return "girth below 5"
    if not is_cyclically_k_connected(g, 4):
        return "not cyclically 4-edge-connected"
    cl = [c for c in five_clusters(g) if built.z_vertices <= c.vertices]
    if not cl:
        return "no 5-cluster contains the Z block"
    if not cl[0].heavy:
        return "Z cluster is not heavy"
    return None


def petersen_isochromatic_pole() -> Multipole:
    """Petersen minus two adjacent vertices, connectors = the former stars."""
    pg = petersen()
    return delete_vertices(pg, {0, 1})


def example_5_4() -> GnConstruction:
    """The 34-vertex nontrivial snark with defect 4 and a heavy Z cluster."""
    poles = [petersen_isochromatic_pole() for _ in range(3)]
    return build_gn(poles)


def z_all_ones_checks() -> tuple[bool, bool]:
    """(Z with all stubs coloured 1 is colourable,
        Z with the hub spoke smoothed and all stubs 1 is colourable).

    The first must be False and the second True.
    """
    z = build_z_hexapole()
    bc = BoundaryCondition.all_equal(z.pole, 1)
    whole = colourable(z.pole, bc)
    # smooth the first hub spoke inside the pole
    from .graphs import smooth_edge

    smoothed = smooth_edge(z.pole.graph, z.hub_edges[0])
    sm_pole = Multipole(smoothed,
                        ((("s"), tuple(range(len(smoothed.semiedges())))),))
    sm = colourable(sm_pole, BoundaryCondition.all_equal(sm_pole, 1))
    return whole, sm
