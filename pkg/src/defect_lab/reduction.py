"""Reductions of defect-3 snarks: 2-cuts, cycle-separating 3-cuts, 4-cycles,
and the normal form they lead to.

Every reduction step preserves defect 3 and, except for triangle
contractions, inherits a hexagonal core edge-by-edge; both facts are
re-verified after each step and a failure raises ConsistencyError, since it
would falsify a proven statement.  The only obstruction to full reduction is
an essential triangle: one whose contraction pushes the defect above 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ConsistencyError, PreconditionError
from .colouring import colourable
from .arrays import (
    ThreeArray,
    array_from_extension,
    defect,
    defect_is_three,
    hexagon_extension,
)
from .graphs import (
    CubicGraph,
    Cycle,
    EdgeCut,
    Surgery,
    components,
    cycle_boundary,
    cycles_of_length,
    find_all_cycle_separating_cuts,
    find_cycle_separating_cut,
    girth,
    induced_cycles,
    is_cyclically_k_connected,
    map_cycle,
    surgery,
)

TWO_CUT = "two_cut"
THREE_CUT = "three_cut"
FOUR_CYCLE_DISJOINT = "four_cycle_disjoint"
FOUR_CYCLE_MEETING = "four_cycle_meeting"
TRIANGLE_CONTRACTION = "triangle_contraction"

NONTRIVIAL = "nontrivial_defect3"
ESSENTIAL_TRIANGLE_FORM = "essential_triangle_form"


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    cut_or_cycle: tuple[int, ...]  # edge ids in the before-graph
    before: CubicGraph
    after: CubicGraph
    core_inherited: bool

    def describe(self) -> str:
        return (f"{self.kind} edges={sorted(self.cut_or_cycle)} "
                f"order {self.before.n} -> {self.after.n} "
                f"core_inherited={self.core_inherited}")


@dataclass(frozen=True)
class EssentialTriangleObstruction:
    """A cycle-separating 3-cut whose colourable side is an essential triangle."""

    triangle_vertices: tuple[int, ...]
    triangle_edges: tuple[int, ...]
    cut: tuple[int, ...]


@dataclass(frozen=True)
class NormalForm:
    graph: CubicGraph
    status: str  # NONTRIVIAL or ESSENTIAL_TRIANGLE_FORM
    essential_triangle: Optional[tuple[int, ...]]  # vertices in the final graph
    trace: tuple[ReductionStep, ...]


# ---------------------------------------------------------------------------
# witnesses and verification helpers
# ---------------------------------------------------------------------------


def _witness_core(g: CubicGraph):
    """First hexagonal core of g, as (cycle, variant, extension, array).

    Requires df(g) = 3; raises PreconditionError otherwise."""
    for c in induced_cycles(g, 6):
        for variant in ("odd", "even"):
            ext = hexagon_extension(g, c, variant)
            if ext is not None:
                return c, variant, ext, array_from_extension(g, c, variant, ext)
    raise PreconditionError("graph has no hexagonal core, so its defect is not 3")


def _core_hexagons_avoiding(g: CubicGraph, banned_edges: frozenset[int],
                            banned_vertices: frozenset[int] = frozenset()):
    """Yield (cycle, variant, extension) for core hexagons avoiding the bans."""
    for c in induced_cycles(g, 6):
        if c.edge_set & banned_edges or c.vertex_set & banned_vertices:
            continue
        for variant in ("odd", "even"):
            ext = hexagon_extension(g, c, variant)
            if ext is not None:
                yield c, variant, ext


def _assert_core_survives(s: Surgery, c: Cycle, variant: str, context: str) -> None:
    img = map_cycle(s, c)
    if hexagon_extension(s.graph, img, variant) is None:
        raise ConsistencyError(f"{context}: witness core is not inherited")


def verify_defect_three(g: CubicGraph, context: str) -> None:
    """Fast-path re-verification that df(g) = 3, brute force in the error path."""
    if colourable(g):
        raise ConsistencyError(f"{context}: result is colourable")
    if defect_is_three(g) is None:
        value, _ = defect(g)
        raise ConsistencyError(f"{context}: result has defect {value}, expected 3")


def _independent(g: CubicGraph, edge_ids) -> bool:
    seen: set[int] = set()
    for e in edge_ids:
        u, v = g.edges[e]
        for x in (u, v):
            if x is None or x in seen:
                return False
            seen.add(x)
    return True


# ---------------------------------------------------------------------------
# the three reduction operations
# ---------------------------------------------------------------------------


def reduce_two_cut(g: CubicGraph, r: EdgeCut) -> ReductionStep:
    """Keep the side carrying the hexagonal core; join its two stubs.

    The witness core must avoid the cut; the completion of the core side has
    defect 3 with the same core, and the other side's completion is
    colourable.
    """
    cut = sorted(r.edges)
    if len(cut) != 2:
        raise PreconditionError("reduce_two_cut needs a 2-edge cut")
    sides = components(g, removed_edges=cut)
    if len(sides) != 2:
        raise PreconditionError("the 2 edges do not form a 2-cut")
    core, variant, _ext, _arr = _witness_core(g)
    if core.edge_set & set(cut):
        raise ConsistencyError("a hexagonal core meets a 2-cut")
    core_side = next((s for s in sides if core.vertex_set <= s), None)
    if core_side is None:
        raise ConsistencyError("witness core straddles the 2-cut")
    other = next(s for s in sides if s is not core_side)

    def completion(drop: set[int]) -> Surgery:
        return surgery(g, drop_vertices=drop, joins=[tuple(cut)])

    s_keep = completion(other)
    s_other = completion(core_side)
    if colourable(s_keep.graph):
        raise ConsistencyError("core side completion is colourable")
    if not colourable(s_other.graph):
        raise ConsistencyError("both sides of a 2-cut are uncolourable at defect 3")
    _assert_core_survives(s_keep, core, variant, "two-cut reduction")
    verify_defect_three(s_keep.graph, "two-cut reduction")
    return ReductionStep(TWO_CUT, tuple(cut), g, s_keep.graph, True)


def reduce_three_cut(g: CubicGraph, r: EdgeCut):
    """Reduce along a cycle-separating 3-cut.

    Returns a ReductionStep, or an EssentialTriangleObstruction when the
    distinguished colourable component is an essential triangle.
    """
    cut = sorted(r.edges)
    if len(cut) != 3:
        raise PreconditionError("reduce_three_cut needs a 3-edge cut")
    if not _independent(g, cut):
        raise PreconditionError("cut is not independent; reduce a smaller cut first")
    sides = components(g, removed_edges=cut)
    if len(sides) != 2:
        raise PreconditionError("the 3 edges do not form a cut")

    # Case 1: some optimal core avoids the cut entirely
    for c, variant, _ext in _core_hexagons_avoiding(g, frozenset(cut)):
        side_with_core = next(s for s in sides if c.vertex_set <= s)
        other = next(s for s in sides if s is not side_with_core)
        s_new = surgery(g, drop_vertices=other, cap=tuple(cut))
        _assert_core_survives(s_new, c, variant, "three-cut reduction (case 1)")
        verify_defect_three(s_new.graph, "three-cut reduction (case 1)")
        return ReductionStep(THREE_CUT, tuple(cut), g, s_new.graph, True)

    # Case 2: every core meets the cut in two doubly covered edges around a
    # single uncovered edge inside the colourable component Q
    c, variant, ext, arr = _witness_core(g)
    on_cut = [i for i in range(6) if c.edges[i] in cut]
    if len(on_cut) != 2:
        raise ConsistencyError("core meets a 3-cut in other than 2 edges")
    a, b = on_cut
    if (b - a) % 6 not in (2, 4):
        raise ConsistencyError("cut edges are adjacent on the core hexagon")
    mid = (a + 1) % 6 if (b - a) % 6 == 2 else (b + 1) % 6
    w = arr.weight
    if w[c.edges[mid]] != 0 or any(w[c.edges[i]] != 2 for i in on_cut):
        raise ConsistencyError("covering pattern around the cut is wrong")
    mid_edge = c.edges[mid]
    q_side = next(s for s in sides if c.vertices[mid] in s)
    if c.vertices[(mid + 1) % 6] not in q_side:
        raise ConsistencyError("uncovered middle edge straddles the cut")

    if len(q_side) == 3:
        tri = sorted(q_side)
        tri_edges = tuple(sorted(i for i, (u, v) in enumerate(g.edges)
                                 if u in q_side and v in q_side))
        contracted = surgery(g, drop_vertices=q_side, cap=tuple(cut))
        if defect_is_three(contracted.graph) is None:
            return EssentialTriangleObstruction(tuple(tri), tri_edges, tuple(cut))
        verify_defect_three(contracted.graph, "three-cut reduction (triangle)")
        return ReductionStep(THREE_CUT, tuple(cut), g, contracted.graph, False)

    # Q is larger: shift the cut to isolate a fresh triangle around mid_edge
    v1 = c.vertices[mid]
    v2 = c.vertices[(mid + 1) % 6]
    boundary = cycle_boundary(g, c)
    f1 = boundary[mid]
    f2 = boundary[(mid + 1) % 6]
    r3 = next(e for e in cut if e not in c.edge_set)
    new_cut = (f1, f2, r3)
    pieces = components(g, removed_edges=new_cut)
    hold = next(p for p in pieces if v1 in p)
    if v2 not in hold:
        raise ConsistencyError("shifted cut separates the uncovered edge")
    k_prime = [p for p in pieces if p is not hold]
    if len(k_prime) != 1:
        raise ConsistencyError("shifted cut does not leave two components")
    s_new = surgery(g, drop_vertices=k_prime[0], cap=new_cut)
    _assert_core_survives(s_new, c, variant, "three-cut reduction (case 2)")
    verify_defect_three(s_new.graph, "three-cut reduction (case 2)")
    return ReductionStep(THREE_CUT, tuple(cut), g, s_new.graph, True)


def reduce_four_cycle(g: CubicGraph, d: Cycle) -> ReductionStep:
    """Reduce a quadrilateral with independent boundary.

    Disjoint case: remove the 4-cycle and join the equally coloured stub
    pairs.  Meeting case: every core hexagon crosses the quadrilateral in
    one uncovered edge; remove the two off-core vertices and join crosswise.
    """
    if len(d) != 4:
        raise PreconditionError("reduce_four_cycle needs a 4-cycle")
    boundary = cycle_boundary(g, d)
    if not _independent(g, boundary):
        raise PreconditionError(
            "quadrilateral boundary is not independent; reduce a cut first")

    for c, variant, ext in _core_hexagons_avoiding(
            g, frozenset(), banned_vertices=d.vertex_set):
        cols = {e: ext[e] for e in boundary}
        groups: dict[int, list[int]] = {}
        for e in sorted(boundary):
            groups.setdefault(cols[e], []).append(e)
        if any(len(v) % 2 for v in groups.values()):
            raise ConsistencyError("stub colours around a 4-cycle do not pair up")
        joins = []
        for _col, es in sorted(groups.items()):
            for i in range(0, len(es), 2):
                joins.append((es[i], es[i + 1]))
        s_new = surgery(g, drop_vertices=d.vertex_set, joins=joins)
        _assert_core_survives(s_new, c, variant, "four-cycle reduction (disjoint)")
        verify_defect_three(s_new.graph, "four-cycle reduction (disjoint)")
        return ReductionStep(FOUR_CYCLE_DISJOINT, tuple(d.edges), g,
                             s_new.graph, True)

    c, variant, ext, _arr = _witness_core(g)
    return _reduce_four_cycle_meeting(g, d, c, variant, ext)


def _reduce_four_cycle_meeting(g: CubicGraph, d: Cycle, c: Cycle,
                               variant: str, ext) -> ReductionStep:
    """The meeting-case surgery for a core hexagon crossing the quadrilateral."""
    common = sorted(c.edge_set & d.edge_set)
    if len(common) != 1:
        raise ConsistencyError(
            f"core meets the quadrilateral in {len(common)} edges, expected 1")
    arr = array_from_extension(g, c, variant, ext)
    w = arr.weight
    mid_edge = common[0]
    if w[mid_edge] != 0:
        raise ConsistencyError("common edge of core and quadrilateral is covered")
    u1v, u2v = g.edges[mid_edge]
    others = sorted(d.vertex_set - {u1v, u2v})
    if len(others) != 2:
        raise ConsistencyError("quadrilateral does not have two off-core vertices")
    u1, u2 = others
    # D-edges touching the off-core vertices
    f_of: dict[int, int] = {}
    r_of: dict[int, int] = {}
    d1 = None
    for e in d.edges:
        x, y = g.edges[e]
        if {x, y} == {u1, u2}:
            d1 = e
    if d1 is None:
        raise ConsistencyError("off-core vertices are not adjacent on the quadrilateral")
    for u in (u1, u2):
        f = next(e for e in d.edges if e != d1 and u in g.edges[e])
        f_of[u] = f
        r_of[u] = next(e for e, _ in g.ends_at(u) if e not in (f, d1))
    # covering pattern: the two core edges entering the quadrilateral are
    # doubly covered, the two outer stubs simply covered
    core_entries = [e for e in cycle_boundary(g, d) if e in c.edge_set]
    if sorted(w[e] for e in core_entries) != [2, 2]:
        raise ConsistencyError("core edges at the quadrilateral are not doubly covered")
    if sorted(w[r_of[u]] for u in (u1, u2)) != [1, 1]:
        raise ConsistencyError("outer stubs of the quadrilateral are not simply covered")
    # crosswise junction keeps the colours aligned
    if ext[f_of[u1]] != ext[r_of[u2]] or ext[f_of[u2]] != ext[r_of[u1]]:
        raise ConsistencyError("crosswise stub colours disagree")
    s_new = surgery(g, drop_vertices={u1, u2},
                    joins=[(f_of[u1], r_of[u2]), (f_of[u2], r_of[u1])])
    _assert_core_survives(s_new, c, variant, "four-cycle reduction (meeting)")
    verify_defect_three(s_new.graph, "four-cycle reduction (meeting)")
    return ReductionStep(FOUR_CYCLE_MEETING, tuple(d.edges), g, s_new.graph, True)


# ---------------------------------------------------------------------------
# essential triangles and the normal form
# ---------------------------------------------------------------------------


def essential_triangles(g: CubicGraph) -> tuple[tuple[int, ...], ...]:
    """Triangles whose contraction raises the defect above 3 (at most one).

    Requires df(g) = 3.  Returns vertex triples.
    """
    from .graphs import contract

    out = []
    for t in induced_cycles(g, 3):
        contracted = contract(g, t.vertex_set)
        if colourable(contracted):
            raise ConsistencyError("triangle contraction of a snark is colourable")
        if defect_is_three(contracted) is None:
            out.append(tuple(sorted(t.vertex_set)))
    if len(out) > 1:
        raise ConsistencyError(f"found {len(out)} essential triangles, expected <= 1")
    return tuple(out)


def _lemma_4_1_checks(g: CubicGraph, core: Cycle, arr: ThreeArray) -> None:
    """Structural facts about cores and triangles, asserted on each witness.

    A hexagonal core meets at most one triangle, and any intersection is a
    single uncovered edge.
    """
    w = arr.weight
    met = 0
    for t in induced_cycles(g, 3):
        common = core.edge_set & t.edge_set
        if not common:
            continue
        met += 1
        if len(common) != 1:
            raise ConsistencyError("core meets a triangle in more than one edge")
        (e,) = common
        if w[e] != 0:
            raise ConsistencyError("core-triangle intersection is a covered edge")
    if met > 1:
        raise ConsistencyError("hexagonal core meets two distinct triangles")


def normalize(g: CubicGraph) -> NormalForm:
    """Repeated reductions to a nontrivial defect-3 snark or the triangle form.

    Order: 2-cuts, then cycle-separating 3-cuts, then quadrilaterals,
    smallest witness first.  Every step re-verifies defect 3; the loop is
    bounded because each step shrinks the graph.
    """
    core, _variant, _ext, arr = _witness_core(g)  # also certifies df(g) = 3
    _lemma_4_1_checks(g, core, arr)
    trace: list[ReductionStep] = []
    current = g
    for _ in range(max(4, g.n)):
        step = _next_step(current)
        if isinstance(step, NormalForm):
            return NormalForm(step.graph, step.status, step.essential_triangle,
                              tuple(trace))
        trace.append(step)
        if step.after.n >= current.n:
            raise ConsistencyError("reduction step failed to shrink the graph")
        current = step.after
        c2, _v2, _e2, a2 = _witness_core(current)
        _lemma_4_1_checks(current, c2, a2)
    raise ConsistencyError("normalization did not terminate")


def _next_step(current: CubicGraph):
    small = find_cycle_separating_cut(current, 2)
    if small is not None:
        if len(small.edges) == 1:
            raise PreconditionError("graph has a bridge, so it is not a snark")
        return reduce_two_cut(current, small)

    cuts3 = find_all_cycle_separating_cuts(current, 3)
    obstructions = []
    for cut in cuts3:
        res = reduce_three_cut(current, cut)
        if isinstance(res, ReductionStep):
            return res
        obstructions.append(res)

    quads = cycles_of_length(current, 4, induced=True)
    for dcyc in quads:
        if _independent(current, cycle_boundary(current, dcyc)):
            return reduce_four_cycle(current, dcyc)

    if obstructions:
        return _certify_obstruction(current, obstructions)

    if quads:
        raise ConsistencyError(
            "quadrilateral with dependent boundary but no small cut")
    gg = girth(current)
    if gg < 5:
        raise ConsistencyError(f"no reduction applies but girth is {gg}")
    if not is_cyclically_k_connected(current, 4):
        raise ConsistencyError("no reduction applies but a small cut remains")
    return NormalForm(current, NONTRIVIAL, None, ())


def _certify_obstruction(current: CubicGraph,
                         obstructions: list[EssentialTriangleObstruction]) -> NormalForm:
    from .graphs import contract

    triangles = {o.triangle_vertices for o in obstructions}
    if len(triangles) != 1:
        raise ConsistencyError("distinct essential triangles from different cuts")
    tri = next(iter(triangles))
    ess = essential_triangles(current)
    if ess != (tuple(sorted(tri)),):
        raise ConsistencyError("obstruction triangle is not the essential triangle")
    contracted = contract(current, set(tri))
    if colourable(contracted):
        raise ConsistencyError("contracted obstruction is colourable")
    if defect_is_three(contracted) is not None:
        raise ConsistencyError("obstruction triangle is not essential after all")
    if girth(contracted) < 5:
        raise ConsistencyError("contracted obstruction has girth below 5")
    if not is_cyclically_k_connected(contracted, 4):
        raise ConsistencyError("contracted obstruction is not cyclically 4-connected")
    return NormalForm(current, ESSENTIAL_TRIANGLE_FORM, tuple(sorted(tri)), ())


def trace_report(nf: NormalForm) -> str:
    lines = [f"status: {nf.status}"]
    if nf.essential_triangle:
        lines.append(f"essential triangle: {list(nf.essential_triangle)}")
    for i, step in enumerate(nf.trace):
        lines.append(f"step {i + 1}: {step.describe()}")
    lines.append(f"final order: {nf.graph.n}")
    return "\n".join(lines)
