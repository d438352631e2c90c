"""Proper 3-edge-colourings: existence, counting, boundary-constrained search.

Colours are 1, 2, 3, identified with the nonzero elements of Z_2 x Z_2 as
1=(0,1), 2=(1,0), 3=(1,1).  At a 3-valent vertex properness is equivalent to
the three incident colours xoring to zero, which is what the propagation
below exploits: once two ends at a vertex are coloured, the third is forced.

The search engine works on any sub-cubic endpoint list, so callers can
remove edges (hexagon boundary tests) or fix edge colours (boundary
conditions on semiedges) without rebuilding graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import ConsistencyError, PreconditionError
from .graphs import (
    CubicGraph,
    Multipole,
    as_graph,
    as_multipole,
    delete_vertices,
    is_two_connected,
    smooth_edge,
)

# When enabled, every colouring found by the engine is re-verified against
# the Kirchhoff condition and, for multipoles, the boundary parity condition.
DEBUG_CHECKS = False

COLOURS = (1, 2, 3)
Z2Z2 = {1: (0, 1), 2: (1, 0), 3: (1, 1)}


@dataclass(frozen=True)
class BoundaryCondition:
    """Partial assignment of colours to semiedges (by semiedge index)."""

    fixed: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for s, c in self.fixed.items():
            if c not in COLOURS:
                raise PreconditionError(f"colour {c} not in 1..3")

    @staticmethod
    def all_equal(m: Multipole, colour: int) -> "BoundaryCondition":
        return BoundaryCondition({s: colour for s in range(m.n_semiedges)})


@dataclass(frozen=True)
class EdgeColouring:
    """A proper 3-edge-colouring, as edge -> colour in {1,2,3}."""

    assignment: tuple[int, ...]

    def __getitem__(self, e: int) -> int:
        return self.assignment[e]

    def flow_value(self, e: int) -> tuple[int, int]:
        return Z2Z2[self.assignment[e]]


class _Engine:
    """Backtracking counter with unit propagation over forced third colours."""

    __slots__ = ("ends", "incid", "deg", "colour", "used", "rem",
                 "n", "active", "limit", "witnesses", "want", "count")

    def __init__(self, n_vertices: int, endpoints: Sequence[Optional[tuple]]):
        self.n = n_vertices
        self.ends = endpoints
        self.incid: list[list[int]] = [[] for _ in range(n_vertices)]
        self.active = [i for i, e in enumerate(endpoints) if e is not None]
        for i in self.active:
            u, v = endpoints[i]
            for w in (u, v):
                if w is not None:
                    self.incid[w].append(i)
        self.deg = [len(x) for x in self.incid]
        self.colour = [0] * len(endpoints)
        self.used = [0] * n_vertices
        self.rem = list(self.deg)
        self.count = 0
        self.limit: Optional[int] = None
        self.witnesses: list[tuple[int, ...]] = []
        self.want = 0

    def _assign(self, e: int, c: int, trail: list[int]) -> bool:
        bit = 1 << (c - 1)
        u, v = self.ends[e]
        for w in (u, v):
            if w is not None and self.used[w] & bit:
                return False
        self.colour[e] = c
        trail.append(e)
        for w in (u, v):
            if w is not None:
                self.used[w] |= bit
                self.rem[w] -= 1
        return True

    def _undo(self, trail: list[int]) -> None:
        for e in reversed(trail):
            c = self.colour[e]
            bit = 1 << (c - 1)
            u, v = self.ends[e]
            for w in (u, v):
                if w is not None:
                    self.used[w] &= ~bit
                    self.rem[w] += 1
            self.colour[e] = 0

    def _propagate(self, seeds: list[int], trail: list[int]) -> bool:
        queue = list(seeds)
        while queue:
            v = queue.pop()
            if self.deg[v] == 3 and self.rem[v] == 1:
                forced = 7 ^ self.used[v]
                if forced not in (1, 2, 4):
                    return False
                e = next(i for i in self.incid[v] if self.colour[i] == 0)
                c = forced.bit_length()
                if not self._assign(e, c, trail):
                    return False
                u, w = self.ends[e]
                for x in (u, w):
                    if x is not None and x != v:
                        queue.append(x)
        return True

    def _branch_edge(self) -> Optional[int]:
        best, best_score = None, -1
        for e in self.active:
            if self.colour[e]:
                continue
            u, v = self.ends[e]
            score = 0
            for w in (u, v):
                if w is not None:
                    score += 4 * bin(self.used[w]).count("1") + self.deg[w]
            if score > best_score:
                best, best_score = e, score
                if score >= 9:
                    break
        return best

    def _leaf(self) -> int:
        if DEBUG_CHECKS:
            self._verify_leaf()
        if self.want and len(self.witnesses) < self.want:
            self.witnesses.append(tuple(self.colour))
        return 1

    def _verify_leaf(self) -> None:
        for v in range(self.n):
            cols = [self.colour[e] for e in self.incid[v]]
            if len(cols) == 3:
                x = Z2Z2[cols[0]]
                y = Z2Z2[cols[1]]
                z = Z2Z2[cols[2]]
                if ((x[0] + y[0] + z[0]) % 2, (x[1] + y[1] + z[1]) % 2) != (0, 0):
                    raise ConsistencyError("Kirchhoff violated at a full vertex")
            if len(set(cols)) != len(cols):
                raise ConsistencyError("improper colouring at a vertex")

    def _dfs(self) -> int:
        e = self._branch_edge()
        if e is None:
            return self._leaf()
        total = 0
        u, v = self.ends[e]
        forbid = 0
        for w in (u, v):
            if w is not None:
                forbid |= self.used[w]
        for c in COLOURS:
            if forbid & (1 << (c - 1)):
                continue
            trail: list[int] = []
            ok = self._assign(e, c, trail)
            if ok:
                seeds = [w for w in (u, v) if w is not None]
                ok = self._propagate(seeds, trail)
            if ok:
                total += self._dfs()
                if self.limit is not None and total >= self.limit:
                    self._undo(trail)
                    return total
            self._undo(trail)
        return total

    def run(self, fixed: dict[int, int], limit: Optional[int] = None,
            want_witnesses: int = 0, symmetry: bool = False) -> int:
        self.limit = limit
        self.want = want_witnesses
        trail: list[int] = []
        seeds = []
        merged: dict[int, int] = {}
        for e, c in fixed.items():
            if self.ends[e] is None:
                raise PreconditionError("fixed colour on a removed edge")
            if merged.get(e, c) != c:
                return 0
            merged[e] = c
        for e, c in sorted(merged.items()):
            if not self._assign(e, c, trail):
                return 0
            u, v = self.ends[e]
            seeds += [w for w in (u, v) if w is not None]
        if not self._propagate(seeds, trail):
            self._undo(trail)
            return 0

        factor = 1
        if symmetry and not merged and self.n >= 1:
            # colour permutations act freely once a vertex exists; pin the
            # first two ends at vertex 0 to colours 1 and 2
            e0 = next((i for i in self.incid[0] if self.colour[i] == 0), None)
            if e0 is not None and self._assign(e0, 1, trail):
                if not self._propagate([w for w in self.ends[e0] if w is not None], trail):
                    self._undo(trail)
                    return 0
                factor = 3
                e1 = next((i for i in self.incid[0] if self.colour[i] == 0), None)
                if e1 is not None:
                    if self._assign(e1, 2, trail):
                        if not self._propagate([w for w in self.ends[e1] if w is not None],
                                               trail):
                            self._undo(trail)
                            return 0
                        factor = 6
                    else:
                        self._undo(trail)
                        return 0
            elif e0 is not None:
                self._undo(trail)
                return 0

        sub_limit = None if limit is None else (limit + factor - 1) // factor
        self.limit = sub_limit
        total = self._dfs() * factor
        self._undo(trail)
        return total


def _engine_for(g: CubicGraph, removed_edges: Iterable[int] = ()) -> _Engine:
    removed = set(removed_edges)
    ends: list[Optional[tuple]] = [None if i in removed else g.edges[i]
                                   for i in range(g.m)]
    return _Engine(g.n, ends)


def _uncolourable_shortcut(g: CubicGraph) -> bool:
    return g.free_loops > 0 or g.has_loops()


def _bc_to_fixed(g: CubicGraph, bc: Optional[BoundaryCondition]) -> dict[int, int]:
    if bc is None:
        return {}
    sems = g.semiedges()
    fixed: dict[int, int] = {}
    for s, c in bc.fixed.items():
        if not 0 <= s < len(sems):
            raise PreconditionError(f"semiedge index {s} out of range")
        e, _side = sems[s]
        if fixed.get(e, c) != c:
            return {-1: 0}  # sentinel: contradictory fix on one isolated edge
        fixed[e] = c
    return fixed


def _boundary_parity_ok(m: Multipole, bc: BoundaryCondition) -> bool:
    # necessary condition, only conclusive when every semiedge is fixed:
    # each colour must occur with the parity of the number of free ends
    k = m.n_semiedges
    if len(bc.fixed) != k:
        return True
    for c in COLOURS:
        if (sum(1 for x in bc.fixed.values() if x == c) - k) % 2:
            return False
    return True


def count_colourings(m: Multipole | CubicGraph,
                     bc: Optional[BoundaryCondition] = None) -> int:
    """Exact number of proper 3-edge-colourings extending ``bc``.

    Colours are labelled: the count of a closed colourable cubic graph is a
    multiple of 6.
    """
    mp = as_multipole(m)
    g = mp.graph
    if _uncolourable_shortcut(g):
        return 0
    if bc is not None and not _boundary_parity_ok(mp, bc):
        return 0
    fixed = _bc_to_fixed(g, bc)
    if -1 in fixed:
        return 0
    eng = _engine_for(g)
    return eng.run(fixed, symmetry=not fixed)


def is_colourable(m: Multipole | CubicGraph,
                  bc: Optional[BoundaryCondition] = None
                  ) -> tuple[bool, Optional[EdgeColouring]]:
    """First-witness colourability test; returns (flag, witness or None)."""
    mp = as_multipole(m)
    g = mp.graph
    if _uncolourable_shortcut(g):
        return False, None
    if bc is not None and not _boundary_parity_ok(mp, bc):
        return False, None
    fixed = _bc_to_fixed(g, bc)
    if -1 in fixed:
        return False, None
    eng = _engine_for(g)
    n = eng.run(fixed, limit=1, want_witnesses=1, symmetry=not fixed)
    if n == 0:
        return False, None
    return True, EdgeColouring(eng.witnesses[0])


def colourable(m: Multipole | CubicGraph, bc: Optional[BoundaryCondition] = None) -> bool:
    return is_colourable(m, bc)[0]


def count_extensions(g: CubicGraph, fixed_edges: dict[int, int],
                     removed_edges: Iterable[int] = (),
                     limit: Optional[int] = None,
                     want_witness: bool = False):
    """Colourings of g minus ``removed_edges`` with some edge colours pinned.

    Returns ``count`` or ``(count, witness)`` with ``want_witness``.
    """
    if _uncolourable_shortcut(g):
        return (0, None) if want_witness else 0
    removed = set(removed_edges)
    ends: list[Optional[tuple]] = [None if i in removed else g.edges[i]
                                   for i in range(g.m)]
    eng = _Engine(g.n, ends)
    n = eng.run(dict(fixed_edges), limit=limit,
                want_witnesses=1 if want_witness else 0)
    if want_witness:
        wit = EdgeColouring(eng.witnesses[0]) if eng.witnesses else None
        return n, wit
    return n


# ---------------------------------------------------------------------------
# derived notions
# ---------------------------------------------------------------------------


def kaszonyi(g: CubicGraph, e: int) -> int:
    """psi(e): the colouring count of g with edge e smoothed away, over 18.

    The graph obtained by deleting e and suppressing its two endpoints has a
    colouring count divisible by 18 for snarks; a non-divisible count raises
    ConsistencyError.
    """
    u, v = g.edges[e]
    if u is None or v is None:
        raise PreconditionError("edge must join two vertices")
    if u == v:
        raise PreconditionError("edge must not be a loop")
    for w in (u, v):
        incident = g.edges_at(w)
        pairs = [g.edges[i] for i in incident]
        if len(set(pairs)) != len(pairs):
            raise PreconditionError("parallel edge at an endpoint of e")
    smoothed = smooth_edge(g, e)
    cnt = count_colourings(smoothed)
    if cnt % 18:
        raise ConsistencyError(
            f"colouring count {cnt} of the smoothed graph is not divisible by 18")
    return cnt // 18


def smoothed_colourable(g: CubicGraph, e: int) -> bool:
    """Whether g with edge e smoothed away is colourable.

    Equivalent to colourability of g minus the two endpoints of e.
    """
    u, v = g.edges[e]
    if u is None or v is None or u == v:
        raise PreconditionError("edge must join two distinct vertices")
    return colourable(delete_vertices(g, {u, v}).graph)


def is_removable(g: CubicGraph, h: Iterable[int]) -> bool:
    """Whether the vertex set ``h`` is removable from the snark ``g``.

    Removable means g minus the vertices is uncolourable.
    """
    if colourable(g):
        raise PreconditionError("removability is defined for snarks only")
    rest = delete_vertices(g, h)
    return not colourable(rest.graph)


@dataclass(frozen=True)
class SnarkClass:
    colourable: bool
    critical: bool = False
    bicritical: bool = False

    @property
    def is_snark(self) -> bool:
        return not self.colourable

    @property
    def irreducible(self) -> bool:
        # irreducible and bicritical coincide
        return self.bicritical


def classify_snark(g: CubicGraph) -> SnarkClass:
    """Colourable / snark with criticality flags, by pair enumeration."""
    if not is_two_connected(g):
        raise PreconditionError("snark classification needs a 2-connected graph")
    if colourable(g):
        return SnarkClass(colourable=True)
    critical = True
    bicritical = True
    for u in range(g.n):
        nbrs = {g.other_end(e, u) for e in g.edges_at(u)}
        for v in range(u + 1, g.n):
            if not colourable(delete_vertices(g, {u, v}).graph):
                bicritical = False
                if v in nbrs:
                    critical = False
        if not critical:
            break
    return SnarkClass(colourable=False, critical=critical, bicritical=bicritical)


@dataclass(frozen=True)
class FourPoleClass:
    kind: str  # 'uncolourable' | 'isochromatic' | 'heterochromatic'
    pairings: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()


def classify_4pole(m: Multipole) -> FourPoleClass:
    """Isochromatic / heterochromatic / uncolourable, by boundary scan.

    Enumerates the 81 boundary assignments, keeps the feasible ones, and
    checks which pairings of the four semiedges are monochromatic in every
    feasible assignment.
    """
    if m.n_semiedges != 4:
        raise PreconditionError("classify_4pole needs exactly 4 semiedges")
    feasible = []
    for c0 in COLOURS:
        for c1 in COLOURS:
            for c2 in COLOURS:
                for c3 in COLOURS:
                    pat = (c0, c1, c2, c3)
                    counts = [pat.count(c) % 2 for c in COLOURS]
                    if any(counts):
                        continue  # parity: each colour an even number of times
                    bc = BoundaryCondition(dict(enumerate(pat)))
                    if colourable(m, bc):
                        feasible.append(pat)
    if not feasible:
        return FourPoleClass("uncolourable")
    sems = m.graph.semiedges()

    def vacuous(pair: tuple[int, int]) -> bool:
        # the two ends of one isolated edge are equal by definition, not as a
        # property of the pole's internal structure
        return sems[pair[0]][0] == sems[pair[1]][0]

    pairings = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
    good = tuple(p for p in pairings
                 if not (vacuous(p[0]) and vacuous(p[1]))
                 and all(pat[p[0][0]] == pat[p[0][1]] and pat[p[1][0]] == pat[p[1][1]]
                         for pat in feasible))
    if good:
        return FourPoleClass("isochromatic", good)
    return FourPoleClass("heterochromatic")
