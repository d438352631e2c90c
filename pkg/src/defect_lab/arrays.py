"""Perfect matchings, 3-arrays, Fano flows, cores, and the colouring defect.

A 3-array is a multiset of three perfect matchings.  Edges are uncovered,
simply, doubly or triply covered according to how many members contain them;
the core is the subgraph of the not-simply-covered edges.  A snark has
defect 3 exactly when some induced 6-cycle admits one of two boundary
colour patterns on its six leaving edges, which is the fast path used
throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    _np = None

from .errors import ConsistencyError, NoPerfectMatchingError, PreconditionError
from .colouring import EdgeColouring, colourable, count_extensions, is_colourable
from .graphs import (
    CubicGraph,
    Cycle,
    cycle_boundary,
    delete_vertices,
    girth,
    induced_cycles,
)

COLOUR_TRIPLE = (1, 2, 3)


@dataclass(frozen=True)
class PerfectMatching:
    """A perfect matching as a sorted edge tuple plus a bitmask."""

    edges: tuple[int, ...]
    mask: int

    @staticmethod
    def from_edges(edges: Iterable[int]) -> "PerfectMatching":
        es = tuple(sorted(edges))
        mask = 0
        for e in es:
            mask |= 1 << e
        return PerfectMatching(es, mask)

    def __contains__(self, e: int) -> bool:
        return bool(self.mask >> e & 1)

    def __len__(self) -> int:
        return len(self.edges)


@lru_cache(maxsize=256)
def enumerate_perfect_matchings(g: CubicGraph) -> tuple[PerfectMatching, ...]:
    """All perfect matchings, in lexicographic order of their edge tuples.

    Loops never participate.  The empty result is valid (e.g. for some
    bridged graphs).
    """
    if g.semiedges():
        raise PreconditionError("perfect matchings are enumerated on closed graphs")
    n, out = g.n, []
    chosen: list[int] = []
    covered = [False] * n

    def rec(start_scan: int):
        v = -1
        for w in range(start_scan, n):
            if not covered[w]:
                v = w
                break
        if v == -1:
            out.append(PerfectMatching.from_edges(chosen))
            return
        for e, _side in g.ends_at(v):
            if g.is_loop(e):
                continue
            w = g.other_end(e, v)
            if w is None or covered[w]:
                continue
            covered[v] = covered[w] = True
            chosen.append(e)
            rec(v + 1)
            chosen.pop()
            covered[v] = covered[w] = False

    if n % 2 == 0:
        rec(0)
    out.sort(key=lambda pm: pm.edges)
    return tuple(out)


@dataclass(frozen=True)
class ThreeArray:
    """Three perfect matchings with the derived per-edge covering data."""

    graph: CubicGraph
    members: tuple[PerfectMatching, PerfectMatching, PerfectMatching]

    @property
    def weight(self) -> tuple[int, ...]:
        return tuple(sum(e in pm for pm in self.members) for e in range(self.graph.m))

    def colour_list(self, e: int) -> tuple[int, ...]:
        return tuple(i + 1 for i, pm in enumerate(self.members) if e in pm)

    def edge_class(self, k: int) -> frozenset[int]:
        w = self.weight
        return frozenset(e for e in range(self.graph.m) if w[e] == k)

    @property
    def uncovered(self) -> frozenset[int]:
        u = (self.members[0].mask | self.members[1].mask | self.members[2].mask)
        return frozenset(e for e in range(self.graph.m) if not u >> e & 1)

    @property
    def uncovered_count(self) -> int:
        full = (1 << self.graph.m) - 1
        u = self.members[0].mask | self.members[1].mask | self.members[2].mask
        return bin(full & ~u).count("1")

    @property
    def core_edges(self) -> frozenset[int]:
        m1, m2, m3 = (pm.mask for pm in self.members)
        doubly_up = (m1 & m2) | (m1 & m3) | (m2 & m3)
        full = (1 << self.graph.m) - 1
        core = (full & ~(m1 | m2 | m3)) | doubly_up
        return frozenset(e for e in range(self.graph.m) if core >> e & 1)


def build_array(m1: PerfectMatching, m2: PerfectMatching,
                m3: PerfectMatching, g: CubicGraph) -> ThreeArray:
    """Assemble and validate a 3-array over ``g``."""
    arr = ThreeArray(g, (m1, m2, m3))
    for pm in arr.members:
        covered = [0] * g.n
        for e in pm.edges:
            u, v = g.edges[e]
            if u is None or v is None or u == v:
                raise PreconditionError("matching uses a loop or open edge")
            covered[u] += 1
            covered[v] += 1
        if any(c != 1 for c in covered):
            raise PreconditionError("member is not a perfect matching of the graph")
    return arr


@dataclass(frozen=True)
class FanoColouring:
    """The Z_2^3-valued flow of a 3-array: coordinate i vanishes on M_i."""

    flow: tuple[tuple[int, int, int], ...]
    nowhere_zero: bool


# the four Fano-plane lines realisable around a vertex of a 3-array with no
# triply covered edge: the all-simple line and, per i, {uncovered, i, jk}
_F4_LINES = frozenset({
    frozenset({(0, 1, 1), (1, 0, 1), (1, 1, 0)}),
    frozenset({(1, 1, 1), (0, 1, 1), (1, 0, 0)}),
    frozenset({(1, 1, 1), (1, 0, 1), (0, 1, 0)}),
    frozenset({(1, 1, 1), (1, 1, 0), (0, 0, 1)}),
})


def characteristic_flow(a: ThreeArray) -> FanoColouring:
    g = a.graph
    flow = []
    for e in range(g.m):
        flow.append(tuple(0 if e in pm else 1 for pm in a.members))
    nz = all(f != (0, 0, 0) for f in flow)
    return FanoColouring(tuple(flow), nz)


def vertex_fano_lines(a: ThreeArray) -> list[frozenset]:
    """The set of flow values around each vertex (a Fano line when nowhere-zero)."""
    g = a.graph
    fl = characteristic_flow(a).flow
    out = []
    for v in range(g.n):
        out.append(frozenset(fl[e] for e in g.edges_at(v)))
    return out


def check_f4_configuration(a: ThreeArray) -> bool:
    """Nowhere-zero arrays use only the four lines of the F_4 configuration."""
    if not characteristic_flow(a).nowhere_zero:
        return False
    for v, line in enumerate(vertex_fano_lines(a)):
        if line not in _F4_LINES:
            return False
    return True


@dataclass(frozen=True)
class CoreComponent:
    vertices: frozenset[int]
    edges: frozenset[int]
    kind: str  # 'circuit' | 'subdivided_cubic'
    alternating: bool


@dataclass(frozen=True)
class CoreSubgraph:
    edges: frozenset[int]
    components: tuple[CoreComponent, ...]
    regular: bool

    def is_single_hexagon(self, g: CubicGraph) -> bool:
        return (self.regular and len(self.components) == 1
                and len(self.components[0].edges) == 6)


def core_of(a: ThreeArray) -> CoreSubgraph:
    """The core subgraph with per-component classification.

    Verifies the structural identities: the doubly-or-triply covered edges
    form a perfect matching of the core, and |E0| = |E2| + 2|E3|.
    """
    g = a.graph
    w = a.weight
    core_edges = a.core_edges
    e0 = [e for e in core_edges if w[e] == 0]
    e2 = [e for e in core_edges if w[e] == 2]
    e3 = [e for e in core_edges if w[e] == 3]
    if len(e0) != len(e2) + 2 * len(e3):
        raise ConsistencyError("|E0| != |E2| + 2|E3|")
    verts = set()
    for e in core_edges:
        u, v = g.edges[e]
        verts.update(x for x in (u, v) if x is not None)
    # the multiply covered edges must form a perfect matching of the core
    hit = {v: 0 for v in verts}
    for e in core_edges:
        if w[e] >= 2:
            u, v = g.edges[e]
            hit[u] += 1
            hit[v] += 1
    if any(c != 1 for c in hit.values()):
        raise ConsistencyError("E_23 is not a perfect matching of the core")

    # components
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in core_edges:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, set[int]] = {}
    for v in verts:
        groups.setdefault(find(v), set()).add(v)
    comps = []
    regular = True
    for vs in groups.values():
        es = frozenset(e for e in core_edges
                       if g.edges[e][0] in vs and g.edges[e][1] in vs)
        deg = {v: 0 for v in vs}
        for e in es:
            u, v = g.edges[e]
            deg[u] += 1
            deg[v] += 1
        if all(d == 2 for d in deg.values()):
            kind = "circuit"
            alternating = _circuit_alternates(g, es, w)
        else:
            kind = "subdivided_cubic"
            alternating = False
            regular = False
        comps.append(CoreComponent(frozenset(vs), es, kind, alternating))
    comps.sort(key=lambda c: min(c.vertices) if c.vertices else -1)
    return CoreSubgraph(frozenset(core_edges), tuple(comps), regular)


def _circuit_alternates(g: CubicGraph, edges: frozenset[int], w) -> bool:
    # walk the circuit and check weights alternate 0 / 2
    adj: dict[int, list[int]] = {}
    for e in edges:
        u, v = g.edges[e]
        adj.setdefault(u, []).append(e)
        adj.setdefault(v, []).append(e)
    start = min(adj)
    prev_e = None
    v = start
    seq = []
    while True:
        e = next(x for x in adj[v] if x != prev_e)
        seq.append(e)
        v = g.other_end(e, v)
        prev_e = e
        if v == start:
            break
    return all(w[seq[i]] != w[seq[(i + 1) % len(seq)]] for i in range(len(seq)))


# ---------------------------------------------------------------------------
# hexagon boundary patterns
# ---------------------------------------------------------------------------

# boundary colours (r_0..r_5) for the two possible uncovered triples of a
# core hexagon, with doubly covered lists fixed to 12, 13, 23 in cycle order
PATTERN_UNCOVERED_ODD = (3, 3, 2, 2, 1, 1)    # uncovered {q1, q3, q5}
PATTERN_UNCOVERED_EVEN = (3, 2, 2, 1, 1, 3)   # uncovered {q0, q2, q4}
_DOUBLY_ODD = {0: (1, 2), 2: (1, 3), 4: (2, 3)}
_DOUBLY_EVEN = {5: (1, 2), 1: (1, 3), 3: (2, 3)}


def hexagon_extension(g: CubicGraph, c: Cycle, variant: str,
                      want_witness: bool = True):
    """Test one boundary pattern of an induced 6-cycle.

    ``variant`` is 'odd' or 'even' (which alternating triple of the cycle is
    uncovered).  Returns the extension colouring of g - E(C), or None.
    """
    if len(c) != 6:
        raise PreconditionError("hexagon required")
    r = cycle_boundary(g, c)
    if len(set(r)) != 6:
        raise PreconditionError("cycle is not induced (boundary edges repeat)")
    pattern = PATTERN_UNCOVERED_ODD if variant == "odd" else PATTERN_UNCOVERED_EVEN
    fixed = {r[i]: pattern[i] for i in range(6)}
    if len(fixed) != 6:
        return None
    count, wit = count_extensions(g, fixed, removed_edges=c.edges, limit=1,
                                  want_witness=True)
    if count == 0:
        return None
    return wit


def array_from_extension(g: CubicGraph, c: Cycle, variant: str,
                         ext: EdgeColouring) -> ThreeArray:
    """Rebuild the witness 3-array from a successful boundary extension."""
    doubly = _DOUBLY_ODD if variant == "odd" else _DOUBLY_EVEN
    member_edges: list[list[int]] = [[], [], []]
    cyc = set(c.edges)
    for e in range(g.m):
        if e in cyc:
            continue
        col = ext[e]
        member_edges[col - 1].append(e)
    for pos, cols in doubly.items():
        for col in cols:
            member_edges[col - 1].append(c.edges[pos])
    pms = tuple(PerfectMatching.from_edges(es) for es in member_edges)
    arr = build_array(pms[0], pms[1], pms[2], g)
    if arr.uncovered_count != 3:
        raise ConsistencyError("hexagon extension did not produce a 3-core")
    return arr


def defect_is_three(g: CubicGraph) -> Optional[tuple[Cycle, ThreeArray]]:
    """Hexagon fast path: a witness that df(g) = 3, or None (then df != 3).

    Scans induced 6-cycles in deterministic order and tests both boundary
    patterns; on success rebuilds the witness array.
    """
    if colourable(g):
        raise PreconditionError("defect_is_three expects a snark")
    for c in induced_cycles(g, 6):
        for variant in ("odd", "even"):
            ext = hexagon_extension(g, c, variant)
            if ext is not None:
                return c, array_from_extension(g, c, variant, ext)
    return None


class HexagonType:
    REMOVABLE = "removable"
    NON_CORE = "non-core"
    SINGLE_CORE = "single-core"
    DOUBLE_CORE = "double-core"


def classify_hexagon(g: CubicGraph, c: Cycle) -> str:
    """Removable / non-core / single-core / double-core, for an induced 6-cycle.

    Core labels are meaningful when df(g) = 3.  A hexagon is removable when
    deleting its six vertices leaves the graph uncolourable; a core hexagon
    is never removable.
    """
    if len(c) != 6:
        raise PreconditionError("hexagon required")
    rest = delete_vertices(g, c.vertex_set)
    if not colourable(rest.graph):
        return HexagonType.REMOVABLE
    odd = hexagon_extension(g, c, "odd", want_witness=False) is not None
    even = hexagon_extension(g, c, "even", want_witness=False) is not None
    if odd and even:
        return HexagonType.DOUBLE_CORE
    if odd or even:
        return HexagonType.SINGLE_CORE
    return HexagonType.NON_CORE


# ---------------------------------------------------------------------------
# defect
# ---------------------------------------------------------------------------


def _popcount_array(arr):
    x = arr.copy()
    x = x - ((x >> _np.uint64(1)) & _np.uint64(0x5555555555555555))
    x = (x & _np.uint64(0x3333333333333333)) + ((x >> _np.uint64(2)) & _np.uint64(0x3333333333333333))
    x = (x + (x >> _np.uint64(4))) & _np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * _np.uint64(0x0101010101010101)) >> _np.uint64(56)


class _TripleScan:
    """Lexicographic scan over multisets of three matchings."""

    def __init__(self, g: CubicGraph, pms):
        self.g = g
        self.pms = pms
        self.masks = [pm.mask for pm in pms]
        self.full = (1 << g.m) - 1
        self.use_np = _np is not None and g.m <= 64
        if self.use_np:
            self.np_masks = _np.array(self.masks, dtype=_np.uint64)

    def scan(self, stop_at: Optional[int] = None, collect: bool = False):
        """Returns (best value, lex-first best triple, all best triples?).

        ``stop_at``: a known unbeatable lower bound; the scan returns at the
        first triple attaining it.  ``collect`` gathers every optimal triple.
        """
        t = len(self.masks)
        best: Optional[int] = None
        best_triple = None
        everything: list[tuple[int, int, int]] = []
        full = self.full
        for i in range(t):
            mi = self.masks[i]
            for j in range(i, t):
                inter = bin(mi & self.masks[j]).count("1")
                # |E0| of any completion is at least |M_i intersect M_j|
                if best is not None:
                    if (not collect and inter >= best) or (collect and inter > best):
                        continue
                u2 = mi | self.masks[j]
                if self.use_np:
                    unc = _popcount_array(
                        _np.uint64(full) & ~(_np.uint64(u2) | self.np_masks[j:]))
                    row_min = int(unc.min())
                    if best is None or row_min < best:
                        best = row_min
                        hits = _np.nonzero(unc == row_min)[0]
                        best_triple = (i, j, j + int(hits[0]))
                        everything = ([(i, j, j + int(k)) for k in hits]
                                      if collect else [best_triple])
                        if stop_at is not None and best <= stop_at and not collect:
                            return best, best_triple, everything
                    elif collect and row_min == best:
                        hits = _np.nonzero(unc == row_min)[0]
                        everything.extend((i, j, j + int(k)) for k in hits)
                else:
                    for k in range(j, t):
                        c = bin(full & ~(u2 | self.masks[k])).count("1")
                        if best is None or c < best:
                            best, best_triple = c, (i, j, k)
                            everything = [(i, j, k)]
                            if stop_at is not None and c <= stop_at and not collect:
                                return best, best_triple, everything
                        elif collect and c == best:
                            everything.append((i, j, k))
        return best, best_triple, everything


def _array_from_triple(g, pms, triple) -> ThreeArray:
    i, j, k = triple
    return build_array(pms[i], pms[j], pms[k], g)


def _array_from_colouring(g: CubicGraph, col: EdgeColouring) -> ThreeArray:
    classes = [[], [], []]
    for e in range(g.m):
        classes[col[e] - 1].append(e)
    pms = [PerfectMatching.from_edges(cl) for cl in classes]
    return build_array(pms[0], pms[1], pms[2], g)


def defect_lower_bound(g: CubicGraph, snark: bool) -> int:
    lb = 0
    if snark:
        gg = girth(g)
        lb = max(3, math.ceil(gg / 2) if gg != float("inf") else 3)
        try:
            lb = max(lb, math.ceil(3 * oddness(g) / 2))
        except NoPerfectMatchingError:
            pass
    return lb


def defect(g: CubicGraph) -> tuple[int, ThreeArray]:
    """Exact colouring defect with a lexicographically least witness array.

    Colourable graphs give (0, a disjoint triple).  For snarks the hexagon
    fast path supplies the upper bound 3 when it applies; the exhaustive
    triple scan (with intersection pruning) settles everything else.
    """
    ok, col = is_colourable(g)
    if ok:
        return 0, _array_from_colouring(g, col)
    pms = enumerate_perfect_matchings(g)
    if not pms:
        raise NoPerfectMatchingError("graph has no perfect matching")
    lb = defect_lower_bound(g, snark=True)
    fast = None
    if lb <= 3:
        fast = defect_is_three(g)
    if fast is None:
        lb = max(lb, 4)
    scan = _TripleScan(g, pms)
    best, triple, _ = scan.scan(stop_at=lb)
    if best < lb:
        raise ConsistencyError(
            f"triple scan found defect {best} below the proven bound {lb}")
    if fast is not None and best != 3:
        raise ConsistencyError("hexagon fast path and triple scan disagree")
    return best, _array_from_triple(g, pms, triple)


def optimal_three_arrays(g: CubicGraph) -> list[ThreeArray]:
    """Every optimal 3-array (unordered, as lex-ordered index multisets)."""
    ok, col = is_colourable(g)
    if ok:
        raise PreconditionError("optimal arrays of colourable graphs are not enumerated")
    pms = enumerate_perfect_matchings(g)
    if not pms:
        raise NoPerfectMatchingError("graph has no perfect matching")
    scan = _TripleScan(g, pms)
    best, _, triples = scan.scan(collect=True)
    return [_array_from_triple(g, pms, t) for t in triples]


def oddness(g: CubicGraph) -> int:
    """Minimum number of odd circuits over all 2-factors (PM complements)."""
    pms = enumerate_perfect_matchings(g)
    if not pms:
        raise NoPerfectMatchingError("graph has no perfect matching")
    best = None
    for pm in pms:
        rest = [e for e in range(g.m) if e not in pm]
        odd = _odd_components(g, rest)
        if best is None or odd < best:
            best = odd
            if best == 0:
                break
    return best


def _odd_components(g: CubicGraph, edge_subset: list[int]) -> int:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    size = [0] * g.n
    for e in edge_subset:
        u, v = g.edges[e]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    counts: dict[int, int] = {}
    for v in range(g.n):
        counts[find(v)] = counts.get(find(v), 0) + 1
    return sum(1 for c in counts.values() if c % 2)


def fulkerson_from_double_core(g: CubicGraph, c: Cycle
                               ) -> tuple[PerfectMatching, ...]:
    """Six matchings covering every edge exactly twice, from a double-core hexagon."""
    ext_odd = hexagon_extension(g, c, "odd")
    ext_even = hexagon_extension(g, c, "even")
    if ext_odd is None or ext_even is None:
        raise PreconditionError("hexagon is not double-core")
    a1 = array_from_extension(g, c, "odd", ext_odd)
    a2 = array_from_extension(g, c, "even", ext_even)
    six = a1.members + a2.members
    mult = [0] * g.m
    for pm in six:
        for e in pm.edges:
            mult[e] += 1
    if any(x != 2 for x in mult):
        raise ConsistencyError("double-core arrays do not form a Fulkerson cover")
    return six
