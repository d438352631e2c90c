"""Cubic multigraphs and multipoles.

The substrate for everything else in the library.  A graph is stored as an
ordered tuple of edges; each edge end is either a vertex id or ``None`` for a
free end (semiedge).  Loops, parallel edges, dangling edges and isolated
edges are all representable.  Every vertex is incident with exactly three
edge ends.

The dart view is derived from the edge order: vertex ``v`` owns darts
``3v, 3v+1, 3v+2`` listed in (edge id, end) order, and the involution pairs
the two darts of every full edge; a fixed point of the involution is the
vertex-side dart of a dangling edge.  Because darts are derived
deterministically from the edge order, serialising and reparsing a graph
reproduces its darts exactly.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    ConsistencyError,
    FormatError,
    NoCycleSeparatingCutError,
    NonCubicError,
    PreconditionError,
)

Vertex = int
Edge = int
End = tuple[Optional[int], Optional[int]]


def _norm_end(e) -> End:
    u, v = e
    if u is None or (v is not None and v < u):
        return (v, u)
    return (u, v)


class CubicGraph:
    """Immutable cubic multigraph, possibly with free edge ends.

    ``edges[i]`` is ``(u, v)`` with ``u <= v``; a free end is ``None`` (kept
    last).  ``free_loops`` counts closed edges incident with no vertex; they
    arise only from degenerate smoothings and make the graph uncolourable by
    convention.
    """

    __slots__ = ("n", "edges", "free_loops", "_ends_of", "_semiedges")

    def __init__(self, n: int, edges: Iterable[End], free_loops: int = 0):
        self.n = int(n)
        self.edges: tuple[End, ...] = tuple(_norm_end(e) for e in edges)
        self.free_loops = int(free_loops)
        ends_of: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        semiedges: list[tuple[int, int]] = []
        for i, (u, v) in enumerate(self.edges):
            for side, w in enumerate((u, v)):
                if w is None:
                    semiedges.append((i, side))
                elif 0 <= w < self.n:
                    ends_of[w].append((i, side))
                else:
                    raise ValueError(f"edge {i} references vertex {w} out of range")
        for v, ends in enumerate(ends_of):
            if len(ends) != 3:
                raise NonCubicError(f"vertex {v} has degree {len(ends)}, expected 3")
        self._ends_of = tuple(tuple(e) for e in ends_of)
        self._semiedges = tuple(semiedges)

    # -- basic views ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def endpoints(self, e: Edge) -> End:
        return self.edges[e]

    def ends_at(self, v: Vertex) -> tuple[tuple[int, int], ...]:
        """The three (edge, side) ends at ``v`` in edge order (a loop twice)."""
        return self._ends_of[v]

    def edges_at(self, v: Vertex) -> tuple[int, ...]:
        return tuple(e for e, _ in self._ends_of[v])

    def semiedges(self) -> tuple[tuple[int, int], ...]:
        """Free ends as (edge, side) pairs, in deterministic order."""
        return self._semiedges

    def is_closed(self) -> bool:
        return not self._semiedges and self.free_loops == 0

    def other_end(self, e: Edge, v: Vertex) -> Optional[int]:
        u, w = self.edges[e]
        if u == v:
            return w
        if w == v:
            return u
        raise ValueError(f"edge {e} not incident with vertex {v}")

    def is_loop(self, e: Edge) -> bool:
        u, v = self.edges[e]
        return u is not None and u == v

    def has_loops(self) -> bool:
        return any(self.is_loop(e) for e in range(self.m))

    # -- dart view (derived) -------------------------------------------

    def dart_count(self) -> int:
        iso = sum(1 for u, v in self.edges if u is None and v is None)
        return 3 * self.n + 2 * iso

    def involution(self) -> tuple[int, ...]:
        """Dart pairing; a fixed point is the vertex-side dart of a dangling edge."""
        slot: dict[tuple[int, int], int] = {}
        for v in range(self.n):
            for k, end in enumerate(self._ends_of[v]):
                slot[end] = 3 * v + k
        inv = list(range(self.dart_count()))
        nxt = 3 * self.n
        for i, (u, v) in enumerate(self.edges):
            if u is None and v is None:
                inv[nxt], inv[nxt + 1] = nxt + 1, nxt
                nxt += 2
            elif u is not None and v is not None:
                a, b = slot[(i, 0)], slot[(i, 1)]
                inv[a], inv[b] = b, a
        return tuple(inv)

    def vertex_of_dart(self, d: int) -> Optional[int]:
        return d // 3 if d < 3 * self.n else None

    def __eq__(self, other) -> bool:
        return (isinstance(other, CubicGraph) and self.n == other.n
                and self.edges == other.edges and self.free_loops == other.free_loops)

    def __hash__(self) -> int:
        return hash((self.n, self.edges, self.free_loops))

    def __repr__(self) -> str:
        return f"CubicGraph(n={self.n}, m={self.m}, semiedges={len(self._semiedges)})"


def from_adjacency(adj: Sequence[Sequence[int]]) -> CubicGraph:
    """Build a simple cubic graph from adjacency lists."""
    n = len(adj)
    edges = []
    for u in range(n):
        for v in sorted(adj[u]):
            if u < v:
                edges.append((u, v))
    return CubicGraph(n, edges)


@dataclass(frozen=True)
class Multipole:
    """A cubic graph fragment whose free ends are grouped into connectors.

    ``connectors`` is an ordered tuple of ``(name, semiedge indices)``;
    a semiedge index points into ``graph.semiedges()``.  Connectors are
    pairwise disjoint and together cover every free end.
    """

    graph: CubicGraph
    connectors: tuple[tuple[str, tuple[int, ...]], ...]

    def __post_init__(self):
        seen: set[int] = set()
        total = len(self.graph.semiedges())
        for name, sems in self.connectors:
            for s in sems:
                if not 0 <= s < total:
                    raise ValueError(f"connector {name!r}: semiedge {s} out of range")
                if s in seen:
                    raise ValueError(f"semiedge {s} appears in two connectors")
                seen.add(s)
        if len(seen) != total:
            raise ValueError("connectors must cover every semiedge")

    @property
    def n_semiedges(self) -> int:
        return len(self.graph.semiedges())

    def connector(self, name: str) -> tuple[int, ...]:
        for cname, sems in self.connectors:
            if cname == name:
                return sems
        raise KeyError(name)

    def connector_sizes(self) -> tuple[int, ...]:
        return tuple(len(sems) for _, sems in self.connectors)


def as_multipole(g: CubicGraph | Multipole, connector_name: str = "s") -> Multipole:
    if isinstance(g, Multipole):
        return g
    sems = tuple(range(len(g.semiedges())))
    connectors = ((connector_name, sems),) if sems else ()
    return Multipole(g, connectors)


def as_graph(g: CubicGraph | Multipole) -> CubicGraph:
    return g.graph if isinstance(g, Multipole) else g


@dataclass(frozen=True)
class EdgeCut:
    """An edge cut, optionally with the two vertex sets it separates."""

    edges: frozenset[int]
    side_a: frozenset[int] = frozenset()
    side_b: frozenset[int] = frozenset()


# ---------------------------------------------------------------------------
# graph6
# ---------------------------------------------------------------------------


def parse_graph6(text: str) -> CubicGraph:
    """Decode one line of graph6 into a cubic graph.

    graph6 carries simple graphs only; any vertex of degree != 3 is rejected.
    Darts at a vertex end up ordered by ascending neighbour id.
    """
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise FormatError("empty graph6 line")
    data = [ord(c) - 63 for c in s]
    if any(b < 0 or b > 63 for b in data):
        raise FormatError("graph6 byte out of range 63..126")
    if data[0] != 63:
        n, idx = data[0], 1
    elif len(data) >= 2 and data[1] != 63:
        if len(data) < 4:
            raise FormatError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        idx = 4
    else:
        if len(data) < 8:
            raise FormatError("truncated graph6 size field")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | b
        idx = 8
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - idx != need:
        raise FormatError(f"graph6 payload has {len(data) - idx} bytes, expected {need}")
    bits = []
    for b in data[idx:]:
        bits.extend((b >> k) & 1 for k in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 payload")
    edges = []
    k = 0
    for j in range(n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    edges.sort()
    try:
        return CubicGraph(n, edges)
    except NonCubicError as exc:
        raise NonCubicError(f"graph6 input is not cubic: {exc}") from exc


def to_graph6(g: CubicGraph) -> str:
    """Encode a simple closed cubic graph as one graph6 line."""
    if not g.is_closed():
        raise FormatError("graph6 cannot carry semiedges; use the mpole format")
    seen = set()
    for u, v in g.edges:
        if u == v:
            raise FormatError("graph6 cannot carry loops")
        if (u, v) in seen:
            raise FormatError("graph6 cannot carry parallel edges")
        seen.add((u, v))
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    elif n <= 258047:
        head = chr(126) + "".join(chr(((n >> k) & 63) + 63) for k in (12, 6, 0))
    else:
        head = chr(126) * 2 + "".join(chr(((n >> k) & 63) + 63) for k in range(30, -1, -6))
    bits = []
    for j in range(n):
        for i in range(j):
            bits.append(1 if (i, j) in seen else 0)
    while len(bits) % 6:
        bits.append(0)
    payload = "".join(
        chr(63 + sum(bit << (5 - k) for k, bit in enumerate(bits[i:i + 6])))
        for i in range(0, len(bits), 6)
    )
    return head + payload


def read_graph6_file(path) -> list[str]:
    """Non-empty graph6 lines of a file, optional '>>graph6<<' headers stripped."""
    lines = []
    with open(path, "r", encoding="ascii") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith(">>graph6<<"):
                line = line[len(">>graph6<<"):]
            if line:
                lines.append(line)
    return lines


# ---------------------------------------------------------------------------
# native multipole format
# ---------------------------------------------------------------------------


def parse_mpole(text: str) -> Multipole:
    """Parse the line-oriented multipole format.

    Header ``mpole <n_vertices> <n_semiedges>``, then one ``e u v`` line per
    full edge and one ``s u <connector>`` line per semiedge, vertices
    0-based.  Edge order is preserved, which makes the round trip
    dart-stable.
    """
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("mpole"):
        raise FormatError("missing 'mpole' header")
    head = lines[0].split()
    if len(head) != 3:
        raise FormatError("header must be 'mpole <n_vertices> <n_semiedges>'")
    try:
        n, k = int(head[1]), int(head[2])
    except ValueError as exc:
        raise FormatError("non-integer header fields") from exc
    edges: list[End] = []
    groups: dict[str, list[int]] = {}
    order: list[str] = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "e" and len(parts) == 3:
            edges.append((int(parts[1]), int(parts[2])))
        elif parts[0] == "s" and len(parts) == 3:
            u, name = int(parts[1]), parts[2]
            edges.append((u, None))
            if name not in groups:
                groups[name] = []
                order.append(name)
            groups[name].append(len(edges) - 1)
        else:
            raise FormatError(f"unrecognised line: {ln!r}")
    try:
        g = CubicGraph(n, edges)
    except (NonCubicError, ValueError) as exc:
        raise FormatError(f"bad multipole body: {exc}") from exc
    if len(g.semiedges()) != k:
        raise FormatError(f"header declares {k} semiedges, found {len(g.semiedges())}")
    sem_index = {pair: i for i, pair in enumerate(g.semiedges())}
    connectors = tuple(
        (name, tuple(sem_index[(e, 1)] for e in groups[name])) for name in order
    )
    return Multipole(g, connectors)


def to_mpole(m: Multipole | CubicGraph) -> str:
    m = as_multipole(m)
    g = m.graph
    if g.free_loops or any(u is None and v is None for u, v in g.edges):
        raise FormatError("mpole format cannot carry isolated edges or free loops")
    sem_index = {pair: i for i, pair in enumerate(g.semiedges())}
    name_of: dict[int, str] = {}
    for cname, sems in m.connectors:
        for s in sems:
            name_of[s] = cname
    out = [f"mpole {g.n} {len(g.semiedges())}"]
    for i, (u, v) in enumerate(g.edges):
        if v is None:
            out.append(f"s {u} {name_of[sem_index[(i, 1)]]}")
        else:
            out.append(f"e {u} {v}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# connectivity helpers
# ---------------------------------------------------------------------------


def components(g: CubicGraph, removed_edges: Iterable[int] = (),
               removed_vertices: Iterable[int] = ()) -> list[set[int]]:
    removed_edges = set(removed_edges)
    removed_vertices = set(removed_vertices)
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start] or start in removed_vertices:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for e, _ in g.ends_at(v):
                if e in removed_edges:
                    continue
                w = g.other_end(e, v)
                if w is None or w in removed_vertices or seen[w]:
                    continue
                seen[w] = True
                comp.add(w)
                stack.append(w)
        comps.append(comp)
    return comps


def is_connected(g: CubicGraph) -> bool:
    return g.n <= 1 or len(components(g)) == 1


def component_has_circuit(g: CubicGraph, comp: set[int],
                          removed_edges: Iterable[int] = ()) -> bool:
    # a connected vertex set carries a circuit iff it has >= |comp| internal
    # edges, counting loops and parallels
    removed_edges = set(removed_edges)
    cnt = 0
    for i, (u, v) in enumerate(g.edges):
        if i in removed_edges or u is None or v is None:
            continue
        if u in comp and v in comp:
            cnt += 1
    return cnt >= len(comp)


def bridges(g: CubicGraph, removed_edges: Iterable[int] = ()) -> list[int]:
    """All bridges of the graph with ``removed_edges`` taken out."""
    removed = set(removed_edges)
    disc = [-1] * g.n
    low = [0] * g.n
    clock = [0]
    out: list[int] = []

    for root in range(g.n):
        if disc[root] != -1:
            continue
        stack: list[tuple[int, int]] = [(root, -1)]
        iters: dict[int, int] = {}
        while stack:
            v, pe = stack[-1]
            if disc[v] == -1:
                disc[v] = low[v] = clock[0]
                clock[0] += 1
                iters[v] = 0
            ends = g.ends_at(v)
            advanced = False
            while iters[v] < len(ends):
                e, _side = ends[iters[v]]
                iters[v] += 1
                if e in removed or e == pe or g.is_loop(e):
                    continue
                w = g.other_end(e, v)
                if w is None:
                    continue
                if disc[w] == -1:
                    stack.append((w, e))
                    advanced = True
                    break
                low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if pe != -1:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] > disc[u]:
                        out.append(pe)
    return sorted(out)


def is_two_connected(g: CubicGraph) -> bool:
    """Connected, loop-free, closed, no cut vertex, at least 2 vertices."""
    if g.n < 2 or g.has_loops() or g.semiedges() or not is_connected(g):
        return False
    disc = [-1] * g.n
    low = [0] * g.n
    clock = [0]
    found_cut = [False]
    root = 0
    root_children = 0
    stack: list[tuple[int, int]] = [(root, -1)]
    iters: dict[int, int] = {}
    while stack:
        v, pe = stack[-1]
        if disc[v] == -1:
            disc[v] = low[v] = clock[0]
            clock[0] += 1
            iters[v] = 0
        ends = g.ends_at(v)
        advanced = False
        while iters[v] < len(ends):
            e, _side = ends[iters[v]]
            iters[v] += 1
            if e == pe or g.is_loop(e):
                continue
            w = g.other_end(e, v)
            if disc[w] == -1:
                if v == root:
                    root_children += 1
                stack.append((w, e))
                advanced = True
                break
            low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                u = stack[-1][0]
                low[u] = min(low[u], low[v])
                if u != root and low[v] >= disc[u]:
                    found_cut[0] = True
    return not found_cut[0] and root_children <= 1


# ---------------------------------------------------------------------------
# girth and cycle enumeration
# ---------------------------------------------------------------------------

INFINITE_GIRTH = float("inf")


def girth(g: CubicGraph):
    """Length of a shortest circuit; loops give 1, digons 2, forests inf."""
    if g.semiedges():
        raise PreconditionError("girth is defined for closed graphs only")
    if g.has_loops() or g.free_loops:
        return 1
    seen_pairs = set()
    for u, v in g.edges:
        if (u, v) in seen_pairs:
            return 2
        seen_pairs.add((u, v))
    best = INFINITE_GIRTH
    for root in range(g.n):
        dist = {root: 0}
        parent_edge = {root: -1}
        q = deque([root])
        while q:
            v = q.popleft()
            if 2 * dist[v] + 1 >= best:
                continue
            for e, _ in g.ends_at(v):
                if e == parent_edge[v]:
                    continue
                w = g.other_end(e, v)
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent_edge[w] = e
                    q.append(w)
                else:
                    cyc = dist[v] + dist[w] + 1
                    if cyc < best:
                        best = cyc
    return best


@dataclass(frozen=True)
class Cycle:
    """A circuit with a fixed cyclic orientation.

    ``vertices[i]`` and ``vertices[(i+1) % k]`` are joined by ``edges[i]``.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)


def cycles_of_length(g: CubicGraph, length: int, induced: bool = True) -> tuple[Cycle, ...]:
    """All circuits of exactly the given length, in deterministic order.

    With ``induced=True`` only chordless circuits survive: the subgraph
    induced on the cycle's vertices has no edge beyond the cycle itself.
    The canonical orientation starts at the smallest vertex and proceeds
    toward its smaller cycle neighbour.
    """
    if length < 2:
        raise PreconditionError("cycle length must be at least 2")
    pair_count: dict[tuple[int, int], int] = {}
    for u, v in g.edges:
        if u is None or v is None:
            continue
        pair_count[(u, v)] = pair_count.get((u, v), 0) + 1

    found: list[Cycle] = []
    if length == 2:
        for (u, v), cnt in sorted(pair_count.items()):
            if u != v and cnt >= 2:
                es = [i for i, e in enumerate(g.edges) if e == (u, v)]
                for a, b in itertools.combinations(es, 2):
                    found.append(Cycle((u, v), (a, b)))
    else:
        for start in range(g.n):
            path_v = [start]
            path_e: list[int] = []
            on_path = {start}

            def extend():
                v = path_v[-1]
                depth = len(path_e)
                for e, _side in g.ends_at(v):
                    if e in path_e or g.is_loop(e):
                        continue
                    w = g.other_end(e, v)
                    if w is None:
                        continue
                    if depth == length - 1:
                        if w == start and path_v[1] < path_v[-1]:
                            found.append(Cycle(tuple(path_v), tuple(path_e) + (e,)))
                        continue
                    if w in on_path or w <= start:
                        continue
                    path_v.append(w)
                    path_e.append(e)
                    on_path.add(w)
                    extend()
                    on_path.remove(w)
                    path_e.pop()
                    path_v.pop()

            extend()

    if induced:
        kept = []
        for c in found:
            vs = sorted(c.vertex_set)
            internal = sum(pair_count.get((u, v), 0)
                           for u, v in itertools.combinations(vs, 2))
            has_loop = any(pair_count.get((v, v), 0) for v in vs)
            if not has_loop and internal == len(c):
                kept.append(c)
        found = kept
    found.sort(key=lambda c: c.vertices)
    return tuple(found)


def induced_cycles(g: CubicGraph, length: int) -> tuple[Cycle, ...]:
    """All induced circuits of exactly the given length (3..9)."""
    if not 3 <= length <= 9:
        raise PreconditionError("induced_cycles supports lengths 3..9")
    return cycles_of_length(g, length, induced=True)


def third_edge_at(g: CubicGraph, v: int, used: tuple[int, int]) -> int:
    rest = [e for e, _ in g.ends_at(v) if e not in used]
    if len(rest) != 1:
        raise ValueError(f"vertex {v} has no unique third edge besides {used}")
    return rest[0]


def cycle_boundary(g: CubicGraph, c: Cycle) -> tuple[int, ...]:
    """Boundary edges r_i: the third edge at vertices[i], adjacent to
    edges[i-1] and edges[i] of the cycle."""
    return tuple(third_edge_at(g, v, (c.edges[i - 1], c.edges[i]))
                 for i, v in enumerate(c.vertices))


def all_induced_cycles(g: CubicGraph, max_length: Optional[int] = None) -> list[Cycle]:
    """Induced circuits of every length (2 up to max_length or n)."""
    out: list[Cycle] = []
    top = max_length if max_length is not None else g.n
    for length in range(2, top + 1):
        out.extend(cycles_of_length(g, length, induced=True))
    return out


# ---------------------------------------------------------------------------
# cyclic edge connectivity
# ---------------------------------------------------------------------------


class AboveCap:
    """Sentinel: no cycle-separating cut within the requested cap."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AboveCap"


ABOVE_CAP = AboveCap()


def cycle_separating_sides(g: CubicGraph, cut: Iterable[int]):
    """Two circuit-carrying components left by removing ``cut``, or None."""
    cut = frozenset(cut)
    comps = components(g, removed_edges=cut)
    cyc = [c for c in comps if component_has_circuit(g, c, removed_edges=cut)]
    if len(cyc) >= 2:
        return cyc[0], cyc[1]
    return None


def has_two_disjoint_circuits(g: CubicGraph) -> bool:
    """Whether two vertex-disjoint circuits exist.

    Any circuit contains an induced one, so scanning induced circuits by
    increasing length (stopping at the first with a circuit in the
    remainder) is complete.
    """
    def separated(vs: frozenset[int]) -> bool:
        gone = {i for i, (u, v) in enumerate(g.edges) if u in vs or v in vs}
        return any(component_has_circuit(g, comp, removed_edges=gone)
                   for comp in components(g, removed_vertices=vs))

    for i in range(g.m):
        if g.is_loop(i) and separated(frozenset({g.edges[i][0]})):
            return True
    for length in range(2, g.n + 1):
        for c in cycles_of_length(g, length, induced=True):
            if separated(c.vertex_set):
                return True
    return False


class _BridgeScanner:
    """Reusable iterative bridge finder over a fixed graph.

    Precomputes flat incidence arrays once; each call takes a set of removed
    edges.  Loops are ignored (never bridges)."""

    __slots__ = ("n", "m", "inc", "removed", "disc", "low", "stack", "iters")

    def __init__(self, g: CubicGraph):
        self.n = g.n
        self.m = g.m
        self.inc: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for i, (u, v) in enumerate(g.edges):
            if u is None or v is None or u == v:
                continue
            self.inc[u].append((i, v))
            self.inc[v].append((i, u))
        self.removed = bytearray(g.m)

    def bridges(self, removed_edges: Iterable[int]) -> list[int]:
        removed = self.removed
        marked = list(removed_edges)
        for e in marked:
            removed[e] = 1
        n, inc = self.n, self.inc
        disc = [-1] * n
        low = [0] * n
        out: list[int] = []
        clock = 0
        for root in range(n):
            if disc[root] != -1:
                continue
            stack = [(root, -1, 0)]
            disc[root] = low[root] = clock
            clock += 1
            while stack:
                v, pe, idx = stack[-1]
                lst = inc[v]
                advanced = False
                while idx < len(lst):
                    e, w = lst[idx]
                    idx += 1
                    if removed[e] or e == pe:
                        continue
                    dw = disc[w]
                    if dw == -1:
                        stack[-1] = (v, pe, idx)
                        disc[w] = low[w] = clock
                        clock += 1
                        stack.append((w, e, 0))
                        advanced = True
                        break
                    if dw < low[v]:
                        low[v] = dw
                if not advanced:
                    stack.pop()
                    if pe != -1:
                        u = stack[-1][0]
                        if low[v] < low[u]:
                            low[u] = low[v]
                        if low[v] > disc[u]:
                            out.append(pe)
        for e in marked:
            removed[e] = 0
        return out


def find_cycle_separating_cut(g: CubicGraph, max_size: int) -> Optional[EdgeCut]:
    """Smallest cycle-separating edge cut of size <= max_size, if any.

    Complete search: a minimal witness is the boundary of a connected vertex
    set, so each of its edges is a bridge once the others are removed.  We
    enumerate (k-1)-subsets plus a completing bridge, smallest k first;
    within one k the lexicographically least witness is returned.
    """
    if g.semiedges():
        raise PreconditionError("cyclic connectivity is defined for closed graphs")
    scanner = _BridgeScanner(g)
    for k in range(1, max_size + 1):
        best: Optional[tuple[tuple[int, ...], tuple[set, set]]] = None
        for base in itertools.combinations(range(g.m), k - 1):
            top = base[-1] if base else -1
            for b in scanner.bridges(base):
                if b <= top:
                    continue  # canonical: bridge is the largest element
                cand = base + (b,)
                if best is not None and cand >= best[0]:
                    continue
                sides = cycle_separating_sides(g, cand)
                if sides is not None:
                    best = (cand, sides)
        if best is not None:
            cut, (sa, sb) = best
            return EdgeCut(frozenset(cut), frozenset(sa), frozenset(sb))
    return None


def cyclic_edge_connectivity(g: CubicGraph, cap: int = 7):
    """Exact cyclic edge connectivity if <= cap, else (ABOVE_CAP, None).

    Returns ``(value, witness EdgeCut)``.  Raises
    NoCycleSeparatingCutError when no two vertex-disjoint circuits exist.
    """
    if cap > 8:
        raise PreconditionError("cap must be at most 8")
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    if not has_two_disjoint_circuits(g):
        raise NoCycleSeparatingCutError("no two vertex-disjoint circuits")
    cut = find_cycle_separating_cut(g, cap)
    if cut is None:
        return ABOVE_CAP, None
    return len(cut.edges), cut


def is_cyclically_k_connected(g: CubicGraph, k: int) -> bool:
    """No cycle-separating cut of fewer than k edges."""
    if not has_two_disjoint_circuits(g):
        return True
    return find_cycle_separating_cut(g, k - 1) is None


# ---------------------------------------------------------------------------
# surgery: contraction, deletion, junction, smoothing
# ---------------------------------------------------------------------------


def contract(g: CubicGraph, vertices: Iterable[int]) -> CubicGraph:
    """Contract each component of the induced subgraph on ``vertices``.

    Edges inside one component vanish.  The result must be cubic, which
    happens exactly when every component has three outgoing edges; otherwise
    NonCubicError is raised.
    """
    vset = set(vertices)
    comp_of: dict[int, int] = {}
    n_comps = 0
    for comp in components(g, removed_vertices=set(range(g.n)) - vset):
        for v in comp:
            comp_of[v] = n_comps
        n_comps += 1
    outside = [v for v in range(g.n) if v not in vset]
    new_id = {v: i for i, v in enumerate(outside)}
    base = len(outside)

    def image(v):
        if v is None:
            return None
        return base + comp_of[v] if v in vset else new_id[v]

    new_edges = []
    for u, v in g.edges:
        if (u is not None and v is not None and u in vset and v in vset
                and comp_of[u] == comp_of[v]):
            continue
        new_edges.append((image(u), image(v)))
    try:
        return CubicGraph(base + n_comps, new_edges, g.free_loops)
    except NonCubicError as exc:
        raise NonCubicError(f"contraction is not cubic: {exc}") from exc


def delete_vertices(g: CubicGraph | Multipole, s: Iterable[int]) -> Multipole:
    """Remove the vertices in ``s``; crossing edges become dangling.

    New semiedges are grouped into one connector per deleted vertex, named
    ``v<id>``; pre-existing connectors survive under their own names.
    """
    graph = as_graph(g)
    old_pole = as_multipole(g) if (isinstance(g, Multipole) or graph.semiedges()) else None
    sset = set(s)
    for v in sset:
        if not 0 <= v < graph.n:
            raise PreconditionError(f"vertex {v} not in graph")
    keep = [v for v in range(graph.n) if v not in sset]
    new_id = {v: i for i, v in enumerate(keep)}

    old_sem = graph.semiedges()
    old_name: dict[tuple[int, int], str] = {}
    old_order: list[str] = []
    if old_pole is not None:
        for name, sems in old_pole.connectors:
            old_order.append(name)
            for sidx in sems:
                old_name[old_sem[sidx]] = name

    new_edges: list[End] = []
    end_names: list[tuple[int, int, str]] = []  # (new edge, new side, connector name)
    for i, (u, v) in enumerate(graph.edges):
        iu = None if (u is None or u in sset) else new_id[u]
        iv = None if (v is None or v in sset) else new_id[v]
        if u is not None and v is not None and u in sset and v in sset:
            continue  # internal edge vanishes
        if iu is None and iv is None and not (u is None and v is None):
            continue  # dangling edge at a deleted vertex vanishes
        # normalised storage keeps the vertex end first when there is one
        ends = [(iu, u, 0), (iv, v, 1)]
        # after normalisation a sole vertex end sits at side 0
        if iu is None and iv is not None:
            ends = [(iv, v, 0), (iu, u, 1)]
        new_edges.append((ends[0][0], ends[1][0]))
        eid = len(new_edges) - 1
        for new_side, (img, old_vertex, old_side) in enumerate(ends):
            if img is None:
                if old_vertex is None:
                    nm = old_name.get((i, old_side), "s")
                else:
                    nm = f"v{old_vertex}"
                end_names.append((eid, new_side, nm))

    ng = CubicGraph(len(keep), new_edges, graph.free_loops)
    sem_index = {pair: i for i, pair in enumerate(ng.semiedges())}
    groups: dict[str, list[int]] = {}
    for eid, side, nm in end_names:
        groups.setdefault(nm, []).append(sem_index[(eid, side)])
    ordered = [nm for nm in old_order if nm in groups]
    ordered += [f"v{v}" for v in sorted(sset) if f"v{v}" in groups]
    ordered += [nm for nm in groups if nm not in ordered]
    connectors = tuple((nm, tuple(sorted(groups[nm]))) for nm in ordered)
    return Multipole(ng, connectors)


def junction(m: Multipole, n: Optional[Multipole] = None,
             pairing: Sequence[tuple[int, int]] = ()) -> CubicGraph | Multipole:
    """Join chosen semiedges pairwise; within one multipole if ``n`` is None.

    ``pairing`` lists (semiedge of m, semiedge of n) index pairs; with
    ``n=None`` both indices refer to ``m``.  Each paired couple of free ends
    becomes one edge; pairing the two ends of one isolated edge deletes it.
    Returns a CubicGraph when no free ends remain, else a Multipole whose
    remaining connectors keep their names.
    """
    self_join = n is None
    other = m if self_join else n
    gm, gn = m.graph, other.graph
    used_m = [p[0] for p in pairing]
    used_n = [p[1] for p in pairing]
    if len(set(used_m)) != len(used_m) or len(set(used_n)) != len(used_n):
        raise PreconditionError("pairing must be a bijection on the chosen semiedges")
    if self_join:
        flat = used_m + used_n
        if len(set(flat)) != len(flat):
            raise PreconditionError("a semiedge may be paired only once")

    shift_n = 0 if self_join else gm.m
    shift_v = 0 if self_join else gm.n
    edges: list[End] = list(gm.edges)
    if not self_join:
        edges += [(None if u is None else u + shift_v,
                   None if v is None else v + shift_v) for u, v in gn.edges]

    # union-find over the combined edge list; each class tracks its two
    # surviving outer attachments (vertex or None, original end key)
    parent = list(range(len(edges)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    attach: list[list[tuple[Optional[int], tuple[int, int]]]] = [
        [(u, (i, 0)), (v, (i, 1))] for i, (u, v) in enumerate(edges)
    ]

    def locate(mp: Multipole, sem_idx: int, eshift: int) -> tuple[int, int]:
        e, side = mp.graph.semiedges()[sem_idx]
        return e + eshift, side

    dead: set[int] = set()
    for sm, sn in pairing:
        ka = locate(m, sm, 0)
        kb = locate(other, sn, shift_n)
        ra, rb = find(ka[0]), find(kb[0])
        enda = next(p for p in attach[ra] if p[1] == ka)
        endb = next(p for p in attach[rb] if p[1] == kb)
        if enda[0] is not None or endb[0] is not None:
            raise PreconditionError("pairing must reference free ends")
        if ra == rb:
            # both free ends of one (possibly merged) edge: delete it
            dead.add(ra)
            continue
        keep = [p for p in attach[ra] if p[1] != ka] + \
               [p for p in attach[rb] if p[1] != kb]
        parent[rb] = ra
        attach[ra] = keep

    final_edges: list[End] = []
    old_end_to_new: dict[tuple[int, int], tuple[int, int]] = {}
    for i in range(len(edges)):
        if find(i) != i or i in dead:
            continue
        pts = attach[i]
        if len(pts) != 2:
            raise ConsistencyError("edge lost an end during junction")
        (u, ka), (v, kb) = pts
        final_edges.append((u, v))
        nid = len(final_edges) - 1
        flipped = _norm_end((u, v)) != (u, v)
        old_end_to_new[ka] = (nid, 1 if flipped else 0)
        old_end_to_new[kb] = (nid, 0 if flipped else 1)

    total_n = gm.n + (0 if self_join else gn.n)
    free_loops = gm.free_loops + (0 if self_join else gn.free_loops)
    out = CubicGraph(total_n, final_edges, free_loops)
    if out.is_closed():
        return out

    new_sem_index = {pair: i for i, pair in enumerate(out.semiedges())}
    connectors: list[tuple[str, tuple[int, ...]]] = []

    def surviving(mp: Multipole, eshift: int):
        for name, sems in mp.connectors:
            kept = []
            for sidx in sems:
                e, side = mp.graph.semiedges()[sidx]
                key = old_end_to_new.get((e + eshift, side))
                if key is not None and key in new_sem_index:
                    kept.append(new_sem_index[key])
            if kept:
                connectors.append((name, tuple(kept)))

    surviving(m, 0)
    if not self_join:
        surviving(other, shift_n)
    return Multipole(out, tuple(connectors))


def smooth_edge(g: CubicGraph, e: Edge) -> CubicGraph:
    """Delete edge ``e`` and suppress its endpoints once they become 2-valent.

    Suppressing a vertex merges its two remaining edge ends into one edge; a
    loop at a suppressed vertex closes into a free loop.
    """
    u, v = g.edges[e]
    if u is None or v is None:
        raise PreconditionError("cannot smooth a dangling or isolated edge")
    to_suppress = {u, v}
    ends: dict[int, list[tuple[Optional[int], int]]] = {}
    for i, (a, b) in enumerate(g.edges):
        if i == e:
            continue
        ends[i] = [(a, 0), (b, 1)]
    free_loops = g.free_loops
    for w in sorted(to_suppress):
        incident = [(i, k) for i, pts in ends.items()
                    for k, (vert, _) in enumerate(pts) if vert == w]
        if len(incident) != 2:
            raise ConsistencyError("suppressed vertex is not 2-valent")
        (i1, k1), (i2, k2) = incident
        if i1 == i2:
            del ends[i1]
            free_loops += 1
            continue
        far = ends[i2][1 - k2]
        ends[i1][k1] = (far[0], far[1])
        del ends[i2]
    keep = [w for w in range(g.n) if w not in to_suppress]
    new_id = {w: i for i, w in enumerate(keep)}
    new_edges = []
    for i in sorted(ends):
        (a, _), (b, _) = ends[i]
        new_edges.append((None if a is None else new_id[a],
                          None if b is None else new_id[b]))
    return CubicGraph(len(keep), new_edges, free_loops)


@dataclass(frozen=True)
class Surgery:
    """Result of a rebuild: the new graph plus vertex and edge mappings.

    Dropped items map to None; both edges of a joined pair map to the merged
    edge.  The contraction cap vertex, when present, is the last vertex id.
    """

    graph: CubicGraph
    vertex_map: dict[int, Optional[int]]
    edge_map: dict[int, Optional[int]]
    cap_vertex: Optional[int] = None


def surgery(g: CubicGraph, *, drop_vertices: Iterable[int] = (),
            drop_edges: Iterable[int] = (),
            joins: Sequence[tuple[int, int]] = (),
            cap: Sequence[int] = ()) -> Surgery:
    """Drop vertices/edges, then close the dangling stubs.

    Each edge in a ``joins`` pair must have exactly one surviving endpoint;
    the pair merges into a single edge between the survivors.  ``cap`` lists
    edges (each with one surviving endpoint) that get attached to one new
    vertex -- exactly three of them, to keep the result cubic.  Edges whose
    endpoints are both dropped vanish.
    """
    dropped_v = set(drop_vertices)
    dropped_e = set(drop_edges)
    keep_v = [v for v in range(g.n) if v not in dropped_v]
    vmap: dict[int, Optional[int]] = {v: i for i, v in enumerate(keep_v)}
    for v in dropped_v:
        vmap[v] = None
    cap_vertex = None
    n_new = len(keep_v)
    if cap:
        if len(cap) != 3:
            raise PreconditionError("a contraction cap needs exactly 3 edges")
        cap_vertex = n_new
        n_new += 1

    join_partner: dict[int, int] = {}
    for a, b in joins:
        if a in join_partner or b in join_partner or a == b:
            raise PreconditionError("join pairs must be disjoint")
        join_partner[a] = b
        join_partner[b] = a
    cap_set = set(cap)
    if cap_set & set(join_partner) or cap_set & dropped_e or set(join_partner) & dropped_e:
        raise PreconditionError("an edge can play only one role in a surgery")

    def survivor(i: int) -> int:
        u, v = g.edges[i]
        alive = [vmap[x] for x in (u, v) if x is not None and vmap[x] is not None]
        if len(alive) != 1:
            raise PreconditionError(f"edge {i} does not have exactly one surviving end")
        return alive[0]

    new_edges: list[End] = []
    emap: dict[int, Optional[int]] = {}
    done: set[int] = set()
    for i, (u, v) in enumerate(g.edges):
        if i in done:
            continue
        if i in dropped_e:
            emap[i] = None
            continue
        iu = None if u is None else vmap[u]
        iv = None if v is None else vmap[v]
        if i in join_partner:
            j = join_partner[i]
            new_edges.append((survivor(i), survivor(j)))
            emap[i] = emap[j] = len(new_edges) - 1
            done.add(j)
        elif i in cap_set:
            new_edges.append((survivor(i), cap_vertex))
            emap[i] = len(new_edges) - 1
        elif iu is None and iv is None and (u is not None or v is not None):
            emap[i] = None  # fully swallowed by the dropped region
        else:
            new_edges.append((iu, iv))
            emap[i] = len(new_edges) - 1
    return Surgery(CubicGraph(n_new, new_edges, g.free_loops), vmap, emap, cap_vertex)


def map_cycle(s: Surgery, c: "Cycle") -> "Cycle":
    """Image of a cycle under a surgery that keeps all its vertices and edges."""
    vs = tuple(s.vertex_map[v] for v in c.vertices)
    es = tuple(s.edge_map[e] for e in c.edges)
    if any(x is None for x in vs) or any(x is None for x in es):
        raise PreconditionError("cycle does not survive the surgery")
    return Cycle(vs, es)  # type: ignore[arg-type]


def find_all_cycle_separating_cuts(g: CubicGraph, size: int) -> list[EdgeCut]:
    """Every cycle-separating cut of exactly the given size, lex-ordered."""
    scanner = _BridgeScanner(g)
    seen: set[tuple[int, ...]] = set()
    out: list[EdgeCut] = []
    for base in itertools.combinations(range(g.m), size - 1):
        top = base[-1] if base else -1
        for b in scanner.bridges(base):
            if b <= top:
                continue
            cand = base + (b,)
            if cand in seen:
                continue
            seen.add(cand)
            sides = cycle_separating_sides(g, cand)
            if sides is not None:
                out.append(EdgeCut(frozenset(cand), frozenset(sides[0]),
                                   frozenset(sides[1])))
    out.sort(key=lambda c: tuple(sorted(c.edges)))
    return out


def delete_edges(g: CubicGraph, removed: Iterable[int]) -> list[End]:
    """Endpoint list of g with the given edges removed (for colouring calls).

    Edge ids are preserved by keeping placeholders: removed edges appear as
    ``None`` entries the colouring engine skips.
    """
    removed = set(removed)
    return [None if i in removed else g.edges[i] for i in range(g.m)]  # type: ignore[list-item]


# ---------------------------------------------------------------------------
# isomorphism (tests and fixture checks only)
# ---------------------------------------------------------------------------


def canonical_form(g: CubicGraph, vertex_colours: Optional[Sequence[int]] = None,
                   sem_colours: Optional[dict[int, int]] = None) -> tuple:
    """A labelling-invariant certificate via individualisation-refinement.

    Semiedges become pendant marker vertices (optionally coloured per
    connector), so multipoles can be compared too.  Not performance-tuned;
    fine for graphs up to ~40 vertices.
    """
    n = g.n
    sem = g.semiedges()
    total = n + len(sem)
    col = list(vertex_colours) if vertex_colours is not None else [0] * n
    for i in range(len(sem)):
        c = -1 if sem_colours is None else -1 - sem_colours.get(i, -10 ** 6)
        col.append(c)

    adj: list[dict[int, int]] = [dict() for _ in range(total)]

    def add(a, b):
        adj[a][b] = adj[a].get(b, 0) + 1
        if a != b:
            adj[b][a] = adj[b].get(a, 0) + 1

    sem_vertex = {pair: n + i for i, pair in enumerate(sem)}
    for i, (u, v) in enumerate(g.edges):
        a = u if u is not None else sem_vertex[(i, 0)]
        b = v if v is not None else sem_vertex[(i, 1)]
        add(a, b)

    def refine(partition: list[list[int]]) -> list[list[int]]:
        while True:
            index_of = {}
            for ci, cell in enumerate(partition):
                for v in cell:
                    index_of[v] = ci
            new_partition = []
            changed = False
            for cell in partition:
                if len(cell) == 1:
                    new_partition.append(cell)
                    continue
                sig: dict[tuple, list[int]] = {}
                for v in cell:
                    key = tuple(sorted((index_of[w], c) for w, c in adj[v].items()))
                    sig.setdefault(key, []).append(v)
                parts = [sig[k] for k in sorted(sig)]
                if len(parts) > 1:
                    changed = True
                new_partition.extend(parts)
            partition = new_partition
            if not changed:
                return partition

    groups: dict[tuple, list[int]] = {}
    for v in range(total):
        groups.setdefault((col[v], len(adj[v])), []).append(v)
    initial = refine([groups[k] for k in sorted(groups)])

    best: list[Optional[tuple]] = [None]

    def certificate(order: list[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        rows = tuple(tuple(sorted((pos[w], c) for w, c in adj[v].items()))
                     for v in order)
        return (tuple(col[v] for v in order), rows)

    def search(partition: list[list[int]]):
        if all(len(c) == 1 for c in partition):
            cert = certificate([c[0] for c in partition])
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        idx = next(i for i, c in enumerate(partition) if len(c) > 1)
        cell = partition[idx]
        for v in sorted(cell):
            new_part = (partition[:idx] + [[v]] + [[w for w in cell if w != v]]
                        + partition[idx + 1:])
            search(refine(new_part))

    search(initial)
    return (total, g.free_loops, best[0])


def is_isomorphic(a: CubicGraph, b: CubicGraph) -> bool:
    if a.n != b.n or a.m != b.m or a.free_loops != b.free_loops:
        return False
    return canonical_form(a) == canonical_form(b)


def multipole_canonical_form(m: Multipole) -> tuple:
    """Certificate that also distinguishes connector membership."""
    rank = {name: i for i, name in enumerate(sorted(name for name, _ in m.connectors))}
    sem_colours = {}
    for name, sems in m.connectors:
        for s in sems:
            sem_colours[s] = rank[name]
    return canonical_form(m.graph, sem_colours=sem_colours)


def is_dart_isomorphic(a: Multipole | CubicGraph, b: Multipole | CubicGraph) -> bool:
    """Isomorphism respecting semiedge/connector structure."""
    return multipole_canonical_form(as_multipole(a)) == multipole_canonical_form(as_multipole(b))
