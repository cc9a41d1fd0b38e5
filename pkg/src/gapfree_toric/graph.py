"""Simple graphs and the graph-theoretic predicates used throughout the package.

Vertices are the integers ``1..n``. Edges are stored as sorted pairs and the
order of the edge list is significant: edge ``i`` (0-based) corresponds to the
variable ``y_{i+1}`` of the toric ring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Optional, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graph input."""


class GraphParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``1..n``.

    ``labels`` maps the internal vertex ``i`` to ``labels[i - 1]`` in the source
    the graph was parsed from; it is the identity for graphs built in code.
    """

    n: int
    edges: tuple[Edge, ...]
    labels: tuple[int, ...] = ()
    _adj: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        norm = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphError(f"edge {{{u},{v}}} outside vertex range 1..{self.n}")
            norm.append((min(u, v), max(u, v)))
        if len(set(norm)) != len(norm):
            raise GraphError("duplicate edge")
        adj = [set() for _ in range(self.n + 1)]
        for u, v in norm:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", tuple(norm))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, self.n + 1)))
        elif len(self.labels) != self.n:
            raise GraphError("labels must have one entry per vertex")
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(norm)})

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: Optional[int] = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = max((max(e) for e in edges), default=0)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_index(self, u: int, v: int) -> int:
        """0-based index of edge ``{u, v}``; raises ``KeyError`` if absent."""
        return self._index[(min(u, v), max(u, v))]

    def isolated_vertices(self) -> list[int]:
        return [v for v in self.vertices if not self._adj[v]]

    def subgraph_on_edges(self, indices: Iterable[int]) -> "Graph":
        """Graph with the given edges (in the given order), same vertex set."""
        return Graph(self.n, tuple(self.edges[i] for i in indices))

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    def components(self) -> list[list[int]]:
        seen = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def parse_graph(text: str) -> Graph:
    """Parse an edge list, one ``u v`` pair per line.

    ``#`` starts a comment and blank lines are ignored. Vertices that appear in
    the file are relabeled ``1..n`` in increasing order of their original
    labels, so vertex numbers that never occur (isolated vertices) are dropped.
    The original labels are kept in ``Graph.labels``.
    """
    raw: list[tuple[int, int, int]] = []
    seen: dict[frozenset, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(lineno, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(lineno, f"non-integer vertex in {line!r}") from None
        if u < 1 or v < 1:
            raise GraphParseError(lineno, "vertices must be positive integers")
        if u == v:
            raise GraphParseError(lineno, f"loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise GraphParseError(lineno, f"duplicate edge {{{u},{v}}} (first on line {seen[key]})")
        seen[key] = lineno
        raw.append((lineno, u, v))
    labels = sorted({x for _, u, v in raw for x in (u, v)})
    relabel = {old: new for new, old in enumerate(labels, start=1)}
    edges = tuple((relabel[u], relabel[v]) for _, u, v in raw)
    return Graph(len(labels), edges, tuple(labels))


def relabeling(g: Graph) -> dict[int, int]:
    """Original label -> internal vertex, for the labels that changed."""
    return {old: new for new, old in enumerate(g.labels, start=1) if old != new}


def complement(g: Graph) -> Graph:
    """Complement on the same vertex set; isolated vertices are kept."""
    edges = tuple((u, v) for u, v in combinations(g.vertices, 2) if not g.has_edge(u, v))
    return Graph(g.n, edges, g.labels)


# -- induced cycles ---------------------------------------------------------


def induced_cycles(g: Graph, min_length: int = 3, max_length: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Yield every chordless cycle of ``g`` once, in lexicographic order.

    Each cycle is reported by its lexicographically least vertex sequence: it
    starts at its smallest vertex and the second vertex is smaller than the last.
    """
    if max_length is None:
        max_length = g.n
    for s in g.vertices:
        yield from _induced_cycles_from(g, s, min_length, max_length)


def _induced_cycles_from(g, s, min_length, max_length):
    path = [s]
    on_path = {s}

    def extend():
        last = path[-1]
        for w in sorted(g.neighbors(last)):
            if w <= s or w in on_path:
                continue
            # w may touch only the last vertex, and s when it closes the cycle
            if any(g.has_edge(w, x) for x in path[1:-1]):
                continue
            closes = len(path) >= 2 and g.has_edge(w, s)
            if closes:
                length = len(path) + 1
                if min_length <= length <= max_length and path[1] < w:
                    yield tuple(path) + (w,)
                continue
            if len(path) + 1 >= max_length:
                continue
            path.append(w)
            on_path.add(w)
            yield from extend()
            path.pop()
            on_path.discard(w)

    yield from extend()


class CycleWitness(NamedTuple):
    vertices: tuple[int, ...]
    induced: bool = True


def is_induced_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for a in range(k):
        for b in range(a + 1, k):
            adjacent = b == a + 1 or (a == 0 and b == k - 1)
            if g.has_edge(cycle[a], cycle[b]) != adjacent:
                return False
    return True


def find_induced_cycle(g: Graph, length: int) -> Optional[CycleWitness]:
    """Lexicographically least chordless cycle with exactly ``length`` vertices."""
    if length < 4:
        raise ValueError("induced cycle length must be at least 4")
    for cyc in induced_cycles(g, length, length):
        return CycleWitness(cyc)
    return None


def shortest_long_induced_cycle(g: Graph) -> Optional[CycleWitness]:
    """Shortest chordless cycle of length >= 4 (lexicographically least among those)."""
    for length in range(4, g.n + 1):
        w = find_induced_cycle(g, length)
        if w is not None:
            return w
    return None


# -- gap-freeness -----------------------------------------------------------


class GapFreeResult(NamedTuple):
    gap_free: bool
    witness: Optional[tuple[Edge, Edge]]

    def __bool__(self):
        return self.gap_free


def find_gap(g: Graph) -> Optional[tuple[Edge, Edge]]:
    """First pair of vertex-disjoint edges with no edge between them."""
    edges = sorted(g.edges)
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if len({a, b, c, d}) < 4:
                continue
            if not (g.has_edge(a, c) or g.has_edge(a, d) or g.has_edge(b, c) or g.has_edge(b, d)):
                return (a, b), (c, d)
    return None


def is_gap_free(g: Graph) -> GapFreeResult:
    """Decide gap-freeness by a direct scan, cross-checked on the complement.

    The two routes (unbridged edge pair in ``g``; induced 4-cycle in the
    complement) are independent and must agree.
    """
    gap = find_gap(g)
    c4 = find_induced_cycle(complement(g), 4) if g.n >= 4 else None
    if (gap is None) != (c4 is None):
        raise AssertionError(f"gap-free routes disagree: gap={gap}, complement C4={c4}")
    return GapFreeResult(gap is None, gap)


# -- chordality -------------------------------------------------------------


class ChordalResult(NamedTuple):
    chordal: bool
    peo: Optional[tuple[int, ...]]
    witness: Optional[CycleWitness]

    def __bool__(self):
        return self.chordal


def maximum_cardinality_search(g: Graph) -> list[int]:
    """Visit order of maximum cardinality search; ties go to the smallest vertex."""
    weight = {v: 0 for v in g.vertices}
    order = []
    while weight:
        v = max(weight, key=lambda x: (weight[x], -x))
        del weight[v]
        order.append(v)
        for w in g.neighbors(v):
            if w in weight:
                weight[w] += 1
    return order


def is_perfect_elimination_ordering(g: Graph, order: Sequence[int]) -> bool:
    """Each vertex's neighbours that come later in ``order`` must form a clique."""
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [w for w in g.neighbors(v) if pos[w] > pos[v]]
        for a, b in combinations(later, 2):
            if not g.has_edge(a, b):
                return False
    return True


def is_chordal(g: Graph) -> ChordalResult:
    """Chordality test returning a perfect elimination ordering or a chordless cycle.

    The elimination ordering is the reverse of a maximum cardinality search and
    is re-verified before it is returned.
    """
    peo = tuple(reversed(maximum_cardinality_search(g)))
    if is_perfect_elimination_ordering(g, peo):
        return ChordalResult(True, peo, None)
    witness = shortest_long_induced_cycle(g)
    if witness is None:
        raise AssertionError("MCS ordering failed but no chordless cycle was found")
    return ChordalResult(False, None, witness)


def k_step_linearity(g: Graph) -> float:
    """Largest ``k`` with ``I(g)`` k-step linear, ``math.inf`` for a linear resolution.

    Uses the complement: ``g`` is k-step linear iff the complement has no induced
    cycle of length 4..k+3.
    """
    w = shortest_long_induced_cycle(complement(g))
    if w is None:
        return math.inf
    return len(w.vertices) - 4


# -- odd cycle condition ----------------------------------------------------


class OddCycleResult(NamedTuple):
    holds: bool
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]]

    def __bool__(self):
        return self.holds


def odd_cycle_condition(g: Graph) -> OddCycleResult:
    """Check that any two vertex-disjoint chordless odd cycles are joined by an edge.

    Only defined for connected graphs; minimal odd cycles are taken to be the
    chordless ones.
    """
    if not g.is_connected():
        parts = "; ".join("{" + ",".join(map(str, c)) + "}" for c in g.components())
        raise GraphError(f"odd cycle condition needs a connected graph, components: {parts}")
    odd = [c for c in induced_cycles(g) if len(c) % 2 == 1]
    for i, c1 in enumerate(odd):
        s1 = set(c1)
        for c2 in odd[i + 1:]:
            if s1.intersection(c2):
                continue
            if not any(g.has_edge(a, b) for a in c1 for b in c2):
                return OddCycleResult(False, (c1, c2))
    return OddCycleResult(True, None)


def standard_graph(name: str, *args: int) -> Graph:
    """A few named families used in tests and examples."""
    if name == "path":
        (n,) = args
        return Graph.from_edges([(i, i + 1) for i in range(1, n)], n)
    if name == "cycle":
        (n,) = args
        return Graph.from_edges([(i, i % n + 1) for i in range(1, n + 1)], n)
    if name == "complete":
        (n,) = args
        return Graph.from_edges(combinations(range(1, n + 1), 2), n)
    if name == "multipartite":
        edges, start, parts = [], 1, []
        for size in args:
            parts.append(range(start, start + size))
            start += size
        for a, b in combinations(parts, 2):
            edges.extend((u, v) for u in a for v in b)
        return Graph.from_edges(edges, start - 1)
    if name == "star":
        (k,) = args
        return Graph.from_edges([(1, i) for i in range(2, k + 2)], k + 1)
    raise ValueError(f"unknown graph family {name!r}")
