"""Walks of a graph and the binomials of its toric ideal.

A binomial ``y^plus - y^minus`` is stored as a pair of exponent vectors indexed
by the graph's edges. It lies in the toric ideal iff both sides have the same
vertex-degree vector, i.e. the two edge multisets cover every vertex equally
often.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence, Union

from .graph import Graph

DEFAULT_MAX_EDGES = 14


def max_edges_bound() -> int:
    return int(os.environ.get("TORIC_MAX_EDGES", DEFAULT_MAX_EDGES))


class WalkError(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


# -- binomials --------------------------------------------------------------


def _monomial_str(exps: Sequence[int]) -> str:
    factors = []
    for i, a in enumerate(exps):
        if a == 1:
            factors.append(f"y{i + 1}")
        elif a > 1:
            factors.append(f"y{i + 1}^{a}")
    return "*".join(factors) if factors else "1"


@dataclass(frozen=True)
class Binomial:
    """Pure difference binomial ``y^plus - y^minus``."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def __post_init__(self):
        plus, minus = tuple(self.plus), tuple(self.minus)
        if len(plus) != len(minus):
            raise ValueError("exponent vectors of different length")
        common = [min(a, b) for a, b in zip(plus, minus)]
        if any(common):
            plus = tuple(a - c for a, c in zip(plus, common))
            minus = tuple(b - c for b, c in zip(minus, common))
        if plus == minus:
            raise ValueError("zero binomial")
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> "Binomial":
        return cls(tuple(max(a, 0) for a in vec), tuple(max(-a, 0) for a in vec))

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @property
    def degree(self) -> int:
        return sum(self.plus)

    def negated(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def normalized(self) -> "Binomial":
        """Sign representative: the lexicographically larger side comes first."""
        return self if self.plus > self.minus else self.negated()

    def support(self) -> frozenset[int]:
        return frozenset(i for i, (a, b) in enumerate(zip(self.plus, self.minus)) if a or b)

    def pretty(self) -> str:
        return f"{_monomial_str(self.plus)} - {_monomial_str(self.minus)}"

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus), "pretty": self.pretty()}

    def __str__(self):
        return self.pretty()


def vertex_degrees(g: Graph, exps: Sequence[int]) -> tuple[int, ...]:
    deg = [0] * (g.n + 1)
    for (u, v), a in zip(g.edges, exps):
        if a:
            deg[u] += a
            deg[v] += a
    return tuple(deg[1:])


def in_toric_ideal(b: Binomial, g: Graph) -> bool:
    return b.nvars == g.m and vertex_degrees(g, b.plus) == vertex_degrees(g, b.minus)


def parse_monomial(text: str, nvars: int) -> tuple[int, ...]:
    """Parse ``y1*y5^2``-style monomials (1-based variable indices)."""
    exps = [0] * nvars
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.replace(" ", "").split("*"):
        base, _, power = factor.partition("^")
        if not base.startswith("y"):
            raise ValueError(f"bad factor {factor!r}")
        exps[int(base[1:]) - 1] += int(power) if power else 1
    return tuple(exps)


def parse_binomial(text: str, nvars: int) -> Binomial:
    left, right = text.split("-")
    return Binomial(parse_monomial(left, nvars), parse_monomial(right, nvars))


# -- walks ------------------------------------------------------------------


@dataclass(frozen=True)
class Walk:
    """Walk given by its vertex sequence ``v0 -> v1 -> ... -> vq``."""

    graph: Graph
    vertices: tuple[int, ...]

    def __post_init__(self):
        verts = tuple(self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < 2:
            raise WalkError("a walk needs at least one edge")
        for a, b in zip(verts, verts[1:]):
            if not self.graph.has_edge(a, b):
                raise WalkError(f"{a} -> {b} is not an edge")

    @classmethod
    def closed(cls, graph: Graph, cycle: Sequence[int]) -> "Walk":
        """Closed walk through ``cycle`` and back to its first vertex."""
        return cls(graph, tuple(cycle) + (cycle[0],))

    def __len__(self):
        return len(self.vertices) - 1

    @property
    def is_closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def is_even(self) -> bool:
        return len(self) % 2 == 0

    @property
    def edge_indices(self) -> tuple[int, ...]:
        g = self.graph
        return tuple(g.edge_index(a, b) for a, b in zip(self.vertices, self.vertices[1:]))

    def reversed(self) -> "Walk":
        return Walk(self.graph, self.vertices[::-1])

    def rotated(self, k: int) -> "Walk":
        if not self.is_closed:
            raise WalkError("only closed walks can be rotated")
        body = self.vertices[:-1]
        k %= len(body)
        body = body[k:] + body[:k]
        return Walk(self.graph, body + (body[0],))

    def __str__(self):
        return "->".join(map(str, self.vertices))


def walk_binomial(w: Walk) -> Binomial:
    """Odd-position edges minus even-position edges of a closed even walk."""
    if not w.is_closed:
        raise WalkError("walk is not closed")
    if not w.is_even:
        raise WalkError("walk has odd length")
    plus = [0] * w.graph.m
    minus = [0] * w.graph.m
    for pos, e in enumerate(w.edge_indices):
        if pos % 2 == 0:
            plus[e] += 1
        else:
            minus[e] += 1
    try:
        return Binomial(tuple(plus), tuple(minus))
    except ValueError:
        raise WalkError("walk binomial is zero") from None


def parity_coloring(w: Walk) -> Optional[dict[int, str]]:
    """Colour odd-position edges red and even-position edges black.

    Returns ``None`` when some edge occurs in positions of both parities.
    """
    if not (w.is_closed and w.is_even):
        raise WalkError("parity colouring needs a closed even walk")
    colors: dict[int, str] = {}
    for pos, e in enumerate(w.edge_indices):
        c = "red" if pos % 2 == 0 else "black"
        if colors.setdefault(e, c) != c:
            return None
    return colors


# -- primitivity ------------------------------------------------------------


def conformal_reduction(b: Binomial, g: Graph) -> Optional[tuple[int, ...]]:
    """A nonzero kernel vector strictly conformally below ``b``, if any.

    Candidates ``u <= plus`` and ``v <= minus`` are bucketed by their vertex
    degree vectors; any match other than ``(0, 0)`` and ``(plus, minus)``
    gives a conformally smaller kernel element ``u - v``.
    """
    if not in_toric_ideal(b, g):
        raise ValueError(f"{b.pretty()} is not in the toric ideal of the graph")
    plus_idx = [i for i, a in enumerate(b.plus) if a]
    minus_idx = [i for i, a in enumerate(b.minus) if a]

    def sub_vectors(exps, idx):
        for choice in product(*(range(exps[i] + 1) for i in idx)):
            vec = [0] * b.nvars
            for i, a in zip(idx, choice):
                vec[i] = a
            yield tuple(vec)

    by_image: dict[tuple, list] = {}
    for u in sub_vectors(b.plus, plus_idx):
        by_image.setdefault(vertex_degrees(g, u), []).append(u)
    zero = (0,) * b.nvars
    for v in sub_vectors(b.minus, minus_idx):
        for u in by_image.get(vertex_degrees(g, v), ()):
            if (u == zero and v == zero) or (u == b.plus and v == b.minus):
                continue
            return tuple(x - y for x, y in zip(u, v))
    return None


def is_primitive(b: Binomial, g: Graph) -> bool:
    """Whether ``b`` is conformally minimal among nonzero kernel vectors."""
    return conformal_reduction(b, g) is None


# -- cycles and circuits ----------------------------------------------------


def simple_cycles(g: Graph) -> Iterator[tuple[int, ...]]:
    """Every cycle of ``g`` once: starts at its least vertex, second < last."""
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def extend():
            for w in sorted(g.neighbors(path[-1])):
                if w < s:
                    continue
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        yield tuple(path)
                    continue
                if w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                yield from extend()
                path.pop()
                on_path.discard(w)

        yield from extend()


def _rotate_to(cycle: Sequence[int], v: int) -> tuple[int, ...]:
    k = cycle.index(v)
    return tuple(cycle[k:]) + tuple(cycle[:k])


def _connecting_paths(g: Graph, c1: Sequence[int], c2: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Paths from a vertex of ``c1`` to one of ``c2`` with interior outside both."""
    s1, s2 = set(c1), set(c2)
    for a in sorted(s1):
        path = [a]
        on_path = {a}

        def extend():
            for w in sorted(g.neighbors(path[-1])):
                if w in s2:
                    yield tuple(path) + (w,)
                elif w not in s1 and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    yield from extend()
                    path.pop()
                    on_path.discard(w)

        yield from extend()


def bowtie_walk(g: Graph, c1: Sequence[int], path: Sequence[int], c2: Sequence[int]) -> Walk:
    """The closed walk ``C1, p, C2, -p`` with ``p`` running from ``C1`` to ``C2``."""
    r1 = _rotate_to(c1, path[0])
    r2 = _rotate_to(c2, path[-1])
    verts = r1 + tuple(path) + r2[1:] + tuple(reversed(path))
    return Walk(g, verts)


def circuit_walks(g: Graph) -> Iterator[tuple[Walk, str]]:
    """Walks of the three circuit shapes, tagged ``even-cycle``, ``odd-pair`` or ``bow-tie``."""
    cycles = list(simple_cycles(g))
    odd = [c for c in cycles if len(c) % 2]
    for c in cycles:
        if len(c) % 2 == 0:
            yield Walk.closed(g, c), "even-cycle"
    for i, c1 in enumerate(odd):
        for c2 in odd[i + 1:]:
            common = set(c1) & set(c2)
            if len(common) == 1:
                (v,) = common
                verts = _rotate_to(c1, v) + _rotate_to(c2, v) + (v,)
                yield Walk(g, verts), "odd-pair"
            elif not common:
                for p in _connecting_paths(g, c1, c2):
                    yield bowtie_walk(g, c1, p, c2), "bow-tie"


def enumerate_circuits(g: Graph) -> set[Binomial]:
    """Circuits of the toric ideal: even cycles, odd cycles meeting in one vertex, bow-ties."""
    return {walk_binomial(w).normalized() for w, _ in circuit_walks(g)}


# -- Graver basis -----------------------------------------------------------


def primitive_walks(g: Graph, max_edges: Optional[int] = None) -> dict[Binomial, Walk]:
    """One primitive walk per Graver element, keyed by the normalized binomial.

    Closed even walks are generated depth first from their least edge, with
    each edge used at most twice and always in positions of one parity. A walk
    is abandoned as soon as it revisits a vertex at even distance, since the
    segment in between would be a proper closed even subwalk. Survivors are
    filtered by conformal minimality.
    """
    bound = max_edges_bound() if max_edges is None else max_edges
    if g.m > bound:
        raise BoundExceeded(f"graph has {g.m} edges, Graver enumeration is limited to {bound} (TORIC_MAX_EDGES)")
    m = g.m
    nbrs = {v: sorted((w, g.edge_index(v, w)) for w in g.neighbors(v)) for v in g.vertices}
    found: dict[Binomial, Walk] = {}
    rejected: set[Binomial] = set()

    for e0, (a, b) in enumerate(g.edges):
        verts = [a, b]
        occ = {a: [0], b: [1]}
        count = [0] * m
        color = [-1] * m
        count[e0] = 1
        color[e0] = 1

        def record():
            plus = tuple(c if color[i] == 1 else 0 for i, c in enumerate(count))
            minus = tuple(c if color[i] == 0 else 0 for i, c in enumerate(count))
            bn = Binomial(plus, minus).normalized()
            if bn in found or bn in rejected:
                return
            if is_primitive(bn, g):
                found[bn] = Walk(g, tuple(verts))
            else:
                rejected.add(bn)

        def extend():
            x = verts[-1]
            k = len(verts) - 1
            par = (k + 1) % 2
            for y, f in nbrs[x]:
                if f < e0 or count[f] == 2 or (color[f] != -1 and color[f] != par):
                    continue
                even_hits = [i for i in occ.get(y, ()) if (k + 1 - i) % 2 == 0]
                if even_hits:
                    if even_hits == [0]:
                        verts.append(y)
                        count[f] += 1
                        old = color[f]
                        color[f] = par
                        record()
                        color[f] = old
                        count[f] -= 1
                        verts.pop()
                    continue
                verts.append(y)
                occ.setdefault(y, []).append(k + 1)
                count[f] += 1
                old = color[f]
                color[f] = par
                extend()
                color[f] = old
                count[f] -= 1
                occ[y].pop()
                verts.pop()

        extend()
    return found


def enumerate_graver(g: Graph, max_edges: Optional[int] = None) -> set[Binomial]:
    """Graver basis of the toric ideal as a set of normalized binomials."""
    return set(primitive_walks(g, max_edges))


# -- classification of primitive walks --------------------------------------


class NotPrimitiveError(WalkError):
    def __init__(self, message, evidence=None):
        super().__init__(message)
        self.evidence = evidence


@dataclass(frozen=True)
class EvenCycle:
    cycle: tuple[int, ...]
    type_number = 1

    def walk_vertices(self) -> tuple[int, ...]:
        return self.cycle + (self.cycle[0],)


@dataclass(frozen=True)
class TwoOddCyclesOneVertex:
    first: tuple[int, ...]
    second: tuple[int, ...]
    type_number = 2

    @property
    def shared(self) -> int:
        return self.first[0]

    def walk_vertices(self) -> tuple[int, ...]:
        return self.first + self.second + (self.first[0],)


@dataclass(frozen=True)
class OddCyclesWithPaths:
    """Odd cycles ``C_1..C_h`` joined cyclically by paths ``p_1..p_h``.

    Cycle ``C_i`` is traversed from its first vertex back to it, then ``p_i``
    leads from there to the first vertex of ``C_{i+1}`` (of ``C_1`` for
    ``i = h``). A bow-tie traversed as ``C, p, C', -p`` has ``h = 2`` and
    ``paths[1] == reversed(paths[0])``.
    """

    cycles: tuple[tuple[int, ...], ...]
    paths: tuple[tuple[int, ...], ...]
    type_number = 3

    @property
    def h(self) -> int:
        return len(self.cycles)

    @property
    def representation(self) -> str:
        if self.h == 2 and self.paths[1] == self.paths[0][::-1]:
            return "bow-tie: h=2 with the second path the reverse of the first"
        return f"h={self.h}"

    def walk_vertices(self) -> tuple[int, ...]:
        verts: tuple[int, ...] = ()
        for c, p in zip(self.cycles, self.paths):
            verts += c + p[:-1]
        return verts + (self.cycles[0][0],)

    def bowties(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]:
        """Consecutive triples ``(C_i, p_i, C_{i+1})``, cycles starting at the path ends."""
        h = self.h
        for i in range(h):
            yield self.cycles[i], self.paths[i], self.cycles[(i + 1) % h]


WalkType = Union[EvenCycle, TwoOddCyclesOneVertex, OddCyclesWithPaths]


def _check_primitive(w: Walk) -> Binomial:
    if not (w.is_closed and w.is_even):
        raise WalkError("walk must be closed and even")
    if parity_coloring(w) is None:
        raise NotPrimitiveError("an edge occurs in odd and even position", evidence="parity")
    b = walk_binomial(w)
    smaller = conformal_reduction(b, w.graph)
    if smaller is not None:
        raise NotPrimitiveError(f"{b.pretty()} is not primitive", evidence=smaller)
    return b


def classify_primitive_walk(w: Walk, g: Optional[Graph] = None) -> WalkType:
    """Split a primitive walk into an even cycle, two odd cycles, or odd cycles with paths."""
    if g is not None and g is not w.graph and g != w.graph:
        raise WalkError("walk belongs to a different graph")
    _check_primitive(w)
    body = w.vertices[:-1]
    if len(set(body)) == len(body):
        return EvenCycle(body)
    result = _split_two_odd(body)
    if result is None:
        result = _split_cycles_with_paths(body)
    _validate(result)
    return result


def _split_two_odd(body):
    repeated = [v for v in set(body) if body.count(v) > 1]
    if len(repeated) != 1 or body.count(repeated[0]) != 2 or len(set(body)) != len(body) - 1:
        return None
    v = repeated[0]
    k = body.index(v)
    rot = body[k:] + body[:k]
    j = rot.index(v, 1)
    return TwoOddCyclesOneVertex(rot[:j], rot[j:])


def _first_cycle(body):
    closed = body + body[:1]
    for j, x in enumerate(closed):
        if x in closed[:j]:
            return closed.index(x)
    raise WalkError("walk has no repeated vertex")


def _split_cycles_with_paths(body):
    start = _first_cycle(body)
    seq = body[start:] + body[:start]
    seq = seq + seq[:1]
    # first cycle: up to the first repetition of seq[0]
    end = seq.index(seq[0], 1)
    first = seq[:end]
    if len(set(first)) != len(first):
        raise WalkError("decomposition failed: first closed segment is not a cycle")
    cycles = [first]
    paths = []
    current = set(first)
    path = [seq[end]]
    t = end + 1
    last = len(seq) - 1
    while t <= last:
        x = seq[t]
        if t == last:
            if x in path[1:]:
                raise WalkError("decomposition failed: closing path revisits a vertex")
            paths.append(tuple(path) + (x,))
            break
        if x in current:
            raise NotPrimitiveError("walk returns to the cycle it just left", evidence=tuple(seq))
        if x in path:
            i = path.index(x)
            if i == len(path) - 2:
                raise NotPrimitiveError("walk backtracks along an edge", evidence=tuple(seq))
            if i == 0:
                raise NotPrimitiveError("two odd cycles meet at a vertex inside the walk", evidence=tuple(seq))
            paths.append(tuple(path[: i + 1]))
            cyc = tuple(path[i:])
            cycles.append(cyc)
            current = set(cyc)
            path = [x]
        else:
            if x in cycles[0] and len(cycles) > 1 and x != seq[0]:
                raise WalkError("decomposition failed: path meets the first cycle early")
            path.append(x)
        t += 1
    return OddCyclesWithPaths(tuple(cycles), tuple(paths))


def _validate(t: WalkType) -> None:
    if isinstance(t, TwoOddCyclesOneVertex):
        if len(t.first) % 2 == 0 or len(t.second) % 2 == 0:
            raise WalkError("type (ii) cycles must be odd")
        if set(t.first) & set(t.second) != {t.shared}:
            raise WalkError("type (ii) cycles must share exactly one vertex")
    elif isinstance(t, OddCyclesWithPaths):
        h = t.h
        if h < 2 or len(t.paths) != h:
            raise WalkError("type (iii) needs at least two cycles and one path per cycle")
        for i in range(h):
            c, nxt, p = t.cycles[i], t.cycles[(i + 1) % h], t.paths[i]
            if len(c) % 2 == 0 or len(set(c)) != len(c):
                raise WalkError("type (iii) cycles must be odd cycles")
            if set(c) & set(nxt):
                raise WalkError("cyclically adjacent cycles must be vertex-disjoint")
            if len(p) < 2 or len(set(p)) != len(p):
                raise WalkError("connecting paths must be paths of length >= 1")
            if p[0] != c[0] or p[-1] != nxt[0]:
                raise WalkError("path endpoints must be the cycles' anchor vertices")
