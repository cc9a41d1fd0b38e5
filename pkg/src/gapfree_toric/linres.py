"""Edge orderings, monomial ideals and linear quotients.

Two different vertex-side comparators live here and must not be confused:
``derive_edge_order`` sorts edge monomials by graded *reverse* lexicographic
order, ``linear_quotient_ordering`` sorts them *lexicographically* along a
vertex order obtained from the complement graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, NamedTuple, Optional, Sequence

from .graph import CycleWitness, Graph, complement, find_gap, is_chordal
from .groebner import TermOrder

Mono = tuple[int, ...]

REVLEX = "revlex-derived"
LINEAR_QUOTIENT = "linear-quotient"
USER = "user-supplied"


@dataclass(frozen=True)
class EdgeOrdering:
    """A permutation of 0-based edge indices.

    For ``revlex-derived`` orderings the first edge is the largest. For
    ``linear-quotient`` orderings the sequence is the linear quotient order of
    the edge monomials, whose toric term order makes the first edge smallest.
    """

    sequence: tuple[int, ...]
    provenance: str
    source: Optional[tuple[int, ...]] = None
    method: Optional[str] = None

    def __post_init__(self):
        seq = tuple(int(i) for i in self.sequence)
        if sorted(seq) != list(range(len(seq))):
            raise ValueError(f"{seq} is not a permutation of the edge indices")
        object.__setattr__(self, "sequence", seq)

    def __len__(self):
        return len(self.sequence)

    def edges(self, g: Graph):
        return [g.edges[i] for i in self.sequence]

    def to_json(self) -> dict:
        return {
            "sequence": [i + 1 for i in self.sequence],
            "provenance": self.provenance,
            "source": None if self.source is None else list(self.source),
            "method": self.method,
        }


class NotFound(NamedTuple):
    witness: Optional[CycleWitness]

    def __bool__(self):
        return False


def term_order(ordering: EdgeOrdering) -> TermOrder:
    """Lex term order attached to an edge ordering, by its provenance.

    Revlex-derived and user-supplied orderings are read largest first. A
    linear quotient ordering ``[e_1, ..., e_m]`` gives ``y_1 < ... < y_m``.
    """
    if ordering.provenance in (REVLEX, USER):
        return TermOrder(ordering.sequence, ordering.provenance, ordering.source)
    if ordering.provenance == LINEAR_QUOTIENT:
        return TermOrder(ordering.sequence[::-1], ordering.provenance, ordering.source)
    raise ValueError(f"unknown ordering provenance {ordering.provenance!r}")


def require_provenance(order: TermOrder, expected: str) -> None:
    if order.provenance != expected:
        raise ValueError(f"term order has provenance {order.provenance!r}, this check needs {expected!r}")


# -- monomials ---------------------------------------------------------------


def edge_monomial(g: Graph, index: int) -> Mono:
    u, v = g.edges[index]
    exps = [0] * g.n
    exps[u - 1] = exps[v - 1] = 1
    return tuple(exps)


def _rank_vector(vertex_order: Sequence[int], n: int) -> list[int]:
    if sorted(vertex_order) != list(range(1, n + 1)):
        raise ValueError(f"{list(vertex_order)} is not a permutation of 1..{n}")
    rank = [0] * (n + 1)
    for r, v in enumerate(vertex_order):
        rank[v] = r
    return rank


def _in_order(mono: Sequence[int], vertex_order: Sequence[int]) -> tuple[int, ...]:
    """Exponents listed from the largest variable to the smallest."""
    return tuple(mono[v - 1] for v in vertex_order)


def revlex_key(mono: Sequence[int], vertex_order: Sequence[int]):
    """Sort key, ascending key = descending graded revlex."""
    exps = _in_order(mono, vertex_order)
    return (-sum(exps), exps[::-1])


def lex_key(mono: Sequence[int], vertex_order: Sequence[int]):
    """Sort key, ascending key = descending lex."""
    return tuple(-a for a in _in_order(mono, vertex_order))


def derive_edge_order(g: Graph, vertex_order: Sequence[int]) -> EdgeOrdering:
    """Edges from largest to smallest edge monomial in graded revlex.

    ``vertex_order`` lists the vertices from the largest variable down.
    """
    _rank_vector(vertex_order, g.n)
    seq = sorted(range(g.m), key=lambda i: revlex_key(edge_monomial(g, i), vertex_order))
    return EdgeOrdering(tuple(seq), REVLEX, tuple(vertex_order))


# -- monomial ideals ---------------------------------------------------------


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Mono]) -> list[Mono]:
    """Minimal generators, sorted by degree then exponent vector."""
    out: list[Mono] = []
    for g in sorted(set(gens), key=lambda x: (sum(x), x)):
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


@dataclass(frozen=True)
class MonomialIdeal:
    generators: tuple[Mono, ...]
    nvars: int
    minimalized: bool = False

    @classmethod
    def of(cls, gens: Iterable[Sequence[int]], nvars: Optional[int] = None) -> "MonomialIdeal":
        gens = [tuple(x) for x in gens]
        if nvars is None:
            nvars = len(gens[0]) if gens else 0
        return cls(tuple(minimalize(gens)), nvars, True)

    @classmethod
    def edge_ideal(cls, g: Graph) -> "MonomialIdeal":
        return cls.of((edge_monomial(g, i) for i in range(g.m)), g.n)

    def __len__(self):
        return len(self.generators)


def ideal_power(ideal: MonomialIdeal, k: int) -> MonomialIdeal:
    if k < 1:
        raise ValueError("power must be at least 1")
    if not ideal.minimalized:
        raise ValueError("ideal must be minimalized")
    prods = (tuple(map(sum, zip(*combo))) for combo in combinations_with_replacement(ideal.generators, k))
    return MonomialIdeal.of(prods, ideal.nvars)


class LinearQuotientResult(NamedTuple):
    ok: bool
    failing_index: Optional[int]  # 1-based position of the first bad colon

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"pass": self.ok, "failing_index": self.failing_index}


def colon_generators(previous: Sequence[Mono], mono: Mono) -> list[Mono]:
    """Minimal generators of ``(previous) : (mono)``."""
    return minimalize(tuple(a - min(a, b) for a, b in zip(p, mono)) for p in previous)


def _linear_colon(previous: Sequence[Mono], mono: Mono) -> bool:
    # generated in degree 1 iff every quotient is a multiple of a linear quotient
    quotients = [tuple(a - min(a, b) for a, b in zip(p, mono)) for p in previous]
    linear = set()
    for q in quotients:
        if sum(q) == 1:
            linear.add(q.index(1))
    return all(any(q[v] for v in linear) for q in quotients)


def verify_linear_quotients(mons: Sequence[Sequence[int]]) -> LinearQuotientResult:
    mons = [tuple(x) for x in mons]
    if len({sum(x) for x in mons}) > 1:
        raise ValueError("generators must all have the same degree")
    if len(set(mons)) != len(mons):
        raise ValueError("generators must be distinct")
    for i in range(1, len(mons)):
        if not _linear_colon(mons[:i], mons[i]):
            return LinearQuotientResult(False, i + 1)
    return LinearQuotientResult(True, None)


def search_linear_quotient_order(mons: Sequence[Mono], limit: Optional[int] = 200_000) -> Optional[list[Mono]]:
    """Depth-first search for a linear quotient order of ``mons``.

    Whether the next colon is linear depends only on the set already placed, so
    dead sets are memoized. Gives up (returns ``None``) after ``limit`` steps
    unless ``limit`` is ``None``.
    """
    mons = sorted(set(tuple(x) for x in mons))
    dead: set[frozenset] = set()
    steps = 0

    def extend(chosen: list[Mono], rest: list[Mono]) -> Optional[list[Mono]]:
        nonlocal steps
        if not rest:
            return list(chosen)
        key = frozenset(chosen)
        if key in dead:
            return None
        for i, c in enumerate(rest):
            steps += 1
            if limit is not None and steps > limit:
                return None
            if chosen and not _linear_colon(chosen, c):
                continue
            chosen.append(c)
            found = extend(chosen, rest[:i] + rest[i + 1:])
            chosen.pop()
            if found is not None:
                return found
        dead.add(key)
        return None

    return extend([], mons)


# -- edge orderings with linear quotients -----------------------------------


def peo_vertex_order(g: Graph) -> Optional[tuple[int, ...]]:
    """Vertex order (largest first) read off a perfect elimination ordering of the complement."""
    res = is_chordal(complement(g))
    if not res.chordal:
        return None
    return tuple(res.peo)


def lex_sorted(mons: Iterable[Mono], vertex_order: Sequence[int]) -> list[Mono]:
    return sorted(mons, key=lambda x: lex_key(x, vertex_order))


def linear_quotient_ordering(g: Graph):
    """Edge ordering whose edge monomials have linear quotients, or ``NotFound``.

    The candidate sorts edge monomials lexicographically (largest first) along a
    vertex order from a perfect elimination ordering of the complement. The
    candidate is always verified; if it fails, a complete (memoized) search
    over orderings decides.
    """
    res = is_chordal(complement(g))
    if not res.chordal:
        return NotFound(res.witness)
    vorder = tuple(res.peo)
    seq = sorted(range(g.m), key=lambda i: lex_key(edge_monomial(g, i), vorder))
    if verify_linear_quotients([edge_monomial(g, i) for i in seq]):
        return EdgeOrdering(tuple(seq), LINEAR_QUOTIENT, vorder, "peo-lex")
    by_mono = {edge_monomial(g, i): i for i in range(g.m)}
    found = search_linear_quotient_order(list(by_mono), limit=None)
    if found is None:
        return NotFound(None)
    return EdgeOrdering(tuple(by_mono[x] for x in found), LINEAR_QUOTIENT, None, "search")


class PrefixResult(NamedTuple):
    ok: bool
    failing_prefix: Optional[int]

    def __bool__(self):
        return self.ok


def prefix_gap_free(g: Graph, ordering: EdgeOrdering) -> PrefixResult:
    """Whether every prefix ``{e_1..e_i}`` of the ordering spans a gap-free graph."""
    for i in range(1, len(ordering) + 1):
        sub = g.subgraph_on_edges(ordering.sequence[:i])
        if find_gap(sub) is not None:
            return PrefixResult(False, i)
    return PrefixResult(True, None)


class PowerReport(NamedTuple):
    k: int
    ok: bool
    failing_index: Optional[int]
    method: str

    def to_json(self) -> dict:
        return {"k": self.k, "pass": self.ok, "failing_index": self.failing_index, "method": self.method}


def power_linear_quotients(g: Graph, kmax: int):
    """Check that ``I(g)^k`` has linear quotients for ``k = 1..kmax``.

    Returns ``None`` when the complement is not chordal: then ``I(g)`` has no
    linear resolution and no power can have linear quotients. Otherwise each
    power's generators are sorted lexicographically along the vertex order of
    a perfect elimination ordering of the complement; if that order fails, a
    search for another order runs before the power is reported as failing.
    """
    vorder = peo_vertex_order(g)
    if vorder is None:
        return None
    base = MonomialIdeal.edge_ideal(g)
    reports = []
    for k in range(1, kmax + 1):
        gens = lex_sorted(ideal_power(base, k).generators, vorder)
        res = verify_linear_quotients(gens)
        if res.ok:
            reports.append(PowerReport(k, True, None, "peo-lex"))
            continue
        found = search_linear_quotient_order(gens)
        if found is not None and verify_linear_quotients(found):
            reports.append(PowerReport(k, True, None, "search"))
        else:
            reports.append(PowerReport(k, False, res.failing_index, "peo-lex"))
    return reports
