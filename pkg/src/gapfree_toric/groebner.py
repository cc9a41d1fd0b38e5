"""Buchberger's algorithm for pure difference binomials under lex orders.

Internally every monomial is stored with its coordinates permuted into the
priority order of the term order, so lexicographic comparison is plain tuple
comparison. Normal forms of pure difference binomials are computed monomial by
monomial, because rewriting ``u`` by ``a - b`` just replaces the factor ``a``
of ``u`` with ``b``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

from .graph import Graph
from .toric import (
    Binomial,
    OddCyclesWithPaths,
    Walk,
    WalkError,
    classify_primitive_walk,
    in_toric_ideal,
    is_primitive,
    parity_coloring,
    walk_binomial,
)

Mono = tuple[int, ...]


@dataclass(frozen=True)
class TermOrder:
    """Lexicographic order on ``y_1..y_m``.

    ``priority`` lists 0-based variable indices from the largest variable down.
    ``provenance`` records how the order was obtained, e.g. ``revlex-derived``
    for the descending convention or ``linear-quotient`` for the ascending one.
    """

    priority: tuple[int, ...]
    provenance: Optional[str] = None
    source: Optional[tuple[int, ...]] = None
    kind: str = "lex"
    _rank: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        prio = tuple(int(i) for i in self.priority)
        if sorted(prio) != list(range(len(prio))):
            raise ValueError(f"priority {prio} is not a permutation of 0..{len(prio) - 1}")
        rank = [0] * len(prio)
        for r, i in enumerate(prio):
            rank[i] = r
        object.__setattr__(self, "priority", prio)
        object.__setattr__(self, "_rank", tuple(rank))

    @classmethod
    def descending(cls, m: int, provenance: Optional[str] = None) -> "TermOrder":
        """``y_1 > y_2 > ... > y_m``."""
        return cls(tuple(range(m)), provenance)

    @property
    def nvars(self) -> int:
        return len(self.priority)

    def key(self, exps: Sequence[int]) -> Mono:
        return tuple(exps[i] for i in self.priority)

    def unkey(self, mono: Mono) -> Mono:
        out = [0] * len(mono)
        for a, i in zip(mono, self.priority):
            out[i] = a
        return tuple(out)

    def rank(self, var: int) -> int:
        """Position of ``y_{var+1}`` counted from the largest variable."""
        return self._rank[var]

    def var_less(self, a: int, b: int) -> bool:
        return self._rank[a] > self._rank[b]

    def greater(self, u: Sequence[int], v: Sequence[int]) -> bool:
        return self.key(u) > self.key(v)

    def oriented(self, b: Binomial) -> Binomial:
        """``b`` or ``-b``, whichever has the leading monomial first."""
        return b if self.greater(b.plus, b.minus) else b.negated()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "priority": [i + 1 for i in self.priority],
            "provenance": self.provenance,
            "source": None if self.source is None else [i for i in self.source],
        }


@dataclass(frozen=True)
class GroebnerBasis:
    elements: tuple[Binomial, ...]
    order: TermOrder
    reduced: bool = True

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def normalized_set(self) -> set[Binomial]:
        return {b.normalized() for b in self.elements}

    def pretty(self) -> list[str]:
        return [b.pretty() for b in self.elements]

    def to_json(self) -> dict:
        return {"order": self.order.to_json(), "reduced": self.reduced, "elements": [b.to_json() for b in self.elements]}


# -- engine -----------------------------------------------------------------


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mask(a: Mono) -> int:
    m = 0
    for i, x in enumerate(a):
        if x:
            m |= 1 << i
    return m


class _Poly(NamedTuple):
    lead: Mono
    tail: Mono
    mask: int


def _make(u: Mono, v: Mono) -> Optional[_Poly]:
    """Oriented, coprime binomial ``u - v``; ``None`` if it vanishes."""
    common = tuple(min(x, y) for x, y in zip(u, v))
    if any(common):
        u = tuple(x - c for x, c in zip(u, common))
        v = tuple(y - c for y, c in zip(v, common))
    if u == v:
        return None
    if u < v:
        u, v = v, u
    return _Poly(u, v, _mask(u))


def _reduce_mono(mono: Mono, basis: Sequence[_Poly]) -> Mono:
    while True:
        mm = _mask(mono)
        for p in basis:
            if p.mask & ~mm == 0 and _divides(p.lead, mono):
                mono = tuple(x - a + b for x, a, b in zip(mono, p.lead, p.tail))
                break
        else:
            return mono


def _normal_form(u: Mono, v: Mono, basis: Sequence[_Poly]) -> Optional[_Poly]:
    # the larger side first, then the other one
    if u < v:
        u, v = v, u
    return _make(_reduce_mono(u, basis), _reduce_mono(v, basis))


def _spoly(f: _Poly, g: _Poly) -> tuple[Mono, Mono]:
    lcm = tuple(max(a, b) for a, b in zip(f.lead, g.lead))
    left = tuple(l - a + t for l, a, t in zip(lcm, f.lead, f.tail))
    right = tuple(l - a + t for l, a, t in zip(lcm, g.lead, g.tail))
    return left, right


def _interreduce(polys: Iterable[_Poly]) -> list[_Poly]:
    basis: list[_Poly] = []
    for p in sorted(set(polys)):
        q = _normal_form(p.lead, p.tail, basis)
        if q is not None:
            basis.append(q)
    return basis


def _buchberger(gens: Iterable[_Poly]) -> list[_Poly]:
    basis = _interreduce(gens)
    queue: list = []

    def push(i, j):
        f, g = basis[i], basis[j]
        if f.mask & g.mask == 0:
            return  # coprime leading terms
        deg = sum(max(a, b) for a, b in zip(f.lead, g.lead))
        heapq.heappush(queue, (deg, i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)
    while queue:
        _, i, j = heapq.heappop(queue)
        h = _normal_form(*_spoly(basis[i], basis[j]), basis)
        if h is not None:
            basis.append(h)
            k = len(basis) - 1
            for i2 in range(k):
                push(i2, k)
    return _reduce(basis)


def _reduce(basis: list[_Poly]) -> list[_Poly]:
    minimal = []
    for p in sorted(set(basis)):
        if not any(q.mask & ~p.mask == 0 and _divides(q.lead, p.lead) for q in minimal):
            minimal.append(p)
    out = []
    for p in minimal:
        tail = _reduce_mono(p.tail, minimal)
        out.append(_Poly(p.lead, tail, p.mask))
    return sorted(out, reverse=True)


def reduced_groebner_basis(gens: Iterable[Binomial], order: TermOrder, graph: Optional[Graph] = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens``.

    The generators must be binomials of the toric ideal of one graph; passing
    the Graver basis is always safe. Common monomial factors are divided out of
    S-polynomial remainders, which is sound because toric ideals are prime and
    contain no monomials.
    """
    gens = list(gens)
    m = order.nvars
    for b in gens:
        if b.nvars != m:
            raise ValueError(f"{b.pretty()} has {b.nvars} variables, the order has {m}")
        if graph is not None and not in_toric_ideal(b, graph):
            raise ValueError(f"{b.pretty()} is not in the toric ideal of the given graph")
    if not gens:
        return GroebnerBasis((), order)
    if graph is None:
        _check_common_graph(gens)
    polys = [p for p in (_make(order.key(b.plus), order.key(b.minus)) for b in gens) if p is not None]
    result = _buchberger(polys)
    elements = tuple(Binomial(order.unkey(p.lead), order.unkey(p.tail)) for p in result)
    return GroebnerBasis(elements, order)


def _check_common_graph(gens: Sequence[Binomial]) -> None:
    # all generators must be homogeneous: equal degree on both sides
    for b in gens:
        if sum(b.plus) != sum(b.minus):
            raise ValueError(f"{b.pretty()} is not homogeneous, so it cannot come from a graph")


def normal_form(b: Binomial, basis: Sequence[Binomial], order: TermOrder) -> Optional[Binomial]:
    """Remainder of ``b`` on division by ``basis`` (leading sides first), or ``None``."""
    polys = []
    for f in basis:
        u, v = order.key(f.plus), order.key(f.minus)
        if u <= v:
            raise ValueError(f"basis element {f.pretty()} is not stored leading side first")
        polys.append(_Poly(u, v, _mask(u)))
    r = _normal_form(order.key(b.plus), order.key(b.minus), polys)
    if r is None:
        return None
    return Binomial(order.unkey(r.lead), order.unkey(r.tail))


# -- independent correctness check -----------------------------------------


def _reduce_plain(mono: Sequence[int], basis: Sequence[Binomial], order: TermOrder) -> tuple[int, ...]:
    mono = list(mono)
    changed = True
    while changed:
        changed = False
        for f in basis:
            if all(a <= x for a, x in zip(f.plus, mono)):
                mono = [x - a + b for x, a, b in zip(mono, f.plus, f.minus)]
                changed = True
                break
    return tuple(mono)


def groebner_violations(gb: GroebnerBasis, extra: Iterable[Binomial] = ()) -> list[str]:
    """Problems found by re-checking ``gb`` without the engine.

    Checks orientation, every S-pair (no criteria skipped) reducing to zero, and
    every binomial in ``extra`` reducing to zero.
    """
    order = gb.order
    basis = list(gb.elements)
    problems = []
    for f in basis:
        if not order.greater(f.plus, f.minus):
            problems.append(f"{f.pretty()} is not stored leading side first")
    if problems:
        return problems
    for i, f in enumerate(basis):
        for g in basis[i + 1:]:
            lcm = [max(a, b) for a, b in zip(f.plus, g.plus)]
            left = [l - a + t for l, a, t in zip(lcm, f.plus, f.minus)]
            right = [l - a + t for l, a, t in zip(lcm, g.plus, g.minus)]
            if _reduce_plain(left, basis, order) != _reduce_plain(right, basis, order):
                problems.append(f"S({f.pretty()}, {g.pretty()}) does not reduce to zero")
    for b in extra:
        if _reduce_plain(b.plus, basis, order) != _reduce_plain(b.minus, basis, order):
            problems.append(f"{b.pretty()} does not reduce to zero")
    return problems


def is_reduced(gb: GroebnerBasis) -> bool:
    leads = [b.plus for b in gb.elements]
    for i, a in enumerate(leads):
        for j, c in enumerate(leads):
            if i != j and all(x <= y for x, y in zip(a, c)):
                return False
    for b in gb.elements:
        if any(all(x <= y for x, y in zip(a, b.minus)) for a in leads):
            return False
    return True


# -- reports ----------------------------------------------------------------


class Offender(NamedTuple):
    binomial: Binomial
    side: str
    edge: int  # 1-based


@dataclass(frozen=True)
class SquarefreeReport:
    initial_squarefree: bool
    doubly_squarefree: bool
    offenders: tuple[Offender, ...]

    def to_json(self) -> dict:
        return {
            "initial_squarefree": self.initial_squarefree,
            "doubly_squarefree": self.doubly_squarefree,
            "offenders": [
                {"binomial": o.binomial.pretty(), "side": o.side, "edge": o.edge} for o in self.offenders
            ],
        }


def squarefree_report(gb: GroebnerBasis) -> SquarefreeReport:
    if not gb.reduced:
        raise ValueError("squarefree report needs a reduced Gröbner basis")
    offenders = []
    for b in gb.elements:
        for side, exps in (("leading", b.plus), ("trailing", b.minus)):
            offenders.extend(Offender(b, side, i + 1) for i, a in enumerate(exps) if a >= 2)
    initial = not any(o.side == "leading" for o in offenders)
    return SquarefreeReport(initial, initial and not offenders, tuple(offenders))


def is_circuit_basis(gb: GroebnerBasis, circuits: Iterable[Binomial]) -> bool:
    circuits = {c.normalized() for c in circuits}
    return all(b.normalized() in circuits for b in gb.elements)


# -- the main lemma ---------------------------------------------------------


class LemmaHypothesisError(ValueError):
    def __init__(self, reason: str, message: str):
        super().__init__(f"{reason}: {message}")
        self.reason = reason


class LemmaConstructionError(RuntimeError):
    pass


def leading_edge(edges: Iterable[int], order: TermOrder) -> int:
    return min(edges, key=order.rank)


def _cycle_edges(g: Graph, cycle: Sequence[int]) -> list[int]:
    k = len(cycle)
    return [g.edge_index(cycle[i], cycle[(i + 1) % k]) for i in range(k)]


def _path_edges(g: Graph, path: Sequence[int]) -> list[int]:
    return [g.edge_index(a, b) for a, b in zip(path, path[1:])]


def _along(cycle: Sequence[int], start: int, stop: int, step: int) -> list[int]:
    """Vertices of ``cycle`` from index ``start`` to ``stop`` moving by ``step`` (mod length)."""
    k = len(cycle)
    out = [cycle[start % k]]
    i = start
    while i % k != stop % k:
        i += step
        out.append(cycle[i % k])
    return out


def _path_to_anchor(g, cycle, i, colors, want, first):
    """Walk from ``cycle[i]`` to ``cycle[0]`` (or back) along the cycle.

    With ``first`` set the first edge of the returned path has colour ``want``;
    otherwise the path runs from ``cycle[0]`` to ``cycle[i]`` and its last edge
    has that colour.
    """
    k = len(cycle)
    options = [_along(cycle, i, 0, 1), _along(cycle, i, 0, -1)]
    chosen = []
    for verts in options:
        edge = g.edge_index(verts[0], verts[1])
        if colors.get(edge) == want:
            chosen.append(verts)
    if len(chosen) != 1:
        raise LemmaConstructionError(f"expected exactly one direction around the cycle from {cycle[i % k]}")
    verts = chosen[0]
    return verts if first else verts[::-1]


def mainlemma_witness(g: Graph, walk: Walk, order: TermOrder, tilde_e: Sequence[int]) -> Walk:
    """Build a primitive walk whose initial term properly divides that of ``walk``.

    ``walk`` must be primitive of type (iii) with leading edge ``e``, and
    ``tilde_e`` an edge below ``e`` either joining the two cycles of the bow-tie
    whose path contains ``e`` (case a), or joining an endpoint of ``e`` on a
    cycle to the other cycle of its bow-tie (case b). The edge between the two
    anchor vertices of the bow-tie is excluded. The returned walk is checked to
    be an even cycle or a pair of odd cycles sharing a vertex, with initial term
    dividing the initial term of ``walk`` and a different binomial.
    """
    try:
        shape = classify_primitive_walk(walk, g)
    except WalkError as exc:
        raise LemmaHypothesisError("not-primitive", str(exc)) from None
    if not isinstance(shape, OddCyclesWithPaths):
        raise LemmaHypothesisError("wrong-walk-type", f"walk is of type ({'i' * shape.type_number}), not (iii)")
    x, y = tilde_e
    if not g.has_edge(x, y):
        raise LemmaHypothesisError("not-an-edge", f"{{{x},{y}}} is not an edge")
    te = g.edge_index(x, y)
    e = leading_edge(walk.edge_indices, order)
    if not order.var_less(te, e):
        raise LemmaHypothesisError("not-below-leading-edge", f"edge {te + 1} is not below the leading edge {e + 1}")
    colors = parity_coloring(walk)
    black = colors[e]
    red = "red" if black == "black" else "black"
    if colors.get(te, red) != red:
        raise LemmaHypothesisError("colour-clash", f"edge {te + 1} already has the colour of the leading edge")

    excluded = False
    for c1, p, c2 in shape.bowties():
        for a1, path, a2 in ((c1, p, c2), (c2, p[::-1], c1)):
            s1, s2 = set(a1), set(a2)
            if not ({x, y} & s1 and {x, y} & s2):
                continue
            if {x, y} == {a1[0], a2[0]}:
                excluded = True
                continue
            if e in _path_edges(g, path):
                verts = _case_a(g, a1, path, a2, x, y, colors, black)
            elif e in _cycle_edges(g, a1):
                verts = _case_b(g, a1, path, a2, x, y, e, colors, black)
                if verts is None:
                    continue
            else:
                continue
            return _checked(g, walk, order, verts)
    if excluded:
        raise LemmaHypothesisError("excluded-bridge", f"{{{x},{y}}} joins the anchor vertices of the bow-tie")
    raise LemmaHypothesisError("no-hypothesis", f"{{{x},{y}}} satisfies neither case of the lemma")


def _tail_path(g, c2, path, j, colors, black):
    """Path from the anchor ``c2[0]`` to ``c2[j]`` per the colour rules."""
    if j != 0:
        return _path_to_anchor(g, c2, j, colors, black, first=False)
    last = colors[g.edge_index(path[-2], path[-1])]
    if last == black:
        return [c2[0]]
    return list(c2) + [c2[0]]


def _case_a(g, c1, path, c2, x, y, colors, black):
    if x not in c1:
        x, y = y, x
    if x == c1[0]:
        c1, path, c2 = c2, path[::-1], c1
        x, y = y, x
    i = c1.index(x)
    j = c2.index(y)
    w = _path_to_anchor(g, c1, i, colors, black, first=True)
    w2 = _tail_path(g, c2, path, j, colors, black)
    return [y] + w + list(path[1:]) + w2[1:]


def _case_b(g, c1, path, c2, x, y, e, colors, black):
    k = len(c1)
    i = next(t for t in range(k) if g.edge_index(c1[t], c1[(t + 1) % k]) == e)
    vi, vi1 = c1[i], c1[(i + 1) % k]
    if y in (vi, vi1):
        x, y = y, x
    if x not in (vi, vi1) or y not in c2:
        return None
    j = c2.index(y)
    w2 = _tail_path(g, c2, path, j, colors, black)
    if x == vi:
        w = _along(c1, i + 1, 0, 1) if (i + 1) % k != 0 else [c1[0]]
        return w + list(path[1:]) + w2[1:] + [vi, vi1]
    w = _along(c1, i, 0, -1) if i != 0 else [c1[0]]
    return w + list(path[1:]) + w2[1:] + [vi1, vi]


def _checked(g: Graph, walk: Walk, order: TermOrder, verts: Sequence[int]) -> Walk:
    try:
        new = Walk(g, tuple(verts))
        b_new = walk_binomial(new)
        shape = classify_primitive_walk(new, g)
    except WalkError as exc:
        raise LemmaConstructionError(f"constructed walk {verts} is invalid: {exc}") from None
    if shape.type_number not in (1, 2):
        raise LemmaConstructionError(f"constructed walk {verts} has type {shape.type_number}")
    if not is_primitive(b_new, g):
        raise LemmaConstructionError(f"constructed walk {verts} is not primitive")
    old = order.oriented(walk_binomial(walk))
    b_new = order.oriented(b_new)
    if not all(a <= c for a, c in zip(b_new.plus, old.plus)):
        raise LemmaConstructionError("initial term of the new walk does not divide the old one")
    if b_new.normalized() == old.normalized():
        raise LemmaConstructionError("constructed walk has the same binomial")
    return new
