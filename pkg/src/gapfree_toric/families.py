"""Seeded random graph families for the verification suites."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graph import Graph, complement, is_chordal, is_gap_free, standard_graph

FAMILIES = ("gap-free", "chordal-complement", "arbitrary", "multipartite")
MAX_REJECTIONS = 10_000


@dataclass
class Generated:
    graph: Graph
    family: str
    requested_n: int
    rejections: int = 0
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "requested_n": self.requested_n,
            "n": self.graph.n,
            "m": self.graph.m,
            "rejections": self.rejections,
            "notes": list(self.notes),
        }


def drop_isolated(g: Graph) -> Graph:
    keep = [v for v in g.vertices if g.degree(v) > 0]
    new = {v: i for i, v in enumerate(keep, start=1)}
    return Graph(len(keep), tuple((new[u], new[v]) for u, v in g.edges), tuple(g.labels[v - 1] for v in keep))


def _gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, tuple(e for e in combinations(range(1, n + 1), 2) if rng.random() < p))


def _random_chordal(n: int, rng: random.Random) -> Graph:
    """Each new vertex is joined to a random clique of earlier vertices."""
    keep = rng.uniform(0.3, 1.0)
    adj: dict[int, set] = {1: set()}
    for v in range(2, n + 1):
        u = rng.randint(1, v - 1)
        clique = [u]
        for w in sorted(adj[u]):
            if rng.random() < keep and all(w in adj[c] for c in clique):
                clique.append(w)
        if rng.random() < 0.1:
            clique = []
        adj[v] = set(clique)
        for c in clique:
            adj[c].add(v)
    return Graph(n, tuple((a, b) for a in adj for b in adj[a] if a < b))


def _acceptable(g: Graph, min_n: int, max_edges: Optional[int]) -> bool:
    return g.n >= min_n and g.m >= 1 and (max_edges is None or g.m <= max_edges)


def generate(family: str, n: int, seed: int, max_edges: Optional[int] = None, min_n: int = 4) -> Generated:
    """Deterministic random graph of the given family, ``n`` vertices, no isolated vertices.

    Rejection sampling gives up after ``MAX_REJECTIONS`` attempts and retries
    with one vertex fewer; that is recorded in ``notes``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}, expected one of {', '.join(FAMILIES)}")
    if n < min_n:
        raise ValueError(f"n must be at least {min_n}")
    rng = random.Random(f"{family}:{n}:{seed}")
    if family == "multipartite":
        for attempt in range(MAX_REJECTIONS):
            g = _multipartite(n, rng)
            if max_edges is None or g.m <= max_edges:
                return Generated(g, family, n, attempt)
        raise RuntimeError(f"no complete multipartite graph on {n} vertices with at most {max_edges} edges")
    out = Generated(Graph(0, ()), family, n)
    size = n
    while size >= min_n:
        for attempt in range(MAX_REJECTIONS):
            g = _draw(family, size, rng)
            if g is not None and _acceptable(g, min_n, max_edges):
                out.graph = g
                out.rejections += attempt
                return out
        out.rejections += MAX_REJECTIONS
        out.notes.append(f"no {family} graph on {size} vertices after {MAX_REJECTIONS} draws")
        size -= 1
    raise RuntimeError(f"could not generate a {family} graph (n={n}, max_edges={max_edges})")


def _draw(family: str, n: int, rng: random.Random) -> Optional[Graph]:
    if family == "gap-free":
        g = _gnp(n, 0.5, rng)
        if g.isolated_vertices() or not is_gap_free(g):
            return None
        return g
    if family == "chordal-complement":
        g = drop_isolated(complement(_random_chordal(n, rng)))
        if g.n != n or not is_chordal(complement(g)):
            return None
        return g
    g = _gnp(n, rng.uniform(0.25, 0.65), rng)
    return None if g.isolated_vertices() else g


def _multipartite(n: int, rng: random.Random) -> Graph:
    while True:
        cuts = sorted(rng.sample(range(1, n), rng.randint(1, n - 1)))
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [n])]
        if len(sizes) >= 2:
            return standard_graph("multipartite", *sizes)


def generate_family(family: str, n: int, seed: int, max_edges: Optional[int] = None) -> Graph:
    return generate(family, n, seed, max_edges).graph
