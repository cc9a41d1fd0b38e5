"""Seeded verification suites.

Every suite is a loop of independent trials. A trial derives its own RNG from
``(suite, seed, trial)``, builds a graph, runs a list of named checks and keeps
enough data to replay any failure through the ``groebner`` command.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from . import groebner as gbm
from .families import generate
from .graph import Graph, odd_cycle_condition, parse_graph, standard_graph
from .groebner import (
    GroebnerBasis,
    LemmaConstructionError,
    LemmaHypothesisError,
    TermOrder,
    groebner_violations,
    is_circuit_basis,
    leading_edge,
    mainlemma_witness,
    reduced_groebner_basis,
    squarefree_report,
)
from .linres import (
    LINEAR_QUOTIENT,
    REVLEX,
    USER,
    EdgeOrdering,
    derive_edge_order,
    edge_monomial,
    linear_quotient_ordering,
    power_linear_quotients,
    prefix_gap_free,
    require_provenance,
    term_order,
    verify_linear_quotients,
)
from .oracles import circuit_oracle, graver_oracle
from .toric import OddCyclesWithPaths, classify_primitive_walk, enumerate_circuits, max_edges_bound, primitive_walks

GOLDEN_BASIS = (
    "y1*y10 - y6*y8",
    "y1*y5 - y3*y4",
    "y1*y9 - y2*y8",
    "y5*y10 - y7*y9",
    "y2*y7 - y5*y6",
    "y2*y10 - y6*y9",
    "y3*y4*y10 - y5*y6*y8",
    "y2*y5*y8 - y3*y4*y9",
    "y3*y4*y7*y9 - y5^2*y6*y8",
)
GOLDEN_OFFENDER = "y3*y4*y7*y9 - y5^2*y6*y8"

DEFAULT_TRIALS = {
    "golden": 1,
    "corollary": 3,
    "onesteplin": 200,
    "linres": 200,
    "linchar": 50,
    "inclusions": 100,
    "graver-oracle": 100,
    "dual-verifier": 500,
}
SUITES = tuple(DEFAULT_TRIALS)
MAX_VERTICES = 12
GRAVER_ORACLE_MAX_EDGES = 10


def fixture_path() -> Path:
    return Path(__file__).parent / "data" / "gstar.txt"


def load_golden_graph() -> Graph:
    return parse_graph(fixture_path().read_text())


@dataclass
class TrialReport:
    trial: int
    family: str
    n: int
    m: int
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    counterexample: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        out = {
            "trial": self.trial,
            "family": self.family,
            "n": self.n,
            "m": self.m,
            "passed": self.passed,
            "checks": dict(self.checks),
            "details": dict(self.details),
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteResult:
    suite: str
    seed: int
    params: dict
    reports: list

    @property
    def passed(self) -> int:
        return sum(r.passed for r in self.reports)

    @property
    def failed(self) -> int:
        return len(self.reports) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def check_failures(self) -> dict:
        counts: dict = {}
        for r in self.reports:
            for name, ok in r.checks.items():
                counts.setdefault(name, 0)
                if not ok:
                    counts[name] += 1
        return counts

    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "params": self.params,
            "trials": len(self.reports),
            "passed": self.passed,
            "failed": self.failed,
            "check_failures": self.check_failures(),
            "reports": [r.to_json() for r in self.reports],
        }


def order_args(g: Graph, order: TermOrder) -> list[str]:
    """Arguments of the ``groebner`` command reproducing ``order`` on ``g``."""
    if order.provenance == REVLEX and order.source is not None:
        return ["--vertex-order", ",".join(str(g.labels[v - 1]) for v in order.source)]
    if order.provenance == LINEAR_QUOTIENT and order.source is not None:
        return ["--linear-quotient"]
    return ["--edge-permutation", ",".join(str(i + 1) for i in order.priority)]


def counterexample(g: Graph, order: Optional[TermOrder], offending=()) -> dict:
    return {
        "graph": g.to_text(),
        "order_args": order_args(g, order) if order is not None else [],
        "offending": [str(x) for x in offending],
    }


# -- shared checks ------------------------------------------------------------


def _basis_checks(report: TrialReport, g: Graph, order: TermOrder, graver, circuits=None) -> GroebnerBasis:
    gb = reduced_groebner_basis(graver, order, g)
    problems = groebner_violations(gb, graver)
    report.checks["buchberger"] = not problems
    outside = [b for b in gb.normalized_set() if b not in graver]
    report.checks["rgb_in_graver"] = not outside
    if circuits is not None:
        report.checks["circuit_basis"] = is_circuit_basis(gb, circuits)
    if problems or outside:
        report.counterexample = counterexample(g, order, problems + [b.pretty() for b in outside])
    return gb


def _odd_cycle_consistency(report: TrialReport, g: Graph, squarefree_found: bool) -> None:
    if squarefree_found and g.is_connected():
        res = odd_cycle_condition(g)
        report.checks["odd_cycle_consistency"] = res.holds
        if not res.holds:
            report.details["odd_cycle_witness"] = [list(c) for c in res.witness]
    else:
        report.checks["odd_cycle_consistency"] = True


def lemma_samples(g: Graph, walks, order: TermOrder) -> tuple[int, list]:
    """Run the main-lemma construction on every admissible (walk, edge) pair.

    Returns the number of witnesses built and the construction failures.
    """
    built, failures = 0, []
    for w in walks.values():
        shape = classify_primitive_walk(w, g)
        if not isinstance(shape, OddCyclesWithPaths):
            continue
        e = leading_edge(w.edge_indices, order)
        for te in range(g.m):
            if not order.var_less(te, e):
                continue
            try:
                mainlemma_witness(g, w, order, g.edges[te])
                built += 1
            except LemmaHypothesisError:
                pass
            except LemmaConstructionError as exc:
                failures.append(f"{w} with edge {te + 1}: {exc}")
    return built, failures


# -- suites -------------------------------------------------------------------


def _trial_rng(suite: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{suite}:{seed}:{trial}")


def run_golden(trials: int = 1, seed: int = 0, **_) -> SuiteResult:
    g = load_golden_graph()
    reports = []
    for t in range(trials):
        ordering = derive_edge_order(g, tuple(range(1, g.n + 1)))
        order = term_order(ordering)
        walks = primitive_walks(g)
        graver = set(walks)
        r = TrialReport(t, "golden", g.n, g.m)
        r.checks["edge_order_matches_fixture"] = ordering.sequence == tuple(range(g.m))
        gb = _basis_checks(r, g, order, graver, enumerate_circuits(g))
        rep = squarefree_report(gb)
        r.checks["basis_matches"] = sorted(gb.pretty()) == sorted(GOLDEN_BASIS)
        r.checks["initial_squarefree"] = rep.initial_squarefree
        r.checks["not_doubly_squarefree"] = not rep.doubly_squarefree
        r.checks["unique_offender"] = [(o.binomial.pretty(), o.side, o.edge) for o in rep.offenders] == [
            (GOLDEN_OFFENDER, "trailing", 5)
        ]
        _odd_cycle_consistency(r, g, rep.initial_squarefree)
        r.details["basis"] = gb.pretty()
        if not r.passed and r.counterexample is None:
            r.counterexample = counterexample(g, order, gb.pretty())
        reports.append(r)
    return SuiteResult("golden", seed, {}, reports)


def run_corollary(trials: int = 3, seed: int = 0, **_) -> SuiteResult:
    graphs = [("K_{2,2,2}", (2, 2, 2)), ("K_{3,3}", (3, 3)), ("K_{1,2,3}", (1, 2, 3))]
    reports = []
    for t in range(min(trials, len(graphs))):
        name, parts = graphs[t]
        g = standard_graph("multipartite", *parts)
        r = TrialReport(t, "multipartite", g.n, g.m, details={"graph": name})
        _check_linres_graph(r, g)
        reports.append(r)
    return SuiteResult("corollary", seed, {}, reports)


def _check_linres_graph(r: TrialReport, g: Graph) -> None:
    ordering = linear_quotient_ordering(g)
    r.checks["ordering_found"] = bool(ordering)
    if not ordering:
        r.counterexample = counterexample(g, None, ["no linear quotient ordering"])
        return
    r.details["ordering_method"] = ordering.method
    lq = verify_linear_quotients([edge_monomial(g, i) for i in ordering.sequence])
    r.checks["linear_quotients"] = lq.ok
    order = term_order(ordering)
    require_provenance(order, LINEAR_QUOTIENT)
    walks = primitive_walks(g)
    graver = set(walks)
    gb = _basis_checks(r, g, order, graver, enumerate_circuits(g))
    rep = squarefree_report(gb)
    r.checks["doubly_squarefree"] = rep.doubly_squarefree
    _odd_cycle_consistency(r, g, rep.initial_squarefree)
    r.details["basis_size"] = len(gb)
    r.details["graver_size"] = len(graver)
    if not rep.doubly_squarefree and r.counterexample is None:
        r.counterexample = counterexample(g, order, [o.binomial.pretty() for o in rep.offenders])


def run_onesteplin(trials: int = 200, seed: int = 0, max_vertices: int = 9, min_vertices: int = 4, lemma: bool = True, **_) -> SuiteResult:
    bound = max_edges_bound()
    reports = []
    for t in range(trials):
        rng = _trial_rng("onesteplin", seed, t)
        gen = generate("gap-free", rng.randint(min_vertices, max_vertices), rng.getrandbits(32), bound)
        g = gen.graph
        vorder = list(g.vertices)
        rng.shuffle(vorder)
        ordering = derive_edge_order(g, vorder)
        order = term_order(ordering)
        require_provenance(order, REVLEX)
        walks = primitive_walks(g)
        graver = set(walks)
        r = TrialReport(t, "gap-free", g.n, g.m, details=gen.to_json())
        gb = _basis_checks(r, g, order, graver, enumerate_circuits(g))
        rep = squarefree_report(gb)
        r.checks["initial_squarefree"] = rep.initial_squarefree
        _odd_cycle_consistency(r, g, rep.initial_squarefree)
        if lemma:
            built, failures = lemma_samples(g, walks, order)
            r.checks["main_lemma"] = not failures
            r.details["lemma_witnesses"] = built
            if failures and r.counterexample is None:
                r.counterexample = counterexample(g, order, failures)
        r.details["basis_size"] = len(gb)
        r.details["graver_size"] = len(graver)
        if not r.passed and r.counterexample is None:
            bad = [o.binomial.pretty() for o in rep.offenders if o.side == "leading"]
            r.counterexample = counterexample(g, order, bad or gb.pretty())
        reports.append(r)
    return SuiteResult("onesteplin", seed, {"max_vertices": max_vertices, "min_vertices": min_vertices, "max_edges": bound}, reports)


def run_linres(trials: int = 200, seed: int = 0, max_vertices: int = 9, min_vertices: int = 4, **_) -> SuiteResult:
    bound = max_edges_bound()
    reports = []
    for t in range(trials):
        rng = _trial_rng("linres", seed, t)
        gen = generate("chordal-complement", rng.randint(min_vertices, max_vertices), rng.getrandbits(32), bound)
        g = gen.graph
        r = TrialReport(t, "chordal-complement", g.n, g.m, details=gen.to_json())
        _check_linres_graph(r, g)
        reports.append(r)
    return SuiteResult("linres", seed, {"max_vertices": max_vertices, "min_vertices": min_vertices, "max_edges": bound}, reports)


def run_linchar(trials: int = 50, seed: int = 0, max_vertices: int = 9, min_vertices: int = 4, kmax: int = 3, **_) -> SuiteResult:
    bound = max_edges_bound()
    reports = []
    for t in range(trials):
        rng = _trial_rng("linchar", seed, t)
        gen = generate("chordal-complement", rng.randint(min_vertices, max_vertices), rng.getrandbits(32), bound)
        g = gen.graph
        r = TrialReport(t, "chordal-complement", g.n, g.m, details=gen.to_json())
        res = power_linear_quotients(g, kmax)
        if res is None:
            r.checks["applicable"] = False
        else:
            for rep in res:
                r.checks[f"k{rep.k}"] = rep.ok
            r.details["powers"] = [rep.to_json() for rep in res]
        if not r.passed:
            r.counterexample = counterexample(g, None, [f"power {c}" for c, ok in r.checks.items() if not ok])
        reports.append(r)
    return SuiteResult("linchar", seed, {"max_vertices": max_vertices, "min_vertices": min_vertices, "kmax": kmax}, reports)


def run_inclusions(trials: int = 100, seed: int = 0, max_vertices: int = 9, min_vertices: int = 4, max_edges: int = 12, orders: int = 10, **_) -> SuiteResult:
    max_edges = min(max_edges, max_edges_bound())
    reports = []
    for t in range(trials):
        rng = _trial_rng("inclusions", seed, t)
        gen = generate("arbitrary", rng.randint(min_vertices, max_vertices), rng.getrandbits(32), max_edges)
        g = gen.graph
        walks = primitive_walks(g)
        graver = set(walks)
        circuits = enumerate_circuits(g)
        r = TrialReport(t, "arbitrary", g.n, g.m, details=gen.to_json())
        r.checks["circuits_in_graver"] = circuits <= graver
        squarefree = 0
        buch_ok = incl_ok = True
        for _k in range(orders):
            perm = list(range(g.m))
            rng.shuffle(perm)
            order = TermOrder(tuple(perm), USER)
            sub = TrialReport(t, "arbitrary", g.n, g.m)
            gb = _basis_checks(sub, g, order, graver)
            buch_ok &= sub.checks["buchberger"]
            incl_ok &= sub.checks["rgb_in_graver"]
            if sub.counterexample is not None and r.counterexample is None:
                r.counterexample = sub.counterexample
            squarefree += squarefree_report(gb).initial_squarefree
        r.checks["buchberger"] = buch_ok
        r.checks["rgb_in_graver"] = incl_ok
        _odd_cycle_consistency(r, g, squarefree > 0)
        r.details.update(squarefree_orders=squarefree, graver_size=len(graver), circuits=len(circuits))
        if not r.checks["circuits_in_graver"] and r.counterexample is None:
            r.counterexample = counterexample(g, None, [b.pretty() for b in circuits - graver])
        reports.append(r)
    return SuiteResult("inclusions", seed, {"max_vertices": max_vertices, "max_edges": max_edges, "orders": orders}, reports)


def run_graver_oracle(trials: int = 100, seed: int = 0, max_vertices: int = 9, min_vertices: int = 4, max_edges: int = GRAVER_ORACLE_MAX_EDGES, **_) -> SuiteResult:
    if max_edges > GRAVER_ORACLE_MAX_EDGES:
        raise ValueError(f"the Graver oracle is limited to {GRAVER_ORACLE_MAX_EDGES} edges")
    reports = []
    for t in range(trials):
        rng = _trial_rng("graver-oracle", seed, t)
        gen = generate("arbitrary", rng.randint(min_vertices, max_vertices), rng.getrandbits(32), max_edges)
        g = gen.graph
        graver = set(primitive_walks(g))
        oracle = graver_oracle(g)
        circuits = enumerate_circuits(g)
        r = TrialReport(t, "arbitrary", g.n, g.m, details=gen.to_json())
        r.checks["graver_equals_oracle"] = graver == oracle
        r.checks["circuits_equal_oracle"] = circuits == circuit_oracle(g)
        r.details["graver_size"] = len(graver)
        if not r.passed:
            diff = sorted(b.pretty() for b in graver ^ oracle)
            r.counterexample = counterexample(g, None, diff)
        reports.append(r)
    return SuiteResult("graver-oracle", seed, {"max_vertices": max_vertices, "max_edges": max_edges}, reports)


def run_dual_verifier(trials: int = 500, seed: int = 0, max_vertices: int = 9, min_vertices: int = 4, **_) -> SuiteResult:
    families = ("arbitrary", "gap-free", "chordal-complement")
    reports = []
    for t in range(trials):
        rng = _trial_rng("dual-verifier", seed, t)
        family = families[t % len(families)]
        gen = generate(family, rng.randint(min_vertices, max_vertices), rng.getrandbits(32), 20)
        g = gen.graph
        ordering = None
        if family == "chordal-complement" and rng.random() < 0.5:
            ordering = linear_quotient_ordering(g) or None
        if ordering is None:
            perm = list(range(g.m))
            rng.shuffle(perm)
            ordering = EdgeOrdering(tuple(perm), USER)
        pg = prefix_gap_free(g, ordering)
        lq = verify_linear_quotients([edge_monomial(g, i) for i in ordering.sequence])
        r = TrialReport(t, family, g.n, g.m)
        r.checks["agree"] = (pg.ok, pg.failing_prefix) == (lq.ok, lq.failing_index)
        r.details.update(prefix_gap_free=pg.ok, failing_prefix=pg.failing_prefix, linear_quotients=lq.ok, failing_index=lq.failing_index)
        if not r.passed:
            order = TermOrder(ordering.sequence, USER)
            r.counterexample = counterexample(g, order, [f"prefix={pg}", f"quotients={lq}"])
        reports.append(r)
    return SuiteResult("dual-verifier", seed, {"max_vertices": max_vertices}, reports)


RUNNERS: dict[str, Callable[..., SuiteResult]] = {
    "golden": run_golden,
    "corollary": run_corollary,
    "onesteplin": run_onesteplin,
    "linres": run_linres,
    "linchar": run_linchar,
    "inclusions": run_inclusions,
    "graver-oracle": run_graver_oracle,
    "dual-verifier": run_dual_verifier,
}


def run_suite(tag: str, trials: Optional[int] = None, seed: int = 0, max_vertices: int = 9, **kwargs) -> SuiteResult:
    if tag not in RUNNERS:
        raise ValueError(f"unknown suite {tag!r}, expected one of {', '.join(SUITES)}")
    if max_vertices > MAX_VERTICES:
        raise ValueError(f"max vertices {max_vertices} exceeds the limit {MAX_VERTICES}")
    if trials is None:
        trials = DEFAULT_TRIALS[tag]
    return RUNNERS[tag](trials=trials, seed=seed, max_vertices=max_vertices, **kwargs)
