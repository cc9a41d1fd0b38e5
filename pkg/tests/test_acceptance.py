"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line. Run standalone with
``python tests/test_acceptance.py`` to get just those lines.
"""

import sys
import time
from functools import cache

import pytest

from gapfree_toric.graph import standard_graph
from gapfree_toric.groebner import TermOrder, groebner_violations, reduced_groebner_basis, squarefree_report
from gapfree_toric.linres import edge_monomial, linear_quotient_ordering, term_order, verify_linear_quotients
from gapfree_toric.suites import run_suite
from gapfree_toric.toric import enumerate_graver, parse_binomial

SEED = 7
TWO_MINUTES = 120.0

GOLDEN = (
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


@cache
def timed_suite(tag, trials, max_vertices=9, **kwargs):
    start = time.perf_counter()
    res = run_suite(tag, trials, SEED, max_vertices, **kwargs)
    return res, time.perf_counter() - start


def golden():
    return timed_suite("golden", 1)


def onesteplin():
    return timed_suite("onesteplin", 200)


def linres():
    return timed_suite("linres", 200)


def corollary():
    return timed_suite("corollary", 3)


def inclusions():
    return timed_suite("inclusions", 100, max_edges=12, orders=10)


def _failures(res, *checks):
    counts = res.check_failures()
    return sum(counts.get(c, 0) for c in checks)


def criterion_1():
    from gapfree_toric.cli import groebner_report, resolve_order
    from gapfree_toric.suites import load_golden_graph

    start = time.perf_counter()
    g = load_golden_graph()

    class Args:
        vertex_order, edge_permutation, linear_quotient = "1,2,3,4,5,6", None, False

    rep = groebner_report(g, resolve_order(g, Args))
    elapsed = time.perf_counter() - start
    got = {parse_binomial(e["pretty"], g.m).normalized() for e in rep["elements"]}
    want = {parse_binomial(t, g.m).normalized() for t in GOLDEN}
    sq = rep["squarefree"]
    offenders = [(o["binomial"], o["side"], o["edge"]) for o in sq["offenders"]]
    ok = (
        got == want
        and sq["initial_squarefree"]
        and not sq["doubly_squarefree"]
        and offenders == [("y3*y4*y7*y9 - y5^2*y6*y8", "trailing", 5)]
        and elapsed < 1.0
    )
    return ok, f"{len(got)} binomials, offenders {offenders}, {elapsed:.3f}s"


def criterion_2():
    res, elapsed = onesteplin()
    good = sum(r.checks["initial_squarefree"] and r.checks["circuit_basis"] for r in res.reports)
    ok = good == 200 and len(res.reports) == 200 and elapsed < TWO_MINUTES
    return ok, f"{good}/200 squarefree circuit bases, {elapsed:.1f}s"


def criterion_3():
    res, elapsed = linres()
    good = sum(r.checks["ordering_found"] and r.checks.get("linear_quotients", False)
               and r.checks.get("doubly_squarefree", False) for r in res.reports)
    ok = good == 200 and len(res.reports) == 200 and elapsed < TWO_MINUTES
    return ok, f"{good}/200 doubly squarefree, {elapsed:.1f}s"


def criterion_4():
    names = []
    for parts in ((2, 2, 2), (3, 3), (1, 2, 3)):
        g = standard_graph("multipartite", *parts)
        ordering = linear_quotient_ordering(g)
        if not ordering or not verify_linear_quotients([edge_monomial(g, i) for i in ordering.sequence]):
            return False, f"no linear quotient ordering for K_{parts}"
        gb = reduced_groebner_basis(enumerate_graver(g), term_order(ordering))
        if not squarefree_report(gb).doubly_squarefree:
            return False, f"K_{parts} not doubly squarefree"
        names.append("K_{" + ",".join(map(str, parts)) + "}")
    res, _ = corollary()
    return res.ok, f"{', '.join(names)} doubly squarefree"


def criterion_5():
    res, elapsed = inclusions()
    bad = _failures(res, "circuits_in_graver", "rgb_in_graver")
    max_m = max(r.m for r in res.reports)
    ok = bad == 0 and len(res.reports) == 100 and max_m <= 12
    return ok, f"{bad} violations over 100 graphs x 10 orders (max m={max_m}), {elapsed:.1f}s"


def criterion_6():
    res, elapsed = timed_suite("graver-oracle", 100, max_edges=10)
    bad = _failures(res, "graver_equals_oracle")
    ok = bad == 0 and len(res.reports) >= 100 and max(r.m for r in res.reports) <= 10
    return ok, f"{bad} discrepancies over {len(res.reports)} graphs, {elapsed:.1f}s"


def criterion_7():
    res, elapsed = timed_suite("dual-verifier", 500)
    bad = _failures(res, "agree")
    passing = sum(r.details["linear_quotients"] for r in res.reports)
    ok = bad == 0 and len(res.reports) == 500
    return ok, f"{bad} disagreements over 500 pairs ({passing} orderings with linear quotients), {elapsed:.1f}s"


def criterion_8():
    res, elapsed = timed_suite("linchar", 50, kmax=3)
    good = sum(ok for r in res.reports for name, ok in r.checks.items() if name in ("k1", "k2", "k3"))
    searched = sum(p["method"] == "search" for r in res.reports for p in r.details.get("powers", ()))
    ok = good == 150 and res.ok
    return ok, f"{good}/150 (graph, k) pairs, {searched} via fallback search, {elapsed:.1f}s"


def criterion_9():
    suites = [onesteplin()[0], linres()[0], corollary()[0], inclusions()[0]]
    bad = sum(_failures(s, "odd_cycle_consistency") for s in suites)
    checked = sum(len(s.reports) for s in suites)
    return bad == 0, f"{bad} violations over {checked} graphs"


def criterion_10():
    suites = [golden()[0], onesteplin()[0], linres()[0], corollary()[0], inclusions()[0]]
    bad = sum(_failures(s, "buchberger") for s in suites)
    g = standard_graph("cycle", 4)
    gb = reduced_groebner_basis(enumerate_graver(g), TermOrder.descending(4))
    bad += len(groebner_violations(gb, enumerate_graver(g)))
    bases = sum(len(s.reports) for s in suites) + 9 * len(inclusions()[0].reports)
    return bad == 0, f"{bad} violations over {bases} bases"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def report_line(number, ok, detail):
    return f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("number", range(1, 11))
def test_criterion(number, capsys):
    ok, detail = CRITERIA[number - 1]()
    with capsys.disabled():
        print("\n" + report_line(number, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(i, *c()) for i, c in enumerate(CRITERIA, start=1)]
    for number, ok, detail in results:
        print(report_line(number, ok, detail))
    sys.exit(0 if all(ok for _, ok, _ in results) else 1)
