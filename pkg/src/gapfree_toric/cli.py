"""Command-line entry point.

Exit codes: 0 success, 1 suite failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .graph import (
    Graph,
    GraphError,
    complement,
    is_chordal,
    is_gap_free,
    k_step_linearity,
    odd_cycle_condition,
    parse_graph,
)
from .groebner import TermOrder, is_reduced, reduced_groebner_basis, squarefree_report
from .linres import USER, EdgeOrdering, derive_edge_order, linear_quotient_ordering, term_order
from .suites import DEFAULT_TRIALS, GRAVER_ORACLE_MAX_EDGES, MAX_VERTICES, SUITES, run_suite
from .toric import BoundExceeded, classify_primitive_walk, enumerate_circuits, primitive_walks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit_json(obj, target: Optional[str]) -> None:
    if target is None:
        return
    text = _dump(obj)
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def _load(path: str) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_graph(text)


def _labels(g: Graph, vertices) -> list[int]:
    return [g.labels[v - 1] for v in vertices]


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"{what} must be a comma-separated list of integers") from exc


# -- analyze -------------------------------------------------------------------


def analyze_report(g: Graph) -> dict:
    gap = is_gap_free(g)
    chordal = is_chordal(complement(g))
    k = k_step_linearity(g)
    out = {
        "n": g.n,
        "m": g.m,
        "connected": g.is_connected(),
        "gap_free": gap.gap_free,
        "gap_witness": None if gap.witness is None else [_labels(g, e) for e in gap.witness],
        "complement_chordal": chordal.chordal,
        "complement_peo": None if chordal.peo is None else _labels(g, chordal.peo),
        "complement_witness": None if chordal.witness is None else _labels(g, chordal.witness.vertices),
        "k_step_linearity": "inf" if k == math.inf else k,
    }
    if g.is_connected():
        odd = odd_cycle_condition(g)
        out["odd_cycle_condition"] = odd.holds
        out["odd_cycle_witness"] = None if odd.witness is None else [_labels(g, c) for c in odd.witness]
    else:
        out["odd_cycle_condition"] = None
        out["odd_cycle_witness"] = None
    return out


def cmd_analyze(args) -> int:
    rep = analyze_report(_load(args.file))
    if args.json:
        _emit_json(rep, args.json)
    if args.json != "-":
        for key in ("n", "m", "connected", "gap_free", "gap_witness", "complement_chordal", "complement_peo",
                    "complement_witness", "k_step_linearity", "odd_cycle_condition", "odd_cycle_witness"):
            val = rep[key]
            if val is None:
                continue
            shown = str(val).lower() if isinstance(val, bool) else json.dumps(val)
            print(f"{key.replace('_', '-')}: {shown.strip(chr(34))}")
    return EXIT_OK


# -- groebner ------------------------------------------------------------------


def resolve_order(g: Graph, args) -> TermOrder:
    chosen = [x for x in (args.vertex_order, args.edge_permutation) if x is not None] + ([1] if args.linear_quotient else [])
    if len(chosen) > 1:
        raise UsageError("give at most one of --vertex-order, --linear-quotient, --edge-permutation")
    if args.linear_quotient:
        ordering = linear_quotient_ordering(g)
        if not ordering:
            witness = "" if ordering.witness is None else f" (chordless cycle {_labels(g, ordering.witness.vertices)})"
            raise UsageError(
                "refusing --linear-quotient: the complement is not chordal"
                f"{witness}, so by Fröberg's theorem I(G) has no linear resolution and no linear quotient ordering exists"
            )
        return term_order(ordering)
    if args.edge_permutation is not None:
        perm = _int_list(args.edge_permutation, "--edge-permutation")
        if sorted(perm) != list(range(1, g.m + 1)):
            raise UsageError(f"--edge-permutation must be a permutation of 1..{g.m}")
        return term_order(EdgeOrdering(tuple(i - 1 for i in perm), USER))
    if args.vertex_order is not None:
        labels = _int_list(args.vertex_order, "--vertex-order")
        if sorted(labels) != sorted(g.labels):
            raise UsageError(f"--vertex-order must list every vertex label exactly once: {sorted(g.labels)}")
        index = {lab: i for i, lab in enumerate(g.labels, start=1)}
        return term_order(derive_edge_order(g, [index[x] for x in labels]))
    return TermOrder.descending(g.m, USER)


def groebner_report(g: Graph, order: TermOrder) -> dict:
    walks = primitive_walks(g)
    gb = reduced_groebner_basis(walks, order, g)
    circuits = enumerate_circuits(g)
    rep = squarefree_report(gb)
    members = []
    for b in gb:
        key = b.normalized()
        shape = classify_primitive_walk(walks[key], g) if key in walks else None
        members.append({
            "binomial": b.pretty(),
            "circuit": key in circuits,
            "graver": key in walks,
            "walk_type": None if shape is None else shape.type_number,
        })
    out = gb.to_json()
    out.update(
        squarefree=rep.to_json(),
        membership=members,
        circuit_basis=all(m["circuit"] for m in members),
        reduced=is_reduced(gb),
        n=g.n,
        m=g.m,
    )
    return out


def cmd_groebner(args) -> int:
    g = _load(args.file)
    order = resolve_order(g, args)
    rep = groebner_report(g, order)
    if args.json:
        _emit_json(rep, args.json)
    if args.json != "-":
        offenders = {o["binomial"]: o for o in rep["squarefree"]["offenders"]}
        print(f"order: {rep['order']['provenance']} priority {','.join(map(str, rep['order']['priority']))}")
        print(f"reduced Groebner basis ({len(rep['membership'])} elements):")
        for mem in rep["membership"]:
            flag = ""
            if mem["binomial"] in offenders:
                o = offenders[mem["binomial"]]
                flag = f"   <- non-squarefree {o['side']} term (y{o['edge']})"
            print(f"  {mem['binomial']}{flag}")
        sq = rep["squarefree"]
        print(f"initial ideal squarefree: {str(sq['initial_squarefree']).lower()}")
        print(f"doubly squarefree: {str(sq['doubly_squarefree']).lower()}")
        print(f"all elements circuits: {str(rep['circuit_basis']).lower()}")
    return EXIT_OK


# -- circuits / graver ---------------------------------------------------------


def _binomial_listing(g: Graph, binomials) -> list[dict]:
    return [b.to_json() for b in sorted(binomials, key=lambda b: (b.degree, b.pretty()))]


def cmd_circuits(args) -> int:
    g = _load(args.file)
    items = _binomial_listing(g, enumerate_circuits(g))
    return _print_listing(items, args.json, "circuits")


def cmd_graver(args) -> int:
    g = _load(args.file)
    walks = primitive_walks(g)
    items = _binomial_listing(g, walks)
    for item, b in zip(items, sorted(walks, key=lambda b: (b.degree, b.pretty()))):
        item["walk"] = _labels(g, walks[b].vertices)
        item["walk_type"] = classify_primitive_walk(walks[b], g).type_number
    return _print_listing(items, args.json, "Graver basis elements")


def _print_listing(items, target, title) -> int:
    if target:
        _emit_json(items, target)
    if target != "-":
        print(f"{len(items)} {title}")
        for item in items:
            print(f"  {item['pretty']}")
    return EXIT_OK


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.max_vertices > MAX_VERTICES:
        raise UsageError(f"--max-vertices is limited to {MAX_VERTICES}")
    if args.max_vertices < 4:
        raise UsageError("--max-vertices must be at least 4")
    if args.trials < 0:
        raise UsageError("--trials must be non-negative")
    extra = {}
    if args.max_edges is not None:
        if args.tag != "graver-oracle":
            raise UsageError("--max-edges applies to the graver-oracle suite; use TORIC_MAX_EDGES for the others")
        if args.max_edges > GRAVER_ORACLE_MAX_EDGES:
            raise UsageError(f"--max-edges is limited to {GRAVER_ORACLE_MAX_EDGES} for the Graver oracle")
        extra["max_edges"] = args.max_edges
    result = run_suite(args.tag, args.trials, args.seed, args.max_vertices, **extra)
    report = result.to_json()
    if args.json:
        _emit_json(report, args.json)
    if args.out_dir:
        _write_counterexamples(Path(args.out_dir), result)
    if args.json != "-":
        print(f"{result.suite} seed={result.seed}: {result.passed}/{len(result.reports)} pass")
        for name, count in report["check_failures"].items():
            if count:
                print(f"  check {name}: {count} failing trials")
        for r in result.failures():
            ce = r.counterexample or {}
            print(f"  FAIL trial {r.trial} ({r.family}, n={r.n}, m={r.m}) order {' '.join(ce.get('order_args', []))}")
            for line in ce.get("graph", "").splitlines():
                print(f"    {line}")
    return EXIT_OK if result.ok else EXIT_FAIL


def _write_counterexamples(out_dir: Path, result) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for r in result.failures():
        stem = f"{result.suite}-seed{result.seed}-trial{r.trial}"
        ce = r.counterexample or {}
        (out_dir / f"{stem}.txt").write_text(ce.get("graph", ""))
        (out_dir / f"{stem}.json").write_text(_dump(r.to_json()))


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gapfree-toric", description="Toric ideals of graphs and their Groebner bases.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="graph predicates: gap-free, complement chordality, k-step linearity")
    a.add_argument("file")
    a.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("groebner", help="reduced lex Groebner basis of the toric ideal")
    g.add_argument("file")
    g.add_argument("--vertex-order", metavar="V1,..,VN", help="vertices from largest to smallest; edges get graded revlex order")
    g.add_argument("--linear-quotient", action="store_true", help="order from a linear quotient ordering of the edge ideal")
    g.add_argument("--edge-permutation", metavar="I1,..,IM", help="edge indices from largest variable to smallest")
    g.add_argument("--json", metavar="OUT", help="write the JSON report to OUT ('-' for stdout)")
    g.set_defaults(func=cmd_groebner)

    for name, func, text in (("circuits", cmd_circuits, "circuits of the toric ideal"),
                             ("graver", cmd_graver, "Graver basis from primitive even closed walks")):
        c = sub.add_parser(name, help=text)
        c.add_argument("file")
        c.add_argument("--json", metavar="OUT", help="write JSON to OUT ('-' for stdout)")
        c.set_defaults(func=func)

    v = sub.add_parser("verify", help="run a seeded verification suite")
    v.add_argument("tag", choices=SUITES)
    v.add_argument("--trials", type=int, default=None, help="number of trials (suite default if omitted)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-vertices", type=int, default=9)
    v.add_argument("--max-edges", type=int, default=None, help="edge bound for the graver-oracle suite")
    v.add_argument("--out-dir", help="write failing graphs and trial reports here")
    v.add_argument("--json", metavar="OUT", help="write the suite report to OUT ('-' for stdout)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "trials", 0) is None:
        args.trials = DEFAULT_TRIALS[args.tag]
    try:
        return args.func(args)
    except (UsageError, GraphError, BoundExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
