import json

import pytest

from gapfree_toric.cli import main
from gapfree_toric.families import FAMILIES, generate, generate_family
from gapfree_toric.graph import complement, is_chordal, is_gap_free, parse_graph
from gapfree_toric.suites import GOLDEN_BASIS, fixture_path, run_suite

GSTAR = str(fixture_path())


@pytest.fixture
def graph_file(tmp_path):
    def write(text, name="g.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


class TestFamilies:
    @pytest.mark.parametrize("seed", range(8))
    def test_postconditions(self, seed):
        g = generate_family("gap-free", 8, seed, max_edges=14)
        assert is_gap_free(g) and not g.isolated_vertices() and g.m <= 14
        c = generate_family("chordal-complement", 8, seed, max_edges=14)
        assert c.n == 8 and is_chordal(complement(c)) and not c.isolated_vertices()

    def test_multipartite_complement_is_cliques(self):
        for seed in range(10):
            g = generate_family("multipartite", 6, seed)
            assert is_chordal(complement(g))

    @pytest.mark.parametrize("family", FAMILIES)
    def test_deterministic(self, family):
        assert generate(family, 7, 42).graph == generate(family, 7, 42).graph

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            generate("planar", 6, 0)


class TestSuites:
    @pytest.mark.parametrize("tag", ["onesteplin", "linres", "linchar", "inclusions", "graver-oracle", "dual-verifier"])
    def test_small_runs_pass(self, tag):
        res = run_suite(tag, trials=4, seed=3, max_vertices=7)
        assert res.ok, res.to_json()

    def test_report_is_reproducible(self):
        a = run_suite("onesteplin", trials=3, seed=9).to_json()
        b = run_suite("onesteplin", trials=3, seed=9).to_json()
        assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)

    def test_bounds(self):
        with pytest.raises(ValueError):
            run_suite("graver-oracle", trials=1, max_edges=11)
        with pytest.raises(ValueError):
            run_suite("linres", trials=1, max_vertices=13)
        with pytest.raises(ValueError):
            run_suite("nope", trials=1)


class TestCommands:
    def test_groebner_golden(self, capsys, tmp_path):
        out = tmp_path / "gb.json"
        assert main(["groebner", GSTAR, "--vertex-order", "1,2,3,4,5,6", "--json", str(out)]) == 0
        text = capsys.readouterr().out
        assert "y3*y4*y7*y9 - y5^2*y6*y8   <- non-squarefree trailing term (y5)" in text
        rep = json.loads(out.read_text())
        assert sorted(e["pretty"] for e in rep["elements"]) == sorted(GOLDEN_BASIS)
        assert rep["order"] == {"kind": "lex", "priority": list(range(1, 11)), "provenance": "revlex-derived",
                                "source": [1, 2, 3, 4, 5, 6]}
        assert rep["squarefree"]["doubly_squarefree"] is False

    def test_groebner_square(self, capsys, graph_file):
        path = graph_file("1 2\n2 3\n3 4\n4 1\n")
        assert main(["groebner", path, "--edge-permutation", "3,1,4,2", "--json", "-"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert len(rep["elements"]) == 1 and rep["squarefree"]["doubly_squarefree"]

    def test_groebner_triangle(self, capsys, graph_file):
        assert main(["groebner", graph_file("1 2\n2 3\n1 3\n"), "--json", "-"]) == 0
        assert json.loads(capsys.readouterr().out)["elements"] == []

    def test_linear_quotient_refusal(self, capsys, graph_file):
        path = graph_file("1 2\n2 3\n3 4\n4 5\n5 1\n")
        assert main(["groebner", path, "--linear-quotient"]) == 2
        assert "Fröberg" in capsys.readouterr().err

    def test_linear_quotient_accepted(self, capsys, graph_file):
        path = graph_file("1 3\n1 4\n2 3\n2 4\n")
        assert main(["groebner", path, "--linear-quotient", "--json", "-"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["order"]["provenance"] == "linear-quotient"

    def test_vertex_order_uses_file_labels(self, capsys, graph_file):
        path = graph_file("10 20\n20 30\n30 40\n40 10\n")
        assert main(["groebner", path, "--vertex-order", "40,30,20,10", "--json", "-"]) == 0
        assert main(["groebner", path, "--vertex-order", "1,2,3,4"]) == 2

    def test_conflicting_orders(self, graph_file):
        path = graph_file("1 2\n2 3\n")
        assert main(["groebner", path, "--linear-quotient", "--edge-permutation", "1,2"]) == 2

    def test_analyze(self, capsys, graph_file):
        assert main(["analyze", GSTAR]) == 0
        assert "gap-free: true" in capsys.readouterr().out
        assert main(["analyze", graph_file("1 2\n3 4\n"), "--json", "-"]) == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["gap_free"] is False and rep["k_step_linearity"] == 0
        assert main(["analyze", graph_file("1 2\n2 3\n3 4\n4 1\n"), "--json", "-"]) == 0
        assert json.loads(capsys.readouterr().out)["complement_chordal"] is True

    def test_parse_error_exit_code(self, capsys, graph_file):
        assert main(["circuits", graph_file("1 2\n3 3\n")]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["graver", str(tmp_path / "none.txt")]) == 2

    def test_circuits_and_graver(self, capsys):
        assert main(["circuits", GSTAR, "--json", "-"]) == 0
        circuits = json.loads(capsys.readouterr().out)
        assert main(["graver", GSTAR, "--json", "-"]) == 0
        graver = json.loads(capsys.readouterr().out)
        assert {c["pretty"] for c in circuits} <= {g["pretty"] for g in graver}
        assert all("walk" in g for g in graver)

    def test_edge_bound_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("TORIC_MAX_EDGES", "8")
        assert main(["groebner", GSTAR]) == 2
        assert "TORIC_MAX_EDGES" in capsys.readouterr().err

    def test_verify(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "linres", "--trials", "5", "--seed", "7", "--json", str(a)]) == 0
        assert main(["verify", "linres", "--trials", "5", "--seed", "7", "--json", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
        assert "5/5 pass" in capsys.readouterr().out

    def test_verify_usage_errors(self):
        assert main(["verify", "nonsense"]) == 2
        assert main(["verify", "graver-oracle", "--max-edges", "11"]) == 2
        assert main(["verify", "linres", "--max-vertices", "13"]) == 2

    def test_counterexample_replays(self, tmp_path, capsys, monkeypatch):
        # force a failing trial by tampering with the check; the written files must replay through groebner
        import gapfree_toric.suites as suites

        monkeypatch.setattr(suites, "squarefree_report", _always_offending(suites.squarefree_report))
        out = tmp_path / "fails"
        assert main(["verify", "onesteplin", "--trials", "2", "--seed", "1", "--out-dir", str(out)]) == 1
        reports = sorted(out.glob("*.json"))
        assert reports
        rep = json.loads(reports[0].read_text())
        graph = out / reports[0].name.replace(".json", ".txt")
        assert parse_graph(graph.read_text()).m == rep["m"]
        capsys.readouterr()
        assert main(["groebner", str(graph), *rep["counterexample"]["order_args"]]) == 0


def _always_offending(real):
    from gapfree_toric.groebner import SquarefreeReport

    def fake(gb):
        rep = real(gb)
        return SquarefreeReport(False, False, rep.offenders)

    return fake
