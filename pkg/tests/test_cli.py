"""File formats and the command-line surface: round-trips, error line
numbers, exit codes, golden transcripts."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uniqham import CnfFormula, DirectedGraph, UndirectedGraph, VcInstance
from uniqham.cli import build_parser, load_instance, main
from uniqham.formats import (
    FormatError,
    parse_cnf,
    parse_graph,
    parse_one_in_three,
    parse_vc,
    serialize_cnf,
    serialize_graph,
)


class TestCnfFormat:
    def test_basic_parse(self):
        f = parse_cnf("p cnf 1 1\n1 0\n")
        assert f.n_vars == 1 and f.clauses[0].to_ints() == (1,)

    def test_comments_and_blank_lines(self):
        f = parse_cnf("c hello\n\np cnf 2 1\nc mid\n1 -2 0\n")
        assert f.n_clauses == 1

    def test_figure_example_file(self):
        text = "p cnf 4 2\n1 2 3 0\n-2 3 4 0\n"
        f13 = parse_one_in_three(text)
        assert f13.n_vars == 4 and len(f13.clauses) == 2

    def test_errors_carry_line_numbers(self):
        with pytest.raises(FormatError) as e:
            parse_cnf("p cnf x 1\n1 0\n")
        assert e.value.line_no == 1
        with pytest.raises(FormatError) as e:
            parse_cnf("p cnf 2 1\n1 3 0\n")
        assert e.value.line_no == 2
        with pytest.raises(FormatError) as e:
            parse_cnf("p cnf 2 1\n1 2\n")
        assert e.value.line_no == 2
        with pytest.raises(FormatError) as e:
            parse_cnf("p cnf 2 1\n1 0 2 0\n")
        assert e.value.line_no == 2
        with pytest.raises(FormatError) as e:
            parse_cnf("p cnf 2 2\n1 0\n")
        assert e.value.line_no == 1
        with pytest.raises(FormatError):
            parse_cnf("")

    def test_serialize_with_labels(self):
        f = CnfFormula(2, [(1, -2)])
        text = serialize_cnf(f, {1: "pos(1,1)", 2: "pos(1,2)"})
        assert text == "c label 1 pos(1,1)\nc label 2 pos(1,2)\np cnf 2 1\n1 -2 0\n"

    @given(st.integers(0, 10**9))
    @settings(max_examples=40, deadline=None)
    def test_round_trip(self, seed):
        from uniqham import gen_one_in_three

        f = gen_one_in_three(3 + seed % 4, 1 + seed % 4, seed).cnf
        assert parse_cnf(serialize_cnf(f)) == f


class TestGraphFormat:
    def test_undirected(self):
        g = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        assert isinstance(g, UndirectedGraph)
        assert g.edges == ((1, 2), (1, 3), (2, 3))

    def test_directed_allows_symmetric(self):
        h = parse_graph("p arc 2 2\na 1 2\na 2 1\n")
        assert isinstance(h, DirectedGraph) and h.n_arcs == 2

    def test_oriented_validation_rejects_symmetric(self):
        with pytest.raises(Exception):
            load_instance("hamp-o", "p arc 2 2\na 1 2\na 2 1\n")
        h = load_instance("hamp-d", "p arc 2 2\na 1 2\na 2 1\n")
        assert h.n_arcs == 2

    def test_labels_and_budget_round_trip(self):
        g = UndirectedGraph(3, [(1, 2)], labels={1: "x1", 2: "~x1", 3: "a1"})
        text = serialize_graph(g, k=2)
        inst = parse_vc(text)
        assert inst == VcInstance(g, 2)
        assert "c k 2" in text and "c label 3 a1" in text

    def test_errors_carry_line_numbers(self):
        for text, line in [
            ("p edge 3 1\ne 1 1\n", 2),
            ("p edge 3 2\ne 1 2\ne 2 1\n", 3),
            ("p edge 3 1\ne 1 4\n", 2),
            ("p edge 3 2\ne 1 2\n", 1),
            ("e 1 2\n", 1),
            ("p edge 3 1\na 1 2\n", 2),
        ]:
            with pytest.raises(FormatError) as e:
                parse_graph(text)
            assert e.value.line_no == line, text

    def test_vc_requires_budget_line(self):
        with pytest.raises(FormatError):
            parse_vc("p edge 2 1\ne 1 2\n")

    @given(st.integers(0, 10**9))
    @settings(max_examples=40, deadline=None)
    def test_round_trips(self, seed):
        from uniqham import gen_digraph, gen_graph

        g = gen_graph(1 + seed % 7, 500, seed)
        assert parse_graph(serialize_graph(g)) == g
        h = gen_digraph(1 + seed % 7, 500, seed)
        assert parse_graph(serialize_graph(h)) == h


class TestCommandLine:
    def test_unknown_flag_exits_2(self, capsys):
        with pytest.raises(SystemExit) as e:
            build_parser().parse_args(["count", "--nonsense"])
        assert e.value.code == 2

    def test_count_triangle_cycles(self, tmp_path, capsys):
        p = tmp_path / "k3.graph"
        p.write_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
        assert main(["count", "--problem", "hamc-u", "--in", str(p)]) == 0
        assert capsys.readouterr().out == "exact 1\n"

    def test_count_with_cap(self, tmp_path, capsys):
        p = tmp_path / "k4.graph"
        p.write_text("p edge 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n")
        assert main(["count", "--problem", "hamc-u", "--in", str(p), "--cap", "2"]) == 0
        assert capsys.readouterr().out == "atleast 2\n"

    def test_count_parse_error_exits_2(self, tmp_path, capsys):
        p = tmp_path / "bad.graph"
        p.write_text("p edge 2 1\ne 1 1\n")
        assert main(["count", "--problem", "hamc-u", "--in", str(p)]) == 2
        assert "line 2" in capsys.readouterr().err

    def test_missing_file_exits_2(self, capsys):
        assert main(["count", "--problem", "sat", "--in", "/no/such/file"]) == 2

    def test_reduce_triplication_header(self, tmp_path, capsys):
        src = tmp_path / "c3.digraph"
        src.write_text("p arc 3 3\na 1 2\na 2 3\na 3 1\n")
        out = tmp_path / "image.graph"
        assert main(["reduce", "--step", "triplication", "--in", str(src), "--out", str(out)]) == 0
        text = out.read_text()
        assert "p edge 9 9" in text
        assert sum(1 for line in text.splitlines() if line.startswith("c label ")) == 9

    def test_reduce_vc_emits_labels_and_budget(self, tmp_path):
        src = tmp_path / "fig.cnf"
        src.write_text("p cnf 4 2\n1 2 3 0\n-2 3 4 0\n")
        out = tmp_path / "fig.vc"
        assert main(["reduce", "--step", "13sat-to-vc", "--in", str(src), "--out", str(out)]) == 0
        text = out.read_text()
        assert "c k 8" in text and "p edge 14 22" in text
        assert sum(1 for line in text.splitlines() if line.startswith("c label ")) == 14
        inst = parse_vc(text)
        assert inst.k == 8

    def test_gen_reduce_count_pipeline(self, tmp_path, capsys):
        f = tmp_path / "f.cnf"
        assert main(["gen", "--problem", "13sat", "--n", "3", "--m", "1",
                     "--seed", "5", "--out", str(f)]) == 0
        g = tmp_path / "g.graph"
        assert main(["reduce", "--step", "13sat-to-hamp-o", "--in", str(f), "--out", str(g)]) == 0
        assert main(["count", "--problem", "13sat", "--in", str(f)]) == 0
        first = capsys.readouterr().out
        assert main(["count", "--problem", "hamp-o", "--in", str(g)]) == 0
        second = capsys.readouterr().out
        assert first == second == "exact 3\n"

    def test_chain_matches_stepwise(self, tmp_path, capsys):
        src = tmp_path / "h.digraph"
        src.write_text("c label 1 u\np arc 3 2\na 1 2\na 2 3\n")
        out = tmp_path / "img.graph"
        assert main(["chain", "--from", "hamp-o", "--to", "hamc-d", "--in", str(src),
                     "--out", str(out)]) == 0
        assert "p arc 5" in out.read_text()
        assert main(["count", "--problem", "hamc-d", "--in", str(out)]) == 0
        assert capsys.readouterr().out == "exact 1\n"

    def test_chain_identity(self, tmp_path, capsys):
        src = tmp_path / "g.graph"
        src.write_text("p edge 2 1\ne 1 2\n")
        assert main(["chain", "--from", "hamc-u", "--to", "hamc-u", "--in", str(src)]) == 0
        assert "p edge 2 1" in capsys.readouterr().out

    def test_chain_unsupported_pair(self, tmp_path, capsys):
        src = tmp_path / "f.cnf"
        src.write_text("p cnf 1 1\n1 0\n")
        assert main(["chain", "--from", "sat", "--to", "13sat", "--in", str(src)]) == 2

    def test_verify_pass_and_exit_codes(self, capsys):
        code = main(["verify", "--reduction", "triplication", "--cases", "20", "--seed", "7",
                     "--mode", "parsimony", "--order-min", "1", "--order-max", "5"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.endswith("summary 20 pass 0 fail 0 budget\n")
        assert out.splitlines()[0].startswith("case 0 hamc-d-to-hamc-u ")

    def test_verify_failure_exits_1(self, capsys):
        code = main(["verify", "--reduction", "hamp-d-to-hamp-u", "--cases", "25", "--seed", "2",
                     "--mode", "parsimony", "--order-min", "1", "--order-max", "4"])
        out = capsys.readouterr().out
        assert code == 1
        assert " FAIL" in out

    def test_verify_golden_transcript(self, capsys):
        assert main(["verify", "--reduction", "universal-vertex", "--cases", "3", "--seed", "11",
                     "--mode", "parsimony", "--order-min", "2", "--order-max", "5"]) == 0
        out = capsys.readouterr().out
        assert out == (
            "case 0 hamp-u-to-hamc-u zero zero pass\n"
            "case 1 hamp-u-to-hamc-u one one pass\n"
            "case 2 hamp-u-to-hamc-u zero zero pass\n"
            "summary 3 pass 0 fail 0 budget\n"
        )

    def test_gen_is_seed_deterministic(self, capsys):
        argv = ["gen", "--problem", "hamc-o", "--order", "6", "--p-millis", "700", "--seed", "9"]
        assert main(argv) == 0
        a = capsys.readouterr().out
        assert main(argv) == 0
        assert capsys.readouterr().out == a
        assert a.startswith("p arc 6 ")
