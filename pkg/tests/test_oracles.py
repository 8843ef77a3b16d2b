"""Counters: frozen examples, brute-force cross-checks, caps, budgets,
DP/backtracking agreement."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import (
    brute_count_covers,
    brute_count_models,
    brute_count_one_in_three,
    brute_cycles_directed,
    brute_cycles_undirected,
    brute_paths_directed,
    brute_paths_undirected,
)
from uniqham import (
    BudgetExceeded,
    CnfFormula,
    DirectedGraph,
    InstanceError,
    OneInThreeFormula,
    OracleConfig,
    UndirectedGraph,
    count_ham_cycles_directed,
    count_ham_cycles_undirected,
    count_ham_paths_directed,
    count_ham_paths_undirected,
    count_models,
    count_one_in_three,
    count_vertex_covers_at_most,
    gen_digraph,
    gen_graph,
    min_vertex_cover_size,
)

DP_ONLY = OracleConfig(dp_threshold=24)
BT_ONLY = OracleConfig(dp_threshold=0)


def complete_graph(n):
    return UndirectedGraph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])


def complete_digraph(n):
    return DirectedGraph(n, [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v])


def path_graph(n):
    return UndirectedGraph(n, [(i, i + 1) for i in range(1, n)])


class TestOracleConfig:
    def test_validation(self):
        with pytest.raises(InstanceError):
            OracleConfig(cap=-1)
        with pytest.raises(InstanceError):
            OracleConfig(dp_threshold=25)
        with pytest.raises(InstanceError):
            OracleConfig(node_budget=0)


class TestModelCounting:
    def test_no_clauses_counts_all_assignments(self):
        assert count_models(CnfFormula(2, [])).value == 4

    def test_contradiction(self):
        assert count_models(CnfFormula(1, [(1,), (-1,)])).value == 0

    def test_unit_clause_instances(self):
        assert count_models(CnfFormula(3, [(1,)])).value == 4

    @given(st.integers(0, 255), st.integers(3, 4))
    @settings(max_examples=60, deadline=None)
    def test_matches_truth_table(self, pick, n):
        # a small pseudo-random clause set, checked against full enumeration
        clauses = []
        x = pick
        for i in range(3):
            a = x % n + 1
            b = (x // 3 + i) % n + 1
            if a != b:
                clauses.append((a if x % 2 else -a, b if x % 5 else -b))
            x = x * 7 + 13
        f = CnfFormula(n, clauses)
        assert count_models(f).value == brute_count_models(f)

    def test_cap_semantics(self):
        f = CnfFormula(3, [])
        assert str(count_models(f, OracleConfig(cap=4))) == "atleast 4"
        assert str(count_models(f, OracleConfig(cap=9))) == "exact 8"
        capped = count_models(f, OracleConfig(cap=2))
        assert not capped.exact and capped.value == 2

    def test_budget_error(self):
        f = CnfFormula(6, [(i, j) for i in range(1, 6) for j in range(i + 1, 7)])
        with pytest.raises(BudgetExceeded):
            count_models(f, OracleConfig(node_budget=2))


class TestOneInThree:
    def test_single_clause_one_hot(self):
        f = OneInThreeFormula(CnfFormula(3, [(1, 2, 3)]))
        assert count_one_in_three(f).value == 3

    def test_figure_pair_of_clauses(self):
        f = OneInThreeFormula(CnfFormula(4, [(1, 2, 3), (-2, 3, 4)]))
        assert brute_count_one_in_three(f) == 2
        assert count_one_in_three(f).value == 2

    def test_complementary_clauses_unsatisfiable(self):
        f = OneInThreeFormula(CnfFormula(3, [(1, 2, 3), (-1, -2, -3)]))
        assert brute_count_one_in_three(f) == 0
        assert count_one_in_three(f).value == 0

    @given(st.integers(0, 10**9))
    @settings(max_examples=40, deadline=None)
    def test_matches_enumeration(self, seed):
        from uniqham import gen_one_in_three

        f = gen_one_in_three(3 + seed % 3, 1 + seed % 3, seed)
        assert count_one_in_three(f).value == brute_count_one_in_three(f)


class TestVertexCovers:
    def test_triangle(self):
        k3 = complete_graph(3)
        assert count_vertex_covers_at_most(k3, 2).value == 3 == brute_count_covers(k3, 2)
        assert count_vertex_covers_at_most(k3, 1).value == 0

    def test_edgeless(self):
        g = UndirectedGraph(3, [])
        assert count_vertex_covers_at_most(g, 0).value == 1

    def test_min_cover_sizes(self):
        assert min_vertex_cover_size(complete_graph(3)) == 2
        assert min_vertex_cover_size(UndirectedGraph(3, [])) == 0
        assert min_vertex_cover_size(UndirectedGraph(2, [(1, 2)])) == 1

    def test_budget_range_check(self):
        with pytest.raises(InstanceError):
            count_vertex_covers_at_most(complete_graph(3), 4)

    @given(st.integers(0, 10**9))
    @settings(max_examples=40, deadline=None)
    def test_matches_subset_enumeration(self, seed):
        g = gen_graph(1 + seed % 6, 400, seed)
        k = seed % (g.order + 1)
        assert count_vertex_covers_at_most(g, k).value == brute_count_covers(g, k)

    def test_cap(self):
        g = UndirectedGraph(4, [])
        r = count_vertex_covers_at_most(g, 4, OracleConfig(cap=3))
        assert not r.exact and r.value == 3


class TestHamiltonianCounters:
    def test_cycles_undirected_examples(self):
        assert count_ham_cycles_undirected(complete_graph(3)).value == 1
        assert count_ham_cycles_undirected(complete_graph(4)).value == 3
        assert count_ham_cycles_undirected(complete_graph(4)).value == brute_cycles_undirected(complete_graph(4))
        assert count_ham_cycles_undirected(path_graph(4)).value == 0

    def test_paths_undirected_examples(self):
        assert count_ham_paths_undirected(path_graph(3)).value == 1
        assert count_ham_paths_undirected(complete_graph(3)).value == 3
        assert count_ham_paths_undirected(UndirectedGraph(2, [])).value == 0

    def test_cycles_directed_examples(self):
        c3 = DirectedGraph(3, [(1, 2), (2, 3), (3, 1)])
        assert count_ham_cycles_directed(c3).value == 1
        assert count_ham_cycles_directed(complete_digraph(3)).value == 2
        p3 = DirectedGraph(3, [(1, 2), (2, 3)])
        assert count_ham_cycles_directed(p3).value == 0

    def test_paths_directed_examples(self):
        p3 = DirectedGraph(3, [(1, 2), (2, 3)])
        assert count_ham_paths_directed(p3).value == 1
        assert count_ham_paths_directed(complete_digraph(3)).value == 6
        isolated = DirectedGraph(2, [])
        assert count_ham_paths_directed(isolated).value == 0

    def test_small_orders(self):
        assert count_ham_cycles_undirected(UndirectedGraph(2, [(1, 2)])).value == 0
        assert count_ham_paths_undirected(UndirectedGraph(1, [])).value == 1
        assert count_ham_cycles_directed(DirectedGraph(1, [])).value == 0
        assert count_ham_cycles_directed(DirectedGraph(2, [(1, 2), (2, 1)])).value == 1
        assert count_ham_paths_directed(DirectedGraph(1, [])).value == 1

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
    def test_complete_graph_cycle_closed_form(self, n):
        want = math.factorial(n - 1) // 2
        assert count_ham_cycles_undirected(complete_graph(n), DP_ONLY).value == want
        assert count_ham_cycles_undirected(complete_graph(n), BT_ONLY).value == want

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_complete_digraph_path_closed_form(self, n):
        want = math.factorial(n)
        assert count_ham_paths_directed(complete_digraph(n), DP_ONLY).value == want
        assert count_ham_paths_directed(complete_digraph(n), BT_ONLY).value == want

    def test_cap_semantics_and_uncapped_consistency(self):
        k5 = complete_graph(5)
        exact = count_ham_cycles_undirected(k5).value
        assert exact == 12
        r = count_ham_cycles_undirected(k5, OracleConfig(cap=2))
        assert not r.exact and r.value == 2
        r = count_ham_cycles_undirected(k5, OracleConfig(cap=13))
        assert r.exact and r.value == exact and exact < 13

    def test_budget_error_in_backtracking(self):
        with pytest.raises(BudgetExceeded):
            count_ham_cycles_undirected(complete_graph(9), OracleConfig(dp_threshold=0, node_budget=5))

    def test_deterministic_repeats(self):
        g = gen_graph(8, 600, 1234)
        first = count_ham_cycles_undirected(g, BT_ONLY)
        for _ in range(3):
            assert count_ham_cycles_undirected(g, BT_ONLY) == first


class TestStrategyAgreement:
    @given(st.integers(0, 10**9))
    @settings(max_examples=60, deadline=None)
    def test_undirected_dp_backtracking_brute(self, seed):
        g = gen_graph(1 + seed % 6, 100 * (1 + seed % 9), seed)
        for counter, brute in (
            (count_ham_cycles_undirected, brute_cycles_undirected),
            (count_ham_paths_undirected, brute_paths_undirected),
        ):
            want = brute(g)
            assert counter(g, DP_ONLY).value == want
            assert counter(g, BT_ONLY).value == want

    @given(st.integers(0, 10**9))
    @settings(max_examples=60, deadline=None)
    def test_directed_dp_backtracking_brute(self, seed):
        h = gen_digraph(1 + seed % 6, 100 * (1 + seed % 9), seed)
        for counter, brute in (
            (count_ham_cycles_directed, brute_cycles_directed),
            (count_ham_paths_directed, brute_paths_directed),
        ):
            want = brute(h)
            assert counter(h, DP_ONLY).value == want
            assert counter(h, BT_ONLY).value == want

    @given(st.integers(0, 10**9), st.integers(1, 3))
    @settings(max_examples=40, deadline=None)
    def test_capped_agreement(self, seed, cap):
        g = gen_graph(3 + seed % 6, 500, seed)
        cfg_dp = OracleConfig(cap=cap, dp_threshold=24)
        cfg_bt = OracleConfig(cap=cap, dp_threshold=0)
        assert count_ham_cycles_undirected(g, cfg_dp) == count_ham_cycles_undirected(g, cfg_bt)
        assert count_ham_paths_undirected(g, cfg_dp) == count_ham_paths_undirected(g, cfg_bt)

    @given(st.integers(0, 10**9), st.integers(1, 8))
    @settings(max_examples=40, deadline=None)
    def test_capped_exact_matches_uncapped(self, seed, cap):
        # an exact result under a cap is always below the cap and identical to
        # the uncapped count; this holds for every counter
        g = gen_graph(1 + seed % 6, 500, seed)
        h = gen_digraph(1 + seed % 6, 500, seed + 1)
        f = CnfFormula(4, [(1, 2), (-2, 3), (1, -4)] if seed % 2 else [(1, -3)])
        runs = [
            lambda c: count_ham_cycles_undirected(g, c),
            lambda c: count_ham_paths_undirected(g, c),
            lambda c: count_ham_cycles_directed(h, c),
            lambda c: count_ham_paths_directed(h, c),
            lambda c: count_models(f, c),
            lambda c: count_vertex_covers_at_most(g, g.order, c),
        ]
        for run in runs:
            capped = run(OracleConfig(cap=cap))
            uncapped = run(OracleConfig())
            assert uncapped.exact
            if capped.exact:
                assert capped.value < cap
                assert capped.value == uncapped.value
            else:
                assert capped.value == cap
                assert uncapped.value >= cap
