"""Shared brute-force reference counters, kept independent of the library's
search/DP code paths: plain enumeration over assignments, subsets and
permutations."""

from __future__ import annotations

import itertools

from uniqham import (
    Assignment,
    CnfFormula,
    DirectedGraph,
    OneInThreeFormula,
    UndirectedGraph,
    canonicalize_cycle_directed,
    canonicalize_cycle_undirected,
    canonicalize_path_undirected,
)


def all_assignments(n_vars: int):
    for bits in itertools.product([False, True], repeat=n_vars):
        yield Assignment(bits)


def brute_count_models(f: CnfFormula) -> int:
    return sum(1 for a in all_assignments(f.n_vars) if a.satisfies(f))


def brute_count_one_in_three(f: OneInThreeFormula) -> int:
    return sum(1 for a in all_assignments(f.n_vars) if a.satisfies_one_in_three(f))


def brute_count_covers(g: UndirectedGraph, k: int) -> int:
    count = 0
    vertices = range(1, g.order + 1)
    for r in range(k + 1):
        for subset in itertools.combinations(vertices, r):
            chosen = set(subset)
            if all(u in chosen or v in chosen for u, v in g.edges):
                count += 1
    return count


def brute_cycles_undirected(g: UndirectedGraph) -> int:
    if g.order < 3:
        return 0
    seen = set()
    for p in itertools.permutations(range(1, g.order + 1)):
        if all(g.has_edge(p[i], p[(i + 1) % len(p)]) for i in range(len(p))):
            seen.add(canonicalize_cycle_undirected(p).vertices)
    return len(seen)


def brute_paths_undirected(g: UndirectedGraph) -> int:
    if g.order == 1:
        return 1
    seen = set()
    for p in itertools.permutations(range(1, g.order + 1)):
        if all(g.has_edge(p[i], p[i + 1]) for i in range(len(p) - 1)):
            seen.add(canonicalize_path_undirected(p).vertices)
    return len(seen)


def brute_cycles_directed(h: DirectedGraph) -> int:
    if h.order < 2:
        return 0
    seen = set()
    for p in itertools.permutations(range(1, h.order + 1)):
        if all(h.has_arc(p[i], p[(i + 1) % len(p)]) for i in range(len(p))):
            seen.add(canonicalize_cycle_directed(p).vertices)
    return len(seen)


def brute_paths_directed(h: DirectedGraph) -> int:
    if h.order == 1:
        return 1
    return sum(
        1
        for p in itertools.permutations(range(1, h.order + 1))
        if all(h.has_arc(p[i], p[i + 1]) for i in range(len(p) - 1))
    )
