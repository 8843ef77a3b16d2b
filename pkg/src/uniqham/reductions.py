"""Deterministic instance transformations with full gadget provenance labels.

Each reduction returns a ReductionOutput whose label map names every vertex
or variable of the produced instance after its gadget role, and whose stats
record the declared size quantities.  Equal inputs produce bit-identical
outputs, labels included.

Vertex numbering of gadget outputs is fixed: edge components in construction
order, then selectors, then the terminal vertex, so golden-file tests stay
stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .instances import (
    CnfFormula,
    DirectedGraph,
    InstanceError,
    OneInThreeFormula,
    OrientedGraph,
    UndirectedGraph,
    VcInstance,
)


@dataclass
class ReductionOutput:
    """A produced instance plus provenance.

    labels: target vertex/variable id -> gadget role text (parseable back via
        parse_role).
    stats: declared size quantities, matching the target exactly.
    origins: target id -> the source id it descends from, or None for vertices
        created by the reduction itself; used to compose labels along chains.
    """

    target: object
    labels: dict[int, str]
    stats: dict[str, int]
    origins: dict[int, int | None]


# ---------------------------------------------------------------------------
# Gadget role text


def literal_name(var: int, positive: bool) -> str:
    return f"x{var}" if positive else f"~x{var}"


_ROLE_PATTERNS = [
    ("comp", re.compile(r"comp\((~?x\d+|[abd]\d+),\{(~?x\d+|[abd]\d+),(~?x\d+|[abd]\d+)\},([1-6])\)$")),
    ("alpha", re.compile(r"alpha\((\d+)\)$")),
    ("betap", re.compile(r"beta'\((\d+)\)$")),
    ("beta", re.compile(r"beta\((\d+)\)$")),
    ("pos", re.compile(r"pos\((\d+),(\d+)\)$")),
    ("minus", re.compile(r"minus\((\d+)\)$")),
    ("star", re.compile(r"star\((\d+)\)$")),
    ("plus", re.compile(r"plus\((\d+)\)$")),
    ("lit", re.compile(r"(~?)x(\d+)$")),
    ("tri", re.compile(r"([abd])(\d+)$")),
    ("vertex", re.compile(r"v(\d+)$")),
]


def parse_role(text: str) -> tuple:
    """Parse a gadget role label back to its parameters."""
    head = text.split(" <- ", 1)[0]
    if head == "delta":
        return ("delta",)
    if head in ("y", "z", "univ"):
        return (head,)
    for kind, pat in _ROLE_PATTERNS:
        m = pat.match(head)
        if m is None:
            continue
        if kind == "comp":
            return ("comp", m.group(1), (m.group(2), m.group(3)), int(m.group(4)))
        if kind == "lit":
            return ("lit", int(m.group(2)), m.group(1) == "")
        if kind == "tri":
            return ("tri", m.group(1), int(m.group(2)))
        return (kind,) + tuple(int(g) for g in m.groups())
    raise InstanceError(f"unparseable role text: {text!r}")


def _graph_labels(g) -> dict[int, str]:
    """Existing labels, with v<id> filled in for unlabeled vertices."""
    labels = g.label_map
    return {v: labels.get(v, f"v{v}") for v in range(1, g.order + 1)}


# ---------------------------------------------------------------------------
# One-in-three SAT -> vertex cover


@dataclass(frozen=True)
class _VcParts:
    """The cover gadget, with enough provenance to build the path gadget on top."""

    n: int
    m: int
    edges: tuple[tuple[int, int], ...]  # construction order, endpoints ascending
    names: dict[int, str]
    clause_triangles: tuple[tuple[int, int, int], ...]  # (a_j, b_j, d_j)
    clause_literals: tuple[tuple[int, int, int], ...]  # vertex ids of the 3 literals
    membership: dict[int, tuple[int, ...]]  # literal vertex -> triangle partners, ascending
    complement_nbrs: dict[int, tuple[int, ...]]  # literal vertex -> literal partners, ascending
    family_counts: dict[str, int]


def _literal_vertex(n: int, var: int, positive: bool) -> int:
    return var if positive else n + var


def _vc_parts(f: OneInThreeFormula) -> _VcParts:
    n, m = f.n_vars, len(f.clauses)
    names: dict[int, str] = {}
    for i in range(1, n + 1):
        names[i] = literal_name(i, True)
        names[n + i] = literal_name(i, False)
    for j in range(m):
        base = 2 * n + 3 * j
        names[base + 1] = f"a{j + 1}"
        names[base + 2] = f"b{j + 1}"
        names[base + 3] = f"d{j + 1}"

    edges: list[tuple[int, int]] = []
    # one edge per variable between the two literal vertices
    for i in range(1, n + 1):
        edges.append((i, n + i))
    # one triangle per clause
    triangles = []
    for j in range(m):
        a, b, d = 2 * n + 3 * j + 1, 2 * n + 3 * j + 2, 2 * n + 3 * j + 3
        triangles.append((a, b, d))
        edges.extend([(a, b), (a, d), (b, d)])
    # membership edges: first literal to a_j, second to b_j, third to d_j
    clause_lits = []
    membership: dict[int, list[int]] = {}
    for j, clause in enumerate(f.clauses):
        a, b, d = triangles[j]
        lits = tuple(_literal_vertex(n, l.var, l.positive) for l in clause.literals)
        clause_lits.append(lits)
        for t, lv in zip((a, b, d), lits):
            edges.append((min(lv, t), max(lv, t)))
            membership.setdefault(lv, []).append(t)
    # the triangular edge sets between the complements of each clause's
    # literals; the sets may overlap across clauses, duplicates are merged
    comp_edges = 0
    complement_nbrs: dict[int, set[int]] = {}
    seen = set(edges)
    for clause in f.clauses:
        comp = [_literal_vertex(n, l.var, not l.positive) for l in clause.literals]
        for p in range(3):
            for q in range(p + 1, 3):
                e = (min(comp[p], comp[q]), max(comp[p], comp[q]))
                complement_nbrs.setdefault(e[0], set()).add(e[1])
                complement_nbrs.setdefault(e[1], set()).add(e[0])
                if e not in seen:
                    seen.add(e)
                    edges.append(e)
                    comp_edges += 1

    counts = {
        "variable_edges": n,
        "triangle_edges": 3 * m,
        "membership_edges": 3 * m,
        "complement_edges": comp_edges,
    }
    return _VcParts(
        n=n,
        m=m,
        edges=tuple(edges),
        names=names,
        clause_triangles=tuple(triangles),
        clause_literals=tuple(clause_lits),
        membership={lv: tuple(sorted(ts)) for lv, ts in membership.items()},
        complement_nbrs={lv: tuple(sorted(ns)) for lv, ns in complement_nbrs.items()},
        family_counts=counts,
    )


def one_in_three_to_vc(f: OneInThreeFormula) -> ReductionOutput:
    """Build the cover instance: a triangle per clause, an edge per variable,
    membership edges in clause literal order, complement triangles, k = n + 2m."""
    parts = _vc_parts(f)
    n, m = parts.n, parts.m
    graph = UndirectedGraph(2 * n + 3 * m, parts.edges, parts.names)
    target = VcInstance(graph, n + 2 * m)
    stats = {
        "order": graph.order,
        "edges": graph.n_edges,
        "k": target.k,
        **parts.family_counts,
    }
    return ReductionOutput(target, dict(parts.names), stats, {v: None for v in parts.names})


# ---------------------------------------------------------------------------
# One-in-three SAT -> unique directed Hamiltonian path in an oriented graph


def one_in_three_to_hamp_oriented(f: OneInThreeFormula) -> ReductionOutput:
    """Build the oriented path gadget over the cover instance.

    Per cover edge uv a 12-vertex component traversable completely from either
    side or in two parallel passes; literal selectors alpha_i choose a
    polarity per variable, triangle selectors beta_j/beta'_j choose two of
    three triangle vertices, and a terminal delta closes the graph.  alpha_1
    is the only vertex with in-degree 0 and delta the only one with
    out-degree 0.
    """
    parts = _vc_parts(f)
    n, m = parts.n, parts.m
    edges = parts.edges
    ne = len(edges)
    edge_index = {e: idx for idx, e in enumerate(edges)}

    def cv(u: int, v: int, side: int, i: int) -> int:
        """Component vertex i on `side` of the component for edge {u, v}."""
        e = (u, v) if u < v else (v, u)
        return 12 * edge_index[e] + (0 if side == e[0] else 6) + i

    def alpha(i: int) -> int:
        return 12 * ne + i

    def beta(j: int) -> int:
        return 12 * ne + n + 2 * (j - 1) + 1

    def betap(j: int) -> int:
        return 12 * ne + n + 2 * (j - 1) + 2

    order = 12 * ne + n + 2 * m + 1
    delta = order

    arcs: list[tuple[int, int]] = []

    # each component: two 6-vertex rails plus the four crossing arcs that make
    # a full traversal from either side possible
    for u, v in edges:
        for side in (u, v):
            for i in range(1, 6):
                arcs.append((cv(u, v, side, i), cv(u, v, side, i + 1)))
        arcs.append((cv(u, v, v, 3), cv(u, v, u, 1)))
        arcs.append((cv(u, v, u, 3), cv(u, v, v, 1)))
        arcs.append((cv(u, v, v, 6), cv(u, v, u, 4)))
        arcs.append((cv(u, v, u, 6), cv(u, v, v, 4)))

    # literal selectors: alpha_i feeds both sides of the variable component,
    # and each literal's chain threads its membership components (triangle
    # order) then its complement-edge components (literal order) before
    # reaching the next selector
    for i in range(1, n + 1):
        xv, nxv = i, n + i
        arcs.append((alpha(i), cv(xv, nxv, xv, 1)))
        arcs.append((alpha(i), cv(xv, nxv, nxv, 1)))
        if m >= 1:
            after = alpha(i + 1) if i < n else beta(1)
        else:
            after = alpha(i + 1) if i < n else delta
        for lv in (xv, nxv):
            exit_vertex = cv(xv, nxv, lv, 6)
            for t in parts.membership.get(lv, ()):
                arcs.append((exit_vertex, cv(lv, t, lv, 1)))
                exit_vertex = cv(lv, t, lv, 6)
            for other in parts.complement_nbrs.get(lv, ()):
                arcs.append((exit_vertex, cv(lv, other, lv, 1)))
                exit_vertex = cv(lv, other, lv, 6)
            arcs.append((exit_vertex, after))

    # triangle selectors: three ways from beta_j to beta_{j+1} through the
    # triangle components, one per choice of the excluded triangle vertex
    for j in range(1, m + 1):
        a, b, d = parts.clause_triangles[j - 1]
        l1, l2, l3 = parts.clause_literals[j - 1]
        nxt = beta(j + 1) if j < m else delta
        arcs.append((beta(j), cv(a, b, a, 1)))
        arcs.append((cv(a, b, a, 6), cv(a, d, a, 1)))
        arcs.append((cv(a, d, a, 6), cv(a, l1, a, 1)))
        arcs.append((cv(a, l1, a, 6), betap(j)))

        arcs.append((beta(j), cv(a, b, b, 1)))
        arcs.append((betap(j), cv(a, b, b, 1)))
        arcs.append((cv(a, b, b, 6), cv(b, d, b, 1)))
        arcs.append((cv(b, d, b, 6), cv(b, l2, b, 1)))
        arcs.append((cv(b, l2, b, 6), betap(j)))
        arcs.append((cv(b, l2, b, 6), nxt))

        arcs.append((betap(j), cv(a, d, d, 1)))
        arcs.append((cv(a, d, d, 6), cv(b, d, d, 1)))
        arcs.append((cv(b, d, d, 6), cv(d, l3, d, 1)))
        arcs.append((cv(d, l3, d, 6), nxt))

    labels: dict[int, str] = {}
    for (u, v), idx in edge_index.items():
        en = "{" + parts.names[u] + "," + parts.names[v] + "}"
        for side in (u, v):
            for i in range(1, 7):
                labels[cv(u, v, side, i)] = f"comp({parts.names[side]},{en},{i})"
    for i in range(1, n + 1):
        labels[alpha(i)] = f"alpha({i})"
    for j in range(1, m + 1):
        labels[beta(j)] = f"beta({j})"
        labels[betap(j)] = f"beta'({j})"
    labels[delta] = "delta"

    target = OrientedGraph(DirectedGraph(order, arcs, labels))
    stats = {
        "order": order,
        "arcs": len(arcs),
        "components": ne,
        "selectors": n + 2 * m,
    }
    return ReductionOutput(target, labels, stats, {v: None for v in labels})


# ---------------------------------------------------------------------------
# Path <-> cycle and orientation steps


def hamp_oriented_to_hamc_oriented(h: OrientedGraph) -> ReductionOutput:
    """Close paths into cycles: new vertices y, z with arc (y,z), arcs (x,y)
    and (z,x) for every original x.  Cycle count of the output equals path
    count of the input."""
    n = h.order
    y, z = n + 1, n + 2
    arcs = list(h.arcs) + [(y, z)]
    for x in range(1, n + 1):
        arcs.append((x, y))
        arcs.append((z, x))
    labels = _graph_labels(h)
    labels[y] = "y"
    labels[z] = "z"
    target = OrientedGraph(DirectedGraph(n + 2, arcs, labels))
    stats = {"order": n + 2, "arcs": len(arcs)}
    origins: dict[int, int | None] = {x: x for x in range(1, n + 1)}
    origins[y] = None
    origins[z] = None
    return ReductionOutput(target, labels, stats, origins)


def oriented_to_directed(h: OrientedGraph) -> ReductionOutput:
    """The identity embedding of an oriented graph as a directed graph."""
    labels = _graph_labels(h)
    target = DirectedGraph(h.order, h.arcs, labels)
    stats = {"order": h.order, "arcs": target.n_arcs}
    return ReductionOutput(target, labels, stats, {x: x for x in range(1, h.order + 1)})


def directed_to_undirected_triplication(h: DirectedGraph | OrientedGraph) -> ReductionOutput:
    """Replace each vertex x by the path x^- x^* x^+ and each arc (x,y) by the
    edge x^+ y^-.  Parsimonious for both cycles and paths."""
    if isinstance(h, OrientedGraph):
        h = h.digraph
    n = h.order

    def minus(x: int) -> int:
        return 3 * (x - 1) + 1

    def star(x: int) -> int:
        return 3 * (x - 1) + 2

    def plus(x: int) -> int:
        return 3 * (x - 1) + 3

    edges = []
    for x in range(1, n + 1):
        edges.append((minus(x), star(x)))
        edges.append((star(x), plus(x)))
    for x, yv in h.arcs:
        edges.append((plus(x), minus(yv)))
    labels: dict[int, str] = {}
    origins: dict[int, int | None] = {}
    for x in range(1, n + 1):
        labels[minus(x)] = f"minus({x})"
        labels[star(x)] = f"star({x})"
        labels[plus(x)] = f"plus({x})"
        origins[minus(x)] = x
        origins[star(x)] = x
        origins[plus(x)] = x
    target = UndirectedGraph(3 * n, edges, labels)
    stats = {"order": 3 * n, "edges": target.n_edges}
    return ReductionOutput(target, labels, stats, origins)


def hamp_undirected_to_hamc_undirected(g: UndirectedGraph) -> ReductionOutput:
    """Add one universal vertex; cycle classes of the output equal path
    classes of the input."""
    if g.order < 2:
        raise InstanceError("universal-vertex reduction needs order >= 2")
    n = g.order
    y = n + 1
    edges = list(g.edges) + [(x, y) for x in range(1, n + 1)]
    labels = _graph_labels(g)
    labels[y] = "univ"
    target = UndirectedGraph(n + 1, edges, labels)
    stats = {"order": n + 1, "edges": target.n_edges}
    origins: dict[int, int | None] = {x: x for x in range(1, n + 1)}
    origins[y] = None
    return ReductionOutput(target, labels, stats, origins)


# ---------------------------------------------------------------------------
# Undirected Hamiltonian cycle -> SAT over position variables


def hamc_undirected_to_sat(g: UndirectedGraph) -> ReductionOutput:
    """Emit position variables and the clause families forcing a permutation
    matrix tracing a cycle, with the start vertex and direction pinned so each
    cycle class corresponds to exactly one model.

    Variable (i-1)*|V|+j is true iff vertex i sits at position j.  Families in
    emission order: each vertex somewhere (a1), nowhere twice (a2); each
    position filled (b1), never twice (b2); non-adjacent vertices never
    consecutive, cyclically (c); vertex 1 at position 1 (d1); vertex 2 before
    vertex 3 (d2).
    """
    nv = g.order
    if nv < 3:
        raise InstanceError("the position encoding needs order >= 3")

    def var(i: int, j: int) -> int:
        return (i - 1) * nv + j

    clauses: list[tuple[int, ...]] = []
    counts: dict[str, int] = {}

    for i in range(1, nv + 1):
        clauses.append(tuple(var(i, j) for j in range(1, nv + 1)))
    counts["a1"] = nv

    for i in range(1, nv + 1):
        for j in range(1, nv + 1):
            for jp in range(j + 1, nv + 1):
                clauses.append((-var(i, j), -var(i, jp)))
    counts["a2"] = nv * (nv * (nv - 1) // 2)

    for j in range(1, nv + 1):
        clauses.append(tuple(var(i, j) for i in range(1, nv + 1)))
    counts["b1"] = nv

    for i in range(1, nv + 1):
        for ip in range(i + 1, nv + 1):
            for j in range(1, nv + 1):
                clauses.append((-var(i, j), -var(ip, j)))
    counts["b2"] = nv * (nv * (nv - 1) // 2)

    c_count = 0
    for i in range(1, nv + 1):
        for ip in range(i + 1, nv + 1):
            if g.has_edge(i, ip):
                continue
            for j in range(1, nv + 1):
                succ = j % nv + 1
                pred = (j - 2) % nv + 1
                clauses.append((-var(i, j), -var(ip, succ)))
                clauses.append((-var(i, j), -var(ip, pred)))
                c_count += 2
    counts["c"] = c_count

    clauses.append((var(1, 1),))
    counts["d1"] = 1

    for j in range(2, nv + 1):
        for jp in range(j + 1, nv + 1):
            clauses.append((-var(2, jp), -var(3, j)))
    counts["d2"] = (nv - 1) * (nv - 2) // 2

    target = CnfFormula(nv * nv, clauses)
    labels: dict[int, str] = {}
    origins: dict[int, int | None] = {}
    for i in range(1, nv + 1):
        for j in range(1, nv + 1):
            labels[var(i, j)] = f"pos({i},{j})"
            origins[var(i, j)] = i
    stats = {"n_vars": nv * nv, "clauses": len(clauses), **counts}
    return ReductionOutput(target, labels, stats, origins)


# ---------------------------------------------------------------------------
# The reduction chain


@dataclass(frozen=True)
class ReductionInfo:
    reduction_id: str
    source: str
    target: str
    transform: Callable[[object], ReductionOutput]


REDUCTIONS: dict[str, ReductionInfo] = {
    r.reduction_id: r
    for r in [
        ReductionInfo("13sat-to-vc", "13sat", "vc", one_in_three_to_vc),
        ReductionInfo("13sat-to-hamp-o", "13sat", "hamp-o", one_in_three_to_hamp_oriented),
        ReductionInfo("hamp-o-to-hamc-o", "hamp-o", "hamc-o", hamp_oriented_to_hamc_oriented),
        ReductionInfo("hamp-o-to-hamp-d", "hamp-o", "hamp-d", oriented_to_directed),
        ReductionInfo("hamc-o-to-hamc-d", "hamc-o", "hamc-d", oriented_to_directed),
        ReductionInfo("hamp-d-to-hamp-u", "hamp-d", "hamp-u", directed_to_undirected_triplication),
        ReductionInfo("hamc-d-to-hamc-u", "hamc-d", "hamc-u", directed_to_undirected_triplication),
        ReductionInfo("hamp-u-to-hamc-u", "hamp-u", "hamc-u", hamp_undirected_to_hamc_undirected),
        ReductionInfo("hamc-u-to-sat", "hamc-u", "sat", hamc_undirected_to_sat),
    ]
}

REDUCTION_ALIASES = {
    "cycle-closure": "hamp-o-to-hamc-o",
    "identity-embedding": "hamc-o-to-hamc-d",
    "triplication": "hamc-d-to-hamc-u",
    "universal-vertex": "hamp-u-to-hamc-u",
}


def resolve_reduction(reduction_id: str) -> ReductionInfo:
    rid = REDUCTION_ALIASES.get(reduction_id, reduction_id)
    try:
        return REDUCTIONS[rid]
    except KeyError:
        known = sorted(REDUCTIONS) + sorted(REDUCTION_ALIASES)
        raise InstanceError(f"unknown reduction {reduction_id!r}; known: {', '.join(known)}")


# adjacency of the chain, cycle branch listed first so routes through it win ties
_CHAIN_NEXT: dict[str, list[str]] = {
    "13sat": ["hamp-o", "vc"],
    "hamp-o": ["hamc-o", "hamp-d"],
    "hamc-o": ["hamc-d"],
    "hamp-d": ["hamp-u"],
    "hamc-d": ["hamc-u"],
    "hamp-u": ["hamc-u"],
    "hamc-u": ["sat"],
    "vc": [],
    "sat": [],
}

_STEP_BY_PAIR: dict[tuple[str, str], ReductionInfo] = {
    (r.source, r.target): r for r in REDUCTIONS.values()
}


def chain_route(from_id: str, to_id: str) -> list[str]:
    """Shortest route through the reduction chain; breadth-first search with
    the cycle branch preferred on ties."""
    for pid in (from_id, to_id):
        if pid not in _CHAIN_NEXT:
            raise InstanceError(f"unknown problem id {pid!r}")
    if from_id == to_id:
        return [from_id]
    parent: dict[str, str] = {}
    queue = [from_id]
    while queue:
        cur = queue.pop(0)
        for nxt in _CHAIN_NEXT[cur]:
            if nxt in parent or nxt == from_id:
                continue
            parent[nxt] = cur
            if nxt == to_id:
                route = [nxt]
                while route[-1] != from_id:
                    route.append(parent[route[-1]])
                return list(reversed(route))
            queue.append(nxt)
    raise InstanceError(f"no reduction route from {from_id!r} to {to_id!r}")


def _identity_output(problem_id: str, instance) -> ReductionOutput:
    if problem_id == "13sat":
        labels = {i: literal_name(i, True) for i in range(1, instance.n_vars + 1)}
        stats = {"n_vars": instance.n_vars, "clauses": len(instance.clauses)}
    elif problem_id == "sat":
        labels = {i: literal_name(i, True) for i in range(1, instance.n_vars + 1)}
        stats = {"n_vars": instance.n_vars, "clauses": len(instance.clauses)}
    elif problem_id == "vc":
        labels = _graph_labels(instance.graph)
        stats = {"order": instance.graph.order, "edges": instance.graph.n_edges, "k": instance.k}
    elif problem_id in ("hamp-u", "hamc-u"):
        labels = _graph_labels(instance)
        stats = {"order": instance.order, "edges": instance.n_edges}
    else:
        labels = _graph_labels(instance)
        stats = {"order": instance.order, "arcs": instance.n_arcs}
    return ReductionOutput(instance, labels, stats, {v: v for v in labels})


def chain(from_id: str, to_id: str, instance) -> ReductionOutput:
    """Compose the single-step reductions along the chain route, composing
    labels so any final vertex/variable traces back to its origin."""
    route = chain_route(from_id, to_id)
    if len(route) == 1:
        return _identity_output(from_id, instance)
    current = instance
    composed: ReductionOutput | None = None
    for a, b in zip(route, route[1:]):
        step = _STEP_BY_PAIR[(a, b)].transform(current)
        if composed is None:
            composed = step
        else:
            labels: dict[int, str] = {}
            origins: dict[int, int | None] = {}
            for v, text in step.labels.items():
                o = step.origins.get(v)
                if o is None:
                    labels[v] = text
                    origins[v] = None
                else:
                    prev = composed.labels[o]
                    labels[v] = text if text == prev else f"{text} <- {prev}"
                    origins[v] = composed.origins.get(o)
            composed = ReductionOutput(step.target, labels, step.stats, origins)
        current = step.target
    assert composed is not None
    return composed
