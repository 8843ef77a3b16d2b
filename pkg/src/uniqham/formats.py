"""DIMACS-compatible instance files.

Formulas use standard DIMACS CNF (`p cnf <vars> <clauses>`, clause lines of
nonzero integers terminated by 0).  Graphs use `p edge <n> <m>` with `e u v`
lines, or `p arc <n> <m>` with `a u v` lines.  Vertex labels and the cover
budget ride in comment lines (`c label <id> <text>`, `c k <int>`) so the
files stay digestible for strict third-party parsers.
"""

from __future__ import annotations

from .instances import (
    CnfFormula,
    DirectedGraph,
    InstanceError,
    OneInThreeFormula,
    OrientedGraph,
    UndirectedGraph,
    VcInstance,
)


class FormatError(ValueError):
    """A malformed instance file; carries the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


# ---------------------------------------------------------------------------
# CNF


def parse_cnf(text: str) -> CnfFormula:
    n_vars = None
    declared = None
    header_line = 0
    clauses: list[tuple[int, ...]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(line_no, f"malformed header: {line!r}")
            try:
                n_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(line_no, f"malformed header: {line!r}")
            if n_vars < 0 or declared < 0:
                raise FormatError(line_no, f"malformed header: {line!r}")
            header_line = line_no
            continue
        if n_vars is None:
            raise FormatError(line_no, "clause line before 'p cnf' header")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(line_no, f"non-integer token in clause: {line!r}")
        if not lits or lits[-1] != 0:
            raise FormatError(line_no, "clause line missing terminating 0")
        if 0 in lits[:-1]:
            raise FormatError(line_no, "unexpected 0 before end of clause line")
        for lit in lits[:-1]:
            if abs(lit) > n_vars:
                raise FormatError(line_no, f"literal {lit} out of range for {n_vars} variables")
        try:
            clauses.append(tuple(lits[:-1]))
            CnfFormula(n_vars, [clauses[-1]])
        except InstanceError as e:
            raise FormatError(line_no, str(e))
    if n_vars is None:
        raise FormatError(len(text.splitlines()) or 1, "missing 'p cnf' header")
    if declared != len(clauses):
        raise FormatError(header_line, f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(n_vars, clauses)


def parse_one_in_three(text: str) -> OneInThreeFormula:
    return OneInThreeFormula(parse_cnf(text))


def serialize_cnf(f: CnfFormula, labels: dict[int, str] | None = None) -> str:
    lines = []
    if labels:
        for var in sorted(labels):
            lines.append(f"c label {var} {labels[var]}")
    lines.append(f"p cnf {f.n_vars} {len(f.clauses)}")
    for c in f.clauses:
        lines.append(" ".join(str(l) for l in c.to_ints()) + " 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Graphs


def _parse_graph_raw(text: str):
    kind = None
    n = None
    declared = None
    header_line = 0
    pairs: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    k_value = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split(maxsplit=3)
            if len(parts) >= 3 and parts[1] == "label":
                try:
                    vid = int(parts[2])
                except ValueError:
                    raise FormatError(line_no, f"malformed label line: {line!r}")
                labels[vid] = parts[3] if len(parts) == 4 else ""
            elif len(parts) >= 3 and parts[1] == "k":
                try:
                    k_value = int(parts[2])
                except ValueError:
                    raise FormatError(line_no, f"malformed budget line: {line!r}")
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] not in ("edge", "arc"):
                raise FormatError(line_no, f"malformed header: {line!r}")
            try:
                n, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise FormatError(line_no, f"malformed header: {line!r}")
            if n < 0 or declared < 0:
                raise FormatError(line_no, f"malformed header: {line!r}")
            kind = parts[1]
            header_line = line_no
            continue
        tag = line.split()[0]
        if tag in ("e", "a"):
            if kind is None:
                raise FormatError(line_no, "edge line before 'p' header")
            if (kind == "edge") != (tag == "e"):
                raise FormatError(line_no, f"{tag!r} line does not match 'p {kind}' header")
            parts = line.split()
            if len(parts) != 3:
                raise FormatError(line_no, f"expected '{tag} <u> <v>': {line!r}")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise FormatError(line_no, f"non-integer endpoint: {line!r}")
            if u == v:
                raise FormatError(line_no, f"self-loop at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(line_no, f"endpoint out of range 1..{n}: {line!r}")
            key = (min(u, v), max(u, v)) if kind == "edge" else (u, v)
            if key in seen:
                raise FormatError(line_no, f"duplicate {kind}: {line!r}")
            seen.add(key)
            pairs.append((u, v))
        else:
            raise FormatError(line_no, f"unrecognized line: {line!r}")
    if kind is None:
        raise FormatError(len(text.splitlines()) or 1, "missing 'p edge' or 'p arc' header")
    if declared != len(pairs):
        raise FormatError(header_line, f"header declares {declared} {kind} lines, found {len(pairs)}")
    for vid in labels:
        if not 1 <= vid <= n:
            raise FormatError(header_line, f"label for vertex {vid} out of range 1..{n}")
    return kind, n, pairs, labels, k_value


def parse_graph(text: str) -> UndirectedGraph | DirectedGraph:
    kind, n, pairs, labels, _ = _parse_graph_raw(text)
    if kind == "edge":
        return UndirectedGraph(n, pairs, labels)
    return DirectedGraph(n, pairs, labels)


def parse_vc(text: str) -> VcInstance:
    kind, n, pairs, labels, k = _parse_graph_raw(text)
    if kind != "edge":
        raise FormatError(1, "cover instances need an undirected 'p edge' graph")
    if k is None:
        raise FormatError(1, "cover instances need a 'c k <int>' budget line")
    return VcInstance(UndirectedGraph(n, pairs, labels), k)


def serialize_graph(g: UndirectedGraph | DirectedGraph | OrientedGraph, k: int | None = None) -> str:
    if isinstance(g, OrientedGraph):
        g = g.digraph
    lines = []
    if k is not None:
        lines.append(f"c k {k}")
    for v, text in g.labels:
        lines.append(f"c label {v} {text}")
    if isinstance(g, UndirectedGraph):
        lines.append(f"p edge {g.order} {g.n_edges}")
        lines.extend(f"e {u} {v}" for u, v in g.edges)
    else:
        lines.append(f"p arc {g.order} {g.n_arcs}")
        lines.extend(f"a {u} {v}" for u, v in g.arcs)
    return "\n".join(lines) + "\n"


def serialize_instance(problem_id: str, instance) -> str:
    """Serialize any chain instance for reports and files."""
    if problem_id == "13sat":
        return serialize_cnf(instance.cnf)
    if problem_id == "sat":
        return serialize_cnf(instance)
    if problem_id == "vc":
        return serialize_graph(instance.graph, k=instance.k)
    return serialize_graph(instance)
