"""Problem instances: Boolean formulas, graphs, solution certificates, counts.

All types are immutable after construction and may be shared freely between
concurrent workers.  Vertices are dense integers 1..order; gadget provenance
is carried in a separate label map so the counting algorithms stay
index-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


class InstanceError(ValueError):
    """An instance violates a structural invariant."""


# ---------------------------------------------------------------------------
# Boolean formulas


@dataclass(frozen=True)
class Literal:
    """A 1-based variable index with a polarity."""

    var: int
    positive: bool = True

    def __post_init__(self):
        if not isinstance(self.var, int) or self.var < 1:
            raise InstanceError(f"literal variable must be a positive integer, got {self.var!r}")

    def negated(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    @classmethod
    def from_int(cls, lit: int) -> "Literal":
        if lit == 0:
            raise InstanceError("0 is not a literal")
        return cls(abs(lit), lit > 0)

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"~x{self.var}"


@dataclass(frozen=True)
class Clause:
    """An ordered disjunction of pairwise-distinct literals."""

    literals: tuple[Literal, ...]

    def __init__(self, literals: Iterable[Literal | int]):
        lits = tuple(Literal.from_int(l) if isinstance(l, int) else l for l in literals)
        if not lits:
            raise InstanceError("clause must contain at least one literal")
        if len({(l.var, l.positive) for l in lits}) != len(lits):
            raise InstanceError(f"clause has repeated literals: {lits}")
        object.__setattr__(self, "literals", lits)

    def __len__(self) -> int:
        return len(self.literals)

    def to_ints(self) -> tuple[int, ...]:
        return tuple(l.to_int() for l in self.literals)


@dataclass(frozen=True)
class CnfFormula:
    """A conjunction of clauses over variables 1..n_vars."""

    n_vars: int
    clauses: tuple[Clause, ...]

    def __init__(self, n_vars: int, clauses: Iterable[Clause | Iterable[int]]):
        if n_vars < 0:
            raise InstanceError(f"n_vars must be nonnegative, got {n_vars}")
        cls_tuple = tuple(c if isinstance(c, Clause) else Clause(c) for c in clauses)
        for idx, c in enumerate(cls_tuple):
            for l in c.literals:
                if l.var > n_vars:
                    raise InstanceError(f"clause {idx + 1} uses variable {l.var} > n_vars={n_vars}")
        object.__setattr__(self, "n_vars", n_vars)
        object.__setattr__(self, "clauses", cls_tuple)

    @property
    def n_clauses(self) -> int:
        return len(self.clauses)


@dataclass(frozen=True)
class OneInThreeFormula:
    """A formula whose clauses each hold three literals over three distinct variables.

    Satisfaction means exactly one true literal per clause.  Clauses mixing a
    variable with its own complement are rejected.
    """

    cnf: CnfFormula

    def __post_init__(self):
        for idx, c in enumerate(self.cnf.clauses):
            if len(c) != 3:
                raise InstanceError(f"clause {idx + 1} has {len(c)} literals, need exactly 3")
            if len({l.var for l in c.literals}) != 3:
                raise InstanceError(f"clause {idx + 1} must use 3 distinct variables")

    @property
    def n_vars(self) -> int:
        return self.cnf.n_vars

    @property
    def clauses(self) -> tuple[Clause, ...]:
        return self.cnf.clauses


@dataclass(frozen=True)
class Assignment:
    """A full truth assignment; values[i] is the value of variable i+1."""

    values: tuple[bool, ...]

    def __init__(self, values: Iterable[bool]):
        object.__setattr__(self, "values", tuple(bool(v) for v in values))

    def value(self, var: int) -> bool:
        return self.values[var - 1]

    def true_literals(self, clause: Clause) -> int:
        return sum(1 for l in clause.literals if self.value(l.var) == l.positive)

    def satisfies(self, f: CnfFormula) -> bool:
        if len(self.values) != f.n_vars:
            raise InstanceError("assignment length does not match n_vars")
        return all(self.true_literals(c) >= 1 for c in f.clauses)

    def satisfies_one_in_three(self, f: OneInThreeFormula) -> bool:
        if len(self.values) != f.n_vars:
            raise InstanceError("assignment length does not match n_vars")
        return all(self.true_literals(c) == 1 for c in f.clauses)


# ---------------------------------------------------------------------------
# Graphs


def _normalize_labels(labels) -> tuple[tuple[int, str], ...]:
    if labels is None:
        return ()
    if isinstance(labels, Mapping):
        items = labels.items()
    else:
        items = labels
    return tuple(sorted((int(v), str(t)) for v, t in items))


def _check_labels(order: int, labels: tuple[tuple[int, str], ...]):
    seen = set()
    for v, _ in labels:
        if not 1 <= v <= order:
            raise InstanceError(f"label for vertex {v} out of range 1..{order}")
        if v in seen:
            raise InstanceError(f"duplicate label for vertex {v}")
        seen.add(v)


@dataclass(frozen=True)
class UndirectedGraph:
    """A finite simple undirected graph on vertices 1..order."""

    order: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[tuple[int, str], ...]

    def __init__(self, order: int, edges: Iterable[tuple[int, int]] = (), labels=None):
        if order < 0:
            raise InstanceError(f"order must be nonnegative, got {order}")
        norm = set()
        for u, v in edges:
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (1 <= u <= order and 1 <= v <= order):
                raise InstanceError(f"edge ({u},{v}) out of range 1..{order}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise InstanceError(f"duplicate edge {e}")
            norm.add(e)
        lab = _normalize_labels(labels)
        _check_labels(order, lab)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        object.__setattr__(self, "labels", lab)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def label_map(self) -> dict[int, str]:
        return dict(self.labels)

    def has_edge(self, u: int, v: int) -> bool:
        e = (u, v) if u < v else (v, u)
        return e in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Neighbor bitmasks; bit w-1 of masks[v-1] is set iff vw is an edge."""
        masks = [0] * self.order
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)


@dataclass(frozen=True)
class DirectedGraph:
    """A finite simple directed graph; arcs are ordered pairs, no self-loops."""

    order: int
    arcs: tuple[tuple[int, int], ...]
    labels: tuple[tuple[int, str], ...]

    def __init__(self, order: int, arcs: Iterable[tuple[int, int]] = (), labels=None):
        if order < 0:
            raise InstanceError(f"order must be nonnegative, got {order}")
        norm = set()
        for u, v in arcs:
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (1 <= u <= order and 1 <= v <= order):
                raise InstanceError(f"arc ({u},{v}) out of range 1..{order}")
            if (u, v) in norm:
                raise InstanceError(f"duplicate arc ({u},{v})")
            norm.add((u, v))
        lab = _normalize_labels(labels)
        _check_labels(order, lab)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "arcs", tuple(sorted(norm)))
        object.__setattr__(self, "labels", lab)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def label_map(self) -> dict[int, str]:
        return dict(self.labels)

    @cached_property
    def _arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self._arc_set

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        masks = [0] * self.order
        for u, v in self.arcs:
            masks[u - 1] |= 1 << (v - 1)
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.order
        for u, v in self.arcs:
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)


@dataclass(frozen=True)
class OrientedGraph:
    """A directed graph with no symmetric arc pair (antisymmetric)."""

    digraph: DirectedGraph

    def __post_init__(self):
        arcs = self.digraph._arc_set
        for u, v in arcs:
            if (v, u) in arcs and u < v:
                raise InstanceError(f"symmetric arc pair between {u} and {v}")

    @property
    def order(self) -> int:
        return self.digraph.order

    @property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return self.digraph.arcs

    @property
    def labels(self) -> tuple[tuple[int, str], ...]:
        return self.digraph.labels

    @property
    def label_map(self) -> dict[int, str]:
        return self.digraph.label_map


@dataclass(frozen=True)
class VcInstance:
    """A vertex-cover question: does `graph` have a cover of size at most k?"""

    graph: UndirectedGraph
    k: int

    def __post_init__(self):
        if not 0 <= self.k <= self.graph.order:
            raise InstanceError(f"budget k={self.k} out of range 0..{self.graph.order}")


# ---------------------------------------------------------------------------
# Canonical representations of Hamiltonian solutions
#
# One undirected cycle has 2n sequence representations (n rotations, two
# directions), a directed cycle has n (rotations only), an undirected path
# has 2 (itself and its reversal), a directed path only itself.


def _check_permutation(seq, minimum: int):
    seq = tuple(seq)
    n = len(seq)
    if n < minimum:
        raise InstanceError(f"sequence must have at least {minimum} vertices, got {n}")
    if sorted(seq) != list(range(1, n + 1)):
        raise InstanceError(f"sequence is not a permutation of 1..{n}: {seq}")
    return seq


@dataclass(frozen=True)
class HamCycleU:
    """Canonical undirected Hamiltonian cycle: min vertex first, second < last."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class HamCycleD:
    """Canonical directed Hamiltonian cycle: rotated so the min vertex is first."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class HamPathU:
    """Canonical undirected Hamiltonian path: first end < last end."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class HamPathD:
    """Directed Hamiltonian path; the raw sequence is already canonical."""

    vertices: tuple[int, ...]


def canonicalize_cycle_undirected(seq: Iterable[int]) -> HamCycleU:
    """Pick the least of the 2n representations of an undirected cycle."""
    seq = _check_permutation(seq, 3)
    n = len(seq)
    i = seq.index(min(seq))
    rot = seq[i:] + seq[:i]
    if rot[1] > rot[-1]:
        rot = (rot[0],) + tuple(reversed(rot[1:]))
    return HamCycleU(rot)


def canonicalize_cycle_directed(seq: Iterable[int]) -> HamCycleD:
    """Pick the least of the n rotations of a directed cycle."""
    seq = _check_permutation(seq, 2)
    i = seq.index(min(seq))
    return HamCycleD(seq[i:] + seq[:i])


def canonicalize_path_undirected(seq: Iterable[int]) -> HamPathU:
    """A path equals its reversal; keep the orientation with first end < last."""
    seq = _check_permutation(seq, 1)
    if len(seq) > 1 and seq[0] > seq[-1]:
        seq = tuple(reversed(seq))
    return HamPathU(seq)


def canonicalize_path_directed(seq: Iterable[int]) -> HamPathD:
    return HamPathD(_check_permutation(seq, 1))


# ---------------------------------------------------------------------------
# Count results


@dataclass(frozen=True)
class CountResult:
    """Either an exact solution count, or "at least cap" when counting was capped.

    With a cap c > 0, an exact result is always strictly below c; reaching c
    solutions is reported as at_least(c).
    """

    value: int
    exact: bool

    def __post_init__(self):
        if self.value < 0:
            raise InstanceError("count cannot be negative")
        if not self.exact and self.value < 1:
            raise InstanceError("at-least results need a positive cap")

    @classmethod
    def exact_count(cls, value: int) -> "CountResult":
        return cls(value, True)

    @classmethod
    def at_least(cls, cap: int) -> "CountResult":
        return cls(cap, False)

    def classify(self) -> str:
        """Map to the uniqueness trichotomy {zero, one, many}."""
        if self.exact:
            if self.value == 0:
                return "zero"
            if self.value == 1:
                return "one"
            return "many"
        if self.value < 2:
            raise InstanceError("a cap of 1 cannot distinguish one from many")
        return "many"

    def __str__(self) -> str:
        return f"exact {self.value}" if self.exact else f"atleast {self.value}"
