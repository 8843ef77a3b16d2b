"""Exact, capped brute-force solution counters for every problem in the chain.

Every counter either returns an exact count (strictly below the cap when one
is set), reports "at least cap", or raises BudgetExceeded.  A search that
runs out of budget never degrades into a count: a wrong count would corrupt
verification verdicts.

Branching orders are fixed (ascending vertex/variable index, exclude/false
branch first) so all counters are deterministic.  Each invocation is
single-threaded and pure; callers may run many invocations concurrently on
shared immutable instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instances import (
    CnfFormula,
    CountResult,
    DirectedGraph,
    InstanceError,
    OneInThreeFormula,
    OrientedGraph,
    UndirectedGraph,
)


class BudgetExceeded(RuntimeError):
    """The search node budget ran out before the count was established."""

    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class OracleConfig:
    """Counting controls.

    cap: stop counting upon reaching this many solutions (0 = unbounded).
    dp_threshold: largest graph order handled by bitmask dynamic programming;
        larger graphs fall back to capped backtracking.
    node_budget: maximum number of search nodes for the backtracking-style
        counters (the DP is bounded by dp_threshold instead).
    """

    cap: int = 0
    dp_threshold: int = 20
    node_budget: int = 10_000_000

    def __post_init__(self):
        if self.cap < 0:
            raise InstanceError("cap must be nonnegative (0 means unbounded)")
        if not 0 <= self.dp_threshold <= 24:
            raise InstanceError("dp_threshold must be between 0 and 24")
        if self.node_budget <= 0:
            raise InstanceError("node_budget must be positive")


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


# ---------------------------------------------------------------------------
# Propositional model counting


def count_models(f: CnfFormula, cfg: OracleConfig = OracleConfig()) -> CountResult:
    """Count full truth assignments satisfying f.

    Splitting search with unit propagation; branches on the lowest-indexed
    unassigned variable, false branch first.
    """
    clauses = [c.to_ints() for c in f.clauses]
    return _count_sat(clauses, f.n_vars, cfg)


def count_one_in_three(f: OneInThreeFormula, cfg: OracleConfig = OracleConfig()) -> CountResult:
    """Count assignments giving each clause exactly one true literal.

    The exactly-one test is expressed over the same variables (one at-least-one
    clause plus the three pairwise exclusions per source clause), so the model
    count of the expansion equals the one-in-three count.
    """
    clauses: list[tuple[int, ...]] = []
    for c in f.clauses:
        a, b, d = c.to_ints()
        clauses.append((a, b, d))
        clauses.append((-a, -b))
        clauses.append((-a, -d))
        clauses.append((-b, -d))
    return _count_sat(clauses, f.n_vars, cfg)


def _count_sat(clauses: list[tuple[int, ...]], n_vars: int, cfg: OracleConfig) -> CountResult:
    cap = cfg.cap
    budget = cfg.node_budget
    nodes = 0

    def search(assign: list[int]) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        while True:
            progress = False
            all_satisfied = True
            for cl in clauses:
                satisfied = False
                unassigned = 0
                last = 0
                for lit in cl:
                    val = assign[lit if lit > 0 else -lit]
                    if val == 0:
                        unassigned += 1
                        last = lit
                    elif (val > 0) == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if unassigned == 0:
                    return 0
                all_satisfied = False
                if unassigned == 1:
                    assign[abs(last)] = 1 if last > 0 else -1
                    progress = True
            if all_satisfied:
                free = sum(1 for v in range(1, n_vars + 1) if assign[v] == 0)
                total = 1 << free
                if cap and total > cap:
                    total = cap
                return total
            if not progress:
                break
        var = next(v for v in range(1, n_vars + 1) if assign[v] == 0)
        low = assign.copy()
        low[var] = -1
        total = search(low)
        if cap and total >= cap:
            return cap
        high = assign.copy()
        high[var] = 1
        total += search(high)
        if cap and total > cap:
            total = cap
        return total

    total = search([0] * (n_vars + 1))
    if cap and total >= cap:
        return CountResult.at_least(cap)
    return CountResult.exact_count(total)


# ---------------------------------------------------------------------------
# Vertex covers


def count_vertex_covers_at_most(
    g: UndirectedGraph, k: int, cfg: OracleConfig = OracleConfig()
) -> CountResult:
    """Count vertex subsets of size at most k covering every edge of g."""
    if not 0 <= k <= g.order:
        raise InstanceError(f"budget k={k} out of range 0..{g.order}")
    n = g.order
    adj = g.adjacency_masks
    cap = cfg.cap
    budget = cfg.node_budget
    nodes = 0
    full = (1 << n) - 1

    def lower_bound(undecided: int, out_union_adj: int) -> int:
        # Vertices adjacent to an excluded vertex are forced in; the rest
        # still need one endpoint per edge of any matching among them.
        forced = out_union_adj & undecided
        bound = forced.bit_count()
        avail = undecided & ~forced
        while avail:
            b = avail & -avail
            avail ^= b
            nb = adj[b.bit_length() - 1] & avail
            if nb:
                avail ^= nb & -nb
                bound += 1
        return bound

    def search(i: int, chosen: int, out_mask: int, out_union_adj: int) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if chosen > k:
            return 0
        undecided = full & ~((1 << i) - 1)
        if chosen + lower_bound(undecided, out_union_adj) > k:
            return 0
        if i == n:
            return 1
        total = 0
        bit = 1 << i
        if adj[i] & out_mask == 0:
            # exclude vertex i+1; legal only if no incident edge is left uncovered
            total = search(i + 1, chosen, out_mask | bit, out_union_adj | adj[i])
            if cap and total >= cap:
                return cap
        total += search(i + 1, chosen + 1, out_mask, out_union_adj)
        if cap and total > cap:
            total = cap
        return total

    total = search(0, 0, 0, 0)
    if cap and total >= cap:
        return CountResult.at_least(cap)
    return CountResult.exact_count(total)


def min_vertex_cover_size(g: UndirectedGraph, cfg: OracleConfig = OracleConfig()) -> int:
    """Smallest k for which a vertex cover of size at most k exists."""
    probe = OracleConfig(cap=1, dp_threshold=cfg.dp_threshold, node_budget=cfg.node_budget)
    for k in range(g.order + 1):
        if count_vertex_covers_at_most(g, k, probe).value >= 1:
            return k
    raise AssertionError("the full vertex set always covers")  # pragma: no cover


# ---------------------------------------------------------------------------
# Hamiltonian counting: layered bitmask dynamic programming
#
# States are (visited mask, end vertex) pairs holding the number of partial
# sequences; only reachable states are stored.  Counts are Python integers,
# optionally clamped: min(x, clamp) is exact for every intermediate sum, so a
# clamped total below the clamp is the true total.


def _dp_sequences(adj: tuple[int, ...], n: int, start: int | None, close_in_mask: int | None,
                  clamp: int) -> int:
    if start is None:
        layer = {(1 << s, s): 1 for s in range(n)}
    else:
        layer = {(1 << start, start): 1}
    for _ in range(n - 1):
        nxt: dict[tuple[int, int], int] = {}
        for (mask, v), cnt in layer.items():
            avail = adj[v] & ~mask
            while avail:
                b = avail & -avail
                avail ^= b
                key = (mask | b, b.bit_length() - 1)
                c = nxt.get(key, 0) + cnt
                if clamp and c > clamp:
                    c = clamp
                nxt[key] = c
        layer = nxt
    total = 0
    for (_, v), cnt in layer.items():
        if close_in_mask is None or (close_in_mask >> v) & 1:
            total += cnt
            if clamp and total >= clamp:
                return clamp
    return total


# ---------------------------------------------------------------------------
# Hamiltonian counting: capped backtracking
#
# Neighbors are explored in ascending order.  A branch is pruned when some
# unvisited vertex runs out of available incident edges/arcs: fewer than 2 for
# cycle interiors, none at all for paths, with at most one path-end candidate
# allowed; a vertex whose last way in is the current head forces the next
# move.  The cheap checks run on incrementally maintained degree bitmasks at
# every node; the O(order) reachability sweeps (forward from the head, and
# backward from the cycle start or the unique sink) run at choice points only,
# since a forced move that leads nowhere dies within one chain walk anyway.


def _backtrack_undirected(adj: tuple[int, ...], n: int, cycle: bool, starts: list[int],
                          clamp: int, budget: int) -> int:
    full = (1 << n) - 1
    total = 0
    nodes = 0
    avail = [a.bit_count() for a in adj]
    deg0 = 0  # unvisited-degree exactly 0
    deg1 = 0  # unvisited-degree exactly 1
    for w in range(n):
        if avail[w] == 0:
            deg0 |= 1 << w
        elif avail[w] == 1:
            deg1 |= 1 << w
    visited = 0

    def visit(u: int):
        nonlocal deg0, deg1
        m = adj[u]
        while m:
            b = m & -m
            m ^= b
            a = avail[b.bit_length() - 1] - 1
            avail[b.bit_length() - 1] = a
            if a == 1:
                deg1 |= b
            elif a == 0:
                deg1 &= ~b
                deg0 |= b

    def unvisit(u: int):
        nonlocal deg0, deg1
        m = adj[u]
        while m:
            b = m & -m
            m ^= b
            a = avail[b.bit_length() - 1] + 1
            avail[b.bit_length() - 1] = a
            if a == 1:
                deg0 &= ~b
                deg1 |= b
            elif a == 2:
                deg1 &= ~b

    def check(head: int, start_adj: int) -> int:
        """-1 to prune, else the (possibly forced) candidate mask for head."""
        rem = full & ~visited
        adj_h = adj[head]
        if cycle:
            if deg0 & rem & ~(adj_h & start_adj):
                return -1
            last = deg0 & rem  # survivors touch both the head and the start
            if last:
                # both remaining edges are the head's and the closing one:
                # it has to be the final vertex, taken now
                if last & (last - 1) or rem != last:
                    return -1
                return last
            if deg1 & rem & ~(adj_h | start_adj):
                return -1
            if not start_adj & (rem | (1 << head)):  # nothing left to close on
                return -1
            forced = deg1 & rem & adj_h & ~start_adj
            if forced:
                # one edge left plus the head's: both are cycle edges, so the
                # head must step there next
                if forced & (forced - 1):
                    return -1
                return forced
        else:
            if deg0 & rem & ~adj_h:
                return -1
            last = deg0 & rem & adj_h
            if last:
                # only connection is the head: must be the final vertex, now
                if last & (last - 1) or rem != last:
                    return -1
                return last
            ends = deg1 & rem & ~adj_h
            if ends & (ends - 1):
                return -1
        return adj_h & ~visited

    def connected(head: int) -> bool:
        rem = full & ~visited
        reach = 0
        frontier = adj[head] & rem
        while frontier:
            reach |= frontier
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= adj[b.bit_length() - 1]
            frontier = nxt & rem & ~reach
        return reach == rem

    def forced_ok(head: int, start: int) -> bool:
        """Every effective-degree-2 vertex forces both incident edges into the
        cycle; the forced edges must form simple paths (degree <= 2, <= 1 at
        the head and the start, no loop short of the whole remainder)."""
        rem = full & ~visited
        hbit = 1 << head
        sbit = 1 << start
        allowed = rem | hbit | sbit
        forced: set[tuple[int, int]] = set()
        m = rem
        while m:
            b = m & -m
            m ^= b
            w = b.bit_length() - 1
            eff = avail[w] + ((adj[w] >> head) & 1) + ((adj[w] >> start) & 1)
            if eff == 2:
                e = adj[w] & allowed
                while e:
                    eb = e & -e
                    e ^= eb
                    x = eb.bit_length() - 1
                    forced.add((w, x) if w < x else (x, w))
        if not forced:
            return True
        fdeg: dict[int, int] = {}
        parent: dict[int, int] = {}
        compsize: dict[int, int] = {}

        def find(v: int) -> int:
            while parent.get(v, v) != v:
                parent[v] = parent.get(parent[v], parent[v])
                v = parent[v]
            return v

        total_allowed = allowed.bit_count()
        for w, x in sorted(forced):
            for v, limit in ((w, 2), (x, 2)):
                cap_v = 1 if v in (head, start) and head != start else limit
                fdeg[v] = fdeg.get(v, 0) + 1
                if fdeg[v] > cap_v:
                    return False
            rw, rx = find(w), find(x)
            if rw == rx:
                # a forced loop is only legal if it closes the whole remainder
                if compsize.get(rw, 1) != total_allowed:
                    return False
            else:
                sw = compsize.get(rw, 1)
                sx = compsize.get(rx, 1)
                parent[rw] = rx
                compsize[rx] = sw + sx
        return True

    for start in starts:
        start_adj = adj[start] if cycle else 0
        visited = 1 << start
        visit(start)
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if visited == full:
            total += 1  # single-vertex path
            cand0 = 0
        else:
            cand0 = check(start, start_adj)
            if cand0 < 0 or not connected(start) or (cycle and not forced_ok(start, start)):
                cand0 = 0
        stack = [[start, cand0]]
        while stack:
            frame = stack[-1]
            cand = frame[1]
            if cand == 0:
                v = frame[0]
                stack.pop()
                visited &= ~(1 << v)
                unvisit(v)
                continue
            b = cand & -cand
            was_choice = cand != b
            frame[1] = cand ^ b
            u = b.bit_length() - 1
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(nodes)
            visited |= b
            visit(u)
            if visited == full:
                if not cycle or (adj[u] >> start) & 1:
                    total += 1
                    if clamp and total >= clamp:
                        return clamp
                visited &= ~b
                unvisit(u)
                continue
            nxt = check(u, start_adj)
            if nxt < 0 or (was_choice and (not connected(u)
                                           or (cycle and not forced_ok(u, start)))):
                visited &= ~b
                unvisit(u)
                continue
            stack.append([u, nxt])
    return total


def _backtrack_directed(out_adj: tuple[int, ...], in_adj: tuple[int, ...], n: int, cycle: bool,
                        starts: list[int], clamp: int, budget: int) -> int:
    full = (1 << n) - 1
    total = 0
    nodes = 0
    avail_in = [a.bit_count() for a in in_adj]
    avail_out = [a.bit_count() for a in out_adj]
    in0 = 0  # no unvisited in-neighbor left
    out0 = 0  # no unvisited out-neighbor left
    for w in range(n):
        if avail_in[w] == 0:
            in0 |= 1 << w
        if avail_out[w] == 0:
            out0 |= 1 << w
    visited = 0
    # with a unique global sink, every remaining vertex must still reach it
    sinks = [v for v in range(n) if out_adj[v] == 0]
    back_root = sinks[0] if (not cycle and len(sinks) == 1) else -1

    def enter(u: int):
        nonlocal in0, out0
        m = out_adj[u]
        while m:
            b = m & -m
            m ^= b
            w = b.bit_length() - 1
            avail_in[w] -= 1
            if avail_in[w] == 0:
                in0 |= b
        m = in_adj[u]
        while m:
            b = m & -m
            m ^= b
            w = b.bit_length() - 1
            avail_out[w] -= 1
            if avail_out[w] == 0:
                out0 |= b

    def leave(u: int):
        nonlocal in0, out0
        m = out_adj[u]
        while m:
            b = m & -m
            m ^= b
            w = b.bit_length() - 1
            if avail_in[w] == 0:
                in0 &= ~b
            avail_in[w] += 1
        m = in_adj[u]
        while m:
            b = m & -m
            m ^= b
            w = b.bit_length() - 1
            if avail_out[w] == 0:
                out0 &= ~b
            avail_out[w] += 1

    def check(head: int, start_in: int) -> int:
        """-1 to prune, else the (possibly forced) candidate mask for head."""
        rem = full & ~visited
        out_h = out_adj[head]
        if in0 & rem & ~out_h:
            return -1
        cand = out_h & ~visited
        fed = in0 & rem & out_h
        if fed:
            # its only way in is from the head: the next move is forced
            if fed & (fed - 1):
                return -1
            cand = fed
        if cycle:
            if out0 & rem & ~start_in:
                return -1
            closers = out0 & rem & start_in
            if closers & (closers - 1):
                return -1
            if not start_in & (rem | (1 << head)):
                return -1
        else:
            o0 = out0 & rem
            if o0 & (o0 - 1):
                return -1
        return cand

    def reachable(head: int, start: int) -> bool:
        rem = full & ~visited
        reach = 0
        frontier = out_adj[head] & rem
        while frontier:
            reach |= frontier
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                f ^= b
                nxt |= out_adj[b.bit_length() - 1]
            frontier = nxt & rem & ~reach
        if reach != rem:
            return False
        root = start if cycle else back_root
        if root >= 0 and (cycle or (rem >> root) & 1):
            target = rem & ~(1 << root) if not cycle else rem
            reach = 0
            frontier = in_adj[root] & rem
            while frontier:
                reach |= frontier
                nxt = 0
                f = frontier
                while f:
                    b = f & -f
                    f ^= b
                    nxt |= in_adj[b.bit_length() - 1]
                frontier = nxt & rem & ~reach
            if target & ~reach:
                return False
        return True

    for start in starts:
        start_in = in_adj[start] if cycle else 0
        visited = 1 << start
        enter(start)
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(nodes)
        if visited == full:
            total += 1  # single-vertex path
            cand0 = 0
        else:
            cand0 = check(start, start_in)
            if cand0 < 0 or not reachable(start, start):
                cand0 = 0
        stack = [[start, cand0]]
        while stack:
            frame = stack[-1]
            cand = frame[1]
            if cand == 0:
                v = frame[0]
                stack.pop()
                visited &= ~(1 << v)
                leave(v)
                continue
            b = cand & -cand
            was_choice = cand != b
            frame[1] = cand ^ b
            u = b.bit_length() - 1
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(nodes)
            visited |= b
            enter(u)
            if visited == full:
                if not cycle or (out_adj[u] >> start) & 1:
                    total += 1
                    if clamp and total >= clamp:
                        return clamp
                visited &= ~b
                leave(u)
                continue
            nxt = check(u, start_in)
            if nxt < 0 or (was_choice and not reachable(u, start)):
                visited &= ~b
                leave(u)
                continue
            stack.append([u, nxt])
    return total


# ---------------------------------------------------------------------------
# Public Hamiltonian counters
#
# Cycle counters fix vertex 1 as the start; every Hamiltonian cycle passes
# through it.  Undirected counts are accumulated as raw traversals and halved
# (each undirected class is traversed once per direction), so caps are applied
# at twice the requested value internally.


def _halved_result(raw: int, cap: int) -> CountResult:
    if cap and raw >= 2 * cap:
        return CountResult.at_least(cap)
    return CountResult.exact_count(raw // 2)


def _plain_result(raw: int, cap: int) -> CountResult:
    if cap and raw >= cap:
        return CountResult.at_least(cap)
    return CountResult.exact_count(raw)


def count_ham_cycles_undirected(g: UndirectedGraph, cfg: OracleConfig = OracleConfig()) -> CountResult:
    """Count Hamiltonian cycle classes (rotations and reflections identified)."""
    n = g.order
    if n < 3:
        return CountResult.exact_count(0)
    adj = g.adjacency_masks
    clamp = 2 * cfg.cap if cfg.cap else 0
    if n <= cfg.dp_threshold:
        raw = _dp_sequences(adj, n, 0, adj[0], clamp)
    else:
        raw = _backtrack_undirected(adj, n, True, [0], clamp, cfg.node_budget)
    return _halved_result(raw, cfg.cap)


def count_ham_paths_undirected(g: UndirectedGraph, cfg: OracleConfig = OracleConfig()) -> CountResult:
    """Count Hamiltonian path classes (a path and its reversal coincide)."""
    n = g.order
    if n == 0:
        return CountResult.exact_count(0)
    if n == 1:
        return _plain_result(1, cfg.cap)
    adj = g.adjacency_masks
    clamp = 2 * cfg.cap if cfg.cap else 0
    if n <= cfg.dp_threshold:
        raw = _dp_sequences(adj, n, None, None, clamp)
    else:
        raw = _backtrack_undirected(adj, n, False, list(range(n)), clamp, cfg.node_budget)
    return _halved_result(raw, cfg.cap)


def count_ham_cycles_directed(h: DirectedGraph | OrientedGraph, cfg: OracleConfig = OracleConfig()) -> CountResult:
    """Count directed Hamiltonian cycle classes (rotations identified)."""
    if isinstance(h, OrientedGraph):
        h = h.digraph
    n = h.order
    if n < 2:
        return CountResult.exact_count(0)
    out, inn = h.out_masks, h.in_masks
    cap = cfg.cap
    if n <= cfg.dp_threshold:
        raw = _dp_sequences(out, n, 0, inn[0], cap)
    else:
        raw = _backtrack_directed(out, inn, n, True, [0], cap, cfg.node_budget)
    return _plain_result(raw, cap)


def count_ham_paths_directed(h: DirectedGraph | OrientedGraph, cfg: OracleConfig = OracleConfig()) -> CountResult:
    """Count directed Hamiltonian paths as raw vertex sequences."""
    if isinstance(h, OrientedGraph):
        h = h.digraph
    n = h.order
    if n == 0:
        return CountResult.exact_count(0)
    if n == 1:
        return _plain_result(1, cfg.cap)
    out, inn = h.out_masks, h.in_masks
    cap = cfg.cap
    # A vertex nobody points at must start the path; two of them kill it.
    # Symmetrically for vertices with no out-arcs.
    sources = [v for v in range(n) if inn[v] == 0]
    sinks = [v for v in range(n) if out[v] == 0]
    if len(sources) >= 2 or len(sinks) >= 2:
        return CountResult.exact_count(0)
    if n <= cfg.dp_threshold:
        raw = _dp_sequences(out, n, sources[0] if sources else None, None, cap)
    else:
        starts = sources if sources else list(range(n))
        raw = _backtrack_directed(out, inn, n, False, starts, cap, cfg.node_budget)
    return _plain_result(raw, cap)
