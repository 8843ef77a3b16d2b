"""Seeded random instance generation plus verification campaigns.

Every generator is driven by SplitMix64, a small documented pseudo-random
generator with explicit integer seeding, so campaigns reproduce bit-for-bit
across runs and platforms.  Reports never embed wall-clock or environment
data: identical configs render to identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .formats import serialize_instance
from .instances import (
    CnfFormula,
    CountResult,
    DirectedGraph,
    InstanceError,
    OneInThreeFormula,
    OrientedGraph,
    UndirectedGraph,
)
from .oracles import (
    BudgetExceeded,
    OracleConfig,
    count_ham_cycles_directed,
    count_ham_cycles_undirected,
    count_ham_paths_directed,
    count_ham_paths_undirected,
    count_models,
    count_one_in_three,
    count_vertex_covers_at_most,
)
from .reductions import ReductionInfo, resolve_reduction


class SplitMix64:
    """SplitMix64: state advances by the golden-gamma constant, output is the
    finalizer z ^= z>>30; z *= 0xBF58476D1CE4E5B9; z ^= z>>27;
    z *= 0x94D049BB133111EB; z ^= z>>31 (all arithmetic mod 2^64).

    Bounded draws take next_u64() modulo the bound; the tiny modulo bias is
    irrelevant at the sizes used here and keeps the scheme portable.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise InstanceError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound

    def coin(self) -> bool:
        return bool(self.next_u64() & 1)


# ---------------------------------------------------------------------------
# Generators


def gen_one_in_three(n: int, m: int, seed: int) -> OneInThreeFormula:
    """m clauses, each over 3 distinct uniform variables (sorted ascending in
    the clause) with independent uniform polarities."""
    if n < 3:
        raise InstanceError(f"need at least 3 variables, got {n}")
    if m < 1:
        raise InstanceError(f"need at least 1 clause, got {m}")
    rng = SplitMix64(seed)
    clauses = []
    for _ in range(m):
        chosen: list[int] = []
        while len(chosen) < 3:
            v = 1 + rng.below(n)
            if v not in chosen:
                chosen.append(v)
        chosen.sort()
        lits = []
        for v in chosen:
            lits.append(v if rng.coin() else -v)
        clauses.append(tuple(lits))
    return OneInThreeFormula(CnfFormula(n, clauses))


def gen_graph(n: int, p_millis: int, seed: int) -> UndirectedGraph:
    """Each candidate edge (u < v, lexicographic) kept with probability
    p_millis/1000."""
    _check_graph_params(n, p_millis)
    rng = SplitMix64(seed)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.below(1000) < p_millis:
                edges.append((u, v))
    return UndirectedGraph(n, edges)


def gen_digraph(n: int, p_millis: int, seed: int) -> DirectedGraph:
    """Each candidate arc (u, v), u != v, lexicographic, kept independently."""
    _check_graph_params(n, p_millis)
    rng = SplitMix64(seed)
    arcs = []
    for u in range(1, n + 1):
        for v in range(1, n + 1):
            if u != v and rng.below(1000) < p_millis:
                arcs.append((u, v))
    return DirectedGraph(n, arcs)


def gen_oriented(n: int, p_millis: int, seed: int) -> OrientedGraph:
    """Draw an undirected graph, then orient each edge (ascending order) by a
    fair coin; antisymmetry holds by construction."""
    _check_graph_params(n, p_millis)
    rng = SplitMix64(seed)
    edges = []
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if rng.below(1000) < p_millis:
                edges.append((u, v))
    arcs = []
    for u, v in edges:
        arcs.append((u, v) if not rng.coin() else (v, u))
    return OrientedGraph(DirectedGraph(n, arcs))


def _check_graph_params(n: int, p_millis: int):
    if n < 1:
        raise InstanceError(f"order must be at least 1, got {n}")
    if not 0 <= p_millis <= 1000:
        raise InstanceError(f"p_millis must be in 0..1000, got {p_millis}")


# ---------------------------------------------------------------------------
# Counting dispatch


def count_for_problem(problem_id: str, instance, cfg: OracleConfig) -> CountResult:
    """Run the solution counter matching a chain problem id."""
    if problem_id == "sat":
        return count_models(instance, cfg)
    if problem_id == "13sat":
        return count_one_in_three(instance, cfg)
    if problem_id == "vc":
        return count_vertex_covers_at_most(instance.graph, instance.k, cfg)
    if problem_id in ("hamp-u",):
        return count_ham_paths_undirected(instance, cfg)
    if problem_id in ("hamc-u",):
        return count_ham_cycles_undirected(instance, cfg)
    if problem_id in ("hamp-d", "hamp-o"):
        return count_ham_paths_directed(instance, cfg)
    if problem_id in ("hamc-d", "hamc-o"):
        return count_ham_cycles_directed(instance, cfg)
    raise InstanceError(f"unknown problem id {problem_id!r}")


# ---------------------------------------------------------------------------
# Verdicts


@dataclass(frozen=True)
class Verdict:
    """Outcome of one reduction check.

    Classes are zero/one/many, or budget when a counter ran out of nodes.
    Exact counts are recorded when the counter reported them.  A budget class
    never passes.
    """

    reduction: str
    mode: str
    source_class: str
    target_class: str
    source_count: int | None
    target_count: int | None
    passed: bool


def _classify(res: CountResult | None) -> str:
    return "budget" if res is None else res.classify()


def verify_case(reduction_id: str, instance, mode: str,
                oracle_cfg: OracleConfig = OracleConfig()) -> Verdict:
    """Run one reduction and compare solution counts on both sides.

    Trichotomy mode compares the zero/one/many class under cap-2 counting;
    parsimony mode compares exact uncapped counts.
    """
    if mode not in ("trichotomy", "parsimony"):
        raise InstanceError(f"mode must be trichotomy or parsimony, got {mode!r}")
    info = resolve_reduction(reduction_id)
    cfg = replace(oracle_cfg, cap=2 if mode == "trichotomy" else 0)

    def run(problem_id: str, inst) -> CountResult | None:
        try:
            return count_for_problem(problem_id, inst, cfg)
        except BudgetExceeded:
            return None

    src = run(info.source, instance)
    tgt = run(info.target, info.transform(instance).target)
    src_class, tgt_class = _classify(src), _classify(tgt)
    if src is None or tgt is None:
        passed = False
    elif mode == "parsimony":
        passed = src.exact and tgt.exact and src.value == tgt.value
    else:
        passed = src_class == tgt_class
    return Verdict(
        reduction=info.reduction_id,
        mode=mode,
        source_class=src_class,
        target_class=tgt_class,
        source_count=src.value if src is not None and src.exact else None,
        target_count=tgt.value if tgt is not None and tgt.exact else None,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# Campaigns

# documented tractable ranges per reduction source (inclusive); the minimum
# order is 1 unless the transform itself needs more
_SIZE_LIMITS = {
    "13sat-to-vc": {"n": 6, "m": 4},
    "13sat-to-hamp-o": {"n": 5, "m": 3},
    "hamp-o-to-hamc-o": {"order": 12},
    "hamp-o-to-hamp-d": {"order": 12},
    "hamc-o-to-hamc-d": {"order": 12},
    "hamp-d-to-hamp-u": {"order": 6},
    "hamc-d-to-hamc-u": {"order": 6},
    "hamp-u-to-hamc-u": {"order": 12, "min_order": 2},
    "hamc-u-to-sat": {"order": 6, "min_order": 3},
}


def minimum_order(reduction_id: str) -> int:
    """Smallest instance order a graph-source campaign may generate."""
    info = resolve_reduction(reduction_id)
    if info.source == "13sat":
        raise InstanceError(f"{reduction_id} generates formulas, not graphs")
    return _SIZE_LIMITS[info.reduction_id].get("min_order", 1)

# always-run anchors covering each trichotomy class at least once
ANCHOR_UNSAT = OneInThreeFormula(CnfFormula(3, [(1, 2, 3), (-1, -2, -3)]))
ANCHOR_UNIQUE = OneInThreeFormula(CnfFormula(3, [(1, 2, 3), (1, -2, -3), (-1, 2, -3)]))
ANCHOR_FIGURE = OneInThreeFormula(CnfFormula(4, [(1, 2, 3), (-2, 3, 4)]))
FORMULA_ANCHORS = (ANCHOR_UNSAT, ANCHOR_UNIQUE, ANCHOR_FIGURE)


@dataclass(frozen=True)
class CampaignConfig:
    """Configuration of a verification campaign; deterministic in `seed`."""

    reduction: str
    mode: str
    cases: int
    seed: int
    n_min: int = 3
    n_max: int = 4
    m_min: int = 1
    m_max: int = 2
    order_min: int = 1
    order_max: int = 6
    p_millis: int = 500
    oracle: OracleConfig = OracleConfig()

    def __post_init__(self):
        info = resolve_reduction(self.reduction)
        if self.mode not in ("trichotomy", "parsimony"):
            raise InstanceError(f"mode must be trichotomy or parsimony, got {self.mode!r}")
        if self.cases < 0:
            raise InstanceError("cases must be nonnegative")
        limits = _SIZE_LIMITS[info.reduction_id]
        if info.source == "13sat":
            if not 3 <= self.n_min <= self.n_max <= limits["n"]:
                raise InstanceError(f"variable bounds must satisfy 3 <= n_min <= n_max <= {limits['n']}")
            if not 1 <= self.m_min <= self.m_max <= limits["m"]:
                raise InstanceError(f"clause bounds must satisfy 1 <= m_min <= m_max <= {limits['m']}")
        else:
            low = limits.get("min_order", 1)
            if not low <= self.order_min <= self.order_max <= limits["order"]:
                raise InstanceError(
                    f"order bounds must satisfy {low} <= order_min <= order_max <= {limits['order']}")
            if not 0 <= self.p_millis <= 1000:
                raise InstanceError("p_millis must be in 0..1000")

    @property
    def info(self) -> ReductionInfo:
        return resolve_reduction(self.reduction)


def campaign_anchors(cfg: CampaignConfig) -> list:
    """Handcrafted instances prepended to formula-source campaigns so each
    trichotomy class shows up in every run."""
    if cfg.cases > 0 and cfg.info.source == "13sat":
        return list(FORMULA_ANCHORS)
    return []


def campaign_instances(cfg: CampaignConfig) -> list:
    """The seeded random instances of a campaign, in case order.

    Per case the master stream draws the size parameters, then one 64-bit
    sub-seed feeding the instance generator.
    """
    info = cfg.info
    master = SplitMix64(cfg.seed)
    out = []
    for _ in range(cfg.cases):
        if info.source == "13sat":
            n = cfg.n_min + master.below(cfg.n_max - cfg.n_min + 1)
            m = cfg.m_min + master.below(cfg.m_max - cfg.m_min + 1)
            out.append(gen_one_in_three(n, m, master.next_u64()))
        else:
            order = cfg.order_min + master.below(cfg.order_max - cfg.order_min + 1)
            sub = master.next_u64()
            if info.source in ("hamp-u", "hamc-u"):
                out.append(gen_graph(order, cfg.p_millis, sub))
            elif info.source in ("hamp-d", "hamc-d"):
                out.append(gen_digraph(order, cfg.p_millis, sub))
            else:
                out.append(gen_oriented(order, cfg.p_millis, sub))
    return out


@dataclass
class CampaignReport:
    """Per-case verdicts plus aggregate tallies; renders to stable text."""

    config: CampaignConfig
    verdicts: list[Verdict]
    failing: list[tuple[int, str]]  # (case index, serialized source instance)

    @property
    def pass_count(self) -> int:
        return sum(1 for v in self.verdicts if v.passed)

    @property
    def budget_count(self) -> int:
        return sum(1 for v in self.verdicts
                   if not v.passed and "budget" in (v.source_class, v.target_class))

    @property
    def fail_count(self) -> int:
        return len(self.verdicts) - self.pass_count - self.budget_count

    @property
    def all_passed(self) -> bool:
        return self.pass_count == len(self.verdicts)

    def render(self) -> str:
        lines = []
        for idx, v in enumerate(self.verdicts):
            if v.passed:
                status = "pass"
            elif "budget" in (v.source_class, v.target_class):
                status = "BUDGET"
            else:
                status = "FAIL"
            lines.append(f"case {idx} {v.reduction} {v.source_class} {v.target_class} {status}")
        lines.append(f"summary {self.pass_count} pass {self.fail_count} fail "
                     f"{self.budget_count} budget")
        for idx, text in self.failing:
            lines.append(f"c failing case {idx}")
            lines.extend(f"c {t}" for t in text.rstrip("\n").split("\n"))
        return "\n".join(lines) + "\n"


def run_campaign(cfg: CampaignConfig) -> CampaignReport:
    """Verify anchor plus generated instances; failures are recorded in the
    report, never thrown."""
    instances = campaign_anchors(cfg) + campaign_instances(cfg)
    source = cfg.info.source
    verdicts = []
    failing = []
    for idx, inst in enumerate(instances):
        v = verify_case(cfg.reduction, inst, cfg.mode, cfg.oracle)
        verdicts.append(v)
        if not v.passed:
            failing.append((idx, serialize_instance(source, inst)))
    return CampaignReport(cfg, verdicts, failing)
