"""Uniqueness-preserving reductions between one-in-three SAT, vertex cover
and the six Hamiltonian problems, with exact capped solution counters and a
property-test harness verifying each reduction's solution-count contract."""

from .instances import (
    Assignment,
    Clause,
    CnfFormula,
    CountResult,
    DirectedGraph,
    HamCycleD,
    HamCycleU,
    HamPathD,
    HamPathU,
    InstanceError,
    Literal,
    OneInThreeFormula,
    OrientedGraph,
    UndirectedGraph,
    VcInstance,
    canonicalize_cycle_directed,
    canonicalize_cycle_undirected,
    canonicalize_path_directed,
    canonicalize_path_undirected,
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
    min_vertex_cover_size,
)
from .reductions import (
    REDUCTIONS,
    ReductionOutput,
    chain,
    chain_route,
    directed_to_undirected_triplication,
    hamc_undirected_to_sat,
    hamp_oriented_to_hamc_oriented,
    hamp_undirected_to_hamc_undirected,
    one_in_three_to_hamp_oriented,
    one_in_three_to_vc,
    oriented_to_directed,
    parse_role,
    resolve_reduction,
)
from .harness import (
    CampaignConfig,
    CampaignReport,
    SplitMix64,
    Verdict,
    campaign_instances,
    count_for_problem,
    gen_digraph,
    gen_graph,
    gen_one_in_three,
    gen_oriented,
    run_campaign,
    verify_case,
)

__version__ = "0.1.0"
