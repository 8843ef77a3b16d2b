"""Command-line front end: generate, reduce, count, verify, chain.

Exit codes: 0 on success or a fully passing verification, 1 on verification
failure or an exhausted counting budget, 2 on usage or parse errors.
All randomness enters through --seed; reports are byte-stable.
"""

from __future__ import annotations

import argparse
import sys

from .formats import (
    FormatError,
    parse_cnf,
    parse_graph,
    parse_one_in_three,
    parse_vc,
    serialize_cnf,
    serialize_graph,
    serialize_instance,
)
from .instances import (
    CnfFormula,
    DirectedGraph,
    InstanceError,
    OrientedGraph,
    UndirectedGraph,
    VcInstance,
)
from .harness import (
    CampaignConfig,
    gen_digraph,
    gen_graph,
    gen_one_in_three,
    gen_oriented,
    count_for_problem,
    minimum_order,
    run_campaign,
)
from .oracles import BudgetExceeded, OracleConfig
from .reductions import REDUCTION_ALIASES, REDUCTIONS, ReductionOutput, chain, resolve_reduction

PROBLEM_IDS = ("sat", "13sat", "vc", "hamp-u", "hamc-u", "hamp-d", "hamc-d", "hamp-o", "hamc-o")

__all__ = [
    "main",
    "parse_cnf",
    "parse_one_in_three",
    "parse_graph",
    "parse_vc",
    "serialize_cnf",
    "serialize_graph",
    "serialize_instance",
    "load_instance",
    "dump_output",
    "FormatError",
]


def load_instance(problem_id: str, text: str):
    """Parse an instance file according to the problem it is meant for."""
    if problem_id == "sat":
        return parse_cnf(text)
    if problem_id == "13sat":
        return parse_one_in_three(text)
    if problem_id == "vc":
        return parse_vc(text)
    g = parse_graph(text)
    if problem_id in ("hamp-u", "hamc-u"):
        if not isinstance(g, UndirectedGraph):
            raise FormatError(1, f"problem {problem_id} needs an undirected 'p edge' graph")
        return g
    if not isinstance(g, DirectedGraph):
        raise FormatError(1, f"problem {problem_id} needs a directed 'p arc' graph")
    if problem_id in ("hamp-o", "hamc-o"):
        return OrientedGraph(g)
    return g


def dump_output(out: ReductionOutput) -> str:
    """Serialize a reduction target, labels included."""
    target = out.target
    if isinstance(target, CnfFormula):
        return serialize_cnf(target, out.labels)
    if isinstance(target, VcInstance):
        return serialize_graph(target.graph, k=target.k)
    return serialize_graph(target)


def _write(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _oracle_config(args) -> OracleConfig:
    return OracleConfig(cap=getattr(args, "cap", 0) or 0,
                        dp_threshold=args.dp_threshold,
                        node_budget=args.node_budget)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uniqham",
                                     description="Solution-count-preserving reductions between "
                                                 "one-in-three SAT, vertex cover and the Hamiltonian "
                                                 "problems, with exact capped counters.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a seeded random instance")
    p_gen.add_argument("--problem", required=True,
                       choices=[p for p in PROBLEM_IDS if p not in ("sat", "vc")])
    p_gen.add_argument("--n", type=int, default=4, help="variables (formula problems)")
    p_gen.add_argument("--m", type=int, default=2, help="clauses (formula problems)")
    p_gen.add_argument("--order", type=int, default=6, help="vertices (graph problems)")
    p_gen.add_argument("--p-millis", type=int, default=500,
                       help="edge/arc probability in thousandths")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", help="output file (default stdout)")

    step_ids = sorted(REDUCTIONS) + sorted(REDUCTION_ALIASES)
    p_red = sub.add_parser("reduce", help="apply one reduction step")
    p_red.add_argument("--step", required=True, choices=step_ids)
    p_red.add_argument("--in", dest="infile", required=True)
    p_red.add_argument("--out", help="output file (default stdout)")

    p_cnt = sub.add_parser("count", help="count solutions of an instance")
    p_cnt.add_argument("--problem", required=True, choices=PROBLEM_IDS)
    p_cnt.add_argument("--in", dest="infile", required=True)
    p_cnt.add_argument("--cap", type=int, default=0, help="stop at this many solutions (0 = exact)")
    p_cnt.add_argument("--dp-threshold", type=int, default=20)
    p_cnt.add_argument("--node-budget", type=int, default=10_000_000)

    p_ver = sub.add_parser("verify", help="run a verification campaign")
    p_ver.add_argument("--reduction", required=True, choices=step_ids)
    p_ver.add_argument("--cases", type=int, required=True)
    p_ver.add_argument("--seed", type=int, required=True)
    p_ver.add_argument("--mode", required=True, choices=("trichotomy", "parsimony"))
    p_ver.add_argument("--n-min", type=int, default=3)
    p_ver.add_argument("--n-max", type=int, default=4)
    p_ver.add_argument("--m-min", type=int, default=1)
    p_ver.add_argument("--m-max", type=int, default=2)
    p_ver.add_argument("--order-min", type=int, default=None,
                       help="default: the smallest order the reduction accepts")
    p_ver.add_argument("--order-max", type=int, default=6)
    p_ver.add_argument("--p-millis", type=int, default=500)
    p_ver.add_argument("--dp-threshold", type=int, default=20)
    p_ver.add_argument("--node-budget", type=int, default=10_000_000)

    p_chn = sub.add_parser("chain", help="compose reductions along the chain")
    p_chn.add_argument("--from", dest="from_id", required=True, choices=PROBLEM_IDS)
    p_chn.add_argument("--to", dest="to_id", required=True, choices=PROBLEM_IDS)
    p_chn.add_argument("--in", dest="infile", required=True)
    p_chn.add_argument("--out", help="output file (default stdout)")
    return parser


def _cmd_gen(args) -> int:
    if args.problem == "13sat":
        inst = gen_one_in_three(args.n, args.m, args.seed)
    elif args.problem in ("hamp-u", "hamc-u"):
        inst = gen_graph(args.order, args.p_millis, args.seed)
    elif args.problem in ("hamp-d", "hamc-d"):
        inst = gen_digraph(args.order, args.p_millis, args.seed)
    else:
        inst = gen_oriented(args.order, args.p_millis, args.seed)
    _write(serialize_instance(args.problem, inst), args.out)
    return 0


def _cmd_reduce(args) -> int:
    info = resolve_reduction(args.step)
    instance = load_instance(info.source, _read(args.infile))
    out = info.transform(instance)
    _write(dump_output(out), args.out)
    return 0


def _cmd_count(args) -> int:
    instance = load_instance(args.problem, _read(args.infile))
    cfg = _oracle_config(args)
    try:
        result = count_for_problem(args.problem, instance, cfg)
    except BudgetExceeded as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(result)
    return 0


def _cmd_verify(args) -> int:
    order_min = args.order_min
    if order_min is None:
        info = resolve_reduction(args.reduction)
        order_min = 1 if info.source == "13sat" else minimum_order(args.reduction)
    cfg = CampaignConfig(
        reduction=args.reduction,
        mode=args.mode,
        cases=args.cases,
        seed=args.seed,
        n_min=args.n_min,
        n_max=args.n_max,
        m_min=args.m_min,
        m_max=args.m_max,
        order_min=order_min,
        order_max=args.order_max,
        p_millis=args.p_millis,
        oracle=OracleConfig(dp_threshold=args.dp_threshold, node_budget=args.node_budget),
    )
    report = run_campaign(cfg)
    sys.stdout.write(report.render())
    return 0 if report.all_passed else 1


def _cmd_chain(args) -> int:
    instance = load_instance(args.from_id, _read(args.infile))
    out = chain(args.from_id, args.to_id, instance)
    if args.from_id == args.to_id:
        _write(serialize_instance(args.to_id, out.target), args.out)
    else:
        _write(dump_output(out), args.out)
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "reduce": _cmd_reduce,
    "count": _cmd_count,
    "verify": _cmd_verify,
    "chain": _cmd_chain,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (FormatError, InstanceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
