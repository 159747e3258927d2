"""Command-line interface: ``nnfopt <command> [options]``.

Exit codes: 0 success, 1 no solution or inconsistent, 2 usage or
precondition error, 3 malformed input file, 4 intractable combination.
Reports go to standard output, diagnostics to standard error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from app.api.report import optimization_report
from app.application.services import (
    Algorithm,
    DispatchOptions,
    OptimizationService,
    WorkspaceService,
)
from app.application.services.optimization_service import CONSISTENCY_HARDNESS
from app.core.config import JOBS, LOG_LEVEL, N_CAP, ORACLE_MAX_VARS
from app.core.errors import FormatError, IntractableCombinationError
from app.core.logging_config import configure_logging
from app.domain.entities.circuit import Literal
from app.domain.entities.names import NameTable
from app.domain.entities.obdd import TRUE_ID, BoolOp, ObddManager
from app.domain.entities.objective import (
    Aggregator,
    AggregatorKind,
    Family,
    FamilyTag,
    parse_weight,
)
from app.domain.services.circuit_ops import check_decomposable, condition, consistent_under
from app.domain.services.compiler import compile_cnf
from app.domain.services.generators import (
    PosNegFlavor,
    eliminate_negative_literals,
    gen_hitting_set_linear,
    gen_hitting_set_qplus,
    gen_owa_from_quadratic,
    gen_package_demo,
    gen_posneg_cnf,
    gen_term_sat_quadratic,
)
from app.domain.services.optimizers import count_models
from app.persistence.repositories import serialize_nnf

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_INTRACTABLE = 4

GEN_KINDS = (
    "hitting-set",
    "termsat-q",
    "hitting-set-qplus",
    "owa",
    "posneg",
    "posneg-weights",
    "neglit-elim",
    "pkg-demo",
)


class UsageError(ValueError):
    """A subcommand was called without an input it needs."""


def _require(value: Optional[str], flag: str) -> str:
    if not value:
        raise UsageError(f"{flag} is required here")
    return value


def _parse_sets(text: str) -> list[list[str]]:
    """``"a,b;b,c"`` -> ``[["a", "b"], ["b", "c"]]``."""
    return [
        [element.strip() for element in group.split(",") if element.strip()]
        for group in text.split(";")
        if group.strip()
    ]


def _parse_terms(text: str) -> list[list[Literal]]:
    """``"1 -2;2 3"`` -> literal lists in DIMACS notation."""
    groups = []
    for group in text.split(";"):
        tokens = group.split()
        if tokens:
            groups.append([Literal.from_dimacs(int(token)) for token in tokens])
    return groups


def _parse_item_spec(text: str) -> tuple[int, Fraction]:
    """``"ID:WEIGHT"`` for OBDD items."""
    node, sep, weight = text.partition(":")
    if not sep:
        raise UsageError(f"expected ID:WEIGHT, got {text!r}")
    return int(node), parse_weight(weight)


def _obdd_family(manager: ObddManager, items: Sequence[tuple[int, Fraction]]) -> FamilyTag:
    linear = all(f == TRUE_ID or manager.is_literal(f) for f, _ in items)
    return FamilyTag(
        family=Family.L if linear else Family.G,
        positive_literals=linear
        and all(f == TRUE_ID or manager.as_literal(f).positive for f, _ in items),
        nonnegative_weights=all(w >= 0 for _, w in items),
    )


def _gamma(names: NameTable, text: Optional[str]) -> Optional[dict[int, int]]:
    return names.resolve_term(text) if text else None


def _emit(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def cmd_check(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    circuit = workspace.load_circuit(args.circuit)
    report = check_decomposable(circuit)
    lines = [
        f"nodes {len(circuit.nodes)}",
        f"edges {circuit.size}",
        f"vars {circuit.num_vars}",
        f"decomposable {'yes' if report.decomposable else 'no'}",
    ]
    if not report.decomposable:
        lines.append(f"violating-node {report.violating_node}")
    if circuit.num_vars <= ORACLE_MAX_VARS:
        lines.append(f"models {count_models(circuit)}")
    _emit(lines)
    return EXIT_OK


def cmd_condition(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    circuit = workspace.load_circuit(args.circuit)
    names = workspace.load_names(args.names, args.circuit)
    result = condition(circuit, names.resolve_term(args.term))
    if args.out:
        print(f"wrote {workspace.save_circuit(result, args.out)}")
    else:
        sys.stdout.write(serialize_nnf(result))
    return EXIT_OK


def cmd_consistent(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    circuit = workspace.load_circuit(args.circuit)
    names = workspace.load_names(args.names, args.circuit)
    gamma = _gamma(names, args.term) or {}
    if check_decomposable(circuit).decomposable:
        found = consistent_under(circuit, gamma)
    else:
        if circuit.num_vars > ORACLE_MAX_VARS:
            raise IntractableCombinationError(
                "circuit is not decomposable and too large to enumerate", CONSISTENCY_HARDNESS
            )
        logger.warning("circuit is not decomposable; falling back to enumeration")
        found = count_models(condition(circuit, gamma)) > 0
    print(f"consistent {'yes' if found else 'no'}")
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_compile(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    circuit = compile_cnf(workspace.load_cnf(args.cnf))
    if args.out:
        print(f"wrote {workspace.save_circuit(circuit, args.out)}")
        print(f"nodes {len(circuit.nodes)}")
        print(f"edges {circuit.size}")
    else:
        sys.stdout.write(serialize_nnf(circuit))
    return EXIT_OK


def cmd_classify(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    document = workspace.load_base(args.base)
    _emit(
        [
            f"family {document.base.classify()}",
            f"items {document.base.n}",
            f"vars {document.base.num_vars}",
            f"aggregator {document.aggregator}",
        ]
    )
    return EXIT_OK


def _options(args: argparse.Namespace, algorithm: Algorithm) -> DispatchOptions:
    return DispatchOptions(
        algorithm=algorithm,
        n_cap=args.n_cap,
        jobs=args.jobs,
        oracle_max_vars=getattr(args, "max_vars", ORACLE_MAX_VARS),
    )


def _optimize_circuit(
    args: argparse.Namespace, workspace: WorkspaceService, algorithm: Algorithm
) -> int:
    circuit_path = _require(args.circuit, "--circuit")
    circuit = workspace.load_circuit(circuit_path)
    document = workspace.load_base(_require(args.base, "--base"))
    aggregator = document.aggregator
    if args.aggregator:
        aggregator = Aggregator(kind=AggregatorKind(args.aggregator))
    names = workspace.load_names(args.names, circuit_path)
    service = OptimizationService(_options(args, algorithm))
    result = service.optimize(circuit, document.base, aggregator, _gamma(names, args.condition))
    _emit(optimization_report(result, document.base.classify(), aggregator, names))
    return EXIT_OK if result.is_optimal else EXIT_NEGATIVE


def _optimize_obdd(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    document = workspace.load_obdd(args.obdd)
    manager = document.manager.copy()
    items = [_parse_item_spec(spec) for spec in args.item]
    aggregator = Aggregator(kind=AggregatorKind(args.aggregator or "sum"))
    names = workspace.load_names(args.names, args.obdd)
    constraint = document.root
    gamma = _gamma(names, args.condition)
    if gamma:
        term = manager.build_term(
            Literal(var=var, positive=bool(value)) for var, value in sorted(gamma.items())
        )
        constraint = manager.apply(BoolOp.AND, constraint, term)
    service = OptimizationService(_options(args, Algorithm(args.algo)))
    result = service.optimize_obdd(manager, constraint, items, aggregator)
    _emit(optimization_report(result, _obdd_family(manager, items), aggregator, names))
    return EXIT_OK if result.is_optimal else EXIT_NEGATIVE


def cmd_optimize(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    if args.obdd:
        return _optimize_obdd(args, workspace)
    return _optimize_circuit(args, workspace, Algorithm(args.algo))


def cmd_oracle(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    return _optimize_circuit(args, workspace, Algorithm.BRUTE)


def cmd_gen(args: argparse.Namespace, workspace: WorkspaceService) -> int:
    kind = args.kind
    prefix = args.prefix or kind
    lines: list[str] = []
    if kind in ("hitting-set", "hitting-set-qplus"):
        sets = _parse_sets(_require(args.sets, "--sets"))
        universe = _parse_sets(args.universe)[0] if args.universe else None
        make = gen_hitting_set_linear if kind == "hitting-set" else gen_hitting_set_qplus
        written = workspace.write_reduction(make(sets, universe), args.out_dir, prefix)
    elif kind == "termsat-q":
        terms = _parse_terms(_require(args.terms, "--terms"))
        instance = gen_term_sat_quadratic(terms, args.num_vars)
        written = workspace.write_reduction(instance, args.out_dir, prefix)
    elif kind in ("posneg", "posneg-weights"):
        instance = gen_posneg_cnf(
            _parse_terms(args.pos or ""),
            _parse_terms(args.neg or ""),
            PosNegFlavor(kind),
            Aggregator(kind=AggregatorKind(args.aggregator or "sum")),
            args.num_vars,
        )
        written = workspace.write_reduction(instance, args.out_dir, prefix)
        lines.append(f"threshold {instance.threshold}")
    elif kind == "owa":
        reduction = gen_owa_from_quadratic(workspace.load_base(_require(args.base, "--base")).base)
        written = workspace.write_owa(reduction, args.out_dir, prefix)
        lines += [f"k {reduction.k}", f"offset {reduction.offset}"]
    elif kind == "neglit-elim":
        elimination = eliminate_negative_literals(
            workspace.load_base(_require(args.base, "--base")).base
        )
        written = workspace.write_elimination(elimination, args.out_dir, prefix)
        lines += [f"renamed {var} {copy}" for var, copy in sorted(elimination.renaming.items())]
    else:
        demo = gen_package_demo()
        written = workspace.write_package_demo(demo, args.out_dir, prefix)
        request = [demo.names.name_of(var) for var in sorted(demo.gamma)]
        lines.append(" ".join(["request", *request]))
    _emit([f"wrote {path}" for path in written] + lines)
    return EXIT_OK


def _add_dispatch_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n-cap", type=int, default=N_CAP, help="largest n for FPT routines")
    parser.add_argument("--jobs", type=int, default=JOBS, help="threads for pattern search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nnfopt", description="Optimization over compiled propositional circuits."
    )
    parser.add_argument("--log-level", default=LOG_LEVEL, help="stderr log level")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="size, decomposability and model count")
    check.add_argument("--circuit", required=True)
    check.set_defaults(handler=cmd_check)

    cond = commands.add_parser("condition", help="condition a circuit on a term")
    cond.add_argument("--circuit", required=True)
    cond.add_argument("--term", required=True, help='literals such as "A -B1" or "1 -5"')
    cond.add_argument("--names")
    cond.add_argument("--out")
    cond.set_defaults(handler=cmd_condition)

    cons = commands.add_parser("consistent", help="consistency query")
    cons.add_argument("--circuit", required=True)
    cons.add_argument("--term")
    cons.add_argument("--names")
    cons.set_defaults(handler=cmd_consistent)

    comp = commands.add_parser("compile", help="compile a DIMACS CNF into a DNNF circuit")
    comp.add_argument("--cnf", required=True)
    comp.add_argument("--out")
    comp.set_defaults(handler=cmd_compile)

    classify = commands.add_parser("classify", help="family of a weighted base")
    classify.add_argument("--base", required=True)
    classify.set_defaults(handler=cmd_classify)

    opt = commands.add_parser("optimize", help="optimal model of a circuit under a base")
    opt.add_argument("--circuit")
    opt.add_argument("--base")
    opt.add_argument("--obdd", help="OBDD file; its root is the constraint")
    opt.add_argument("--item", action="append", default=[], help="ID:WEIGHT (with --obdd)")
    opt.add_argument("--aggregator", choices=["sum", "leximax"])
    opt.add_argument("--condition", help="term to condition on")
    opt.add_argument("--algo", choices=[a.value for a in Algorithm], default="auto")
    opt.add_argument("--names")
    _add_dispatch_flags(opt)
    opt.set_defaults(handler=cmd_optimize)

    oracle = commands.add_parser("oracle", help="exhaustive optimum")
    oracle.add_argument("--circuit", required=True)
    oracle.add_argument("--base", required=True)
    oracle.add_argument("--aggregator", choices=["sum", "leximax"])
    oracle.add_argument("--condition")
    oracle.add_argument("--names")
    oracle.add_argument("--max-vars", type=int, default=ORACLE_MAX_VARS)
    _add_dispatch_flags(oracle)
    oracle.set_defaults(handler=cmd_oracle)

    gen = commands.add_parser("gen", help="write a generated instance")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--out-dir", default=".")
    gen.add_argument("--prefix")
    gen.add_argument("--sets", help='two-element sets, e.g. "a,b;b,c"')
    gen.add_argument("--universe", help='elements, e.g. "a,b,c,d"')
    gen.add_argument("--terms", help='2-literal terms, e.g. "1 -2;2 3"')
    gen.add_argument("--pos", help='positive clauses, e.g. "1 2;3"')
    gen.add_argument("--neg", help='negative clauses, e.g. "-1 -2"')
    gen.add_argument("--num-vars", type=int)
    gen.add_argument("--base", help="input weighted base (owa, neglit-elim)")
    gen.add_argument("--aggregator", choices=["sum", "leximax"])
    gen.set_defaults(handler=cmd_gen)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    configure_logging(args.log_level)
    try:
        return int(args.handler(args, WorkspaceService()))
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except IntractableCombinationError as exc:
        print(f"intractable: {exc}", file=sys.stderr)
        return EXIT_INTRACTABLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
