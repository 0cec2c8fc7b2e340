import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from edge_powers import __version__
from edge_powers.betti import betti_table
from edge_powers.cache import CacheManager
from edge_powers.checks import get_check
from edge_powers.config import Config, SizeCapError
from edge_powers.corpus import corpus_document, corpus_summary, load_corpus
from edge_powers.generators import (
    GenerationBudgetExhausted,
    gen_cameron_walker,
    gen_random_forest,
    gen_random_graph,
)
from edge_powers.graph import Graph, GraphFormatError, load_graph
from edge_powers.ideals import ZeroIdealError, ideal_to_json, squarefree_power
from edge_powers.logging_config import setup_logging
from edge_powers.matchings import maximum_admissable_matching
from edge_powers.report import (
    analyze,
    render_aim,
    render_analysis,
    render_betti,
    render_fuzz,
    render_verdicts,
    write_json,
)
from edge_powers.verify import FuzzConfig, check_all, fuzz

logger = logging.getLogger(__name__)

EXIT_FAILURE = 1
EXIT_USAGE = 2


class CLIError(Exception):
    """Raised when the CLI encounters an error that should exit."""

    def __init__(self, message: str, exit_code: int = EXIT_FAILURE):
        super().__init__(message)
        self.exit_code = exit_code


def _config(args: argparse.Namespace) -> Config:
    try:
        return Config(field=getattr(args, "field", None), workers=getattr(args, "workers", None))
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc


def _cache(args: argparse.Namespace, config: Config) -> Optional[CacheManager]:
    return CacheManager(config.cache_path) if getattr(args, "cache", False) else None


def _graph(args: argparse.Namespace) -> Graph:
    """Loads the graph named by ``--input`` or ``--corpus``."""
    try:
        if args.input:
            return load_graph(args.input, strict=args.strict)
        if args.corpus:
            return load_corpus(args.corpus)
    except GraphFormatError as exc:
        raise CLIError(f"Invalid graph: {exc}", EXIT_USAGE) from exc
    except OSError as exc:
        raise CLIError(f"Cannot read {args.input}: {exc}", EXIT_USAGE) from exc
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc
    raise CLIError("One of --input or --corpus is required", EXIT_USAGE)


def _emit(args: argparse.Namespace, payload: Dict[str, Any], text: str) -> None:
    """Prints the text view unless JSON goes to stdout; writes JSON if requested."""
    target = getattr(args, "json", None)
    if target != "-":
        print(text)
    if target:
        write_json(payload, target, with_meta=args.with_meta)


def cmd_analyze(args: argparse.Namespace) -> int:
    config = _config(args)
    graph = _graph(args)
    ks = [args.k] if args.k is not None else None
    analysis = analyze(graph, ks, config.field, config, _cache(args, config), config.workers)
    _emit(args, analysis.to_json(), render_analysis(analysis))
    return 0


def cmd_betti(args: argparse.Namespace) -> int:
    config = _config(args)
    graph = _graph(args)
    if graph.n > config.betti_vertex_cap:
        raise SizeCapError(
            f"Betti tables are capped at {config.betti_vertex_cap} vertices, graph has {graph.n}"
        )
    ideal = squarefree_power(graph, args.k)
    table = betti_table(ideal, config.field, workers=config.workers, cache=_cache(args, config))
    payload = {"k": args.k, "ideal": ideal_to_json(ideal), "betti": table.to_json()}
    _emit(args, payload, render_betti(table, args.k))
    return 0


def cmd_aim(args: argparse.Namespace) -> int:
    config = _config(args)
    graph = _graph(args)
    if graph.n > config.matching_vertex_cap:
        raise SizeCapError(
            f"Matching invariants are capped at {config.matching_vertex_cap} vertices, "
            f"graph has {graph.n}"
        )
    witness = maximum_admissable_matching(graph, args.k)
    payload = {
        "k": args.k,
        "aim": 0 if witness is None else len(witness.matching),
        "witness": None if witness is None else witness.to_json(graph),
    }
    _emit(args, payload, render_aim(graph, args.k, witness))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    graph = _graph(args)
    verdicts = check_all(
        graph, args.statement, args.k, config.field, config, args.seed,
        _cache(args, config), config.workers,
    )
    failures = [v for v in verdicts if v.failed and not _informational(v.statement)]
    payload = {
        "graph": graph.to_json(),
        "field": config.field.name,
        "failures": len(failures),
        "verdicts": [v.to_json() for v in verdicts],
    }
    _emit(args, payload, render_verdicts(verdicts))
    return EXIT_FAILURE if failures else 0


def _informational(statement: str) -> bool:
    return get_check(statement).informational


def cmd_fuzz(args: argparse.Namespace) -> int:
    config = _config(args)
    cfg = FuzzConfig(
        n_max=args.n_max,
        trials=args.trials,
        seed=args.seed,
        field=config.field.name,
        statements=tuple(args.statement or ()),
        family=args.family,
        exhaustive=args.exhaustive,
        workers=config.workers,
        instance_timeout=args.instance_timeout,
    )
    report = fuzz(cfg, config)
    _emit(args, report.to_json(), render_fuzz(report))
    return 0 if report.ok else EXIT_FAILURE


def cmd_gen(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.kind == "forest":
        graph = gen_random_forest(args.n, args.seed)
    elif args.kind == "graph":
        graph = gen_random_graph(args.n, args.p, args.seed)
    else:
        graph = gen_cameron_walker(args.m, args.seed, config.cameron_walker_attempts)
    _emit(args, graph.to_json(), graph.to_edge_list().rstrip("\n"))
    return 0


def cmd_corpus(args: argparse.Namespace) -> int:
    if args.action == "list":
        rows = corpus_summary()
        payload = {"corpus": [{"name": n, "vertices": v, "edges": e} for n, v, e in rows]}
        text = "\n".join(f"{n:<22} {v:>3} vertices {e:>3} edges" for n, v, e in rows)
        _emit(args, payload, text)
        return 0
    if not args.name:
        raise CLIError("corpus show needs a graph name", EXIT_USAGE)
    try:
        graph = load_corpus(args.name)
        document = corpus_document(args.name)
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc
    _emit(args, graph.to_json(), document.rstrip("\n"))
    return 0


def _add_input(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--input", type=str, help="Graph file (edge list, or .json)")
    source.add_argument("--corpus", type=str, help="Built-in graph name (see 'corpus list')")
    parser.add_argument("--strict", action="store_true", help="Reject edges whose endpoints were not declared")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--field", type=str, help="Coefficient field: q, f2 or fp:<p> (default: q)")
    parser.add_argument("--json", type=str, metavar="PATH", help="Write the JSON report to PATH ('-' for stdout)")
    parser.add_argument("--with-meta", action="store_true", help="Add a meta block (timestamp, version) to JSON")
    parser.add_argument("--cache", action="store_true", help="Reuse cached Betti tables")
    parser.add_argument("--workers", type=int, help="Parallel workers (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edge-powers",
        description="Matching invariants and Betti numbers of squarefree powers of edge ideals",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    analyze_parser = subparsers.add_parser("analyze", help="Matching invariants and regularity of every power")
    _add_input(analyze_parser)
    _add_common(analyze_parser)
    analyze_parser.add_argument("--k", type=int, help="Only this power (default: 1..mat)")
    analyze_parser.set_defaults(handler=cmd_analyze)

    betti_parser = subparsers.add_parser("betti", help="Betti table of one squarefree power")
    _add_input(betti_parser)
    _add_common(betti_parser)
    betti_parser.add_argument("--k", type=int, default=1, help="Power (default: 1)")
    betti_parser.set_defaults(handler=cmd_betti)

    aim_parser = subparsers.add_parser("aim", help="k-admissable matching number with a witness")
    _add_input(aim_parser)
    _add_common(aim_parser)
    aim_parser.add_argument("--k", type=int, default=1, help="Admissability parameter (default: 1)")
    aim_parser.set_defaults(handler=cmd_aim)

    verify_parser = subparsers.add_parser("verify", help="Check statements on one graph")
    _add_input(verify_parser)
    _add_common(verify_parser)
    verify_parser.add_argument("--k", type=int, help="Only this power (default: every applicable k)")
    verify_parser.add_argument("--statement", action="append", help="Statement id (repeatable; default: all)")
    verify_parser.add_argument("--seed", type=int, help="Seed recorded in reproducers")
    verify_parser.set_defaults(handler=cmd_verify)

    fuzz_parser = subparsers.add_parser("fuzz", help="Check statements on seeded random graphs")
    _add_common(fuzz_parser)
    fuzz_parser.add_argument("--n-max", type=int, default=10, help="Largest vertex count (default: 10)")
    fuzz_parser.add_argument("--trials", type=int, default=200, help="Random instances (default: 200)")
    fuzz_parser.add_argument("--seed", type=int, default=0, help="Base seed (default: 0)")
    fuzz_parser.add_argument("--statement", action="append", help="Statement id (repeatable; default: all)")
    fuzz_parser.add_argument("--family", choices=["forest", "graph"], default="forest", help="Graph family")
    fuzz_parser.add_argument("--exhaustive", action="store_true", help="Every forest up to isomorphism instead")
    fuzz_parser.add_argument(
        "--instance-timeout", type=float, metavar="SECONDS",
        help="Record statements still running after SECONDS on one instance as timed out",
    )
    fuzz_parser.set_defaults(handler=cmd_fuzz)

    gen_parser = subparsers.add_parser("gen", help="Generate a graph")
    gen_parser.add_argument("kind", choices=["forest", "cameron-walker", "graph"])
    gen_parser.add_argument("--n", type=int, default=8, help="Vertices for forest/graph (default: 8)")
    gen_parser.add_argument("--m", type=int, default=2, help="Matching number for cameron-walker (default: 2)")
    gen_parser.add_argument("--p", type=float, default=0.3, help="Edge probability for graph (default: 0.3)")
    gen_parser.add_argument("--seed", type=int, default=0, help="Seed (default: 0)")
    gen_parser.add_argument("--json", type=str, metavar="PATH", help="Write the JSON graph to PATH ('-' for stdout)")
    gen_parser.add_argument("--with-meta", action="store_true", help=argparse.SUPPRESS)
    gen_parser.set_defaults(handler=cmd_gen)

    corpus_parser = subparsers.add_parser("corpus", help="Built-in example graphs")
    corpus_parser.add_argument("action", choices=["list", "show"])
    corpus_parser.add_argument("name", nargs="?", help="Graph name for 'show'")
    corpus_parser.add_argument("--json", type=str, metavar="PATH", help="Write JSON to PATH ('-' for stdout)")
    corpus_parser.add_argument("--with-meta", action="store_true", help=argparse.SUPPRESS)
    corpus_parser.set_defaults(handler=cmd_corpus)

    return parser


def main_logic(args: argparse.Namespace) -> int:
    """
    Runs the selected command.

    Returns:
        The exit status: 0 on success, 1 when a checked statement fails.

    Raises:
        CLIError: On invalid input, oversized instances or fatal errors.
    """
    try:
        return int(args.handler(args))
    except CLIError:
        raise
    except (SizeCapError, ZeroIdealError) as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc
    except GenerationBudgetExhausted as exc:
        raise CLIError(str(exc)) from exc
    except ValueError as exc:
        raise CLIError(str(exc), EXIT_USAGE) from exc
    except Exception as exc:
        logger.exception(f"{args.command} failed")
        raise CLIError(str(exc)) from exc


def run(argv: Optional[List[str]] = None) -> int:
    """Parses ``argv`` and runs the command; returns the exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    setup_logging()
    try:
        return main_logic(args)
    except CLIError as exc:
        print(json.dumps({"error": str(exc)}))
        return exc.exit_code


def main() -> None:
    """Entry point for the CLI."""
    sys.exit(run())


if __name__ == "__main__":
    main()
