"""ctxkit: where does an empirical model sit in the contextuality hierarchy?

Commands:
    analyze   SOURCE [options]          classify a model (or bare graph) and report
    scenario  build|export-graph SOURCE emit scenario JSON, or DIMACS + vertex map
    verify    SUITE [options]           run a verification suite, report pass/fail
    help                                full reference (llms.txt)

Sources:
    --catalog NAME            bell_table, pr_box, hardy, ghz, cs_state, file:PATH
    --model FILE              scenario + model JSON            (analyze)
    --stabilizer n=N d=D      stabilizer scenario, with --state (analyze, scenario)
    --dimacs FILE             bare graph invariants            (analyze)
    --scenario FILE           scenario (or model) JSON         (scenario, verify)

Output rules:
    analyze   → JSON report by default; --format text prints one "key value" line per field
    scenario  → scenario JSON or DIMACS on stdout, or to --out; export-graph writes the
                vertex map to --map
    verify    → JSON result; exit 1 when the suite fails

Exit codes: 0 done, 1 verification failed, 2 invalid input, 3 cap exceeded.
Every number in a report is an integer or an exact "num/den" string.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

from ctxkit.config import Limits
from ctxkit.exceptions import (
    CapExceededError,
    CtxkitError,
    DomainError,
    ParseError,
    SignallingError,
)

from . import commands, formats
from .request import RequestError, build_request
from .suites import SUITES, SuiteOptions, run_suite


# ----------------------------- output ---------------------------------------


def _write(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as f:
        f.write(text)


def _emit(data: Dict[str, Any], fmt: str, out: Optional[str]) -> None:
    if fmt == "text":
        _write(formats.format_key_value_pairs(data) + "\n", out)
    else:
        _write(formats.to_json(data), out)


def _limits(args) -> Limits:
    return Limits.from_env().override(
        vertices=args.cap_vertices,
        hidden_variables=args.cap_hv,
        protocols=args.cap_protocols,
        phase_space=args.cap_phase_space,
        threads=args.threads,
    )


# ----------------------------- commands -------------------------------------


def cmd_analyze(args):
    request = build_request(
        catalog=args.catalog, model=args.model, stabilizer=args.stabilizer,
        dimacs=args.dimacs, state=args.state, csw=args.csw, limits=_limits(args),
        full_scan=args.full_scan, lp=not args.no_lp, protocols=args.protocols,
        out=args.out)
    result = commands.do_analyze(request)
    _emit(result, args.format, request.out)


def cmd_scenario(args):
    scenario = commands.load_scenario(catalog=args.catalog, stabilizer=args.stabilizer,
                                      scenario=args.scenario, limits=_limits(args))
    if args.action == "build":
        _write(formats.to_json(commands.do_scenario_build(scenario)), args.out)
        return
    dimacs, vertex_map = commands.do_export_graph(scenario)
    _write(dimacs, args.out)
    if args.map is not None:
        _write(formats.to_json(vertex_map), args.map)


def cmd_verify(args):
    limits = _limits(args)
    scenarios = ()
    if args.scenario is not None or args.catalog is not None:
        scenarios = (commands.load_scenario(catalog=args.catalog, scenario=args.scenario,
                                            limits=limits),)
    if args.random < 0:
        raise RequestError(f"--random must be nonnegative, got {args.random}")
    options = SuiteOptions(limits=limits, n=args.n, d=args.d, scenarios=scenarios,
                           random_count=args.random, seed=args.seed,
                           max_measurements=args.max_measurements)
    result = run_suite(args.suite, options)
    _emit(result, args.format, args.out)
    if not result["passed"]:
        sys.exit(1)


def _find_llms_txt() -> Path:
    for parent in Path(__file__).resolve().parents:
        candidate = parent / "llms.txt"
        if candidate.is_file():
            return candidate
    raise FileNotFoundError("llms.txt not found")


def cmd_help(_args=None):
    sys.stdout.write(_find_llms_txt().read_text())


# ----------------------------- main -----------------------------------------


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctxkit",
        description="Contextuality hierarchy via exclusivity-graph invariants.",
        add_help=False,
    )
    parser.add_argument("-h", "--help", action="store_true", dest="show_help",
                        help="show full reference and exit")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for debug)")
    sub = parser.add_subparsers(dest="command", required=False)

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--cap-vertices", type=int, default=None,
                      help="largest graph the independence solver accepts")
    caps.add_argument("--cap-hv", type=int, default=None,
                      help="most canonical hidden variables for the LPs (env CTXKIT_CAP_HV)")
    caps.add_argument("--cap-protocols", type=int, default=None,
                      help="most measurement protocols to enumerate")
    caps.add_argument("--cap-phase-space", type=int, default=None,
                      help="largest phase space d^(2n) for stabilizer scenarios")
    caps.add_argument("--threads", type=int, default=None,
                      help="worker threads for minimal-independence scans (env CTXKIT_THREADS)")

    def add_format(p, default):
        p.add_argument("--format", choices=["text", "json"], default=default,
                       help=f"output format (default: {default})")

    p_an = sub.add_parser("analyze", parents=[caps], help="classify a model and report")
    source = p_an.add_mutually_exclusive_group(required=True)
    source.add_argument("--catalog", metavar="NAME")
    source.add_argument("--model", metavar="FILE")
    source.add_argument("--stabilizer", nargs=2, metavar=("n=N", "d=D"))
    source.add_argument("--dimacs", metavar="FILE")
    p_an.add_argument("--state", default=None,
                      help="zero, maximally_mixed (default), cs, or an amplitude file")
    p_an.add_argument("--csw", metavar="NAME|FILE", default=None,
                      help="'chsh' or a weights JSON file")
    p_an.add_argument("--full-scan", action="store_true",
                      help="always compute the exact minimal independence number")
    p_an.add_argument("--no-lp", action="store_true",
                      help="skip the hidden-variable LPs")
    p_an.add_argument("--protocols", action="store_true",
                      help="also compare the protocol hypergraph with the exclusivity graph")
    p_an.add_argument("--out", metavar="FILE", default=None)
    add_format(p_an, "json")
    p_an.set_defaults(func=cmd_analyze)

    p_sc = sub.add_parser("scenario", parents=[caps], help="build or export a scenario")
    p_sc.add_argument("action", choices=["build", "export-graph"])
    p_sc.add_argument("--catalog", metavar="NAME")
    p_sc.add_argument("--stabilizer", nargs=2, metavar=("n=N", "d=D"))
    p_sc.add_argument("--scenario", metavar="FILE")
    p_sc.add_argument("--out", metavar="FILE", default=None)
    p_sc.add_argument("--map", metavar="FILE", default=None,
                      help="vertex map JSON for export-graph")
    p_sc.set_defaults(func=cmd_scenario)

    p_ve = sub.add_parser("verify", parents=[caps], help="run a verification suite")
    p_ve.add_argument("suite", choices=list(SUITES))
    p_ve.add_argument("--n", type=int, default=2, help="qubits/qudits (appendixB, orthogonality)")
    p_ve.add_argument("--d", type=int, default=2, help="qudit dimension (orthogonality)")
    p_ve.add_argument("--scenario", metavar="FILE", default=None)
    p_ve.add_argument("--catalog", metavar="NAME", default=None)
    p_ve.add_argument("--random", type=int, default=0, metavar="K",
                      help="also check K random scenarios")
    p_ve.add_argument("--seed", type=int, default=0)
    p_ve.add_argument("--max-measurements", type=int, default=3)
    p_ve.add_argument("--out", metavar="FILE", default=None)
    add_format(p_ve, "json")
    p_ve.set_defaults(func=cmd_verify)

    p_help = sub.add_parser("help", help="show full reference and exit")
    p_help.set_defaults(func=lambda _a: cmd_help())
    return parser


def main(argv: Optional[Sequence[str]] = None):
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.show_help or args.command is None:
        cmd_help()
        return

    _configure_logging(args.verbose)
    try:
        args.func(args)
    except CapExceededError as e:
        print(f"cap exceeded: {e}", file=sys.stderr)
        sys.exit(3)
    except ParseError as e:
        where = e.source or "input"
        if e.line is not None:
            where = f"{where}:{e.line}"
        print(f"error: {where}: {e}", file=sys.stderr)
        sys.exit(2)
    except (RequestError, DomainError, SignallingError) as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(2)
    except CtxkitError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
