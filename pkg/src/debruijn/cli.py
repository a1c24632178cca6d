"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or spec error,
3 budget refusal.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import os
import sys

from . import anf, census, fsr, graph
from .bench import fit_linear, run_bench
from .bitword import parse_word, word_str
from .generator import (
    PrematureCycleError,
    bits_hex,
    generate,
    stream_bits,
    verify_de_bruijn,
)
from .rules import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    InvalidRuleSpecError,
    RuleSpec,
    successor_rule,
)

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _add_spec_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--spec", help="path to a rule spec JSON file")
    parser.add_argument("--family", help="rule family name")
    parser.add_argument("--n", type=int, help="register order")
    parser.add_argument("--k", type=int, help="shift count for the *-k families")
    parser.add_argument("--ks", help="comma-separated weight thresholds")
    parser.add_argument("--g", help="comma-separated shift counts, one per weight 1..n")
    parser.add_argument(
        "--fsr", help="base register for the jfb family (pcr, psr, csr, table)"
    )
    parser.add_argument("--table", help="truth table file for jfb over explicit tables")


def _spec_from_args(args: argparse.Namespace) -> RuleSpec:
    if args.spec:
        with open(args.spec, encoding="utf-8") as handle:
            return RuleSpec.from_json(json.load(handle))
    if not args.family or args.n is None:
        raise InvalidRuleSpecError(["--family and --n are required without --spec"])
    params: dict = {}
    if args.k is not None:
        params["k"] = args.k
    if args.ks:
        params["ks"] = [int(x) for x in args.ks.split(",")]
    if args.g:
        params["g"] = [int(x) for x in args.g.split(",")]
    if args.fsr:
        params["fsr"] = args.fsr
        if args.table:
            with open(args.table, encoding="utf-8") as handle:
                params["table_hex"] = handle.read()
    return RuleSpec(args.n, args.family, params)


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    rule = successor_rule(spec)
    start = parse_word(args.start) if args.start else None
    if args.bits is not None:
        bits = tuple(itertools.islice(stream_bits(rule, start), args.bits))
    else:
        bits = generate(rule, start).bits
    text = bits_hex(bits) if args.format == "hex" else word_str(bits)
    _write_output(text + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if args.file:
        with open(args.file, encoding="utf-8") as handle:
            raw = handle.read()
    else:
        raw = sys.stdin.read()
    bits = parse_word(raw)
    if verify_de_bruijn(bits, args.n):
        print(f"ok: every {args.n}-bit window occurs exactly once")
        return EXIT_OK
    print(f"not a de Bruijn sequence of order {args.n}", file=sys.stderr)
    return EXIT_VERIFY


def _cmd_tree(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    tree = graph.induced_tree(spec)
    if args.format == "json":
        text = json.dumps(graph.to_json_dict(tree), indent=2) + "\n"
    else:
        text = graph.to_dot(tree)
    _write_output(text, args.out)
    return EXIT_OK


def _cmd_graph(args: argparse.Namespace) -> int:
    if args.fsr == "table":
        if not args.table:
            raise InvalidRuleSpecError(["--table is required with --fsr table"])
        with open(args.table, encoding="utf-8") as handle:
            f = fsr.parse_table_text(args.n, handle.read())
    else:
        f = fsr.FeedbackFunction(args.n, args.fsr)
    g = graph.adjacency_graph(f)
    if args.format == "json":
        text = json.dumps(graph.to_json_dict(g), indent=2) + "\n"
    else:
        text = graph.to_dot(g)
    _write_output(text, args.out)
    return EXIT_OK


def _cmd_anf(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    feedback = anf.rule_feedback(spec)
    table = anf.TruthTable(feedback.n, feedback.table)
    poly = anf.to_anf(table)
    lines = [
        f"feedback table (hex): {fsr.table_hex(feedback)}",
        f"anf: {anf.anf_str(poly)}",
    ]
    _write_output("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _census_budget(args: argparse.Namespace) -> int:
    if args.budget is not None:
        return args.budget
    env = os.environ.get("DEBRUIJN_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _cmd_census(args: argparse.Namespace) -> int:
    families = (
        sorted(census.CENSUS_FAMILIES) if args.family == "all" else [args.family]
    )
    budget = _census_budget(args)
    reports = [
        census.run_census(fam, args.n, budget=budget, jobs=args.jobs)
        for fam in families
    ]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for report in reports:
            print(census.format_report(report))
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=list(reports[0].to_json()))
            writer.writeheader()
            for report in reports:
                writer.writerow(report.to_json())
    if args.plot:
        from .plotting import save_census_figure

        save_census_figure(reports, args.plot)
    return EXIT_OK if all(r.match for r in reports) else EXIT_VERIFY


def _parse_orders(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def _cmd_bench(args: argparse.Namespace) -> int:
    params = {"k": args.k} if args.k is not None else {}
    points = run_bench(
        args.family, _parse_orders(args.orders), args.bits, params, args.repeats
    )
    intercept, slope, residual = fit_linear(
        [float(p.n) for p in points], [p.ns_per_bit for p in points]
    )
    for point in points:
        print(f"n={point.n:<3} bits={point.bits:<9} {point.ns_per_bit:10.1f} ns/bit")
    print(
        f"linear fit: {intercept:.1f} + {slope:.2f}*n ns/bit, "
        f"relative residual {residual:.1%}"
    )
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=["n", "bits", "ns_per_bit"])
            writer.writeheader()
            for point in points:
                writer.writerow(point.to_json())
    if args.plot:
        from .plotting import save_bench_figure

        save_bench_figure(points, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="debruijn",
        description="Generate and analyze de Bruijn sequences built from "
        "successor rules over cycling and summing registers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a sequence")
    _add_spec_arguments(p_gen)
    p_gen.add_argument("--start", help="start state (default all zeros)")
    p_gen.add_argument("--bits", type=int, help="stream only this many bits")
    p_gen.add_argument("--format", choices=["bits", "hex"], default="bits")
    p_gen.add_argument("--out", help="write to a file instead of stdout")
    p_gen.set_defaults(handler=_cmd_gen)

    p_verify = sub.add_parser("verify", help="check the de Bruijn property")
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--file", help="sequence file (default stdin)")
    p_verify.set_defaults(handler=_cmd_verify)

    p_tree = sub.add_parser("tree", help="spanning tree induced by a rule")
    _add_spec_arguments(p_tree)
    p_tree.add_argument("--format", choices=["dot", "json"], default="dot")
    p_tree.add_argument("--out")
    p_tree.set_defaults(handler=_cmd_tree)

    p_graph = sub.add_parser("graph", help="cycle adjacency graph of a register")
    p_graph.add_argument("--fsr", choices=["pcr", "psr", "csr", "table"], required=True)
    p_graph.add_argument("--n", type=int, required=True)
    p_graph.add_argument("--table", help="truth table file for --fsr table")
    p_graph.add_argument("--format", choices=["dot", "json"], default="dot")
    p_graph.add_argument("--out")
    p_graph.set_defaults(handler=_cmd_graph)

    p_anf = sub.add_parser("anf", help="explicit feedback function of a rule")
    _add_spec_arguments(p_anf)
    p_anf.add_argument("--out")
    p_anf.set_defaults(handler=_cmd_anf)

    p_census = sub.add_parser("census", help="enumerate a family and count outcomes")
    p_census.add_argument("--family", required=True, help="census family or 'all'")
    p_census.add_argument("--n", type=int, required=True)
    p_census.add_argument("--budget", type=int, help="override the enumeration budget")
    p_census.add_argument("--jobs", type=int, default=1)
    p_census.add_argument("--json", action="store_true", help="print JSON reports")
    p_census.add_argument("--csv", help="also write the reports as CSV")
    p_census.add_argument("--plot", help="also render a PNG figure")
    p_census.set_defaults(handler=_cmd_census)

    p_bench = sub.add_parser("bench", help="measure streaming cost per bit")
    p_bench.add_argument("--family", default="pcr-lz-k")
    p_bench.add_argument("--k", type=int, default=1)
    p_bench.add_argument("--orders", default="8..24", help="range like 8..24 or a list")
    p_bench.add_argument("--bits", type=int, default=100_000)
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--csv")
    p_bench.add_argument("--plot")
    p_bench.set_defaults(handler=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except BudgetExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidRuleSpecError as exc:
        print(f"invalid rule spec: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrematureCycleError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except graph.TreeStructureError as exc:
        print(f"not a spanning tree: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
