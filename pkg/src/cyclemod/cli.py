"""Command-line front end: graph generation, cycle-oracle queries, exact
extremal values, full pipeline runs, witness verification, and the batch
acceptance suites.

Exit codes are a stable contract:
  0  success / witness found / all checks passed
  1  authoritative absence / verification or check failures
  2  usage errors, malformed input files, unsupported parameters
  3  oracle budget exhausted before an authoritative answer
  4  a pipeline stage failed (named in the report)
  5  a guarantee-mode precondition was violated
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, TextIO

from .acceptance import SUITES
from .errors import (
    CycleModError,
    EmptyGraph,
    InvalidChord,
    InvalidEdge,
    InvalidInput,
    InvalidVertex,
    NotPrime,
    ParseError,
    PreconditionViolation,
    StageFailure,
    TooLarge,
    WrongParity,
)
from .extremal import d_bounds, d_exact, lower_bound_for_c
from .graphs import (
    Graph,
    disjoint_union,
    edge_list_text,
    gen_clique_blocks,
    gen_complete_bipartite,
    gen_projective_incidence,
    load_edge_list,
    save_edge_list,
)
from .oracle import (
    DEFAULT_BUDGET,
    CycleWitness,
    ResidueQuery,
    contains_cycle_of_length,
    cycle_lengths,
    has_cycle_mod,
    verify_witness,
)
from .pipeline import MODE_BEST_EFFORT, MODE_GUARANTEE, TheoremInput, frac_str, run_to_report
from .theta import gen_theta

USAGE_ERRORS = (
    InvalidInput,
    InvalidEdge,
    InvalidVertex,
    InvalidChord,
    NotPrime,
    TooLarge,
    WrongParity,
    ParseError,
    EmptyGraph,
)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational NUM/DEN: {text!r}")


def _chord(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"chord must be I,J: {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"chord must be two integers: {text!r}")


def _vertex_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vertex list: {text!r}")


def _emit(payload: dict[str, Any], fmt: str, text_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclemod",
        description="Cycles of consecutive even lengths in dense graphs "
        "avoiding one cycle length: generators, oracles, exact extremal "
        "values, and the constructive pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a generator graph as an edge list")
    gen_sub = gen.add_subparsers(dest="kind", required=True)

    g_kab = gen_sub.add_parser("complete-bipartite")
    g_kab.add_argument("--a", type=int, required=True)
    g_kab.add_argument("--b", type=int, required=True)

    g_blocks = gen_sub.add_parser("clique-blocks")
    g_blocks.add_argument("--q", type=int, required=True, help="vertices per block")
    g_blocks.add_argument("--t", type=int, required=True, help="number of blocks")

    g_theta = gen_sub.add_parser("theta")
    g_theta.add_argument("--length", type=int, required=True, help="cycle length")
    g_theta.add_argument("--chord", type=_chord, required=True, metavar="I,J")

    g_proj = gen_sub.add_parser("projective")
    g_proj.add_argument("--p", type=int, required=True, help="prime plane order")

    g_union = gen_sub.add_parser("union")
    g_union.add_argument("inputs", nargs="+", help="edge-list files to combine")
    g_union.add_argument("--isolated", type=int, default=0)

    for p in (g_kab, g_blocks, g_theta, g_proj, g_union):
        p.add_argument("-o", "--output", help="edge-list path (default stdout)")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.set_defaults(func=cmd_gen)

    oracle = sub.add_parser("oracle", help="cycle spectrum and residue queries")
    oracle.add_argument("file", help="edge-list input")
    oracle.add_argument("--length", type=int, help="search one exact cycle length")
    oracle.add_argument("--mod", type=int, help="residue to search for (with --k)")
    oracle.add_argument("--k", type=int, help="modulus for --mod")
    oracle.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    oracle.add_argument("--format", choices=("json", "text"), default="text")
    oracle.set_defaults(func=cmd_oracle)

    extremal = sub.add_parser("extremal", help="exact extremal average degrees")
    extremal.add_argument("--k", type=int, required=True)
    extremal.add_argument("--ell", type=int, required=True)
    group = extremal.add_mutually_exclusive_group()
    group.add_argument(
        "--bounds", action="store_true", help="bracket instead of exact search"
    )
    group.add_argument(
        "--chain-bound",
        action="store_true",
        help="density bound plus chained-blocks construction",
    )
    extremal.add_argument("--blocks", type=int, default=3, help="copies in the chain")
    extremal.add_argument("-o", "--output", help="write the witness/construction here")
    extremal.add_argument("--format", choices=("json", "text"), default="text")
    extremal.set_defaults(func=cmd_extremal)

    pipe = sub.add_parser("pipeline", help="run the full constructive pipeline")
    pipe.add_argument("file", help="edge-list input")
    pipe.add_argument("--k", type=int, required=True)
    pipe.add_argument("--ell", type=int, required=True)
    pipe.add_argument("--d-value", type=_rational, metavar="NUM/DEN")
    pipe.add_argument(
        "--mode",
        choices=(MODE_GUARANTEE, MODE_BEST_EFFORT),
        default=MODE_BEST_EFFORT,
    )
    pipe.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    pipe.add_argument(
        "--threads",
        type=int,
        default=1,
        help="accepted for compatibility; runs are deterministic regardless",
    )
    pipe.add_argument("--format", choices=("json", "text"), default="json")
    pipe.set_defaults(func=cmd_pipeline)

    verify = sub.add_parser("verify", help="check witnesses against a graph")
    verify.add_argument("file", help="edge-list input")
    vgroup = verify.add_mutually_exclusive_group(required=True)
    vgroup.add_argument("--witness", type=_vertex_list, metavar="V0,V1,...")
    vgroup.add_argument("--report", help="pipeline JSON report to re-verify")
    verify.add_argument("--format", choices=("json", "text"), default="text")
    verify.set_defaults(func=cmd_verify)

    accept = sub.add_parser("accept", help="run an acceptance suite")
    accept.add_argument("suite", choices=sorted(SUITES))
    accept.add_argument("--max-n", type=int)
    accept.add_argument("--max-k", type=int)
    accept.add_argument("--p", type=int)
    accept.add_argument("--k", type=int)
    accept.add_argument("--ell", type=int)
    accept.add_argument("--samples", type=int)
    accept.add_argument("--seed", type=int, default=0)
    accept.add_argument("--format", choices=("json", "text"), default="text")
    accept.set_defaults(func=cmd_accept)

    return parser


def _build_generated(args: argparse.Namespace) -> tuple[Graph, dict[str, str]]:
    if args.kind == "complete-bipartite":
        g = gen_complete_bipartite(args.a, args.b)
        meta = {"generator": f"complete-bipartite a={args.a} b={args.b}"}
        if min(args.a, args.b) >= 2:
            meta["girth"] = "4"
        return g, meta
    if args.kind == "clique-blocks":
        g = gen_clique_blocks(args.q, args.t)
        meta = {"generator": f"clique-blocks q={args.q} t={args.t}"}
        if args.q >= 3:
            meta["girth"] = "3"
        return g, meta
    if args.kind == "theta":
        theta = gen_theta(args.length, args.chord)
        return theta.underlying_graph, {
            "generator": f"theta length={args.length} chord={args.chord[0]},{args.chord[1]}"
        }
    if args.kind == "projective":
        g = gen_projective_incidence(args.p)
        return g, {"generator": f"projective-incidence p={args.p}", "girth": "6"}
    graphs = [load_edge_list(path)[0] for path in args.inputs]
    g = disjoint_union(graphs, args.isolated)
    return g, {"generator": f"union of {len(graphs)} graphs + {args.isolated} isolated"}


def cmd_gen(args: argparse.Namespace) -> int:
    g, metadata = _build_generated(args)
    if args.output:
        save_edge_list(g, args.output, metadata)
    else:
        sys.stdout.write(edge_list_text(g, metadata))
    avg = frac_str(g.average_degree) if g.n else "0/1"
    stats = {"n": g.n, "m": g.m, "avg": avg, "output": args.output}
    line = f"n={g.n} m={g.m} avg={avg}"
    if args.output:
        _emit(stats, args.format, [f"{line} -> {args.output}"])
    elif args.format == "json":
        print(json.dumps(stats, indent=2), file=sys.stderr)
    else:
        print(line, file=sys.stderr)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    g, _ = load_edge_list(args.file)
    if args.mod is not None and args.k is None:
        raise InvalidInput("--mod needs --k (the modulus)")
    if args.length is not None and args.mod is not None:
        raise InvalidInput("give either --length or --mod, not both")

    if args.length is not None:
        res = contains_cycle_of_length(g, args.length, budget=args.budget)
        query = f"length {args.length}"
    elif args.mod is not None:
        res = has_cycle_mod(g, ResidueQuery(args.mod, args.k), budget=args.budget)
        query = f"length {args.mod % args.k} mod {args.k}"
    else:
        spectrum = cycle_lengths(g, budget=args.budget)
        payload = {
            "query": "spectrum",
            "lengths": sorted(spectrum.lengths),
            "exhaustive": spectrum.exhaustive,
        }
        _emit(
            payload,
            args.format,
            [
                f"cycle lengths: {sorted(spectrum.lengths)}",
                f"exhaustive: {spectrum.exhaustive}",
            ],
        )
        return 0 if spectrum.exhaustive else 3

    payload = {
        "query": query,
        "found": res.witness is not None,
        "witness": list(res.witness.vertices) if res.witness else None,
        "exhaustive": res.exhaustive,
    }
    if res.witness is not None:
        _emit(payload, args.format, [f"found {query}: {list(res.witness.vertices)}"])
        return 0
    if res.exhaustive:
        _emit(payload, args.format, [f"no cycle of {query} (exhaustive)"])
        return 1
    _emit(payload, args.format, [f"no cycle of {query} found within budget"])
    return 3


def cmd_extremal(args: argparse.Namespace) -> int:
    if args.chain_bound:
        bound, construction = lower_bound_for_c(args.k, args.ell, args.blocks)
        if args.output:
            save_edge_list(
                construction,
                args.output,
                {"generator": f"chained extremal blocks k={args.k} ell={args.ell}"},
            )
        payload = {
            "k": args.k,
            "ell": args.ell,
            "bound": frac_str(bound),
            "construction": {"n": construction.n, "m": construction.m},
            "output": args.output,
        }
        _emit(
            payload,
            args.format,
            [
                f"density bound for forcing length {args.ell} mod {args.k}: "
                f"{frac_str(bound)}",
                f"construction: n={construction.n} m={construction.m}",
            ],
        )
        return 0
    record = d_bounds(args.k, args.ell) if args.bounds else d_exact(args.k, args.ell)
    witness_edges = list(record.witness.edges()) if record.witness else []
    if args.output and record.witness is not None:
        save_edge_list(
            record.witness,
            args.output,
            {"generator": f"extremal witness k={args.k} ell={args.ell}"},
        )
    payload = {
        "k": record.k,
        "ell": record.ell,
        "provenance": record.provenance,
        "value": frac_str(record.value) if record.value is not None else None,
        "bounds": [frac_str(b) for b in record.bounds] if record.bounds else None,
        "partA": record.part_a,
        "witnessEdges": [[u, v] for u, v in witness_edges],
        "output": args.output,
    }
    lines = [f"d_{record.k}({record.ell}):"]
    if record.value is not None:
        lines[0] += f" {frac_str(record.value)} ({record.provenance})"
    else:
        assert record.bounds is not None
        lines[0] += (
            f" in [{frac_str(record.bounds[0])}, {frac_str(record.bounds[1])}]"
            f" ({record.provenance})"
        )
    lines.append(f"witness: part sizes {record.part_a} | edges {witness_edges}")
    _emit(payload, args.format, lines)
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    g, metadata = load_edge_list(args.file)
    provenance = f"girth: {metadata['girth']}" if "girth" in metadata else None
    inp = TheoremInput(
        graph=g,
        k=args.k,
        ell=args.ell,
        d_value=args.d_value,
        mode=args.mode,
        cl_free_provenance=provenance,
        budget=args.budget,
    )
    report, code = run_to_report(inp)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        print(
            f"input: n={report['input']['n']} m={report['input']['m']} "
            f"k={args.k} ell={args.ell} mode={args.mode}"
        )
        for entry in report["stages"]:
            bits = [f"{k}={v}" for k, v in entry.items() if k not in ("stage", "paths")]
            print(f"  {entry['stage']}: {' '.join(bits)}")
        result = report["result"]
        if "failure" in result:
            print(f"failure at {result['failure']['stage']}: {result['failure']['reason']}")
        else:
            print(f"h={result['h']} lengths={result['lengths']}")
            for length, vertices in zip(result["lengths"], result["witnesses"]):
                print(f"  C_{length}: {vertices}")
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    g, _ = load_edge_list(args.file)
    checks: list[tuple[str, bool, str]] = []
    if args.witness is not None:
        result = verify_witness(g, CycleWitness.of(args.witness))
        checks.append(("witness", result.ok, result.reason or "verified"))
    else:
        with open(args.report, "r", encoding="utf-8") as fh:
            report = json.load(fh)
        result_block = report.get("result", {})
        if "witnesses" not in result_block:
            checks.append(("report", False, "report carries no witnesses"))
        else:
            h = result_block.get("h")
            lengths = result_block.get("lengths", [])
            expected = [2 * h + 2 * (r + 1) for r in range(len(lengths))]
            checks.append(
                (
                    "progression",
                    lengths == expected,
                    f"lengths {lengths} vs expected {expected}",
                )
            )
            for idx, vertices in enumerate(result_block["witnesses"]):
                res = verify_witness(g, CycleWitness.of(tuple(vertices)))
                checks.append(
                    (f"witness[{idx}]", res.ok, res.reason or f"cycle of {len(vertices)}")
                )
    ok = all(passed for _, passed, _ in checks)
    payload = {
        "checks": [
            {"name": name, "ok": passed, "detail": detail}
            for name, passed, detail in checks
        ],
        "ok": ok,
    }
    _emit(
        payload,
        args.format,
        [f"{'PASS' if passed else 'FAIL'} {name}: {detail}" for name, passed, detail in checks],
    )
    return 0 if ok else 1


_SUITE_FLAGS = {
    "oracle-equiv": ("samples", "seed", "max_n"),
    "theta-lemma": ("max_n",),
    "extremal-table": ("max_k",),
    "constructions": ("max_k", "max_n"),
    "engine-props": ("samples", "seed", "max_n"),
    "end-to-end": ("p", "k", "ell"),
}


def cmd_accept(args: argparse.Namespace) -> int:
    kwargs = {}
    for flag in _SUITE_FLAGS[args.suite]:
        value = getattr(args, flag)
        if value is not None:
            kwargs[flag] = value
    results = SUITES[args.suite](**kwargs)
    passed = sum(1 for r in results if r.passed)
    payload = {
        "suite": args.suite,
        "checks": [
            {"name": r.name, "ok": r.passed, "detail": r.detail} for r in results
        ],
        "passed": passed,
        "failed": len(results) - passed,
    }
    _emit(
        payload,
        args.format,
        [r.line() for r in results]
        + [f"{passed}/{len(results)} checks passed"],
    )
    return 0 if passed == len(results) else 1


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PreconditionViolation as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 5
    except StageFailure as exc:
        print(f"{exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CycleModError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
