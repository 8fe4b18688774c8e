"""Command-line front end.

Four commands: ``analyze`` a graph file, ``psigma`` for the free-group
family, ``ideal-complex`` for the blow-up complexes, and ``verify`` to run
the invariant suite over a generated corpus.  Exit codes: 0 success,
1 parse failure, 2 ineligible graph, 3 invariant violation in verify.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable

from .autos import build_generator_set, default_choices
from .graph_core import (
    GraphError,
    IneligibleGraphError,
    ParseError,
    parse_graph,
)
from .ideal_edges import (
    HalfEdgeSet,
    build_complex,
    enumerate_ideal_edges,
    morse_collapse_certificate,
    reduced_homology,
)
from .psigma import PsigmaError, PsigmaSpec, psigma_generators, psigma_vcd, outer_rank
from .vcd_bounds import vcd_report

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INELIGIBLE = 2
EXIT_VIOLATION = 3


def _emit(payload: dict, as_json: bool, text_renderer: Callable[[dict], str]) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text_renderer(payload))


def _render_report(payload: dict) -> str:
    lines = []
    counts = payload["counts"]
    lines.append(
        f"graph: {counts['nodes']} nodes, {counts['edges']} edges, "
        f"{counts['leaves']} leaves, {counts['pieces']} pieces, "
        f"chi={counts['euler_characteristic']}"
    )
    lines.append(
        f"lower bound {payload['lower']['value']} (case {payload['lower']['case']}"
        + (
            f", witness {payload['lower']['witness']})"
            if "witness" in payload["lower"]
            else ")"
        )
    )
    lines.append(f"upper bound {payload['upper']['value']} (case {payload['upper']['case']})")
    if payload["exact"] is not None:
        lines.append(f"exact dimension: {payload['exact']}")
    else:
        lines.append("bounds do not meet: dimension between the two values")
    if payload["theorems"]:
        lines.append("applicable statements: " + ", ".join(payload["theorems"]))
    lines.append(f"kernel rank: {payload['kernel_rank']}")
    if "witness_set" in payload:
        ws = payload["witness_set"]
        lines.append(
            f"generator set: {ws['count']} generators, inner rank {ws.get('inner_rank')}, "
            f"outer rank {ws.get('outer_rank')}"
        )
        bad = [c for c in ws.get("commutation_certificates", []) if not c["certified"]]
        lines.append(
            "commutation certificates: "
            + ("all pairs certified" if not bad else f"{len(bad)} pairs UNCERTIFIED")
        )
    return "\n".join(lines)


def _cmd_analyze(args: argparse.Namespace) -> int:
    try:
        text = Path(args.path).read_text(encoding="utf-8")
        g = parse_graph(text)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = vcd_report(g)
    except IneligibleGraphError as exc:
        payload = exc.report.to_dict()
        _emit(
            payload,
            args.json,
            lambda p: "graph not eligible: " + exc.report.failure_summary(),
        )
        return EXIT_INELIGIBLE

    payload = report.to_dict()
    if args.witness:
        core = report.core
        decomposition = report.decomposition
        base_edge = tuple(args.e0.split(",")) if args.e0 else None
        choices = default_choices(g, core, decomposition, base_edge=base_edge)
        gs = build_generator_set(
            g, core, decomposition, choices, bound=args.bound
        )
        payload["witness_set"] = gs.to_dict()
    _emit(payload, args.json, _render_report)
    return EXIT_OK


def _cmd_psigma(args: argparse.Namespace) -> int:
    try:
        spec = PsigmaSpec(args.n, args.k)
        payload: dict = {
            "n": spec.n,
            "k": spec.k,
            "vcd": psigma_vcd(spec.n, spec.k),
        }
        if spec.k >= 1:
            gens = psigma_generators(spec)
            payload["generators"] = [name for name, _ in gens]
            payload["generator_count"] = len(gens)
            payload["outer_rank"] = outer_rank(spec)
    except PsigmaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    def render(p: dict) -> str:
        lines = [f"PSigma({p['n']},{p['k']}): vcd = {p['vcd']}"]
        if "generator_count" in p:
            lines.append(
                f"commuting family: {p['generator_count']} generators "
                f"({', '.join(p['generators'])})"
            )
            lines.append(f"outer rank: {p['outer_rank']}")
        else:
            lines.append("k = 0: full outer automorphism group, formula only")
        return "\n".join(lines)

    _emit(payload, args.json, render)
    return EXIT_OK


def _cmd_ideal_complex(args: argparse.Namespace) -> int:
    try:
        h = HalfEdgeSet.standard(args.r, args.s)
        legal_only = not args.full
        c = build_complex(h, legal_only=legal_only, max_simplices=args.cap)
        all_edges = enumerate_ideal_edges(h)
        payload = {
            "r": args.r,
            "s": args.s,
            "half_edges": h.size,
            "ideal_edges": len(all_edges),
            "legal_ideal_edges": sum(1 for e in all_edges if e.legal),
            "complex": "full" if args.full else "legal",
            "counts": list(c.counts()),
            "dim": c.dim,
        }
        if not args.no_homology:
            hom = reduced_homology(c, max_simplices=args.cap)
            payload["homology"] = hom.to_dict()
        if not args.full and args.r >= 2:
            cert = morse_collapse_certificate(c, args.r, args.s)
            payload["collapse_certificate"] = cert.to_dict()
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    def render(p: dict) -> str:
        lines = [
            f"half-edge structure: {p['r']} pairs + {p['s']} singles "
            f"({p['half_edges']} half-edges)",
            f"ideal edges: {p['ideal_edges']} total, "
            f"{p['legal_ideal_edges']} legal",
            f"{p['complex']} complex: counts by dimension {p['counts']}",
        ]
        if "homology" in p:
            hom = p["homology"]
            lines.append(
                "reduced homology: "
                + (
                    "trivial"
                    if hom["trivial"]
                    else f"betti {hom['reduced_betti']} torsion {hom['torsion']}"
                )
            )
        if "collapse_certificate" in p:
            lines.append(
                "collapse certificate: " + p["collapse_certificate"]["verdict"]
            )
        return "\n".join(lines)

    _emit(payload, args.json, render)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    from .verify_suite import run_verification

    result = run_verification(max_nodes=args.max_nodes, bound=args.bound)
    if args.json:
        print(json.dumps(result.to_dict(), sort_keys=True, indent=2))
    else:
        for line in result.lines:
            print(line)
        print(result.summary())
    return EXIT_OK if result.ok else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raagvcd",
        description=(
            "Dimension bounds for outer automorphism groups of "
            "two-dimensional right-angled Artin groups"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze a graph file")
    analyze.add_argument("path")
    analyze.add_argument("--json", action="store_true")
    analyze.add_argument(
        "--witness",
        action="store_true",
        help="build the commuting generator set with certificates",
    )
    analyze.add_argument("--e0", help="base edge as A,B", default=None)
    analyze.add_argument(
        "--bound", type=int, default=4, help="conjugator search bound"
    )
    analyze.set_defaults(func=_cmd_analyze)

    psig = sub.add_parser("psigma", help="partially symmetric family")
    psig.add_argument("n", type=int)
    psig.add_argument("k", type=int)
    psig.add_argument("--json", action="store_true")
    psig.set_defaults(func=_cmd_psigma)

    ideal = sub.add_parser("ideal-complex", help="blow-up complex at a node")
    ideal.add_argument("r", type=int, help="number of inverse pairs")
    ideal.add_argument("s", type=int, help="number of unpaired half-edges")
    ideal.add_argument("--json", action="store_true")
    ideal.add_argument(
        "--full", action="store_true", help="use all ideal edges, not only legal"
    )
    ideal.add_argument("--no-homology", action="store_true")
    ideal.add_argument("--cap", type=int, default=20000)
    ideal.set_defaults(func=_cmd_ideal_complex)

    ver = sub.add_parser("verify", help="run the invariant suite over a corpus")
    ver.add_argument("--max-nodes", type=int, default=8)
    ver.add_argument("--bound", type=int, default=4)
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
