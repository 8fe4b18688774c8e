"""Corpus-wide invariant suite backing the ``verify`` CLI command.

Runs every structural identity and bound formula over exhaustively
generated trees and the deterministic cycle fixtures, plus generator-set
counts and commutation certificates on the small end of the corpus.  Any
violation is collected rather than raised so the caller can report all of
them at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import corpus
from .autos import build_generator_set, verify_commuting
from .graph_core import (
    DefiningGraph,
    GraphError,
    gamma_zero,
    pieces,
)
from .vcd_bounds import TAG_TREE, tag_cycle, unique_cycle_length, vcd_report


@dataclass
class VerificationResult:
    lines: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    graphs_checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def check(self, label: str, passed: bool, detail: str = "") -> None:
        status = "ok" if passed else "VIOLATION"
        suffix = f" ({detail})" if detail and not passed else ""
        self.lines.append(f"{status}: {label}{suffix}")
        if not passed:
            self.violations.append(f"{label}{suffix}")

    def summary(self) -> str:
        return (
            f"{self.graphs_checked} graphs checked, "
            f"{len(self.violations)} violations"
        )

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "graphs_checked": self.graphs_checked,
            "violations": self.violations,
            "lines": self.lines,
        }


def _structural_checks(g: DefiningGraph, result: VerificationResult) -> None:
    decomposition = pieces(g)  # raises on separation-count mismatches
    covered: set[frozenset[str]] = set()
    overlap_ok = True
    partition_ok = True
    for i, p in enumerate(decomposition.pieces):
        if covered & p:
            partition_ok = False
        covered |= p
        nodes_p = frozenset(v for e in p for v in e)
        for q in decomposition.pieces[i + 1 :]:
            nodes_q = frozenset(v for e in q for v in e)
            if len(nodes_p & nodes_q) > 1:
                overlap_ok = False
    if covered != g.edges:
        partition_ok = False
    result.check(f"pieces partition edges [{g.num_nodes} nodes]", partition_ok)
    result.check("piece pairwise intersections at most one node", overlap_ok)

    core = gamma_zero(g)
    result.check("core subgraph spans a connected subgraph", core.spans_connected)
    result.check(
        "core avoids leaves", not (core.nodes & g.leaves)
    )
    leaf_neighbors_ok = all(
        next(iter(g.link(u))) in core.unique_maximal for u in g.leaves
    )
    result.check("leaf neighbors are unique-maximal", leaf_neighbors_ok)
    excess = sum(decomposition.delta_c[v] - 1 for v in core.nodes)
    result.check(
        "piece-count identity over core nodes",
        excess == decomposition.count - 1,
        f"{excess} != {decomposition.count - 1}",
    )


def run_verification(max_nodes: int = 8, bound: int = 4) -> VerificationResult:
    result = VerificationResult()

    trees = list(corpus.eligible_trees(max_nodes))
    for g in trees:
        result.graphs_checked += 1
        try:
            _structural_checks(g, result)
            report = vcd_report(g)
        except GraphError as exc:
            result.check(f"pipeline on tree [{g.num_nodes} nodes]", False, str(exc))
            continue
        e, ell = g.num_edges, len(g.leaves)
        result.check(
            f"tree exactness e+2l-3 [{g.num_nodes} nodes]",
            report.exact == e + 2 * ell - 3 and TAG_TREE in report.applicable,
            f"exact={report.exact}",
        )

    for g in corpus.cycle_tree_fixtures():
        result.graphs_checked += 1
        try:
            _structural_checks(g, result)
            report = vcd_report(g)
        except GraphError as exc:
            result.check("pipeline on cycle fixture", False, str(exc))
            continue
        k = unique_cycle_length(g)
        expected = g.num_edges - k + 2 * len(g.leaves)
        result.check(
            f"unique-cycle exactness e-k+2l [cycle {k}]",
            report.exact == expected and tag_cycle(k) in report.applicable,
            f"exact={report.exact} expected={expected}",
        )

    for g in corpus.square_free_non_trees():
        result.graphs_checked += 1
        try:
            report = vcd_report(g)
        except GraphError as exc:
            result.check("pipeline on square-free fixture", False, str(exc))
            continue
        pi = report.decomposition.count
        ell = len(g.leaves)
        chi = g.euler_characteristic
        result.check(
            "square-free sandwich",
            report.lower.value == pi + 2 * ell - 1
            and report.upper.value == pi + 2 * ell - 1 - 2 * chi,
            f"lower={report.lower.value} upper={report.upper.value}",
        )

    for g in corpus.squares_with_trees():
        result.graphs_checked += 1
        try:
            report = vcd_report(g)
        except GraphError as exc:
            result.check("pipeline on square fixture", False, str(exc))
            continue
        k = unique_cycle_length(g)
        result.check(
            "pruned-leaves square fixture exactness",
            report.exact == g.num_edges - k + 2 * len(g.leaves),
            f"exact={report.exact}",
        )

    for g in trees:
        if g.num_nodes > 7:
            continue
        try:
            gs = build_generator_set(g, certify=False)
        except GraphError as exc:
            result.check("generator set on tree", False, str(exc))
            continue
        decomposition = pieces(g)
        core = gamma_zero(g)
        expected = (decomposition.count - 1) + 2 * (g.num_nodes - core.num_nodes)
        result.check(
            f"generator count [{g.num_nodes}-node tree]",
            gs.count == expected,
            f"{gs.count} != {expected}",
        )

    small = [g for g in trees if g.num_nodes <= 6]
    small.append(
        DefiningGraph.from_edges(
            [("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v5"),
             ("v5", "v1"), ("v1", "u")]
        )
    )
    for g in small:
        gs = build_generator_set(g, certify=False)
        certs = verify_commuting(gs, bound=bound)
        uncertified = [k for k, c in certs.items() if not c.certified]
        result.check(
            f"commutation certificates [{g.num_nodes} nodes]",
            not uncertified,
            f"{len(uncertified)} uncertified pairs",
        )

    return result
