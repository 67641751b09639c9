"""Independent verification of covers, and the certificate file format.

Verification trusts nothing from the solver: every quantity is recomputed
from the graph, the terms, and the decomposition summary.  Two bound checks
are advisory rather than mandatory.  The m - n + 1 support bound fails on
degenerate all-brace inputs (C4's unique cover has support 2 > 1, and the
two-vertex graph with r parallel edges needs support r > r - 1), and the
2^d norm bound depends on basis choices the solver is free to vary.  A
verifier must not reject a correct cover over either, so both are reported
but excluded from mandatory_ok.

Certificates are canonical JSON with integers only: coefficients are stored
doubled (twice_value), so +1/2 is the odd integer 1 and the format is exact.
The graph block pins down the exact edge_id assignment; verifying a
certificate against a relabeled graph is detected by fingerprint, not
repaired.  Leaf summaries carry each leaf's vertex and edge counts so the
norm advisory is recomputable from the artifact alone.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .cover import CoverSolution, HALF, from_twice, terms_independent, to_twice
from .decomposition import DecompositionTree, LeafClass
from .graphs import MultiGraph, build_graph, regular_degree
from .matchings import validate_perfect_matching

Term = tuple[frozenset[int], Fraction]


class CertificateError(ValueError):
    """Malformed certificate text or structure."""


class FingerprintMismatch(ValueError):
    """Certificate and graph disagree on (n, m, edges)."""


def graph_fingerprint(n: int, m: int, edges: Sequence[tuple[int, int]]) -> str:
    """sha256 over the ordered, endpoint-normalized edge list."""
    h = hashlib.sha256()
    h.update(f"{n} {m}\n".encode())
    for u, v in edges:
        a, b = (u, v) if u <= v else (v, u)
        h.update(f"{a} {b}\n".encode())
    return h.hexdigest()


@dataclass(frozen=True)
class LeafSummary:
    kind: str
    n: int
    m: int


@dataclass(frozen=True)
class VerifyReport:
    coverage_ok: bool
    each_term_is_pm: bool
    halves_count: int
    halves_exact: bool
    halves_bound_ok: bool
    support: int
    support_bound_ok: bool
    independent: bool
    inf_norm: Fraction
    norm_bound_ok: bool
    coeff_sum_is_r: bool

    @property
    def mandatory_ok(self) -> bool:
        """The fatal checks; the two bound advisories are excluded."""
        return (
            self.coverage_ok
            and self.each_term_is_pm
            and self.halves_exact
            and self.halves_bound_ok
            and self.independent
            and self.coeff_sum_is_r
        )


@dataclass(frozen=True)
class Certificate:
    n: int
    m: int
    r: int
    edges: tuple[tuple[int, int], ...]
    terms: tuple[tuple[tuple[int, ...], int], ...]
    leaves: tuple[LeafSummary, ...]
    p: int
    report: VerifyReport

    @property
    def fingerprint(self) -> str:
        return graph_fingerprint(self.n, self.m, self.edges)


def _compute_report(
    g: MultiGraph, terms: Sequence[Term], p: int, brick_ds: Sequence[int]
) -> VerifyReport:
    sums = [Fraction(0)] * g.m
    for matching, coeff in terms:
        for e in matching:
            sums[e] += coeff
    coverage_ok = all(s == 1 for s in sums)

    each_term_is_pm = True
    for matching, _ in terms:
        try:
            validate_perfect_matching(g, matching)
        except ValueError:
            each_term_is_pm = False
            break

    coefficients = [coeff for _, coeff in terms]
    fractional = [c for c in coefficients if c.denominator != 1]
    halves_exact = all(c == HALF for c in fractional)
    halves_count = sum(1 for c in fractional if c == HALF)

    support = len(terms)
    independent = terms_independent(g, [m for m, _ in terms])
    inf_norm = max((abs(c) for c in coefficients), default=Fraction(0))
    norm_bound = max((Fraction(2) ** d for d in brick_ds), default=Fraction(1))
    r = regular_degree(g)
    return VerifyReport(
        coverage_ok=coverage_ok,
        each_term_is_pm=each_term_is_pm,
        halves_count=halves_count,
        halves_exact=halves_exact,
        halves_bound_ok=halves_count <= 6 * p,
        support=support,
        support_bound_ok=support <= g.m - g.vertex_count + 1,
        independent=independent,
        inf_norm=inf_norm,
        norm_bound_ok=inf_norm <= norm_bound,
        coeff_sum_is_r=r is not None and sum(coefficients, Fraction(0)) == r,
    )


def _leaf_summaries(tree: DecompositionTree) -> tuple[LeafSummary, ...]:
    return tuple(
        LeafSummary(leaf.leaf_class.value, leaf.graph.vertex_count, leaf.graph.m)
        for leaf in tree.leaves()
    )


def _brick_ds(leaves: Sequence[LeafSummary]) -> list[int]:
    return [
        leaf.m - leaf.n + 1
        for leaf in leaves
        if leaf.kind == LeafClass.OTHER_BRICK.value
    ]


def verify_cover(
    g: MultiGraph, sol: CoverSolution, tree: DecompositionTree
) -> VerifyReport:
    """Recheck every guarantee from scratch; trusts nothing the solver did."""
    leaves = _leaf_summaries(tree)
    return _compute_report(g, sol.terms, tree.petersen_count, _brick_ds(leaves))


def build_certificate(
    g: MultiGraph, sol: CoverSolution, tree: DecompositionTree
) -> Certificate:
    r = regular_degree(g)
    if r is None:
        raise ValueError("certificates require a regular graph")
    leaves = _leaf_summaries(tree)
    p = tree.petersen_count
    report = _compute_report(g, sol.terms, p, _brick_ds(leaves))
    edges = tuple((u, v) if u <= v else (v, u) for u, v in g.edges)
    terms = tuple(
        (tuple(sorted(matching)), to_twice(coeff)) for matching, coeff in sol.terms
    )
    return Certificate(
        n=g.vertex_count, m=g.m, r=r, edges=edges, terms=terms, leaves=leaves, p=p,
        report=report,
    )


def certificate_solution(g: MultiGraph, cert: Certificate) -> CoverSolution:
    """The certificate's terms as a structural (unvalidated) solution."""
    terms = tuple(
        (frozenset(edge_ids), from_twice(twice)) for edge_ids, twice in cert.terms
    )
    return CoverSolution(g, terms)


def verify_certificate(g: MultiGraph, cert: Certificate) -> VerifyReport:
    """Recheck a loaded certificate against the graph it claims to cover.

    Raises FingerprintMismatch when (n, m, edges) disagree; the stored
    report is ignored and everything is recomputed.
    """
    if cert.fingerprint != graph_fingerprint(
        g.vertex_count, g.m, g.edges
    ):
        raise FingerprintMismatch(
            "certificate was issued for a different graph or edge labeling"
        )
    solution = certificate_solution(g, cert)
    return _compute_report(g, solution.terms, cert.p, _brick_ds(cert.leaves))


def report_as_dict(report: VerifyReport) -> dict[str, Any]:
    return {
        "coverage_ok": report.coverage_ok,
        "each_term_is_pm": report.each_term_is_pm,
        "halves_count": report.halves_count,
        "halves_exact": report.halves_exact,
        "halves_bound_ok": report.halves_bound_ok,
        "support": report.support,
        "support_bound_ok": report.support_bound_ok,
        "independent": report.independent,
        "twice_inf_norm": to_twice(report.inf_norm) if report.inf_norm else 0,
        "norm_bound_ok": report.norm_bound_ok,
        "coeff_sum_is_r": report.coeff_sum_is_r,
    }


def serialize(cert: Certificate) -> str:
    """Canonical JSON text: stable field order, integers only, no floats."""
    payload = {
        "graph": {
            "n": cert.n,
            "m": cert.m,
            "r": cert.r,
            "edges": [[u, v] for u, v in cert.edges],
        },
        "terms": [
            {"edges": list(edge_ids), "twice_value": twice}
            for edge_ids, twice in cert.terms
        ],
        "tree": {
            "leaves": [
                {"class": leaf.kind, "n": leaf.n, "m": leaf.m}
                for leaf in cert.leaves
            ],
            "p": cert.p,
        },
        "report": report_as_dict(cert.report),
    }
    return json.dumps(payload, indent=2) + "\n"


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise CertificateError(message)


def _as_int(value: Any, where: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), f"{where} must be an integer")
    return value


def _as_bool(value: Any, where: str) -> bool:
    _expect(isinstance(value, bool), f"{where} must be a boolean")
    return value


def _as_dict(value: Any, where: str) -> dict:
    _expect(isinstance(value, dict), f"{where} must be an object")
    return value


def _as_list(value: Any, where: str) -> list:
    _expect(isinstance(value, list), f"{where} must be an array")
    return value


def deserialize(text: str) -> Certificate:
    """Parse certificate text; errors carry a position or a field path."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(
            f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    root = _as_dict(payload, "certificate")
    graph = _as_dict(root.get("graph"), "graph")
    n = _as_int(graph.get("n"), "graph.n")
    m = _as_int(graph.get("m"), "graph.m")
    r = _as_int(graph.get("r"), "graph.r")
    raw_edges = _as_list(graph.get("edges"), "graph.edges")
    _expect(len(raw_edges) == m, f"graph.edges has {len(raw_edges)} entries, expected {m}")
    edges = []
    for k, pair in enumerate(raw_edges):
        pair = _as_list(pair, f"graph.edges[{k}]")
        _expect(len(pair) == 2, f"graph.edges[{k}] must have two endpoints")
        u = _as_int(pair[0], f"graph.edges[{k}][0]")
        v = _as_int(pair[1], f"graph.edges[{k}][1]")
        _expect(0 <= u < n and 0 <= v < n, f"graph.edges[{k}] endpoint out of range")
        _expect(u != v, f"graph.edges[{k}] is a loop")
        edges.append((u, v) if u <= v else (v, u))
    terms = []
    for k, raw in enumerate(_as_list(root.get("terms"), "terms")):
        term = _as_dict(raw, f"terms[{k}]")
        ids = _as_list(term.get("edges"), f"terms[{k}].edges")
        edge_ids = tuple(_as_int(e, f"terms[{k}].edges entry") for e in ids)
        for e in edge_ids:
            _expect(0 <= e < m, f"terms[{k}] references unknown edge id {e}")
        _expect(len(set(edge_ids)) == len(edge_ids), f"terms[{k}] repeats an edge id")
        twice = _as_int(term.get("twice_value"), f"terms[{k}].twice_value")
        _expect(twice != 0, f"terms[{k}] has twice_value 0")
        terms.append((edge_ids, twice))
    tree = _as_dict(root.get("tree"), "tree")
    leaves = []
    for k, raw in enumerate(_as_list(tree.get("leaves"), "tree.leaves")):
        leaf = _as_dict(raw, f"tree.leaves[{k}]")
        kind = leaf.get("class")
        _expect(
            kind in {lc.value for lc in LeafClass},
            f"tree.leaves[{k}] has unknown class {kind!r}",
        )
        leaves.append(
            LeafSummary(
                kind,
                _as_int(leaf.get("n"), f"tree.leaves[{k}].n"),
                _as_int(leaf.get("m"), f"tree.leaves[{k}].m"),
            )
        )
    p = _as_int(tree.get("p"), "tree.p")
    _expect(
        p == sum(1 for leaf in leaves if leaf.kind == LeafClass.PETERSEN_BRICK.value),
        "tree.p disagrees with the leaf list",
    )
    raw_report = _as_dict(root.get("report"), "report")
    twice_norm = _as_int(raw_report.get("twice_inf_norm"), "report.twice_inf_norm")
    _expect(twice_norm >= 0, "report.twice_inf_norm must be non-negative")
    report = VerifyReport(
        coverage_ok=_as_bool(raw_report.get("coverage_ok"), "report.coverage_ok"),
        each_term_is_pm=_as_bool(raw_report.get("each_term_is_pm"), "report.each_term_is_pm"),
        halves_count=_as_int(raw_report.get("halves_count"), "report.halves_count"),
        halves_exact=_as_bool(raw_report.get("halves_exact"), "report.halves_exact"),
        halves_bound_ok=_as_bool(raw_report.get("halves_bound_ok"), "report.halves_bound_ok"),
        support=_as_int(raw_report.get("support"), "report.support"),
        support_bound_ok=_as_bool(raw_report.get("support_bound_ok"), "report.support_bound_ok"),
        independent=_as_bool(raw_report.get("independent"), "report.independent"),
        inf_norm=Fraction(twice_norm, 2),
        norm_bound_ok=_as_bool(raw_report.get("norm_bound_ok"), "report.norm_bound_ok"),
        coeff_sum_is_r=_as_bool(raw_report.get("coeff_sum_is_r"), "report.coeff_sum_is_r"),
    )
    return Certificate(
        n=n, m=m, r=r, edges=tuple(edges), terms=tuple(terms),
        leaves=tuple(leaves), p=p, report=report,
    )


def certificate_graph(cert: Certificate) -> MultiGraph:
    """Rebuild the graph block; useful for standalone certificate checks."""
    return build_graph(cert.n, list(cert.edges))
