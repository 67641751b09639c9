from __future__ import annotations

import json
from fractions import Fraction

import pytest

from pmcover import (
    CoverSolution,
    build_certificate,
    certificate_graph,
    certificate_solution,
    deserialize,
    graph_fingerprint,
    serialize,
    solve_r_graph,
    verify_certificate,
    verify_cover,
)
from pmcover.certificate import CertificateError, FingerprintMismatch

import corpus

HALF = Fraction(1, 2)


def _certificate(g):
    sol, tree = solve_r_graph(g)
    return build_certificate(g, sol, tree), sol, tree


def test_verify_cover_petersen_frozen():
    g = corpus.petersen()
    sol, tree = solve_r_graph(g)
    report = verify_cover(g, sol, tree)
    assert report.mandatory_ok
    assert report.halves_count == 6
    assert report.support == 6 == g.m - g.vertex_count + 1
    assert report.inf_norm == HALF
    assert report.support_bound_ok and report.norm_bound_ok


def test_verify_cover_k4_frozen():
    g = corpus.k4()
    sol, tree = solve_r_graph(g)
    report = verify_cover(g, sol, tree)
    assert report.mandatory_ok
    assert report.halves_count == 0
    assert report.support == 3
    assert report.inf_norm == 1


def test_tampered_coefficient_fails_coverage():
    g = corpus.k4()
    sol, tree = solve_r_graph(g)
    tampered = ((sol.terms[0][0], Fraction(2)),) + sol.terms[1:]
    report = verify_cover(g, CoverSolution(g, tampered), tree)
    assert not report.coverage_ok
    assert not report.mandatory_ok
    assert report.each_term_is_pm  # the matchings themselves are untouched


def test_certificate_round_trip():
    for g in (corpus.petersen(), corpus.k33_petersen_splice()):
        cert, _, _ = _certificate(g)
        assert deserialize(serialize(cert)) == cert


def test_certificate_contents_petersen():
    cert, sol, tree = _certificate(corpus.petersen())
    assert cert.n == 10 and cert.m == 15 and cert.r == 3
    assert cert.p == 1
    assert [leaf.kind for leaf in cert.leaves] == ["PetersenBrick"]
    assert all(twice == 1 for _, twice in cert.terms)
    assert cert.report.mandatory_ok


def test_verify_certificate_round_trip():
    g = corpus.k33_brick_splice()
    cert, _, _ = _certificate(g)
    report = verify_certificate(g, deserialize(serialize(cert)))
    assert report.mandatory_ok
    assert report == cert.report


def test_verify_certificate_fingerprint_mismatch():
    cert, _, _ = _certificate(corpus.petersen())
    with pytest.raises(FingerprintMismatch):
        verify_certificate(corpus.k4(), cert)


def test_fingerprint_depends_on_edge_order():
    g = corpus.k4()
    swapped = list(g.edges)
    swapped[0], swapped[1] = swapped[1], swapped[0]
    assert graph_fingerprint(4, 6, g.edges) != graph_fingerprint(4, 6, swapped)


def test_certificate_graph_rebuild():
    g = corpus.prism()
    cert, _, _ = _certificate(g)
    rebuilt = certificate_graph(cert)
    assert rebuilt.vertex_count == g.vertex_count
    assert [tuple(sorted(e)) for e in rebuilt.edges] == [
        tuple(sorted(e)) for e in g.edges
    ]


def test_certificate_solution_is_structural():
    g = corpus.k4()
    cert, sol, _ = _certificate(g)
    loaded = certificate_solution(g, cert)
    assert sorted(loaded.terms, key=lambda t: sorted(t[0])) == sorted(
        sol.terms, key=lambda t: sorted(t[0])
    )


def test_deserialize_parse_error_carries_position():
    cert, _, _ = _certificate(corpus.k4())
    text = serialize(cert)
    with pytest.raises(CertificateError, match="line"):
        deserialize(text[: len(text) // 2])


def test_deserialize_rejects_zero_twice_value():
    cert, _, _ = _certificate(corpus.k4())
    data = json.loads(serialize(cert))
    data["terms"][0]["twice_value"] = 0
    with pytest.raises(CertificateError, match="twice_value 0"):
        deserialize(json.dumps(data))


def test_deserialize_rejects_unknown_edge_id():
    cert, _, _ = _certificate(corpus.k4())
    data = json.loads(serialize(cert))
    data["terms"][0]["edges"][0] = 99
    with pytest.raises(CertificateError, match="unknown edge id"):
        deserialize(json.dumps(data))


def test_deserialize_rejects_floats():
    cert, _, _ = _certificate(corpus.k4())
    data = json.loads(serialize(cert))
    data["graph"]["n"] = 4.0
    with pytest.raises(CertificateError, match="integer"):
        deserialize(json.dumps(data))


def test_deserialize_rejects_inconsistent_p():
    cert, _, _ = _certificate(corpus.petersen())
    data = json.loads(serialize(cert))
    data["tree"]["p"] = 3
    with pytest.raises(CertificateError, match="disagrees"):
        deserialize(json.dumps(data))


def test_deserialize_rejects_loop_edge():
    cert, _, _ = _certificate(corpus.k4())
    data = json.loads(serialize(cert))
    data["graph"]["edges"][0] = [1, 1]
    with pytest.raises(CertificateError, match="loop"):
        deserialize(json.dumps(data))


def test_serialized_json_is_integer_only():
    cert, _, _ = _certificate(corpus.petersen())
    data = json.loads(serialize(cert))

    def walk(node):
        if isinstance(node, float):
            raise AssertionError("float in certificate")
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)

    walk(data)
    assert data["terms"][0]["twice_value"] == 1
