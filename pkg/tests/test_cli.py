from __future__ import annotations

import json

import pytest

from pmcover import is_r_graph
from pmcover.cli import (
    GraphParseError,
    format_graph,
    gen_r_graph,
    main,
    parse_graph_text,
)

import corpus


def _write_graph(tmp_path, g, name="g.txt"):
    path = tmp_path / name
    path.write_text(format_graph(g))
    return str(path)


def test_parse_round_trip():
    g = corpus.petersen()
    parsed = parse_graph_text(format_graph(g, comment="petersen"))
    assert parsed.vertex_count == 10
    assert [tuple(sorted(e)) for e in parsed.edges] == [
        tuple(sorted(e)) for e in g.edges
    ]


def test_parse_errors_carry_line_numbers():
    cases = [
        ("graph 4 2\ne 0 1\ne 2 3\n", 1),
        ("rgraph 4 2\ne 0 0\ne 2 3\n", 2),
        ("rgraph 4 2\ne 0 1\ne 2 9\n", 3),
        ("rgraph 4 2\ne 0 1\n", 1),            # count mismatch blames the header
        ("rgraph 4 1\ne 0 1\ne 2 3\n", 3),     # one edge too many
        ("rgraph 4 2\ne 0 1\nz 2 3\n", 3),
    ]
    for text, line in cases:
        with pytest.raises(GraphParseError) as info:
            parse_graph_text(text)
        assert info.value.line == line, text


def test_gen_is_deterministic_r_graph():
    a = gen_r_graph(8, 3, seed=7)
    b = gen_r_graph(8, 3, seed=7)
    assert a.edges == b.edges
    assert is_r_graph(a).ok
    assert gen_r_graph(8, 3, seed=8).edges != a.edges


def test_gen_smallest_case_is_parallel_pair():
    g = gen_r_graph(2, 4, seed=0)
    assert g.vertex_count == 2 and g.m == 4
    assert all(tuple(sorted(e)) == (0, 1) for e in g.edges)


def test_gen_rejects_bad_degree():
    with pytest.raises(ValueError):
        gen_r_graph(6, 0, seed=0)


def test_gen_gives_up_when_connectivity_is_impossible():
    with pytest.raises(ValueError, match="64 attempts"):
        gen_r_graph(4, 1, seed=0)


def test_validate_ok(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.petersen())
    assert main(["validate", "-i", path]) == 0
    out = capsys.readouterr().out
    assert "n=10 m=15 r=3" in out
    assert "min_odd_cut=3" in out
    assert "r-graph: yes" in out


def test_validate_bridge_fails_with_witness(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.bridged_cubic())
    assert main(["validate", "-i", path]) == 1
    out = capsys.readouterr().out
    assert "min_odd_cut=1" in out
    assert "r-graph: no" in out
    assert "violating odd cut at shore" in out


def test_validate_json(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.k4())
    assert main(["validate", "-i", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"n": 4, "m": 6, "r": 3, "min_odd_cut": 3, "is_r_graph": True}


def test_solve_verify_chain(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.k33_petersen_splice())
    cert_path = str(tmp_path / "cert.json")
    assert main(["solve", "-i", graph_path, "-o", cert_path]) == 0
    out = capsys.readouterr().out
    assert "mandatory_ok: true" in out
    assert main(["verify", "-i", graph_path, cert_path]) == 0
    out = capsys.readouterr().out
    assert "coverage_ok: true" in out
    assert "halves_count: 6" in out


def test_solve_stdout_emits_certificate(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.k4())
    assert main(["solve", "-i", graph_path]) == 0
    captured = capsys.readouterr()
    cert = json.loads(captured.out)
    assert cert["graph"]["n"] == 4
    assert "mandatory_ok: true" in captured.err


def test_solve_rejects_non_r_graph(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.bridged_cubic())
    assert main(["solve", "-i", graph_path]) == 1
    assert "odd cut of size 1" in capsys.readouterr().err


def test_verify_detects_tampering(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.k4())
    cert_path = str(tmp_path / "cert.json")
    assert main(["solve", "-i", graph_path, "-o", cert_path]) == 0
    capsys.readouterr()

    data = json.loads(open(cert_path).read())
    data["terms"][0]["twice_value"] = 4  # coefficient 1 -> 2
    with open(cert_path, "w") as handle:
        json.dump(data, handle)

    assert main(["verify", "-i", graph_path, cert_path]) == 1
    out = capsys.readouterr().out
    assert "coverage_ok: false" in out
    assert "mandatory_ok: false" in out


def test_verify_wrong_graph_is_fingerprint_mismatch(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.k4())
    cert_path = str(tmp_path / "cert.json")
    assert main(["solve", "-i", graph_path, "-o", cert_path]) == 0
    other_path = _write_graph(tmp_path, corpus.c6(), name="other.txt")
    assert main(["verify", "-i", other_path, cert_path]) == 3
    assert "fingerprint mismatch" in capsys.readouterr().err


def test_verify_unreadable_certificate(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.k4())
    assert main(["verify", "-i", graph_path, str(tmp_path / "missing.json")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_inputs_exit_2(tmp_path, capsys):
    bad_graph = tmp_path / "bad.txt"
    bad_graph.write_text("rgraph 4 1\ne 0 0\n")
    assert main(["validate", "-i", str(bad_graph)]) == 2
    assert "parse error" in capsys.readouterr().err

    graph_path = _write_graph(tmp_path, corpus.k4())
    bad_cert = tmp_path / "bad.json"
    bad_cert.write_text("{\"graph\":")
    assert main(["verify", "-i", graph_path, str(bad_cert)]) == 2
    assert "certificate error" in capsys.readouterr().err

    assert main(["validate", "-i", str(tmp_path / "nope.txt")]) == 2


def test_decompose_tree_output(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.double_petersen_splice())
    assert main(["decompose", "-i", path]) == 0
    out = capsys.readouterr().out
    assert out.count("leaf PetersenBrick") == 2
    assert out.count("leaf Brace") == 1
    assert "p=2" in out

    assert main(["decompose", "-i", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["p"] == 2
    assert payload["tree"]["type"] == "internal"


def test_enumerate_lists_matchings(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.petersen())
    assert main(["enumerate", "-i", path]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[-1] == "count 6"
    assert len(lines) == 7
    assert all(len(line.split()) == 5 for line in lines[:-1])


def test_enumerate_limit_overflow(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.petersen())
    assert main(["enumerate", "-i", path, "--limit", "3"]) == 4
    captured = capsys.readouterr()
    assert "limit 3 exceeded; 3 matchings listed" in captured.err
    assert len(captured.out.strip().splitlines()) == 3


def test_enumerate_json(tmp_path, capsys):
    path = _write_graph(tmp_path, corpus.k4())
    assert main(["enumerate", "-i", path, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 3
    assert sorted(payload["matchings"]) == [[0, 5], [1, 4], [2, 3]]


def test_gen_writes_file_and_stdout(tmp_path, capsys):
    out_path = tmp_path / "gen.txt"
    assert main(["gen", "8", "3", "--seed", "5", "-o", str(out_path)]) == 0
    text = out_path.read_text()
    assert text.startswith("# gen n=8 r=3 seed=5\nrgraph 8 12\n")
    g = parse_graph_text(text)
    assert is_r_graph(g).ok

    assert main(["gen", "8", "3", "--seed", "5"]) == 0
    assert capsys.readouterr().out == text


def test_gen_rejects_odd_n(capsys):
    with pytest.raises(SystemExit) as info:
        main(["gen", "5", "3"])
    assert info.value.code == 2


def test_parallel_solve_flag(tmp_path, capsys):
    graph_path = _write_graph(tmp_path, corpus.double_petersen_splice())
    cert_a = str(tmp_path / "a.json")
    cert_b = str(tmp_path / "b.json")
    assert main(["solve", "-i", graph_path, "-o", cert_a]) == 0
    assert main(["solve", "-i", graph_path, "-o", cert_b, "--parallel"]) == 0
    capsys.readouterr()
    assert open(cert_a).read() == open(cert_b).read()
