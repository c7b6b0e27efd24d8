import json

import pytest

from ordiv.graphs import Graph
from ordiv.groups import parse_spec
from ordiv.theorems import (
    THEOREM_IDS,
    Bounds,
    UnknownTheorem,
    build_corpus,
    c10_cases,
    c10_data,
    default_od,
    reports_to_json,
    verify,
    verify_all,
    verify_c10_witnesses,
)


def flip_edge(spec, u, v):
    """An OD builder that corrupts one adjacency of one group's graph."""
    def build(g):
        graph = default_od(g)
        if g.spec != spec:
            return graph
        adj = list(graph.adj)
        adj[u] ^= 1 << v
        adj[v] ^= 1 << u
        return Graph(graph.vertex_count, tuple(adj), graph.annotations)
    return build


def test_corpus_contents():
    specs = [g.spec for g in build_corpus()]
    assert "A:5" in specs and "A:4" in specs and "S:4" in specs
    assert len(specs) == len(set(specs))
    minimal = [g.spec for g in build_corpus(Bounds.minimal())]
    assert [f"Z:{n}" for n in range(1, 9)] == minimal[:8]
    d7 = [g.spec for g in build_corpus(Bounds(max_dihedral=7))]
    assert all(f"D:{n}" in d7 for n in range(3, 8)) and "D:8" not in d7


def test_corpus_is_deterministic():
    assert [g.spec for g in build_corpus()] == [g.spec for g in build_corpus()]


def test_every_id_registered():
    for tid in THEOREM_IDS:
        rep = verify(tid, Bounds.minimal())
        assert rep.theorem_id == tid and rep.cases_run > 0
    with pytest.raises(UnknownTheorem):
        verify("T99")


@pytest.mark.parametrize("tid", [t for t in THEOREM_IDS if t != "C12"])
def test_minimal_bounds_pass(tid):
    assert verify(tid, Bounds.minimal()).passed


def test_c12_fails_only_on_the_trivial_group():
    rep = verify("C12", Bounds(max_n=40))
    assert [f.case for f in rep.failures] == ["Z:1"]


def test_t4_and_c11_examples():
    rep = verify("T4", Bounds(max_dihedral_sweep=50))
    assert rep.passed and rep.cases_run == 48
    rep = verify("C11", Bounds(max_n=200))
    assert rep.passed and rep.cases_run == 200


def test_t5_max_prime():
    rep = verify("T5", Bounds(max_prime=13))
    assert rep.passed and rep.cases_run == 15


@pytest.mark.parametrize("tid, spec, u, v", [
    ("C12", "Z:7", 1, 2),      # makes OD(Z_7) a non-star
    ("T9", "D:3", 1, 3),
    ("R2i", "Z:6", 0, 1),
    ("R2ii", "Z:4", 0, 1),     # identity no longer universal
    ("T4", "D:5", 1, 6),
    ("T2", "D:4", 1, 4),
    ("C3", "Z:8", 2, 1),
    ("C6", "Z:8", 1, 3),       # joins two order-8 vertices, chi grows
    ("T5", "Z:15", 1, 2),
    ("T8", "Z:12", 1, 5),
    ("C13", "EA:2^2", 1, 2),
])
def test_injected_fault_is_detected(tid, spec, u, v):
    bounds = Bounds.minimal() if tid not in ("T4", "T2", "C3", "C6", "T5", "T8") else Bounds()
    rep = verify(tid, bounds, od=flip_edge(spec, u, v))
    assert not rep.passed
    assert any(f.case.startswith(spec) or spec in f.case for f in rep.failures)


def test_report_serialization():
    rep = verify("T7")
    d = rep.to_dict()
    assert d["status"] == "pass" and d["cases_run"] == 3 and len(d["cases"]) == 3
    assert "elapsed" in d and "elapsed" not in rep.to_dict(timing=False)
    lines = rep.to_lines(timing=False)
    assert lines == ["T7\tpass\tcases=3\tfailures=0"]
    doc = json.loads(reports_to_json([rep], timing=False))
    assert doc["passed"] == 1 and doc["total"] == 1


def test_reports_deterministic():
    a = [r.to_dict(timing=False) for r in verify_all(Bounds.minimal())]
    b = [r.to_dict(timing=False) for r in verify_all(Bounds.minimal())]
    assert a == b


def test_parallel_matches_serial():
    ids = ("T9", "C11", "T5", "R2iv")
    serial = [r.to_dict(timing=False) for r in verify_all(Bounds.minimal(), ids)]
    parallel = [r.to_dict(timing=False) for r in verify_all(Bounds.minimal(), ids, jobs=3)]
    assert serial == parallel


def test_c10_data():
    a4 = c10_data(parse_spec("A:4"))
    assert (a4.order, a4.fitting, a4.derived) == (12, 4, 4)
    assert c10_cases(parse_spec("A:4")) == ["2c"]
    d5 = c10_data(parse_spec("D:5"))
    assert (d5.fitting, d5.derived, d5.fitting_elementary_abelian) == (5, 5, True)
    assert c10_cases(parse_spec("D:3")) == ["2d"]
    assert c10_cases(parse_spec("A:5")) == ["3"]
    assert c10_cases(parse_spec("EA:3^2")) == ["1"]
    assert c10_cases(parse_spec("Z:4")) == []
    assert c10_cases(parse_spec("Z:6")) == []


def test_c10_witnesses_report():
    rep = verify_c10_witnesses()
    assert rep.passed
    cases = set(rep.cases)
    assert {"A:4 (case 2c)", "D:3 (case 2d)", "D:5 (case 2d)", "A:5 (case 3)"} <= cases
    assert {"Z:4 (non-witness)", "D:4 (non-witness)", "Z:6 (non-witness)"} <= cases


def test_bounds_checked():
    with pytest.raises(ValueError):
        verify("C12", Bounds(max_n=1000))
