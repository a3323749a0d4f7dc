import json
from math import comb

import pytest

from qua.modrep import (
    ExteriorWindow,
    GwaWindow,
    LeavesWindow,
    ModuleSpec,
    NotCompletelyPointedFamily,
    SpecError,
    build_module,
    check_relations,
    decompose_pullback,
    fock_spec,
    highest_weight_module,
    is_completely_pointed,
    is_irreducible_on_window,
    lq1_example_module,
    window_from_json,
    window_to_dot,
    window_to_json,
)
from qua.scalars import ScalarParseError, field, parse_toral
from qua.uq import uq_algebra


def test_spec_validation():
    with pytest.raises(SpecError):
        ModuleSpec(kind="gwa-weight", n=2, omega=("1", "1"))
    with pytest.raises(SpecError):
        ModuleSpec(kind="nope", n=2)
    with pytest.raises(SpecError):
        ModuleSpec(kind="gwa-weight", n=0, omega=("1",))
    with pytest.raises(SpecError):
        ModuleSpec(kind="gwa-weight", n=1, omega=("1", "1"), radius=0)
    with pytest.raises(ScalarParseError):
        ModuleSpec.from_dict({"kind": "gwa-weight", "n": 1, "omega": ["c1", "q+"], "params": ["c1"]})


def test_spec_json_roundtrip():
    spec = ModuleSpec(kind="highest-weight", n=3, lam=("1", "q", "1"), radius=2)
    assert ModuleSpec.from_json(spec.to_json()) == spec


def test_fock_decomposition_small():
    w = build_module(fock_spec(2, 3))
    pieces = [p for p in decompose_pullback(w) if p.complete]
    assert [p.dimension for p in pieces] == [comb(m + 2, 2) for m in range(4)]
    F = w.field
    for m, p in enumerate(pieces):
        assert p.highest_point == (m, 0, 0)
        assert p.highest_weight == (F.qpow(m), F.one)
        assert is_completely_pointed(p, "sl")
        assert is_irreducible_on_window(p).irreducible


def test_truncated_pieces_are_inconclusive():
    w = build_module(fock_spec(1, 2))
    top = [p for p in decompose_pullback(w) if not p.complete]
    assert top
    assert all(is_irreducible_on_window(p).status == "inconclusive-truncated" for p in top)


@pytest.mark.parametrize("omega", [("c1", "1", "1"), ("c1", "c2", "1"), ("c1", "c2", "c3"), ("1", "1", "1")])
def test_relations_hold_on_gwa_windows(omega):
    F = field("c1", "c2", "c3")
    w = GwaWindow(tuple(parse_toral(x, F) for x in omega), 3, F)
    results = check_relations(w, depth=3)
    assert results and all(r.status != "fail" for r in results)


@pytest.mark.parametrize("n,i", [(3, 2), (4, 2), (4, 3)])
def test_exterior_windows(n, i):
    w = ExteriorWindow(n, i)
    assert len(w.points()) == comb(n + 1, i)
    assert all(r.status != "fail" for r in check_relations(w, depth=0))
    assert is_completely_pointed(w, "sl")


def test_highest_weight_families():
    w = highest_weight_module(("q^2", "1", "1"), radius=3)
    assert w.dimension == 10
    w = highest_weight_module(("1", "q", "1"))
    assert len(w.points()) == 6
    F = field("c")
    w = highest_weight_module(("c", "1"), params=("c",))
    assert w.highest_weight == (F.param("c"), F.one)
    with pytest.raises(NotCompletelyPointedFamily):
        highest_weight_module(("q", "q"))


def test_act_reports_leaving_the_window():
    w = build_module(fock_spec(1, 2))
    alg = w.alg
    assert w.act(alg.F(1), (0, 0)) == {}
    res = w.act(alg.E(1), (2, 2))
    assert isinstance(res, LeavesWindow)


def test_pi_route_and_word_route_agree():
    F = field("c1")
    w = GwaWindow(tuple(parse_toral(x, F) for x in ("c1", "1", "1")), 3, F)
    alg = w.alg
    x = alg.F(1) * alg.E(2) * alg.E(1) + alg.letter((3, 1)).scale(F.q)
    for g in w.interior(3):
        assert w.act(x, g, route="words") == w.act(x, g)


def test_lq_example():
    w = lq1_example_module(6)
    F = w.field
    assert w.act(w.alg.E(1), w.vector(0)) == {}
    assert w.act(w.alg.K(1), w.vector(2)) == {w.vector(2): F.qpow(-4) * (1 + F.q)}


def test_dot_and_json_exports():
    w = build_module(fock_spec(2, 2))
    dot = window_to_dot(w, max_degree=2)
    assert dot.count("[label=\"(") == 10
    assert dot == window_to_dot(w, max_degree=2)
    text = window_to_json(w)
    w2 = window_from_json(text)
    assert window_to_json(w2) == text
    assert json.loads(text)["spec"]["omega"] == ["1", "1", "1"]
