import pytest
from hypothesis import given, settings, strategies as st

from qua.classify import (
    InconsistentModuleData,
    NoNilpotentRoots,
    NotInKernel,
    RequiresQuadraticExtension,
    _toral_pairs_from_sum,
    c_square_closed_form,
    classification_sweep,
    determinant_residuals,
    find_invariant_vector,
    gl_lift,
    grid_values,
    invariant_targets,
    is_cp_highest_weight,
    kernel_annihilates,
    kernel_elements,
    lambda1_closed_form,
    lambda2_closed_form,
    mu_matches,
    partition_roots,
    residuals_vanish,
    solve_mu,
    verify_phi_relations,
)
from qua.modrep import GwaWindow, build_module, fock_spec
from qua.rootsys import Root
from qua.scalars import ToralScalar, field, parse_toral

F3 = field("c1", "c2", "c3")


def gwa(omega, radius=3, F=F3):
    return GwaWindow(tuple(parse_toral(x, F) for x in omega), radius, F)


def roots(*pairs):
    return frozenset(Root(a, b) for a, b in pairs)


def test_engine_determinants_match_closed_forms():
    lam_t = [ToralScalar.param(k, 3) for k in (1, 2, 3)]
    lam = [t.to_scalar(F3) for t in lam_t]
    for fam, idx, r in determinant_residuals(lam_t, F3):
        if fam == "lambda1":
            assert r == lambda1_closed_form(lam, *idx)
        elif fam == "lambda2":
            # the engine's normalization differs from the closed form by q^-2
            assert r == F3.qpow(-2) * lambda2_closed_form(lam, *idx)


def test_middle_determinant_with_unit_neighbours():
    F = field("c")
    c = ToralScalar.param(1, 1)
    one = ToralScalar.one(1)
    (res,) = [r for fam, _, r in determinant_residuals((one, c, one), F) if fam == "c-square"]
    cs = c.to_scalar(F)
    # proportional to [c;0]^2([c;0]^2 - 1)
    ratio = res / c_square_closed_form(cs)
    assert ratio.laurent_terms() is not None and len(ratio.laurent_terms()) == 1


@pytest.mark.parametrize("n", [1, 2])
def test_predicate_agrees_with_determinants_on_grid(n):
    assert classification_sweep(n) == []


vals = grid_values(1, 3)


@given(st.lists(st.sampled_from(vals), min_size=3, max_size=3))
@settings(max_examples=150, deadline=None)
def test_predicate_agrees_with_determinants_random_rank_three(lam):
    assert is_cp_highest_weight(lam).ok == residuals_vanish(lam, field("c1"))


def test_family_tags():
    F = field("c")
    p = lambda *xs: tuple(parse_toral(x, F) for x in xs)
    assert is_cp_highest_weight(p("1", "-1", "1")).tags[0] == "all-pm-one"
    assert "q-slot-2" in is_cp_highest_weight(p("1", "-q", "1")).tags
    assert "c-first" in is_cp_highest_weight(p("c", "1", "1")).tags
    assert "c-last" in is_cp_highest_weight(p("1", "1", "c")).tags
    assert "adjacent-pair" in is_cp_highest_weight(p("1", "c", "1/(q*c)")).tags
    assert not is_cp_highest_weight(p("c", "1", "c"))
    assert not is_cp_highest_weight(p("q", "q", "1"))
    # overlaps are reported, not hidden
    assert set(is_cp_highest_weight(p("q", "1", "1")).tags) == {"q-slot-1", "c-first"}


def test_gl_lift():
    F = field()
    lam = tuple(parse_toral(x, F) for x in ("q", "1/q"))
    mu = gl_lift(lam)
    assert [str(m) for m in mu] == ["1", "1/q", "1"]


def test_partition_of_first_parameter_seed():
    p = partition_roots(gwa(("c1", "1", "1")))
    assert p.N_s == roots((2, 3), (3, 2))
    assert p.N_a == roots((1, 2), (1, 3))
    assert p.T_s == frozenset()
    assert p.T_a == roots((2, 1), (3, 1))
    assert p.covers() and p.is_closed()


def test_partition_of_two_parameter_seed():
    p = partition_roots(gwa(("c1", "c2", "1")))
    assert p.T_s == roots((1, 2), (2, 1))
    assert p.N_a == roots((1, 3), (2, 3))
    assert p.covers() and p.is_closed()


@given(st.lists(st.sampled_from(["1", "-1", "q", "1/q", "q^-2", "c1", "c2", "-c1*q"]), min_size=3, max_size=3))
@settings(max_examples=25, deadline=None)
def test_partition_closure_random_seeds(omega):
    p = partition_roots(gwa(omega, radius=2))
    assert p.is_closed()
    assert not (p.N & p.T)


def test_invariant_vector():
    w = gwa(("c1", "1", "1"))
    p = partition_roots(w)
    base, targets = invariant_targets(p)
    g = find_invariant_vector(w, p)
    for r in targets:
        assert w.act(w.alg.letter(r), g) == {}


def test_invariant_vector_needs_nilpotent_roots():
    w = gwa(("c1", "c2", "c3"), radius=2)
    p = partition_roots(w)
    assert not p.N
    with pytest.raises(NoNilpotentRoots):
        find_invariant_vector(w, p)


@pytest.mark.parametrize("omega", [("c1", "1", "1"), ("c1", "c2", "1"), ("c1", "c2", "c3")])
def test_solve_mu_recovers_weight(omega):
    w = gwa(omega, radius=2)
    for g in w.interior(1):
        sols = solve_mu(w, g)
        own = tuple(ToralScalar.from_scalar(x) for x in w.weight(g))
        assert any(mu_matches(s.mu, own) for s in sols)
        assert sols[0].tag == "identity"


def test_sum_equation_solver():
    F = field()
    q = F.q
    assert [str(t) for t in _toral_pairs_from_sum(q + q.inverse(), 0)] == ["1/q", "q"]
    assert [str(t) for t in _toral_pairs_from_sum(-2 * F.one, 0)] == ["-1"]
    with pytest.raises(RequiresQuadraticExtension):
        _toral_pairs_from_sum(3 * F.one, 0)
    with pytest.raises(RequiresQuadraticExtension):
        _toral_pairs_from_sum(q, 0)


def test_inconsistent_data_is_typed():
    assert issubclass(InconsistentModuleData, Exception)


def test_phi_relations_rank_three():
    F = field("c1", "c2", "c3", "c4")
    w = GwaWindow(tuple(parse_toral(x, F) for x in ("c1", "c2", "c3", "c4")), 1, F)
    results = verify_phi_relations(w, (0, 0, 0, 0))
    assert results and all(r.ok for r in results)
    names = {r.check for r in results}
    assert {"z1", "z2", "z3", "phi1", "phi2", "kappa1", "kappa3", "kappa4", "kappa6", "main-ijl"} <= names


def test_kernel_elements():
    ks = kernel_elements(2)
    assert len(ks) >= 3
    wins = [gwa(("c1", "1", "1"), 4), build_module(fock_spec(2, 4))]
    for name, x in ks:
        rep = kernel_annihilates(x, wins)
        assert rep.status in ("pass", "inconclusive"), name


def test_not_in_kernel():
    from qua.uq import uq_algebra

    with pytest.raises(NotInKernel):
        kernel_annihilates(uq_algebra(2).E(1), [])
