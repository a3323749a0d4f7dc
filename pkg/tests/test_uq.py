import pytest
from hypothesis import given, settings, strategies as st

from qua.rootsys import Root, positive_roots
from qua.scalars import field
from qua.uq import AlgebraError, parse_element, render_element, uq_algebra
from qua.uq.braid import braid_T, root_vector, simplified_root_vector
from qua.uq.identities import IDENTITY_TAGS, defining_relations, evaluate_relation, verify_identity


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("tag", list(IDENTITY_TAGS))
def test_identity_family(tag, n):
    results = verify_identity(tag, n)
    bad = [r for r in results if not r.ok]
    assert not bad, bad[:3]


def test_identity_rank_guards():
    with pytest.raises(AlgebraError):
        verify_identity("qg1", 0)
    with pytest.raises(AlgebraError):
        verify_identity("qg1", 5)
    with pytest.raises(KeyError):
        verify_identity("nope", 2)


def test_four_index_literal_display_is_not_an_identity():
    """The right-hand side as literally displayed has the wrong weight; the corrected one holds."""
    alg = uq_algebra(3)
    F = alg.field
    L = alg.letter
    qq = F.q - F.q.inverse()
    i, j, k, l = 1, 2, 3, 4
    lhs = L(Root(i, k)) * L(Root(l, j)) - L(Root(l, j)) * L(Root(i, k))
    literal = -(alg.Kij(j, k) * L(Root(j, i)) * L(Root(k, l))).scale(qq)
    corrected = -(alg.Kij(j, k) * L(Root(i, j)) * L(Root(l, k))).scale(qq)
    assert not (lhs - literal).is_zero()
    assert (lhs - corrected).is_zero()


@pytest.mark.parametrize("n", [2, 3])
def test_root_vectors_match_braid_definition(n):
    alg = uq_algebra(n)
    for r in positive_roots(n):
        assert root_vector(alg, r) == alg.letter(r)
        assert simplified_root_vector(alg, r) == alg.letter(r)
        assert root_vector(alg, -r) == alg.letter(-r)


def test_braid_relation_example():
    alg = uq_algebra(2)
    # T_1 T_2 (E_1) = E_2
    assert braid_T(1, braid_T(2, alg.E(1))) == alg.E(2)


@pytest.mark.parametrize("n", [1, 2])
def test_braid_inverse_on_generators(n):
    alg = uq_algebra(n)
    gens = [alg.E(i) for i in range(1, n + 1)] + [alg.F(i) for i in range(1, n + 1)] + [alg.Kb(j) for j in range(1, n + 2)]
    for i in range(1, n + 1):
        for g in gens:
            assert braid_T(i, braid_T(i, g), inverse=True) == g


def test_grammar_roundtrip_and_errors():
    alg = uq_algebra(2)
    x = parse_element("E1 F2 + (q+1)*Kb3^-1 Ep(1,3) - Em(1,3)", alg)
    assert parse_element(render_element(x), alg) == x
    with pytest.raises(Exception):
        parse_element("E3", alg)
    with pytest.raises(Exception):
        parse_element("Ep(3,1)", alg)


def test_central_element():
    alg = uq_algebra(2)
    c = alg.central()
    for i in (1, 2):
        assert c * alg.E(i) == alg.E(i) * c
        assert c * alg.F(i) == alg.F(i) * c


words = st.lists(st.sampled_from(["E1", "E2", "F1", "F2", "Kb1", "Kb2^-1", "Kb3", "Ep(1,3)", "Em(1,3)"]), min_size=1, max_size=3)


@given(words, words, words)
@settings(max_examples=40, deadline=None)
def test_multiplication_is_associative(a, b, c):
    alg = uq_algebra(2)
    x, y, z = (parse_element(" ".join(w), alg) for w in (a, b, c))
    assert (x * y) * z == x * (y * z)


def test_relations_evaluate_to_zero_in_engine():
    alg = uq_algebra(2)
    F = alg.field

    def gen(g):
        if g[0] == "Kb":
            return alg.Kb(g[1], g[2])
        return alg.E(g[1]) if g[0] == "E" else alg.F(g[1])

    for name, idx, terms in defining_relations(2, F):
        assert evaluate_relation(terms, gen, alg.one()).is_zero(), (name, idx)


def test_parameter_field_elements():
    F = field("c1")
    alg = uq_algebra(1, F)
    x = parse_element("c1*E1 - c1^-1*F1", alg)
    assert (x * x).alg is alg
