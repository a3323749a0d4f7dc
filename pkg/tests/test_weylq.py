import pytest
from hypothesis import given, settings, strategies as st

from qua.uq import cyclic_bracket_form, parse_element, uq_algebra
from qua.uq.cyclic import NotCyclic
from qua.weylq import (
    NotDegreeZero,
    check_pi_homomorphism,
    check_weyl_relations,
    degree_zero_monomials,
    degree_zero_preimage,
    euler_degree,
    parse_gwa,
    pi,
    render_gwa,
    weyl_algebra,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pi_is_a_homomorphism(n):
    bad = [r for r in check_pi_homomorphism(n) if not r.ok]
    assert not bad, bad[:3]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_weyl_relations(n):
    bad = [r for r in check_weyl_relations(n) if not r.ok]
    assert not bad, bad[:3]


@pytest.mark.parametrize("n", [1, 2])
def test_generators_have_degree_zero(n):
    alg = uq_algebra(n)
    gens = [alg.E(i) for i in range(1, n + 1)] + [alg.F(i) for i in range(1, n + 1)]
    gens += [alg.Kb(j, s) for j in range(1, n + 2) for s in (1, -1)]
    for g in gens:
        assert euler_degree(pi(g)) == 0


def test_pi_on_generators():
    alg = uq_algebra(2)
    A = weyl_algebra(2)
    assert pi(alg.E(1)) == parse_gwa("x1*y2", A)
    assert pi(alg.F(2)) == parse_gwa("x3*y2", A)
    assert pi(alg.Kb(3, -1)) == parse_gwa("w3^-1", A)


def test_preimage_recursion_golden():
    """x_1 y_3 comes from Kb_2 (E_1 E_2 - q E_2 E_1); using Kb_2^-1 instead lands on w2^-2 x1 y3."""
    A = weyl_algebra(2)
    alg = uq_algebra(2)
    q = alg.field.q
    inner = alg.E(1) * alg.E(2) - (alg.E(2) * alg.E(1)).scale(q)
    assert render_gwa(A.pi(alg.Kb(2) * inner)) == "x1*y3"
    assert render_gwa(A.pi(alg.Kb(2, -1) * inner)) == "w2^(-2)*x1*y3"
    assert A.step_preimage(1, 3) == alg.Kb(2) * inner


@pytest.mark.parametrize("n", [1, 2])
def test_degree_zero_preimage_roundtrip(n):
    A = weyl_algebra(n)
    monos = [e for e in degree_zero_monomials(n, 2) if any(e)]
    assert monos
    for e in monos:
        a = A.mono(e=e)
        assert pi(degree_zero_preimage(a)) == a, e


def test_degree_zero_monomial_count():
    # n = 1: (0,0), (+-k, -+k) for k = 1..3
    assert len(degree_zero_monomials(1, 3)) == 7


def test_degree_zero_preimage_rejects_nonzero_degree():
    A = weyl_algebra(2)
    with pytest.raises(NotDegreeZero):
        degree_zero_preimage(parse_gwa("x1", A))


def test_parse_render_roundtrip():
    A = weyl_algebra(2)
    a = parse_gwa("(q+1)*x1*y2 - w3^-1*x2*y1 + Eq", A)
    assert parse_gwa(render_gwa(a), A) == a


words2 = st.lists(st.sampled_from(["E1", "E2", "F1", "F2", "Kb1", "Kb2^-1", "Kb3"]), min_size=1, max_size=4)


@given(words2, words2)
@settings(max_examples=40, deadline=None)
def test_pi_multiplicative_on_random_words(a, b):
    alg = uq_algebra(2)
    x = parse_element(" ".join(a), alg)
    y = parse_element(" ".join(b), alg)
    assert pi(x * y) == pi(x) * pi(y)


cyclic_words = st.permutations([1, 1, 2]).flatmap(
    lambda es: st.permutations(list(es)).map(lambda fs: (tuple(fs), tuple(es)))
)


@given(cyclic_words, st.lists(st.integers(-1, 1), min_size=3, max_size=3))
@settings(max_examples=40, deadline=None)
def test_cyclic_bracket_form_matches_pi(pair, k):
    alg = uq_algebra(2)
    fs, es = pair
    x = alg.mono(k=k)
    for i in fs:
        x = x * alg.F(i)
    for j in es:
        x = x * alg.E(j)
    assert cyclic_bracket_form(x) == pi(x)


def test_cyclic_bracket_form_rejects_nonzero_weight():
    alg = uq_algebra(2)
    with pytest.raises(NotCyclic):
        cyclic_bracket_form(alg.E(1))
