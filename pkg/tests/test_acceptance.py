"""End-to-end acceptance checks; one test (or group) per criterion."""
import time
from itertools import product
from math import comb

import pytest

from qua.classify import (
    classification_sweep,
    grid_values,
    is_cp_highest_weight,
    kernel_annihilates,
    kernel_elements,
    mu_matches,
    partition_roots,
    solve_mu,
    verify_phi_relations,
)
from qua.modrep import (
    ExteriorWindow,
    GwaWindow,
    LeavesWindow,
    build_module,
    decompose_pullback,
    fock_spec,
    highest_weight_module,
    is_completely_pointed,
    is_irreducible_on_window,
    lq1_example_module,
)
from qua.scalars import ToralScalar, bracket, field, parse_toral
from qua.uq import uq_algebra
from qua.uq.identities import IDENTITY_TAGS, verify_identity
from qua.weylq import (
    check_pi_homomorphism,
    degree_zero_monomials,
    degree_zero_preimage,
    euler_degree,
    pi,
    weyl_algebra,
)

SEED_FIELD = field("c1", "c2", "c3")
SEEDS = [("c1", "1", "1"), ("c1", "c2", "1"), ("c1", "c2", "c3")]
TORSION_FREE_RANK_THREE = [("c1", "c2", "c3", "c4"), ("1/c1", "q*c2", "c1*c3", "c4/q^2")]


def seed_window(omega, radius=3):
    return GwaWindow(tuple(parse_toral(x, SEED_FIELD) for x in omega), radius, SEED_FIELD)


def fock_pieces():
    w = build_module(fock_spec(2, 5))
    return w, [p for p in decompose_pullback(w) if p.degree <= 5]


def highest_weight_corpus(max_a=2):
    """One window per completely pointed highest weight on the grid, n <= 3, realized by a pullback piece."""
    F = field("c1")
    out = []
    for n in (1, 2, 3):
        for lam in product(grid_values(1, max_a), repeat=n):
            if not is_cp_highest_weight(lam).ok:
                continue
            w = highest_weight_module(lam, radius=3, F=F)
            if isinstance(w, ExteriorWindow):
                continue
            out.append(w)
    return out


_HW = None


def hw_corpus():
    global _HW
    if _HW is None:
        _HW = highest_weight_corpus()
    return _HW


# ---------------------------------------------------------------- 1
@pytest.mark.criterion(1)
def test_identity_suite_rank_up_to_three():
    t0 = time.time()
    failures = []
    count = 0
    for n in (1, 2, 3):
        for tag in IDENTITY_TAGS:
            for r in verify_identity(tag, n):
                count += 1
                if not r.ok:
                    failures.append(r)
    assert not failures, failures[:3]
    assert count > 1000
    assert time.time() - t0 < 300


# ---------------------------------------------------------------- 2
@pytest.mark.criterion(2)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_pi_homomorphism(n):
    assert all(r.ok for r in check_pi_homomorphism(n))
    alg = uq_algebra(n)
    gens = [alg.E(i) for i in range(1, n + 1)] + [alg.F(i) for i in range(1, n + 1)]
    gens += [alg.Kb(j, s) for j in range(1, n + 2) for s in (1, -1)]
    assert all(euler_degree(pi(g)) == 0 for g in gens)


# ---------------------------------------------------------------- 3
@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_degree_zero_preimages(n):
    A = weyl_algebra(n)
    monos = degree_zero_monomials(n, 3)
    # oracle: count of (k, l) with disjoint supports and equal sums <= 3
    expected = sum(
        1
        for e in product(range(-3, 4), repeat=n + 1)
        if sum(e) == 0 and sum(x for x in e if x > 0) <= 3
    )
    assert len(monos) == expected
    for e in monos:
        a = A.mono(e=e)
        assert pi(degree_zero_preimage(a)) == a, e


# ---------------------------------------------------------------- 4
@pytest.mark.criterion(4)
def test_fock_decomposition():
    w, pieces = fock_pieces()
    F = w.field
    assert [p.dimension for p in pieces] == [comb(m + 2, 2) for m in range(6)] == [1, 3, 6, 10, 15, 21]
    for m, p in enumerate(pieces):
        assert p.complete
        assert is_completely_pointed(p, "sl")
        assert is_irreducible_on_window(p).irreducible
        assert p.highest_weight == (F.qpow(m), F.one)
        assert w.weight(p.highest_point) == (F.qpow(m), F.one, F.one)


# ---------------------------------------------------------------- 5
def _fe_bracket_failures(w):
    alg = w.alg
    bad = []
    checked = 0
    for g in w.interior(2):
        wt = w.weight(g)
        for i in range(1, w.n + 1):
            res = w.act(alg.F(i) * alg.E(i), g)
            if isinstance(res, LeavesWindow):
                continue
            checked += 1
            c = bracket(wt[i - 1], 1) * bracket(wt[i], 0)
            if res != ({g: c} if not c.is_zero() else {}):
                bad.append((g, i))
    return checked, bad


@pytest.mark.criterion(5)
def test_fe_bracket_on_fock_pieces():
    _, pieces = fock_pieces()
    for p in pieces:
        checked, bad = _fe_bracket_failures(p)
        assert not bad


@pytest.mark.criterion(5)
@pytest.mark.parametrize("omega", SEEDS)
def test_fe_bracket_on_seeds(omega):
    checked, bad = _fe_bracket_failures(seed_window(omega, 4))
    assert checked > 0 and not bad


@pytest.mark.criterion(5)
def test_fe_bracket_on_highest_weight_families():
    corpus = hw_corpus()
    assert len(corpus) > 100
    total = 0
    for w in corpus:
        checked, bad = _fe_bracket_failures(w)
        total += checked
        assert not bad, w.lam
    assert total > 0


@pytest.mark.criterion(5)
def test_fe_bracket_on_lq_example():
    checked, bad = _fe_bracket_failures(lq1_example_module(12))
    assert checked > 0 and not bad


# ---------------------------------------------------------------- 6
def _mu_round_trip(w):
    pts = w.interior(1) or w.points()
    for g in pts[:: max(1, len(pts) // 5)]:
        own = tuple(ToralScalar.from_scalar(x) for x in w.weight(g))
        sols = solve_mu(w, g)
        assert any(mu_matches(s.mu, own) for s in sols), g


@pytest.mark.criterion(6)
def test_mu_round_trip_on_corpus():
    _, pieces = fock_pieces()
    for p in pieces[1:]:
        _mu_round_trip(p)
    for omega in SEEDS:
        _mu_round_trip(seed_window(omega, 2))
    for w in hw_corpus()[::7]:
        _mu_round_trip(w)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("omega", TORSION_FREE_RANK_THREE)
def test_phi_relations_rank_three(omega):
    F = field("c1", "c2", "c3", "c4")
    w = GwaWindow(tuple(parse_toral(x, F) for x in omega), 2, F)
    part = partition_roots(w)
    assert part.T == part.T_s and len(part.T_s) == 12
    for g in [(0, 0, 0, 0), (1, -1, 0, 1), (-1, 1, 1, 0)]:
        results = verify_phi_relations(w, g)
        bad = [r for r in results if not r.ok]
        assert not bad, bad[:3]
        names = {r.check for r in results}
        assert {"z1", "z2", "z3", "phi1", "phi2", "kappa1", "kappa3", "kappa4", "kappa6"} <= names
        assert {"main-ijl", "main-ikl", "main-jkl"} <= names


# ---------------------------------------------------------------- 7
@pytest.mark.criterion(7)
def test_classification_agreement_on_grid():
    t0 = time.time()
    for n in (1, 2, 3):
        assert classification_sweep(n, 3) == [], n
    assert time.time() - t0 < 600


# ---------------------------------------------------------------- 8
@pytest.mark.criterion(8)
def test_lq_golden_values():
    alg = uq_algebra(1)
    F = alg.field
    q = F.q
    top = 1 + q
    w = lq1_example_module(12)
    fact = [F.one]
    for k in range(1, 12):
        fact.append(fact[-1] * F.qint(k))
    for k in range(0, 11):
        Fk = alg.F(1) ** k
        # independent route: normal form of E F^k on v_0 (E v_0 = 0, Kb_1 = 1+q, Kb_2 = 1)
        coeff = F.zero
        for (f, kk, e), c in (alg.E(1) * Fk).terms.items():
            if e[0] == 0:
                assert f[0] == k - 1
                coeff = coeff + c * top ** kk[0]
        if k == 0:
            assert coeff.is_zero()
        else:
            derived = coeff * fact[k - 1] / fact[k]
            assert derived == bracket(top, 1 - k)
            assert w.act(alg.E(1), w.vector(k)) == {w.vector(k - 1): bracket(top, 1 - k)}
        # K F^k = q^{-2k} F^k K
        assert alg.K(1) * Fk == (Fk * alg.K(1)).scale(q ** (-2 * k))
        assert w.act(alg.K(1), w.vector(k)) == {w.vector(k): q ** (-2 * k) * top}


# ---------------------------------------------------------------- 9
def _closure_ok(w):
    p = partition_roots(w)
    assert not p.inconclusive
    assert p.covers(), p.to_json()
    assert p.closure_failures() == []


@pytest.mark.criterion(9)
def test_partition_closure_on_corpus():
    w, pieces = fock_pieces()
    _closure_ok(w)
    for p in pieces:
        _closure_ok(p)
    for omega in SEEDS:
        _closure_ok(seed_window(omega, 3))
    _closure_ok(lq1_example_module(8))
    for w in hw_corpus()[::5]:
        _closure_ok(w)


# ---------------------------------------------------------------- 10
@pytest.mark.criterion(10)
def test_kernel_annihilation():
    ks = kernel_elements(2)
    assert len(ks) >= 3
    F1 = field("c1")
    windows = [build_module(fock_spec(2, 5))] + [seed_window(o, 5) for o in SEEDS]
    for lam in (("c1", "1"), ("1", "c1"), ("c1", "1/(q*c1)")):
        windows.append(highest_weight_module(tuple(parse_toral(x, F1) for x in lam), radius=5, F=F1))
    for name, x in ks:
        assert not x.is_zero()
        assert pi(x).is_zero()
        for w in windows:
            rep = kernel_annihilates(x, [w])
            assert rep.status == "pass", (name, w, rep)
