"""Defining relations and the identity suite for U_q(gl_{n+1}).

Every check reduces LHS - RHS to PBW normal form and compares with zero.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations, product
from typing import Callable, Iterable

from ..rootsys import Root
from ..scalars import Field, Scalar, field
from .braid import braid_T, root_vector, simplified_root_vector
from .grammar import render_element
from .pbw import AlgebraError, UqElement, UqGl, uq_algebra

IDENTITY_RANK_CAP = 4


@dataclass(frozen=True)
class CheckResult:
    check: str
    indices: tuple
    status: str  # "pass" | "fail"
    residual: str = "0"

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        d = asdict(self)
        d["indices"] = list(self.indices)
        return d


# A relation is a list of (coefficient, word); words are tuples of generator symbols
# ('E', i), ('F', i), ('Kb', j, +-1).  The relation asserts sum c * word = 0.
Word = tuple
Relation = tuple  # (name, indices, [(Scalar, Word), ...])


def defining_relations(n: int, F: Field | None = None) -> list[Relation]:
    """The defining relations of U_q(gl_{n+1}) (torus, E-F commutator, far commutation, Serre) as generator words."""
    F = F or field()
    one = F.one
    q = F.q
    qq = q - q.inverse()
    rels: list[Relation] = []
    for i in range(1, n + 1):
        for j in range(1, n + 2):
            e = (1 if j == i else 0) - (1 if j == i + 1 else 0)
            kj, kji = ("Kb", j, 1), ("Kb", j, -1)
            rels.append(("rel1", ("E", i, j), [(one, (kj, ("E", i), kji)), (-F.qpow(e), (("E", i),))]))
            rels.append(("rel1", ("F", i, j), [(one, (kj, ("F", i), kji)), (-F.qpow(-e), (("F", i),))]))
    for i, j in combinations(range(1, n + 2), 2):
        rels.append(("rel1", ("KK", i, j), [(one, (("Kb", i, 1), ("Kb", j, 1))), (-one, (("Kb", j, 1), ("Kb", i, 1)))]))
    for j in range(1, n + 2):
        rels.append(("rel1", ("Kinv", j), [(one, (("Kb", j, 1), ("Kb", j, -1))), (-one, ())]))
        rels.append(("rel1", ("Kinv'", j), [(one, (("Kb", j, -1), ("Kb", j, 1))), (-one, ())]))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            terms = [(one, (("E", i), ("F", j))), (-one, (("F", j), ("E", i)))]
            if i == j:
                c = qq.inverse()
                terms += [(-c, (("Kb", i, 1), ("Kb", i + 1, -1))), (c, (("Kb", i, -1), ("Kb", i + 1, 1)))]
            rels.append(("rel2", (i, j), terms))
    for i, j in product(range(1, n + 1), repeat=2):
        if abs(i - j) > 1 and i < j:
            for g in ("E", "F"):
                rels.append(("rel3", (g, i, j), [(one, ((g, i), (g, j))), (-one, ((g, j), (g, i)))]))
    two = F.qint(2)
    for i, j in product(range(1, n + 1), repeat=2):
        if abs(i - j) == 1:
            for g in ("E", "F"):
                rels.append(
                    (
                        "serre",
                        (g, i, j),
                        [
                            (one, ((g, i), (g, i), (g, j))),
                            (-two, ((g, i), (g, j), (g, i))),
                            (one, ((g, j), (g, i), (g, i))),
                        ],
                    )
                )
    return rels


def evaluate_relation(terms, gen: Callable, one, mul=None):
    """Evaluate sum c * word with gen(symbol) giving ring elements."""
    total = None
    for c, word in terms:
        x = one
        for g in word:
            x = x * gen(g) if mul is None else mul(x, gen(g))
        x = x.scale(c)
        total = x if total is None else total + x
    return total


def _result(check: str, indices: tuple, residual: UqElement) -> CheckResult:
    if residual.is_zero():
        return CheckResult(check, tuple(indices), "pass")
    return CheckResult(check, tuple(indices), "fail", render_element(residual))


class _Ctx:
    def __init__(self, alg: UqGl):
        self.alg = alg
        self.n = alg.n
        self.q = alg.field.q
        self.qi = alg.field.qpow(-1)
        self.qq = self.q - self.qi

    def Ep(self, i, j):
        return self.alg.letter(Root(i, j))

    def Em(self, i, j):
        """E_{-e_i+e_j}."""
        return self.alg.letter(Root(j, i))

    def Kij(self, i, j, power=1):
        return self.alg.Kij(i, j, power)

    def br(self, a, b, v=1):
        return self.alg.qcommutator(a, b, v)

    def triples(self):
        return combinations(range(1, self.n + 2), 3)

    def quads(self):
        return combinations(range(1, self.n + 2), 4)

    def generators(self):
        a = self.alg
        gens = [("E", i) for i in range(1, a.n + 1)] + [("F", i) for i in range(1, a.n + 1)]
        gens += [("Kb", j, 1) for j in range(1, a.n + 2)] + [("Kb", j, -1) for j in range(1, a.n + 2)]
        return gens


def _rel_check(tag):
    def run(c: _Ctx):
        alg = c.alg
        for name, idx, terms in defining_relations(c.n, alg.field):
            if name != tag:
                continue
            yield idx, evaluate_relation(terms, alg.generator, alg.one())

    return run


def _qg1(c: _Ctx):
    for i, j, k in c.triples():
        yield (i, j, k), c.Ep(i, k) + c.br(c.Ep(i, j), c.Ep(j, k), c.qi)


def _qg2(c: _Ctx):
    for i, j, k in c.triples():
        yield (i, j, k), c.Em(i, k) + c.br(c.Em(j, k), c.Em(i, j), c.q)


def _qg3(c: _Ctx):
    for i, j, k in c.triples():
        yield (i, j, k, "a"), c.br(c.Ep(j, k), c.Em(i, k)) + c.q * (c.Kij(j, k, -1) * c.Em(i, j))
        yield (i, j, k, "b"), c.br(c.Ep(i, k), c.Em(j, k)) + c.Kij(j, k) * c.Ep(i, j)


def _qg4(c: _Ctx):
    for i, j, k in c.triples():
        yield (i, j, k, "a"), c.br(c.Ep(i, j), c.Em(i, k)) - c.Kij(i, j) * c.Em(j, k)
        yield (i, j, k, "b"), c.br(c.Ep(i, k), c.Em(i, j)) - c.qi * (c.Kij(i, j, -1) * c.Ep(j, k))


def _qg6(c: _Ctx):
    for i, j, k in c.triples():
        yield (i, j, k, "a"), c.Ep(j, k) * c.Ep(i, k) - c.qi * (c.Ep(i, k) * c.Ep(j, k))
        yield (i, j, k, "b"), c.Ep(i, k) * c.Ep(i, j) - c.qi * (c.Ep(i, j) * c.Ep(i, k))


def _qg7(c: _Ctx):
    for i, j, k in c.triples():
        yield (i, j, k, "a"), c.Em(j, k) * c.Em(i, k) - c.qi * (c.Em(i, k) * c.Em(j, k))
        yield (i, j, k, "b"), c.Em(i, k) * c.Em(i, j) - c.qi * (c.Em(i, j) * c.Em(i, k))


def _four_index(c: _Ctx):
    qq = c.qq
    for i, j, k, l in c.quads():
        t = (i, j, k, l)
        yield t + ("a",), c.br(c.Ep(i, j), c.Em(k, l))
        yield t + ("b",), c.br(c.Ep(i, j), c.Ep(k, l))
        yield t + ("c",), c.br(c.Ep(i, l), c.Ep(j, k))
        yield t + ("d",), c.br(c.Ep(i, k), c.Ep(j, l)) - qq * (c.Ep(i, l) * c.Ep(j, k))
        yield t + ("e",), c.br(c.Em(i, k), c.Em(j, l)) - qq * (c.Em(i, l) * c.Em(j, k))
        # the weight of this line forces E_(i,j) F_(k,l) on the right-hand side
        yield t + ("f",), c.br(c.Ep(i, k), c.Em(j, l)) + qq * (c.Kij(j, k) * c.Ep(i, j) * c.Em(k, l))
        yield t + ("g",), c.br(c.Ep(j, l), c.Em(i, k)) - qq * (c.Kij(j, k, -1) * c.Ep(k, l) * c.Em(i, j))


def _kij_comm(c: _Ctx):
    alg = c.alg
    qq_inv = c.qq.inverse()
    for i, j in combinations(range(1, c.n + 2), 2):
        bracket = (c.Kij(i, j) - c.Kij(i, j, -1)).scale(qq_inv)
        yield (i, j), c.br(c.Ep(i, j), c.Em(i, j)) - bracket


def _braid(c: _Ctx):
    alg = c.alg
    gens = c.generators()
    for i in range(1, c.n + 1):
        for j in range(i + 1, c.n + 1):
            for g in gens:
                x = alg.generator(g)
                if j == i + 1:
                    lhs = braid_T(i, braid_T(j, braid_T(i, x)))
                    rhs = braid_T(j, braid_T(i, braid_T(j, x)))
                else:
                    lhs = braid_T(i, braid_T(j, x))
                    rhs = braid_T(j, braid_T(i, x))
                yield (i, j) + g, lhs - rhs


def _braid_inverse(c: _Ctx):
    alg = c.alg
    for i in range(1, c.n + 1):
        for g in c.generators():
            x = alg.generator(g)
            yield (i, "inv-fwd") + g, braid_T(i, braid_T(i, x), inverse=True) - x
            yield (i, "fwd-inv") + g, braid_T(i, braid_T(i, x, inverse=True)) - x


def _braid_morphism(c: _Ctx):
    """T_i and T_i^-1 send every defining relation to zero."""
    alg = c.alg
    for i in range(1, c.n + 1):
        for inverse in (False, True):
            def gen(g, i=i, inverse=inverse):
                return braid_T(i, alg.generator(g), inverse=inverse)

            for name, idx, terms in defining_relations(c.n, alg.field):
                yield (i, "inv" if inverse else "fwd", name) + tuple(idx), evaluate_relation(terms, gen, alg.one())


def _cp_identity(c: _Ctx):
    alg = c.alg
    for i in range(1, c.n):
        yield (i,), braid_T(i, braid_T(i + 1, alg.E(i))) - alg.E(i + 1)
        yield (i, "F"), braid_T(i, braid_T(i + 1, alg.F(i))) - alg.F(i + 1)


def _root_vectors(c: _Ctx):
    alg = c.alg
    for beta in alg.roots + tuple(-r for r in alg.roots):
        yield (str(beta), "T-string"), root_vector(alg, beta) - alg.letter(beta)
        yield (str(beta), "simplified"), simplified_root_vector(alg, beta) - alg.letter(beta)


def _confluence(c: _Ctx):
    """Both bracketings of every triple of letters and torus generators agree."""
    alg = c.alg
    letters = [alg.letter(b) for b in alg.roots] + [alg.letter(-b) for b in alg.roots]
    letters += [alg.Kb(j) for j in range(1, alg.n + 2)]
    names = [str(b) for b in alg.roots] + [str(-b) for b in alg.roots] + [f"Kb{j}" for j in range(1, alg.n + 2)]
    for (a, na), (b, nb), (d, nd) in product(list(zip(letters, names)), repeat=3):
        yield (na, nb, nd), (a * b) * d - a * (b * d)


IDENTITY_TAGS: dict[str, Callable] = {
    "rel1": _rel_check("rel1"),
    "rel2": _rel_check("rel2"),
    "rel3": _rel_check("rel3"),
    "serre": _rel_check("serre"),
    "qg1": _qg1,
    "qg2": _qg2,
    "qg3": _qg3,
    "qg4": _qg4,
    "qg6": _qg6,
    "qg7": _qg7,
    "four-index": _four_index,
    "Kij-comm": _kij_comm,
    "braid": _braid,
    "braid-inverse": _braid_inverse,
    "braid-morphism": _braid_morphism,
    "cp-identity": _cp_identity,
    "root-vectors": _root_vectors,
    "confluence": _confluence,
}


def verify_identity(tag: str, n: int, F: Field | None = None) -> list[CheckResult]:
    """Run one identity family over every admissible index tuple."""
    if tag not in IDENTITY_TAGS:
        raise KeyError(f"unknown identity tag {tag!r}; known: {', '.join(IDENTITY_TAGS)}")
    if not isinstance(n, int) or n < 1:
        raise AlgebraError(f"rank must be a positive integer, got {n!r}")
    if n > IDENTITY_RANK_CAP:
        raise AlgebraError(f"identity sweeps are capped at rank {IDENTITY_RANK_CAP}")
    alg = uq_algebra(n, F or field())
    return [_result(tag, idx, res) for idx, res in IDENTITY_TAGS[tag](_Ctx(alg))]


def verify_all(n: int, tags: Iterable[str] | None = None) -> list[CheckResult]:
    out = []
    for tag in tags or IDENTITY_TAGS:
        out.extend(verify_identity(tag, n))
    return out
