"""Closed bracket-product form of pi on the cyclic (weight-zero) subalgebra.

For x = K F_{i_1}...F_{i_l} E_{j_1}...E_{j_l} with (i) a permutation of (j),

    pi(x) = pi(K) prod_r [omega_{i_r}; s_r - s'_r] [omega_{j_r + 1}; t_r - t'_r]

where s_r (s'_r) counts i_r (i_r - 1) in the multiset (j_1..j_l) minus (i_{r+1}..i_l),
and t_r (t'_r) counts j_r + 1 (j_r) in (j_{r+1}..j_l).
"""
from __future__ import annotations

from collections import Counter
from itertools import product

from .pbw import AlgebraError, UqElement


class NotCyclic(AlgebraError):
    """The input does not commute with the K_i."""


def _bracket(A, i: int, m: int):
    """[omega_i; m] as a torus element of A^q."""
    F = A.field
    d = (F.q - F.q.inverse()).inverse()
    unit = [0] * A.N
    plus = list(unit)
    plus[i - 1] = 1
    minus = list(unit)
    minus[i - 1] = -1
    return A.mono(a=plus, coeff=F.qpow(m) * d) - A.mono(a=minus, coeff=F.qpow(-m) * d)


def bracket_product(A, fseq, eseq):
    """The bracket product for one word pair, without the K factor."""
    fseq, eseq = list(fseq), list(eseq)
    if Counter(fseq) != Counter(eseq):
        raise NotCyclic(f"F indices {fseq} are not a permutation of E indices {eseq}")
    out = A.one()
    l = len(fseq)
    for r in range(l):
        rest = Counter(eseq)
        rest.subtract(Counter(fseq[r + 1:]))
        s = rest[fseq[r]] if rest[fseq[r]] > 0 else 0
        sp = rest[fseq[r] - 1] if rest[fseq[r] - 1] > 0 else 0
        tail = eseq[r + 1:]
        t = tail.count(eseq[r] + 1)
        tp = tail.count(eseq[r])
        out = out * _bracket(A, fseq[r], s - sp) * _bracket(A, eseq[r] + 1, t - tp)
    return out


def word_terms(x: UqElement):
    """Expand x into (coeff, k_exps, F indices, E indices) with K moved to the left."""
    alg = x.alg
    F = alg.field
    out = []
    for (f, k, e), c in sorted(x.terms.items()):
        fwords = [alg.letter_words(False, p) for p, m in enumerate(f) for _ in range(m)]
        ewords = [alg.letter_words(True, p) for p, m in enumerate(e) for _ in range(m)]
        for fchoice in product(*[list(w.items()) for w in fwords]):
            fc = F.one
            fseq = []
            for word, cw in fchoice:
                fc = fc * cw
                fseq.extend(g[1] for g in word)
            # F_i Kb^k = q^{<k, e_i - e_{i+1}>} Kb^k F_i
            shift = sum(k[i - 1] - k[i] for i in fseq)
            fc = fc * F.qpow(shift)
            for echoice in product(*[list(w.items()) for w in ewords]):
                ec = fc
                eseq = []
                for word, cw in echoice:
                    ec = ec * cw
                    eseq.extend(g[1] for g in word)
                out.append((c * ec, k, tuple(fseq), tuple(eseq)))
    return out


def cyclic_bracket_form(x, A=None):
    """pi(x) for x in the cyclic subalgebra, computed from the bracket-product formula.

    ``x`` is a UqElement or a list of (coeff, k_exps, F indices, E indices) terms.
    Returns a torus element of A^q.
    """
    from ..weylq import weyl_algebra

    if isinstance(x, UqElement):
        if any(any(w) for w in x.weights()):
            raise NotCyclic("element has nonzero weight")
        A = A or weyl_algebra(x.alg.n, x.alg.field)
        terms = word_terms(x)
    else:
        if A is None:
            raise AlgebraError("a word presentation needs the target algebra")
        terms = x
    out = A.zero()
    for c, k, fseq, eseq in terms:
        out = out + (A.mono(a=k) * bracket_product(A, fseq, eseq)).scale(c)
    return out
