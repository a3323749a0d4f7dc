"""Lusztig automorphisms T_i and root vectors built from them."""
from __future__ import annotations

from ..rootsys import Root, convex_order, longest_word
from .pbw import AlgebraError, UqElement, UqGl


def _gen_image(alg: UqGl, i: int, g, inverse: bool) -> UqElement:
    """T_i (or its inverse) on a simple generator symbol."""
    kind = g[0]
    if kind == "Kb":
        j = g[1]
        j2 = {i: i + 1, i + 1: i}.get(j, j)
        return alg.Kb(j2, g[2] if len(g) > 2 else 1)
    j = g[1]
    q = alg.field.q
    qi = alg.field.qpow(-1)
    E, F = alg.E, alg.F
    if kind == "E":
        if j == i:
            return -(alg.K(i, -1) * F(i)) if inverse else -(F(i) * alg.K(i))
        if abs(i - j) == 1:
            if inverse:
                return qi * (E(i) * E(j)) - E(j) * E(i)
            return qi * (E(j) * E(i)) - E(i) * E(j)
        return E(j)
    if kind == "F":
        if j == i:
            return -(E(i) * alg.K(i)) if inverse else -(alg.K(i, -1) * E(i))
        if abs(i - j) == 1:
            if inverse:
                return q * (F(j) * F(i)) - F(i) * F(j)
            return q * (F(i) * F(j)) - F(j) * F(i)
        return F(j)
    raise AlgebraError(f"unknown generator {g!r}")


def _letter_image(alg: UqGl, i: int, positive: bool, p: int, inverse: bool) -> UqElement:
    cache = alg.caches.setdefault("braid_letters", {})
    key = (i, positive, p, inverse)
    out = cache.get(key)
    if out is None:
        out = alg.zero()
        for word, c in alg.letter_words(positive, p).items():
            img = alg.scalar(c)
            for g in word:
                img = img * _gen_image(alg, i, g, inverse)
            out = out + img
        cache[key] = out
    return out


def _mono_image(alg: UqGl, i: int, mono, inverse: bool) -> UqElement:
    cache = alg.caches.setdefault("braid_monos", {})
    key = (i, mono, inverse)
    out = cache.get(key)
    if out is not None:
        return out
    f, k, e = mono
    out = alg.one()
    for p, m in enumerate(f):
        for _ in range(m):
            out = out * _letter_image(alg, i, False, p, inverse)
    kk = list(k)
    kk[i - 1], kk[i] = kk[i], kk[i - 1]
    out = out * alg.mono(k=kk)
    for p, m in enumerate(e):
        for _ in range(m):
            out = out * _letter_image(alg, i, True, p, inverse)
    cache[key] = out
    return out


def braid_T(i: int, a: UqElement, inverse: bool = False) -> UqElement:
    """Apply T_i (or T_i^-1) to an element."""
    alg = a.alg
    if not 1 <= i <= alg.n:
        raise AlgebraError(f"braid index {i} outside 1..{alg.n}")
    out = alg.zero()
    for mono, c in a.terms.items():
        out = out + _mono_image(alg, i, mono, inverse).scale(c)
    return out


def root_vector(alg: UqGl, beta: Root) -> UqElement:
    """E_beta = T_{i_1}...T_{i_{k-1}}(E_{i_k}) for beta = beta_k in convex order; F-analogue for -beta."""
    beta = Root(*beta)
    cache = alg.caches.setdefault("root_vectors", {})
    if beta in cache:
        return cache[beta]
    pos = beta if beta.positive else -beta
    order = convex_order(alg.n)
    word = longest_word(alg.n)
    k = order.index(pos)
    x = alg.E(word[k]) if beta.positive else alg.F(word[k])
    for i in reversed(word[:k]):
        x = braid_T(i, x)
    cache[beta] = x
    return x


def simplified_root_vector(alg: UqGl, beta: Root) -> UqElement:
    """E_(a,b) = T_a T_{a+1} ... T_{b-2}(E_{b-1}), and the F-analogue."""
    beta = Root(*beta)
    pos = beta if beta.positive else -beta
    a, b = pos
    x = alg.E(b - 1) if beta.positive else alg.F(b - 1)
    for i in reversed(range(a, b - 1)):
        x = braid_T(i, x)
    return x
