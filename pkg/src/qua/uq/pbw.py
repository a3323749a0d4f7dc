"""PBW normal forms for U_q(gl_{n+1}).

A monomial is a triple ``(f, k, e)``: exponents of the negative root vectors in
convex order, a Laurent exponent vector over Kb_1..Kb_{n+1}, and exponents of the
positive root vectors in convex order.  The normal order is F-part, K-part, E-part.

Non-simple root vectors are the letters

    E_(i,k) = q^-1 E_(i+1,k) E_(i,i+1) - E_(i,i+1) E_(i+1,k)
    F_(i,k) = q F_(i,i+1) F_(i+1,k) - F_(i+1,k) F_(i,i+1)

and products are straightened with memoized rewriting of letter pairs.  The
rules for E*E and F*F pairs are the root-vector commutation identities; an E
letter is moved past an F letter by reducing both to simple generators one
height at a time.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from typing import Iterable, Iterator

from ..rootsys import Root, convex_order
from ..scalars import Field, Scalar, field

Mono = tuple  # (f_exps, k_exps, e_exps)


class AlgebraError(ValueError):
    pass


class RankMismatch(AlgebraError):
    pass


def _acc(d: dict, key, c: Scalar) -> None:
    old = d.get(key)
    if old is None:
        d[key] = c
    else:
        s = old + c
        if s.is_zero():
            del d[key]
        else:
            d[key] = s


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if not v.is_zero()}


def _last(t: tuple) -> int:
    for p in range(len(t) - 1, -1, -1):
        if t[p]:
            return p
    return -1


def _first(t: tuple) -> int:
    for p, x in enumerate(t):
        if x:
            return p
    return -1


def _bump(t: tuple, p: int, by: int = 1) -> tuple:
    lst = list(t)
    lst[p] += by
    return tuple(lst)


def _vadd(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class _OrderedPart:
    """Straightening inside the subalgebra generated by one sign of root vectors."""

    def __init__(self, r: int, rules: dict, one: Scalar):
        self.r = r
        self.rules = rules  # (later, earlier) -> {tuple: coeff}
        self.one = one
        self.zero_t = (0,) * r
        self._prod: dict = {}
        self._letter: dict = {}

    def product(self, a: tuple, b: tuple) -> dict:
        key = (a, b)
        out = self._prod.get(key)
        if out is not None:
            return out
        fb = _first(b)
        la = _last(a)
        if fb < 0:
            out = {a: self.one}
        elif la < 0:
            out = {b: self.one}
        elif la <= fb:
            out = {_vadd(a, b): self.one}
        else:
            b2 = _bump(b, fb, -1)
            out = {}
            for t, c in self.letter(a, fb).items():
                for t2, c2 in self.product(t, b2).items():
                    _acc(out, t2, c * c2)
        self._prod[key] = out
        return out

    def letter(self, a: tuple, x: int) -> dict:
        """a * (letter x)."""
        key = (a, x)
        out = self._letter.get(key)
        if out is not None:
            return out
        la = _last(a)
        if la <= x:
            out = {_bump(a, x): self.one}
        else:
            a2 = _bump(a, la, -1)
            out = {}
            for t, c in self.rules[(la, x)].items():
                for t2, c2 in self.product(a2, t).items():
                    _acc(out, t2, c * c2)
        self._letter[key] = out
        return out


class UqGl:
    """U_q(gl_{n+1}) over a coefficient field, with PBW straightening."""

    def __init__(self, n: int, F: Field | None = None):
        if not isinstance(n, int) or n < 1:
            raise AlgebraError(f"rank must be a positive integer, got {n!r}")
        self.n = n
        self.field = F or field()
        self.roots: tuple[Root, ...] = tuple(convex_order(n))
        self.r = len(self.roots)
        self.index = {rt: p for p, rt in enumerate(self.roots)}
        self._zr = (0,) * self.r
        self._zk = (0,) * (n + 1)
        self._root_vec = [rt.vector(n) for rt in self.roots]
        self.one_s = self.field.one
        q = self.field.q
        self._q = q
        self._qq = q - q.inverse()  # q - q^-1
        self._plus = _OrderedPart(self.r, self._pair_rules(positive=True), self.one_s)
        self._minus = _OrderedPart(self.r, self._pair_rules(positive=False), self.one_s)
        self._ef_memo: dict = {}
        self._letter_ef_memo: dict = {}
        self._swap_memo: dict = {}
        self._busy: set = set()
        self._lock = threading.RLock()
        self._letter_words: dict = {}
        self.caches: dict = {}  # shared scratch space for braid/identity helpers

    def __repr__(self):
        return f"UqGl(n={self.n}, params={self.field.params})"

    def __reduce__(self):
        return (uq_algebra, (self.n, self.field))

    # ------------------------------------------------------------------ rules
    def _unit(self, *ps: int) -> tuple:
        t = list(self._zr)
        for p in ps:
            t[p] += 1
        return tuple(t)

    def _pair_rules(self, positive: bool) -> dict:
        F = self.field
        q, qi = F.q, F.qpow(-1)
        idx = self.index
        rules = {}
        for x, a in enumerate(self.roots):
            for y in range(x + 1, self.r):
                b = self.roots[y]
                i1, j1 = a
                i2, j2 = b
                pair = self._unit(x, y)
                if i1 == i2:
                    out = {pair: qi}
                elif j1 == i2:
                    tail = q if positive else -F.one
                    out = {pair: q, self._unit(idx[Root(i1, j2)]): tail}
                elif j1 < i2:
                    out = {pair: F.one}
                elif j2 == j1:
                    out = {pair: qi}
                elif j2 < j1:
                    out = {pair: F.one}
                else:
                    # crossing i1 < i2 < j1 < j2
                    out = {pair: F.one, self._unit(idx[Root(i1, j2)], idx[Root(i2, j1)]): -self._qq}
                rules[(y, x)] = out
        return rules

    # ---------------------------------------------------------------- weights
    def wt(self, t: tuple, sign: int) -> tuple:
        """Weight of an E-tuple (sign=+1) or F-tuple (sign=-1) as a Z^{n+1} vector."""
        v = [0] * (self.n + 1)
        for p, m in enumerate(t):
            if m:
                rv = self._root_vec[p]
                for a in range(self.n + 1):
                    v[a] += sign * m * rv[a]
        return tuple(v)

    def _pair(self, k: tuple, t: tuple, sign: int) -> int:
        # <k, wt(t)>, with wt(e_(i,j)) = e_i - e_j
        s = 0
        for p, m in enumerate(t):
            if m:
                i, j = self.roots[p]
                s += m * (k[i - 1] - k[j - 1])
        return sign * s

    def qpow(self, k: int) -> Scalar:
        return self.field.qpow(k)

    # --------------------------------------------------------- straightening
    def _ef(self, e: tuple, f: tuple) -> dict:
        """(E-monomial e) * (F-monomial f) in normal form."""
        key = (e, f)
        out = self._ef_memo.get(key)
        if out is not None:
            return out
        if _last(e) < 0:
            out = {(f, self._zk, self._zr): self.one_s}
        elif _last(f) < 0:
            out = {(self._zr, self._zk, e): self.one_s}
        else:
            self._enter(("ef", key))
            y = _last(e)
            e2 = _bump(e, y, -1)
            out = {}
            for (F1, K1, E1), c in self._letter_ef(y, f).items():
                for (F2, K2, E2), c2 in self._ef(e2, F1).items():
                    s = c * c2
                    d = -self._pair(K1, E2, 1)
                    if d:
                        s = s * self.qpow(d)
                    Kn = _vadd(K2, K1)
                    for E3, c3 in self._plus.product(E2, E1).items():
                        _acc(out, (F2, Kn, E3), s * c3)
            self._leave(("ef", key))
        self._ef_memo[key] = out
        return out

    def _letter_ef(self, y: int, f: tuple) -> dict:
        """(E letter y) * (F-monomial f)."""
        key = (y, f)
        out = self._letter_ef_memo.get(key)
        if out is not None:
            return out
        x = _first(f)
        if x < 0:
            out = {(self._zr, self._zk, self._unit(y)): self.one_s}
        else:
            self._enter(("lef", key))
            f2 = _bump(f, x, -1)
            out = {}
            for (F1, K1, E1), c in self._swap(y, x).items():
                for (F2, K2, E2), c2 in self._ef(E1, f2).items():
                    s = c * c2
                    d = self._pair(K1, F2, -1)
                    if d:
                        s = s * self.qpow(d)
                    Kn = _vadd(K1, K2)
                    for F3, c3 in self._minus.product(F1, F2).items():
                        _acc(out, (F3, Kn, E2), s * c3)
            self._leave(("lef", key))
        self._letter_ef_memo[key] = out
        return out

    def _left_letter(self, y: int, elem: dict) -> dict:
        """(E letter y) * elem."""
        out = {}
        for (F0, K0, E0), c in elem.items():
            for (F1, K1, E1), c1 in self._letter_ef(y, F0).items():
                s = c * c1
                d = -self._pair(K0, E1, 1)
                if d:
                    s = s * self.qpow(d)
                Kn = _vadd(K1, K0)
                for E2, c2 in self._plus.product(E1, E0).items():
                    _acc(out, (F1, Kn, E2), s * c2)
        return out

    def _right_letter(self, elem: dict, x: int) -> dict:
        """elem * (F letter x)."""
        fx = self._unit(x)
        out = {}
        for (F0, K0, E0), c in elem.items():
            for (F1, K1, E1), c1 in self._ef(E0, fx).items():
                s = c * c1
                d = self._pair(K0, F1, -1)
                if d:
                    s = s * self.qpow(d)
                Kn = _vadd(K0, K1)
                for F2, c2 in self._minus.product(F0, F1).items():
                    _acc(out, (F2, Kn, E1), s * c2)
        return out

    def _swap(self, y: int, x: int) -> dict:
        """(E letter y) * (F letter x)."""
        key = (y, x)
        out = self._swap_memo.get(key)
        if out is not None:
            return out
        self._enter(("swap", key))
        a, b = self.roots[y], self.roots[x]
        base = {(self._unit(x), self._zk, self._unit(y)): self.one_s}
        if a.height == 1 and b.height == 1:
            out = dict(base)
            if y == x:
                i = a.i
                kp = list(self._zk)
                kp[i - 1], kp[i] = 1, -1
                km = [-v for v in kp]
                c = self._qq.inverse()
                out[(self._zr, tuple(kp), self._zr)] = c
                out[(self._zr, tuple(km), self._zr)] = -c
        elif a.height > 1:
            i, k = a
            a1 = self.index[Root(i, i + 1)]
            b1 = self.index[Root(i + 1, k)]
            out = {}
            for mono, c in self._left_letter(a1, self._swap(b1, x)).items():
                _acc(out, mono, -c)
            qi = self.qpow(-1)
            for mono, c in self._left_letter(b1, self._swap(a1, x)).items():
                _acc(out, mono, qi * c)
        else:
            j, l = b
            a1 = self.index[Root(j, j + 1)]
            b1 = self.index[Root(j + 1, l)]
            out = {}
            for mono, c in self._right_letter(self._swap(y, b1), a1).items():
                _acc(out, mono, -c)
            for mono, c in self._right_letter(self._swap(y, a1), b1).items():
                _acc(out, mono, self._q * c)
        self._leave(("swap", key))
        self._swap_memo[key] = out
        return out

    def _enter(self, tag):
        if tag in self._busy:
            raise AlgebraError(f"straightening does not terminate at {tag}")
        self._busy.add(tag)

    def _leave(self, tag):
        self._busy.discard(tag)

    def mono_product(self, m1: Mono, m2: Mono) -> dict:
        F1, K1, E1 = m1
        F2, K2, E2 = m2
        out = {}
        with self._lock:
            mid = self._ef(E1, F2)
            for (F3, K3, E3), c in mid.items():
                d = self._pair(K1, F3, -1) - self._pair(K2, E3, 1)
                s = c * self.qpow(d) if d else c
                Kn = tuple(a + b + cc for a, b, cc in zip(K1, K3, K2))
                Fs = self._minus.product(F1, F3)
                Es = self._plus.product(E3, E2)
                for Fa, ca in Fs.items():
                    sa = s * ca
                    for Ea, cb in Es.items():
                        _acc(out, (Fa, Kn, Ea), sa * cb)
        return out

    # ------------------------------------------------------------- elements
    def element(self, terms: dict) -> "UqElement":
        return UqElement(self, _clean(terms))

    def zero(self) -> "UqElement":
        return UqElement(self, {})

    def one(self) -> "UqElement":
        return self.scalar(1)

    def scalar(self, c) -> "UqElement":
        c = self.field.coerce(c)
        return UqElement(self, {(self._zr, self._zk, self._zr): c} if c else {})

    def mono(self, f=None, k=None, e=None, coeff=1) -> "UqElement":
        f = tuple(f) if f is not None else self._zr
        k = tuple(k) if k is not None else self._zk
        e = tuple(e) if e is not None else self._zr
        if len(f) != self.r or len(e) != self.r or len(k) != self.n + 1:
            raise AlgebraError("monomial exponent vectors have the wrong length")
        if any(x < 0 for x in f + e):
            raise AlgebraError("root vector exponents must be nonnegative")
        c = self.field.coerce(coeff)
        return UqElement(self, {(f, k, e): c} if c else {})

    def _check_simple(self, i: int):
        if not 1 <= i <= self.n:
            raise AlgebraError(f"simple index {i} outside 1..{self.n}")

    def E(self, i: int) -> "UqElement":
        self._check_simple(i)
        return self.mono(e=self._unit(self.index[Root(i, i + 1)]))

    def F(self, i: int) -> "UqElement":
        self._check_simple(i)
        return self.mono(f=self._unit(self.index[Root(i, i + 1)]))

    def Kb(self, j: int, power: int = 1) -> "UqElement":
        if not 1 <= j <= self.n + 1:
            raise AlgebraError(f"torus index {j} outside 1..{self.n + 1}")
        k = list(self._zk)
        k[j - 1] = power
        return self.mono(k=k)

    def K(self, i: int, power: int = 1) -> "UqElement":
        """K_i = Kb_i Kb_{i+1}^-1."""
        self._check_simple(i)
        k = list(self._zk)
        k[i - 1] = power
        k[i] = -power
        return self.mono(k=k)

    def Kij(self, i: int, j: int, power: int = 1) -> "UqElement":
        """K_i K_{i+1} ... K_{j-1} = Kb_i Kb_j^-1."""
        k = list(self._zk)
        k[i - 1] += power
        k[j - 1] -= power
        return self.mono(k=k)

    def central(self) -> "UqElement":
        """I_{n+1} = Kb_1 ... Kb_{n+1}."""
        return self.mono(k=(1,) * (self.n + 1))

    def letter(self, root: Root) -> "UqElement":
        """The PBW letter E_root (positive) or F_{-root} (negative)."""
        root = Root(*root)
        if root.positive:
            return self.mono(e=self._unit(self.index[root]))
        return self.mono(f=self._unit(self.index[-root]))

    def multiply(self, a: "UqElement", b: "UqElement") -> "UqElement":
        if a.alg is not self or b.alg is not self:
            raise RankMismatch("elements belong to different algebras")
        out: dict = {}
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                c = c1 * c2
                for m, c3 in self.mono_product(m1, m2).items():
                    _acc(out, m, c * c3)
        return UqElement(self, out)

    def qcommutator(self, a: "UqElement", b: "UqElement", v=1) -> "UqElement":
        """[a, b]_v = ab - v ba."""
        return a * b - (b * a) * self.field.coerce(v)

    # --------------------------------------------------------- word expansion
    def letter_words(self, positive: bool, p: int) -> dict:
        """The letter at convex position p as a combination of words in simple generators.

        Words are tuples of ('E', i) or ('F', i), read left to right.
        """
        key = (positive, p)
        out = self._letter_words.get(key)
        if out is not None:
            return out
        i, k = self.roots[p]
        tag = "E" if positive else "F"
        if k == i + 1:
            out = {((tag, i),): self.one_s}
        else:
            a = self.letter_words(positive, self.index[Root(i, i + 1)])
            b = self.letter_words(positive, self.index[Root(i + 1, k)])
            if positive:
                first, second = (a, b, -self.one_s), (b, a, self.qpow(-1))
            else:
                first, second = (a, b, self._q), (b, a, -self.one_s)
            out = {}
            for left, right, c in (first, second):
                for w1, c1 in left.items():
                    for w2, c2 in right.items():
                        _acc(out, w1 + w2, c * c1 * c2)
        self._letter_words[key] = out
        return out

    def from_word(self, word: Iterable) -> "UqElement":
        """Product of generator symbols ('E', i), ('F', i), ('Kb', j, power)."""
        x = self.one()
        for g in word:
            x = x * self.generator(g)
        return x

    def generator(self, g) -> "UqElement":
        kind = g[0]
        if kind == "E":
            return self.E(g[1])
        if kind == "F":
            return self.F(g[1])
        if kind == "Kb":
            return self.Kb(g[1], g[2] if len(g) > 2 else 1)
        if kind == "K":
            return self.K(g[1], g[2] if len(g) > 2 else 1)
        raise AlgebraError(f"unknown generator {g!r}")


@lru_cache(maxsize=None)
def _uq_algebra(n: int, F: Field) -> UqGl:
    return UqGl(n, F)


def uq_algebra(n: int, F: Field | None = None) -> UqGl:
    """Shared algebra object (and memo tables) for a rank and field."""
    return _uq_algebra(n, F or field())


class UqElement:
    """A finite Scalar combination of PBW monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: UqGl, terms: dict):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, UqElement):
            if other.alg is not self.alg:
                raise RankMismatch("elements belong to different algebras")
            return other
        if isinstance(other, (int, Scalar)):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            _acc(out, m, c)
        return UqElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return UqElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "UqElement":
        c = self.alg.field.coerce(c)
        if c.is_zero():
            return UqElement(self.alg, {})
        return UqElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if isinstance(other, UqElement):
            return self.alg.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise AlgebraError("negative powers are only defined for torus monomials")
        x = self.alg.one()
        for _ in range(k):
            x = x * self
        return x

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator:
        for m in sorted(self.terms):
            yield m, self.terms[m]

    def __len__(self):
        return len(self.terms)

    def weights(self) -> set:
        alg = self.alg
        return {_vadd(alg.wt(f, -1), alg.wt(e, 1)) for f, _, e in self.terms}

    def weight(self) -> tuple | None:
        """The common weight, or None for an inhomogeneous element."""
        ws = self.weights()
        if len(ws) == 1:
            return next(iter(ws))
        if not ws:
            return (0,) * (self.alg.n + 1)
        return None

    def is_sl(self) -> bool:
        """True when every torus part lies in the span of the K_i (exponent sum 0)."""
        return all(sum(k) == 0 for _, k, _ in self.terms)

    def constant_term(self) -> Scalar:
        alg = self.alg
        return self.terms.get((alg._zr, alg._zk, alg._zr), alg.field.zero)

    def __str__(self):
        from .grammar import render_element

        return render_element(self)

    def __repr__(self):
        return f"UqElement({self})"
