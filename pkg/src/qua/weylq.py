"""The quantized Weyl algebra A^q_{n+1} as a generalized Weyl algebra.

Normal form: Laurent monomial in the omegas, then for each index either a power
of x_i or a power of y_i.  A monomial is stored as ``(a, e)`` where ``a`` is the
omega exponent vector and ``e`` the signed step vector (``e_i > 0`` means
``x_i^{e_i}``, ``e_i < 0`` means ``y_i^{-e_i}``).

Relations used (per index; different indices commute):

    omega x = q x omega,   omega y = q^-1 y omega,
    y x = t(omega) = [omega; 1],   x y = s(omega) = [omega; 0].
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from .exprparse import ExpressionError, ExpressionParser
from .scalars import Field, Scalar, field, render_scalar
from .uq.identities import CheckResult, defining_relations, evaluate_relation
from .uq.pbw import UqElement, UqGl, uq_algebra


class WeylError(ValueError):
    pass


class NotDegreeZero(WeylError):
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


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            _acc(out, ea + eb, ca * cb)
    return out


class QWeyl:
    """A^q_{n+1}: generators omega_i^{+-1}, x_i, y_i for i = 1..n+1."""

    def __init__(self, n: int, F: Field | None = None):
        if not isinstance(n, int) or n < 1:
            raise WeylError(f"rank must be a positive integer, got {n!r}")
        self.n = n
        self.N = n + 1
        self.field = F or field()
        q = self.field.q
        qq_inv = (q - q.inverse()).inverse()
        self._s = {1: qq_inv, -1: -qq_inv}  # x y
        self._t = {1: q * qq_inv, -1: -(q.inverse() * qq_inv)}  # y x
        self._zero = (0,) * self.N
        self._rank_one: dict = {}
        self._pi_letters: dict = {}
        self._pi_monos: dict = {}
        self._preimages: dict = {}

    def __repr__(self):
        return f"QWeyl(n={self.n}, params={self.field.params})"

    def __reduce__(self):
        return (weyl_algebra, (self.n, self.field))

    # ------------------------------------------------------------ rank one
    def _shift(self, poly: dict, m: int) -> dict:
        """f(omega) -> f(q^m omega)."""
        if m == 0:
            return poly
        return {e: c * self.field.qpow(m * e) for e, c in poly.items()}

    def rank_one(self, e: int, f: int) -> dict:
        """P with z^e z^f = P(omega) z^(e+f) for one index (Laurent poly as dict)."""
        key = (e, f)
        out = self._rank_one.get(key)
        if out is not None:
            return out
        out = {0: self.field.one}
        if e > 0 and f < 0:
            a, b = e, -f
            while a > 0 and b > 0:
                # x^a y^b = s(q^{-(a-1)} omega) x^{a-1} y^{b-1}
                out = _poly_mul(out, self._shift(self._s, -(a - 1)))
                a, b = a - 1, b - 1
        elif e < 0 and f > 0:
            a, b = -e, f
            while a > 0 and b > 0:
                # y^a x^b = t(q^{a-1} omega) y^{a-1} x^{b-1}
                out = _poly_mul(out, self._shift(self._t, a - 1))
                a, b = a - 1, b - 1
        self._rank_one[key] = out
        return out

    def mono_product(self, m1, m2) -> dict:
        a, e = m1
        b, f = m2
        # z^e omega^b = q^{-<b,e>} omega^b z^e
        d = -sum(x * y for x, y in zip(b, e))
        base = self.field.qpow(d) if d else self.field.one
        out = {tuple(x + y for x, y in zip(a, b)): base}
        for i in range(self.N):
            if (e[i] > 0 > f[i]) or (e[i] < 0 < f[i]):
                P = self.rank_one(e[i], f[i])
                nxt: dict = {}
                for ex, c in out.items():
                    for k, cp in P.items():
                        ex2 = ex[:i] + (ex[i] + k,) + ex[i + 1:]
                        _acc(nxt, ex2, c * cp)
                out = nxt
        ef = tuple(x + y for x, y in zip(e, f))
        return {(ex, ef): c for ex, c in out.items()}

    def multiply(self, A: "GwaElement", B: "GwaElement") -> "GwaElement":
        if A.alg is not self or B.alg is not self:
            raise WeylError("elements belong to different algebras")
        out: dict = {}
        for m1, c1 in A.terms.items():
            for m2, c2 in B.terms.items():
                c = c1 * c2
                for m, c3 in self.mono_product(m1, m2).items():
                    _acc(out, m, c * c3)
        return GwaElement(self, out)

    # ------------------------------------------------------------ builders
    def element(self, terms: dict) -> "GwaElement":
        return GwaElement(self, {k: v for k, v in terms.items() if not v.is_zero()})

    def zero(self) -> "GwaElement":
        return GwaElement(self, {})

    def scalar(self, c) -> "GwaElement":
        c = self.field.coerce(c)
        return GwaElement(self, {(self._zero, self._zero): c} if c else {})

    def one(self) -> "GwaElement":
        return self.scalar(1)

    def mono(self, a=None, e=None, coeff=1) -> "GwaElement":
        a = tuple(a) if a is not None else self._zero
        e = tuple(e) if e is not None else self._zero
        if len(a) != self.N or len(e) != self.N:
            raise WeylError("exponent vectors have the wrong length")
        c = self.field.coerce(coeff)
        return GwaElement(self, {(a, e): c} if c else {})

    def _unit(self, i: int, v: int = 1) -> tuple:
        if not 1 <= i <= self.N:
            raise WeylError(f"index {i} outside 1..{self.N}")
        t = [0] * self.N
        t[i - 1] = v
        return tuple(t)

    def x(self, i: int, power: int = 1) -> "GwaElement":
        return self.mono(e=self._unit(i, power))

    def y(self, i: int, power: int = 1) -> "GwaElement":
        return self.mono(e=self._unit(i, -power))

    def w(self, i: int, power: int = 1) -> "GwaElement":
        return self.mono(a=self._unit(i, power))

    def euler(self, power: int = 1) -> "GwaElement":
        """E_q = omega_1 ... omega_{n+1}."""
        return self.mono(a=(power,) * self.N)

    def xy(self, i: int, j: int) -> "GwaElement":
        """The degree-zero step x_i y_j (i != j)."""
        if i == j:
            raise WeylError("x_i y_i is a torus element, not a step")
        e = list(self._zero)
        e[i - 1] += 1
        e[j - 1] -= 1
        return self.mono(e=e)

    def t_poly(self, i: int) -> "GwaElement":
        """t_i = y_i x_i = (q omega_i - (q omega_i)^-1)/(q - q^-1)."""
        return GwaElement(self, {(self._unit(i, k), self._zero): c for k, c in self._t.items()})

    def s_poly(self, i: int) -> "GwaElement":
        """x_i y_i = (omega_i - omega_i^-1)/(q - q^-1)."""
        return GwaElement(self, {(self._unit(i, k), self._zero): c for k, c in self._s.items()})

    def sigma(self, j: int, a: "GwaElement") -> "GwaElement":
        """The automorphism omega_i -> q^{-delta_ij} omega_i of the torus part."""
        out = {}
        for (ex, e), c in a.terms.items():
            if any(e):
                raise WeylError("sigma acts on torus elements only")
            out[(ex, e)] = c * self.field.qpow(-ex[j - 1])
        return GwaElement(self, out)

    # ---------------------------------------------------------------- pi
    def _pi_gen(self, g) -> "GwaElement":
        kind = g[0]
        if kind == "E":
            return self.xy(g[1], g[1] + 1)
        if kind == "F":
            return self.xy(g[1] + 1, g[1])
        if kind == "Kb":
            return self.w(g[1], g[2] if len(g) > 2 else 1)
        raise WeylError(f"unknown generator {g!r}")

    def pi_letter(self, alg: UqGl, positive: bool, p: int) -> "GwaElement":
        key = (positive, p)
        out = self._pi_letters.get(key)
        if out is None:
            out = self.zero()
            for word, c in alg.letter_words(positive, p).items():
                x = self.scalar(c)
                for g in word:
                    x = x * self._pi_gen(g)
                out = out + x
            self._pi_letters[key] = out
        return out

    def pi_mono(self, alg: UqGl, mono) -> "GwaElement":
        out = self._pi_monos.get(mono)
        if out is not None:
            return out
        f, k, e = mono
        out = self.one()
        for p, m in enumerate(f):
            for _ in range(m):
                out = out * self.pi_letter(alg, False, p)
        out = out * self.mono(a=k)
        for p, m in enumerate(e):
            for _ in range(m):
                out = out * self.pi_letter(alg, True, p)
        self._pi_monos[mono] = out
        return out

    def pi(self, u: UqElement) -> "GwaElement":
        alg = u.alg
        if alg.n != self.n or alg.field is not self.field:
            raise WeylError("rank or field mismatch between U_q and A^q")
        out: dict = {}
        for mono, c in u.terms.items():
            for m, c2 in self.pi_mono(alg, mono).terms.items():
                _acc(out, m, c * c2)
        return GwaElement(self, out)

    # ------------------------------------------------------- preimages
    def step_preimage(self, i: int, j: int) -> UqElement:
        """u with pi(u) = x_i y_j, by the q-bracket recursion.

        x_i y_j = omega_{j-1} [x_i y_{j-1}, pi(E_{j-1})]_q      (i < j)
        x_i y_j = omega_{i-1} [pi(F_{i-1}), x_{i-1} y_j]_q      (i > j)
        """
        key = (i, j)
        out = self._preimages.get(key)
        if out is not None:
            return out
        alg = uq_algebra(self.n, self.field)
        q = self.field.q
        if i < j:
            if j == i + 1:
                out = alg.E(i)
            else:
                prev = self.step_preimage(i, j - 1)
                out = alg.Kb(j - 1) * (prev * alg.E(j - 1) - (alg.E(j - 1) * prev).scale(q))
        elif i > j:
            if i == j + 1:
                out = alg.F(j)
            else:
                prev = self.step_preimage(i - 1, j)
                out = alg.Kb(i - 1) * (alg.F(i - 1) * prev - (prev * alg.F(i - 1)).scale(q))
        else:
            raise WeylError("x_i y_i has no step preimage")
        self._preimages[key] = out
        return out

    def degree_zero_preimage(self, a: "GwaElement") -> UqElement:
        """An element u of U_q(gl_{n+1}) with pi(u) = a, for a of Euler degree 0."""
        deg = euler_degree(a)
        if deg != 0:
            raise NotDegreeZero(f"element has Euler degree {deg}, expected 0")
        alg = uq_algebra(self.n, self.field)
        out = alg.zero()
        for (ex, e), c in sorted(a.terms.items()):
            xs = [i + 1 for i in range(self.N) for _ in range(max(e[i], 0))]
            ys = [i + 1 for i in range(self.N) for _ in range(max(-e[i], 0))]
            u = alg.mono(k=ex)
            # the x_i y_j factors commute in A^q, so any pairing works
            for i, j in zip(xs, ys):
                u = u * self.step_preimage(i, j)
            out = out + u.scale(c)
        return out


@lru_cache(maxsize=None)
def _weyl_algebra(n: int, F: Field) -> QWeyl:
    return QWeyl(n, F)


def weyl_algebra(n: int, F: Field | None = None) -> QWeyl:
    return _weyl_algebra(n, F or field())


class GwaElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: QWeyl, terms: dict):
        self.alg = alg
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, GwaElement):
            if other.alg is not self.alg:
                raise WeylError("elements belong to different algebras")
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
        return GwaElement(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return GwaElement(self.alg, {m: -c for m, c in self.terms.items()})

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

    def scale(self, c) -> "GwaElement":
        c = self.alg.field.coerce(c)
        if c.is_zero():
            return GwaElement(self.alg, {})
        return GwaElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        if isinstance(other, GwaElement):
            return self.alg.multiply(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Scalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise WeylError("negative power")
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

    def __len__(self):
        return len(self.terms)

    def is_torus(self) -> bool:
        """True when there is no x/y part (a Laurent polynomial in the omegas)."""
        return all(not any(e) for _, e in self.terms)

    def evaluate_torus(self, point: Iterable[Scalar]) -> Scalar:
        """Value of a torus element at omega = point."""
        if not self.is_torus():
            raise WeylError("only torus elements can be evaluated")
        point = list(point)
        F = self.alg.field
        total = F.zero
        for (ex, _), c in self.terms.items():
            v = c
            for p, k in zip(point, ex):
                if k:
                    v = v * (p**k)
            total = total + v
        return total

    def __str__(self):
        return render_gwa(self)

    def __repr__(self):
        return f"GwaElement({self})"


def euler_degree(a: GwaElement) -> int | str:
    """m with E_q a E_q^-1 = q^m a; "inhomogeneous" for mixed degrees (0 for zero)."""
    degs = {sum(e) for _, e in a.terms}
    if not degs:
        return 0
    if len(degs) > 1:
        return "inhomogeneous"
    return degs.pop()


def pi(u: UqElement) -> GwaElement:
    """The homomorphism E_i -> x_i y_{i+1}, F_i -> x_{i+1} y_i, Kb_i -> omega_i."""
    return weyl_algebra(u.alg.n, u.alg.field).pi(u)


def degree_zero_preimage(a: GwaElement) -> UqElement:
    return a.alg.degree_zero_preimage(a)


def check_pi_homomorphism(n: int, F: Field | None = None) -> list[CheckResult]:
    """Each defining relation of U_q(gl_{n+1}) evaluated on pi-images vanishes in A^q."""
    A = weyl_algebra(n, F or field())
    out = []
    for name, idx, terms in defining_relations(n, A.field):
        res = evaluate_relation(terms, A._pi_gen, A.one())
        status = "pass" if res.is_zero() else "fail"
        out.append(CheckResult(f"pi-{name}", tuple(idx), status, "0" if res.is_zero() else render_gwa(res)))
    return out


def check_weyl_relations(n: int, F: Field | None = None) -> list[CheckResult]:
    """The displayed A^q relations hold in the normal form (incl. both y_i x_i forms)."""
    A = weyl_algebra(n, F or field())
    q = A.field.q
    out = []

    def rec(name, idx, res):
        out.append(CheckResult(name, idx, "pass" if res.is_zero() else "fail", render_gwa(res)))

    for i in range(1, A.N + 1):
        for j in range(1, A.N + 1):
            d = 1 if i == j else 0
            rec("w-x", (i, j), A.w(i) * A.x(j) * A.w(i, -1) - A.x(j).scale(A.field.qpow(d)))
            rec("w-y", (i, j), A.w(i) * A.y(j) * A.w(i, -1) - A.y(j).scale(A.field.qpow(-d)))
            rec("w-w", (i, j), A.w(i) * A.w(j) - A.w(j) * A.w(i))
            if i != j:
                rec("y-x", (i, j), A.y(i) * A.x(j) - A.x(j) * A.y(i))
                rec("x-x", (i, j), A.x(i) * A.x(j) - A.x(j) * A.x(i))
                rec("y-y", (i, j), A.y(i) * A.y(j) - A.y(j) * A.y(i))
        rec("w-inv", (i,), A.w(i) * A.w(i, -1) - A.one())
        rec("yx-1", (i,), A.y(i) * A.x(i) - (A.x(i) * A.y(i)).scale(q.inverse()) - A.w(i))
        rec("yx-2", (i,), A.y(i) * A.x(i) - (A.x(i) * A.y(i)).scale(q) - A.w(i, -1))
        rec("t-form", (i,), A.y(i) * A.x(i) - A.t_poly(i))
        rec("s-form", (i,), A.x(i) * A.y(i) - A.s_poly(i))
    return out


# ---------------------------------------------------------------------- text
_SYM = re.compile(r"(x|y|w)(\d+)\Z")


def parse_gwa(text: str, A: QWeyl) -> GwaElement:
    """Grammar: x1, y2, w3, w3^-1, Eq (the Euler element), scalar literals."""

    def resolve(name, args, power):
        if args:
            return None
        if name == "Eq":
            return A.euler(power)
        m = _SYM.match(name)
        if m is None:
            return None
        kind, i = m.group(1), int(m.group(2))
        if not 1 <= i <= A.N:
            raise ExpressionError(f"{name} out of range for A^q_{A.N}")
        if kind == "w":
            return A.w(i, power)
        if power < 0:
            raise ExpressionError(f"negative power of {name}")
        return A.x(i, power) if kind == "x" else A.y(i, power)

    return ExpressionParser(text, A.field, resolve, A.scalar).parse()


def render_gwa_monomial(mono) -> str:
    ex, e = mono
    parts = []
    for i, k in enumerate(ex, start=1):
        if k:
            parts.append(f"w{i}" if k == 1 else f"w{i}^{k}" if k > 0 else f"w{i}^({k})")
    for i, k in enumerate(e, start=1):
        if k > 0:
            parts.append(f"x{i}" if k == 1 else f"x{i}^{k}")
    for i, k in enumerate(e, start=1):
        if k < 0:
            parts.append(f"y{i}" if k == -1 else f"y{i}^{-k}")
    return "*".join(parts)


def render_gwa(a: GwaElement) -> str:
    if a.is_zero():
        return "0"
    pieces = []
    for mono, c in sorted(a.terms.items()):
        body = render_gwa_monomial(mono)
        lit = render_scalar(c)
        if any(ch in lit for ch in "+/") or "-" in lit[1:]:
            lit = f"({lit})"
        if not body:
            pieces.append(lit)
        elif c.is_one():
            pieces.append(body)
        elif (-c).is_one():
            pieces.append("-" + body)
        else:
            pieces.append(f"{lit}*{body}")
    text = pieces[0]
    for p in pieces[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


def degree_zero_monomials(n: int, max_steps: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (k, l) with sum k = sum l <= max_steps and k_i l_i = 0, as signed step vectors."""
    N = n + 1
    out = []
    for e in product(range(-max_steps, max_steps + 1), repeat=N):
        pos = sum(x for x in e if x > 0)
        if sum(e) == 0 and pos <= max_steps:
            out.append(e)
    return sorted(out)
