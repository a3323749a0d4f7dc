"""Exact coefficients: the field Q(u, d_1, ..., d_p) with u^2 = q and d_j^2 = c_j.

Elements are reduced fractions of integer polynomials (python-flint ``fmpz_mpoly``).
The denominator is gcd-free against the numerator and has a positive leading
coefficient in graded-lex order, so two equal scalars are structurally equal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import flint


class ScalarError(ValueError):
    pass


class FieldMismatch(ScalarError):
    pass


class NotToral(ScalarError):
    """The value is not of the form +-q^(a/2) * prod c_j^(b_j/2)."""


class NotToralSquare(ScalarError):
    pass


class ScalarParseError(ScalarError):
    pass


_PARAM_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class Field:
    """Coefficient field with a fixed list of formal parameters."""

    def __init__(self, params: tuple[str, ...] = ()):
        for name in params:
            if not _PARAM_RE.match(name) or name == "q":
                raise ScalarError(f"bad parameter name {name!r}")
        if len(set(params)) != len(params):
            raise ScalarError("duplicate parameter names")
        self.params = tuple(params)
        self.nvars = 1 + len(params)
        self.ctx = flint.fmpz_mpoly_ctx.get(
            ("u",) + tuple(f"d{k + 1}" for k in range(len(params))), "deglex"
        )
        self._one_poly = self.ctx.constant(1)
        self._zero_poly = self.ctx.constant(0)
        self.zero = Scalar._raw(self, self._zero_poly, self._one_poly)
        self.one = Scalar._raw(self, self._one_poly, self._one_poly)
        self._qpow: dict[int, Scalar] = {}
        self._qint: dict[int, Scalar] = {}

    def __repr__(self):
        return f"Field{self.params!r}"

    def __reduce__(self):
        return (field, self.params)

    # constructors
    def __call__(self, value) -> "Scalar":
        return self.coerce(value)

    def coerce(self, value) -> "Scalar":
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatch(f"scalar over {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return Scalar._raw(self, self.ctx.constant(value), self._one_poly)
        if isinstance(value, ToralScalar):
            return value.to_scalar(self)
        if isinstance(value, str):
            return parse_scalar(value, self)
        raise TypeError(f"cannot make a scalar from {type(value).__name__}")

    def lift(self, s: "Scalar") -> "Scalar":
        """Image of a scalar from a field whose parameters all occur in this one."""
        if s.field is self:
            return s
        try:
            pos = [0] + [1 + self.params.index(name) for name in s.field.params]
        except ValueError:
            raise FieldMismatch(f"cannot lift from {s.field} to {self}") from None

        def move(poly):
            out = self.ctx.constant(0)
            for exp, c in _terms(poly):
                e = [0] * self.nvars
                for k, x in zip(pos, exp):
                    e[k] = x
                out += self.ctx.term(exp_vec=tuple(e), coeff=int(c))
            return out

        return Scalar._make(self, move(s.num), move(s.den))

    def monomial(self, coeff: int, exps: Iterable[int]) -> "Scalar":
        """coeff * u^e0 * d_1^e1 * ... with possibly negative exponents."""
        exps = tuple(exps)
        top = tuple(max(e, 0) for e in exps)
        bot = tuple(max(-e, 0) for e in exps)
        num = self.ctx.term(exp_vec=top, coeff=coeff)
        den = self.ctx.term(exp_vec=bot, coeff=1)
        return Scalar._raw(self, num, den)

    @property
    def u(self) -> "Scalar":
        return self.monomial(1, (1,) + (0,) * (self.nvars - 1))

    @property
    def q(self) -> "Scalar":
        return self.qpow(1)

    def qpow(self, k: int) -> "Scalar":
        """q^k for integer k (cached)."""
        s = self._qpow.get(k)
        if s is None:
            s = self.monomial(1, (2 * k,) + (0,) * (self.nvars - 1))
            self._qpow[k] = s
        return s

    def upow(self, a: int) -> "Scalar":
        return self.monomial(1, (a,) + (0,) * (self.nvars - 1))

    def param(self, name: str) -> "Scalar":
        """The parameter c_j (= d_j^2)."""
        j = self._param_index(name)
        exps = [0] * self.nvars
        exps[j] = 2
        return self.monomial(1, exps)

    def _param_index(self, name: str) -> int:
        try:
            return 1 + self.params.index(name)
        except ValueError:
            raise ScalarParseError(f"unknown parameter {name!r}") from None

    def qint(self, k: int) -> "Scalar":
        s = self._qint.get(k)
        if s is None:
            # [k] = q^{1-k} + q^{3-k} + ... + q^{k-1}
            if k == 0:
                s = self.zero
            elif k < 0:
                s = -self.qint(-k)
            else:
                num = self.ctx.from_dict({(4 * t,) + (0,) * (self.nvars - 1): 1 for t in range(k)})
                den = self.ctx.term(exp_vec=(2 * (k - 1),) + (0,) * (self.nvars - 1), coeff=1)
                s = Scalar._make(self, num, den)
            self._qint[k] = s
        return s


@lru_cache(maxsize=None)
def field(*params: str) -> Field:
    """The shared field object for a parameter list."""
    return Field(tuple(params))


def _terms(p) -> list:
    return list(zip(p.monoms(), p.coeffs()))


def _poly_key(p) -> tuple:
    return tuple(sorted(p.to_dict().items()))


class Scalar:
    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, *a, **k):
        raise TypeError("use Field.coerce / field(...)(value) to build scalars")

    @classmethod
    def _raw(cls, F: Field, num, den) -> "Scalar":
        s = object.__new__(cls)
        s.field = F
        s.num = num
        s.den = den
        s._hash = None
        return s

    @classmethod
    def _make(cls, F: Field, num, den) -> "Scalar":
        if num.is_zero():
            return F.zero
        if den.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        return cls._raw(F, num, den)

    def _other(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"mixing {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.coerce(other)
        if isinstance(other, ToralScalar):
            return other.to_scalar(self.field)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return Scalar._make(self.field, self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        if g.is_one():
            return Scalar._make(self.field, self.num * o.den + o.num * self.den, self.den * o.den)
        a = o.den // g
        b = self.den // g
        return Scalar._make(self.field, self.num * a + o.num * b, self.den * a)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return Scalar._raw(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.num.is_zero() or o.num.is_zero():
            return self.field.zero
        if self.den.is_one() and o.den.is_one():
            return Scalar._raw(self.field, self.num * o.num, self._one())
        # cross-cancel keeps the intermediate polynomials small
        g1 = self.num.gcd(o.den)
        g2 = o.num.gcd(self.den)
        n = (self.num // g1) * (o.num // g2)
        d = (self.den // g2) * (o.den // g1)
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return Scalar._raw(self.field, n, d)

    __rmul__ = __mul__

    def _one(self):
        return self.field._one_poly

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        n, d = self.den, self.num
        if d.leading_coefficient() < 0:
            n, d = -n, -d
        return Scalar._raw(self.field, n, d)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.field.one
        return Scalar._raw(self.field, self.num**k, self.den**k)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, ToralScalar)):
            return self == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field.params, _poly_key(self.num), _poly_key(self.den)))
            self._hash = h
        return h

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    @property
    def numerator(self):
        return self.num

    @property
    def denominator(self):
        return self.den

    def laurent_terms(self) -> dict[tuple[int, ...], "flint.fmpq"] | None:
        """Terms as a Laurent polynomial in (u, d_j), or None if the denominator is not a monomial."""
        if len(self.den.coeffs()) != 1:
            return None
        (dexp, dcoeff), = _terms(self.den)
        out = {}
        for exp, c in _terms(self.num):
            out[tuple(a - b for a, b in zip(exp, dexp))] = flint.fmpq(int(c), int(dcoeff))
        return out

    def to_toral(self) -> "ToralScalar":
        return ToralScalar.from_scalar(self)

    def is_toral(self) -> bool:
        try:
            ToralScalar.from_scalar(self)
        except NotToral:
            return False
        return True

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"


Number = Union[Scalar, int]


@dataclass(frozen=True, order=True)
class ToralScalar:
    """sign * u^u_exp * prod d_j^d_exps[j]; nonzero by construction."""

    sign: int
    u_exp: int
    d_exps: tuple[int, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ScalarError("toral sign must be +1 or -1")

    @classmethod
    def one(cls, p: int = 0) -> "ToralScalar":
        return cls(1, 0, (0,) * p)

    @classmethod
    def qpow(cls, k: int, p: int = 0, sign: int = 1) -> "ToralScalar":
        return cls(sign, 2 * k, (0,) * p)

    @classmethod
    def param(cls, j: int, p: int, power: int = 1, sign: int = 1) -> "ToralScalar":
        """c_j^power as a toral scalar; j counts from 1."""
        d = [0] * p
        d[j - 1] = 2 * power
        return cls(sign, 0, tuple(d))

    @classmethod
    def from_scalar(cls, s: Scalar) -> "ToralScalar":
        nt = _terms(s.num)
        dt = _terms(s.den)
        if len(nt) != 1 or len(dt) != 1:
            raise NotToral(f"{s} is not a signed monomial")
        (ne, nc), = nt
        (de, dc) = dt[0]
        if abs(int(nc)) != 1 or int(dc) != 1:
            raise NotToral(f"{s} has a non-unit coefficient")
        diff = tuple(a - b for a, b in zip(ne, de))
        return cls(int(nc), diff[0], diff[1:])

    @property
    def p(self) -> int:
        return len(self.d_exps)

    def _check(self, other: "ToralScalar"):
        if len(other.d_exps) != len(self.d_exps):
            raise FieldMismatch("toral scalars over different parameter counts")

    def __mul__(self, other):
        if isinstance(other, int) and other in (1, -1):
            return ToralScalar(self.sign * other, self.u_exp, self.d_exps)
        if not isinstance(other, ToralScalar):
            return NotImplemented
        self._check(other)
        return ToralScalar(
            self.sign * other.sign,
            self.u_exp + other.u_exp,
            tuple(a + b for a, b in zip(self.d_exps, other.d_exps)),
        )

    __rmul__ = __mul__

    def inverse(self) -> "ToralScalar":
        return ToralScalar(self.sign, -self.u_exp, tuple(-a for a in self.d_exps))

    def __truediv__(self, other):
        if not isinstance(other, ToralScalar):
            return NotImplemented
        return self * other.inverse()

    def __neg__(self):
        return ToralScalar(-self.sign, self.u_exp, self.d_exps)

    def __pow__(self, k: int):
        return ToralScalar(self.sign**k if k >= 0 else self.sign ** (-k), self.u_exp * k, tuple(a * k for a in self.d_exps))

    def times_qpow(self, k: int) -> "ToralScalar":
        return ToralScalar(self.sign, self.u_exp + 2 * k, self.d_exps)

    def is_pm_one(self) -> bool:
        return self.u_exp == 0 and not any(self.d_exps)

    def q_exponent(self) -> int | None:
        """k when the value is +-q^k with no parameters and even u-exponent, else None."""
        if any(self.d_exps) or self.u_exp % 2:
            return None
        return self.u_exp // 2

    def to_scalar(self, F: Field) -> Scalar:
        if F.nvars - 1 != len(self.d_exps):
            raise FieldMismatch(f"toral scalar with {len(self.d_exps)} parameters used in {F}")
        return F.monomial(self.sign, (self.u_exp,) + self.d_exps)

    def literal(self, params: tuple[str, ...] | None = None) -> str:
        if params is None:
            params = tuple(f"c{k + 1}" for k in range(len(self.d_exps)))
        return render_scalar(self.to_scalar(field(*params)))

    def __str__(self):
        return self.literal()


def toral_sqrt(s) -> ToralScalar:
    """Square root inside the toral group; positive sign representative."""
    if isinstance(s, Scalar):
        try:
            t = ToralScalar.from_scalar(s)
        except NotToral:
            raise NotToralSquare(f"{s} is not a perfect toral square") from None
    else:
        t = s
    if t.sign != 1 or t.u_exp % 2 or any(e % 2 for e in t.d_exps):
        raise NotToralSquare(f"{t} is not a perfect toral square")
    return ToralScalar(1, t.u_exp // 2, tuple(e // 2 for e in t.d_exps))


def qint(k: int, F: Field | None = None) -> Scalar:
    """Quantum integer [k] = (q^k - q^-k)/(q - q^-1)."""
    return (F or field()).qint(k)


def bracket(K, j: int, F: Field | None = None) -> Scalar:
    """[K; j] = (q^j K - q^-j K^-1)/(q - q^-1)."""
    if isinstance(K, ToralScalar):
        F = F or field(*(f"c{k + 1}" for k in range(K.p)))
        K = K.to_scalar(F)
    elif isinstance(K, int):
        K = (F or field()).coerce(K)
    F = K.field
    if K.is_zero():
        raise ZeroDivisionError("bracket of a zero scalar")
    return (F.qpow(j) * K - F.qpow(-j) * K.inverse()) / (F.q - F.qpow(-1))


# ---------------------------------------------------------------------------
# literal grammar

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ScalarParseError(f"unexpected character {ch!r} at position {m.start(3)}")
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, F: Field):
        self.text = text
        self.F = F
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t[1] != value:
            self.fail(t, f"expected {value!r}")
        return t

    def fail(self, tok, why):
        shown = tok[1] if tok[0] != "end" else "end of input"
        raise ScalarParseError(f"{why}, got {shown!r} at position {tok[2]} in {self.text!r}")

    def parse(self) -> Scalar:
        val = self.expr()
        t = self.peek()
        if t[0] != "end":
            self.fail(t, "trailing input")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in ("*", "/"):
                self.take()
                rhs = self.unary()
                if t[1] == "*":
                    val = val * rhs
                else:
                    if rhs.is_zero():
                        self.fail(t, "division by zero")
                    val = val / rhs
            elif t[0] in ("int", "name") or (t[0] == "op" and t[1] == "("):
                val = val * self.power()  # juxtaposition
            else:
                return val

    def unary(self):
        t = self.peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        t = self.peek()
        base_kind = None
        if t[0] == "int":
            self.take()
            base = self.F.coerce(int(t[1]))
        elif t[0] == "name":
            self.take()
            if t[1] == "q":
                base_kind = ("u", 0)
                base = self.F.q
            elif t[1] in self.F.params:
                base_kind = ("d", self.F._param_index(t[1]))
                base = self.F.param(t[1])
            else:
                self.fail(t, "unknown symbol")
        elif t[0] == "op" and t[1] == "(":
            self.take()
            base = self.expr()
            self.expect(")")
        else:
            self.fail(t, "expected a number, q, a parameter or '('")
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            hat = self.take()
            num, den = self.exponent()
            if den == 1:
                if num < 0 and base.is_zero():
                    self.fail(hat, "zero to a negative power")
                return base**num
            if base_kind is None:
                self.fail(hat, "fractional powers only apply to q and parameters")
            # q^(a/2) -> u^a, c^(a/2) -> d^a
            exps = [0] * self.F.nvars
            exps[base_kind[1]] = num
            return self.F.monomial(1, exps)
        return base

    def exponent(self) -> tuple[int, int]:
        t = self.peek()
        sign = 1
        if t[0] == "op" and t[1] == "-":
            self.take()
            sign = -1
            t = self.peek()
        if t[0] == "int":
            self.take()
            return sign * int(t[1]), 1
        if t[0] == "op" and t[1] == "(":
            self.take()
            inner = 1
            if self.peek()[1] == "-":
                self.take()
                inner = -1
            a = self.take()
            if a[0] != "int":
                self.fail(a, "expected an integer exponent")
            num = inner * int(a[1])
            den = 1
            if self.peek()[1] == "/":
                self.take()
                b = self.take()
                if b[0] != "int":
                    self.fail(b, "expected an integer denominator")
                den = int(b[1])
            self.expect(")")
            if den == 0:
                self.fail(a, "zero exponent denominator")
            if num % den == 0:
                return sign * num // den, 1
            if den == 2 or (2 * num) % den == 0:
                return sign * (2 * num // den), 2
            self.fail(a, "exponent must be a multiple of 1/2")
        self.fail(t, "expected an exponent")


def parse_scalar(text: str, F: Field | None = None) -> Scalar:
    """Parse a scalar literal such as ``(q^2 - 1)/q`` or ``-q^(1/2)*c1``."""
    return _Parser(text, F or field()).parse()


def parse_toral(text: str, F: Field | None = None) -> ToralScalar:
    s = parse_scalar(text, F)
    try:
        return ToralScalar.from_scalar(s)
    except NotToral as exc:
        raise ScalarParseError(f"{text!r} is not of the form +-q^(a/2)*c^(b/2)") from exc


def _render_power(name: str, e: int) -> str:
    # e counts half-powers of the named symbol
    if e % 2 == 0:
        k = e // 2
        if k == 1:
            return name
        return f"{name}^{k}" if k > 0 else f"{name}^({k})"
    return f"{name}^({e}/2)"


def _render_poly(p, F: Field) -> str:
    names = ("q",) + F.params
    parts = []
    for exp, c in _terms(p):
        c = int(c)
        factors = [_render_power(names[k], e) for k, e in enumerate(exp) if e]
        mag = abs(c)
        body = "*".join(([str(mag)] if mag != 1 or not factors else []) + factors)
        parts.append(("-" if c < 0 else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sgn, body in parts[1:]:
        out += f" {sgn} {body}"
    return out


def render_scalar(s: Scalar) -> str:
    """A literal that parses back to the same scalar."""
    num = _render_poly(s.num, s.field)
    if s.den.is_one():
        return num
    den = _render_poly(s.den, s.field)
    if len(_terms(s.num)) > 1:
        num = f"({num})"
    if len(_terms(s.den)) > 1 or "*" in den:
        den = f"({den})"
    return f"{num}/{den}"
