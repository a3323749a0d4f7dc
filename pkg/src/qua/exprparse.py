"""Small recursive-descent parser shared by the algebra element grammars.

Values are either Scalars or ring elements supplied by a resolver callback.
Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (['*' | '/'] unary)*        juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom ['^' exponent]
    atom   := INT | NAME ['(' INT ',' INT ')'] | '(' expr ')'
"""
from __future__ import annotations

import re
from typing import Callable

from .scalars import Field, Scalar, ScalarParseError

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ExpressionError(ScalarParseError):
    pass


def tokenize(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^(),":
                raise ExpressionError(f"unexpected character {ch!r} at position {m.start(3)} in {text!r}")
            out.append(("op", ch, m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


# resolver(name, args, power) -> ring element, or None for an unknown symbol
Resolver = Callable[[str, tuple, int], object]


class ExpressionParser:
    def __init__(self, text: str, F: Field, resolver: Resolver, lift: Callable[[Scalar], object]):
        self.text = text
        self.F = F
        self.resolver = resolver
        self.lift = lift
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, tok, why):
        shown = tok[1] if tok[0] != "end" else "end of input"
        raise ExpressionError(f"{why}: offending token {shown!r} at position {tok[2]} in {self.text!r}")

    def expect(self, value):
        t = self.take()
        if t[1] != value or t[0] not in ("op",):
            self.fail(t, f"expected {value!r}")
        return t

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            self.fail(t, "trailing input")
        return v if not isinstance(v, Scalar) else self.lift(v)

    @staticmethod
    def _is_op(t, chars):
        return t[0] == "op" and t[1] in chars

    def expr(self):
        v = self.term()
        while self._is_op(self.peek(), "+-"):
            op = self.take()[1]
            rhs = self.term()
            v = self._add(v, rhs, op == "-")
        return v

    def _add(self, a, b, neg):
        if neg:
            b = -b
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        if isinstance(a, Scalar):
            a = self.lift(a)
        if isinstance(b, Scalar):
            b = self.lift(b)
        return a + b

    def term(self):
        v = self.unary()
        while True:
            t = self.peek()
            if self._is_op(t, "*/"):
                self.take()
                rhs = self.unary()
                if t[1] == "/":
                    if not isinstance(rhs, Scalar):
                        self.fail(t, "can only divide by a scalar")
                    if rhs.is_zero():
                        self.fail(t, "division by zero")
                    rhs = rhs.inverse()
                v = self._mul(v, rhs)
            elif t[0] in ("int", "name") or self._is_op(t, "("):
                v = self._mul(v, self.power())
            else:
                return v

    @staticmethod
    def _mul(a, b):
        if isinstance(a, Scalar) and not isinstance(b, Scalar):
            return b.scale(a) if hasattr(b, "scale") else a * b
        if isinstance(b, Scalar) and not isinstance(a, Scalar):
            return a.scale(b) if hasattr(a, "scale") else a * b
        return a * b

    def unary(self):
        t = self.peek()
        if self._is_op(t, "+-"):
            self.take()
            v = self.unary()
            return -v if t[1] == "-" else v
        return self.power()

    def power(self):
        t = self.peek()
        if t[0] == "int":
            self.take()
            base, kind = self.F.coerce(int(t[1])), "scalar"
        elif t[0] == "name":
            self.take()
            name = t[1]
            if name == "q":
                base, kind = self.F.q, ("half", 0)
            elif name in self.F.params:
                base, kind = self.F.param(name), ("half", 1 + self.F.params.index(name))
            else:
                args = ()
                if self._is_op(self.peek(), "(") and self._looks_like_args():
                    args = self._args()
                power = 1
                if self._is_op(self.peek(), "^"):
                    hat = self.take()
                    power, den = self.exponent()
                    if den != 1:
                        self.fail(hat, "fractional powers only apply to q and parameters")
                try:
                    val = self.resolver(name, args, power)
                except ExpressionError:
                    raise
                except (ValueError, KeyError) as exc:
                    self.fail(t, str(exc))
                if val is None:
                    self.fail(t, "unknown symbol")
                return val
        elif self._is_op(t, "("):
            self.take()
            base, kind = self.expr(), "group"
            self.expect(")")
        else:
            self.fail(t, "expected a number, symbol or '('")
        if self._is_op(self.peek(), "^"):
            hat = self.take()
            num, den = self.exponent()
            if den == 2:
                if not isinstance(kind, tuple):
                    self.fail(hat, "fractional powers only apply to q and parameters")
                exps = [0] * self.F.nvars
                exps[kind[1]] = num
                return self.F.monomial(1, exps)
            if num < 0:
                if not isinstance(base, Scalar):
                    self.fail(hat, "negative power of a non-invertible expression")
                return base**num
            if isinstance(base, Scalar):
                return base**num
            out = base
            for _ in range(num - 1):
                out = out * base
            if num == 0:
                self.fail(hat, "zero power of an algebra element")
            return out
        return base

    def _looks_like_args(self) -> bool:
        # NAME '(' INT ',' INT ')'
        toks = self.toks[self.i:self.i + 5]
        return (
            len(toks) == 5
            and toks[1][0] == "int"
            and toks[2][1] == ","
            and toks[3][0] == "int"
            and toks[4][1] == ")"
        )

    def _args(self) -> tuple:
        self.expect("(")
        a = int(self.take()[1])
        self.expect(",")
        b = int(self.take()[1])
        self.expect(")")
        return (a, b)

    def exponent(self) -> tuple[int, int]:
        t = self.peek()
        sign = 1
        if self._is_op(t, "-"):
            self.take()
            sign = -1
            t = self.peek()
        if t[0] == "int":
            self.take()
            return sign * int(t[1]), 1
        if self._is_op(t, "("):
            self.take()
            inner = 1
            if self._is_op(self.peek(), "-"):
                self.take()
                inner = -1
            a = self.take()
            if a[0] != "int":
                self.fail(a, "expected an integer exponent")
            num, den = inner * int(a[1]), 1
            if self._is_op(self.peek(), "/"):
                self.take()
                b = self.take()
                if b[0] != "int" or int(b[1]) == 0:
                    self.fail(b, "expected a nonzero integer denominator")
                den = int(b[1])
            self.expect(")")
            if num % den == 0:
                return sign * (num // den), 1
            if (2 * num) % den == 0:
                return sign * (2 * num // den), 2
            self.fail(a, "exponent must be a multiple of 1/2")
        self.fail(t, "expected an exponent")
