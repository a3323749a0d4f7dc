"""Text form of U_q elements.

Symbols: ``E1``, ``F2`` (simple generators), ``Kb3`` (Kb_3), ``K2`` (K_2 = Kb_2 Kb_3^-1),
``Ep(1,3)`` / ``Em(1,3)`` for the root vectors of +-(e_1 - e_3).  Products are written
by juxtaposition or ``*``; coefficients are scalar literals.
"""
from __future__ import annotations

import re

from ..exprparse import ExpressionError, ExpressionParser
from ..rootsys import Root
from ..scalars import render_scalar

_SIMPLE = re.compile(r"(E|F|Kb|K)(\d+)\Z")


def parse_element(text: str, alg):
    """Parse an element of the algebra ``alg`` (a UqGl)."""

    def resolve(name, args, power):
        if name in ("Ep", "Em"):
            if not args:
                raise ExpressionError(f"{name} needs a root argument like {name}(1,3)")
            i, j = args
            if not (1 <= i < j <= alg.n + 1):
                raise ExpressionError(f"{name}({i},{j}) is not a positive root of rank {alg.n}")
            if power < 0:
                raise ExpressionError("negative power of a root vector")
            base = alg.letter(Root(i, j) if name == "Ep" else Root(j, i))
            return base**power
        m = _SIMPLE.match(name)
        if m is None or args:
            return None
        kind, idx = m.group(1), int(m.group(2))
        if kind == "Kb":
            if not 1 <= idx <= alg.n + 1:
                raise ExpressionError(f"Kb{idx} out of range for rank {alg.n}")
            return alg.Kb(idx, power)
        if not 1 <= idx <= alg.n:
            raise ExpressionError(f"{kind}{idx} out of range for rank {alg.n}")
        if kind == "K":
            return alg.K(idx, power)
        if power < 0:
            raise ExpressionError(f"negative power of {name}")
        gen = alg.E(idx) if kind == "E" else alg.F(idx)
        return gen**power

    return ExpressionParser(text, alg.field, resolve, alg.scalar).parse()


def _letter_name(root: Root, positive: bool) -> str:
    if root.height == 1:
        return f"{'E' if positive else 'F'}{root.i}"
    return f"{'Ep' if positive else 'Em'}({root.i},{root.j})"


def render_monomial(alg, mono) -> str:
    f, k, e = mono
    parts = []
    for p, m in enumerate(f):
        if m:
            s = _letter_name(alg.roots[p], False)
            parts.append(s if m == 1 else f"{s}^{m}")
    for j, m in enumerate(k, start=1):
        if m:
            parts.append(f"Kb{j}" if m == 1 else f"Kb{j}^{m}" if m > 0 else f"Kb{j}^({m})")
    for p, m in enumerate(e):
        if m:
            s = _letter_name(alg.roots[p], True)
            parts.append(s if m == 1 else f"{s}^{m}")
    return "*".join(parts)


def _coeff_text(c) -> str:
    lit = render_scalar(c)
    if any(ch in lit for ch in "+/") or "-" in lit[1:]:
        return f"({lit})"
    return lit


def render_element(x) -> str:
    if x.is_zero():
        return "0"
    out = []
    for mono, c in sorted(x.terms.items()):
        body = render_monomial(x.alg, mono)
        if not body:
            piece = _coeff_text(c)
        elif c.is_one():
            piece = body
        elif (-c).is_one():
            piece = "-" + body
        else:
            piece = f"{_coeff_text(c)}*{body}"
        out.append(piece)
    text = out[0]
    for piece in out[1:]:
        text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
    return text
