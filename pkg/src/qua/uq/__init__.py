"""Quantized enveloping algebra of gl_{n+1}: PBW normal forms and automorphisms."""
from .pbw import AlgebraError, RankMismatch, UqElement, UqGl, uq_algebra
from .cyclic import NotCyclic, cyclic_bracket_form
from .grammar import parse_element, render_element

__all__ = [
    "AlgebraError",
    "NotCyclic",
    "RankMismatch",
    "UqElement",
    "UqGl",
    "cyclic_bracket_form",
    "parse_element",
    "render_element",
    "uq_algebra",
]
