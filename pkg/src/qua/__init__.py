"""Exact computations in U_q(gl_{n+1}), U_q(sl_{n+1}) and the quantized Weyl algebra A^q_{n+1}."""

__version__ = "0.1.0"
