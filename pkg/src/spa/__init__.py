"""Solvable polynomial algebras, Groebner bases and dimensions for U_q^±(A_N)."""

__version__ = "0.1.0"
