"""Exact noncommutative algebra for skein algebras of the torus and the A1 DAHA."""

from .scalars import Q, T, QFraction, QScalar, q_pow, t_pow
from .qtorus import A_Q, QuantumTorus, TorusElement, e_basis, q_commutator
from .daha import DahaElement
from .solidtorus import VElement
from .laurentmod import LPoly4, ShiftOperator
from .report import run_suite

__all__ = [
    "Q", "T", "QFraction", "QScalar", "q_pow", "t_pow",
    "A_Q", "QuantumTorus", "TorusElement", "e_basis", "q_commutator",
    "DahaElement", "VElement", "LPoly4", "ShiftOperator", "run_suite",
]
