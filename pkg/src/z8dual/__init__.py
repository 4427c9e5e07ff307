"""Exact computations showing that Z8 admits no natural duality, plus the
F2 quadratic-set search that the same argument bears on."""

__version__ = "0.1.0"
