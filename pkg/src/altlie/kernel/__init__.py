"""Exact arithmetic substrate: rationals, sparse polynomials, rational functions, series."""
from fractions import Fraction as Rational

from . import _backend
from .linalg import nullspace, rank, rref, solve
from .poly import DEFAULT, MultiPoly, Registry, format_rational, symbols, var
from .ratfunc import RationalFunction
from .series import (
    DEFAULT_CAP,
    TruncatedSeries,
    coefficient_of,
    compose,
    series_exp,
    series_expand_inverse,
    series_log,
    series_power,
)


def poly_arith(a, b, op):
    """Apply ``op`` in {"add", "sub", "mul"} to two polynomials of one registry."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def backend():
    return _backend.NAME


__all__ = [
    "DEFAULT", "DEFAULT_CAP", "MultiPoly", "Rational", "RationalFunction", "Registry",
    "TruncatedSeries", "backend", "coefficient_of", "compose", "format_rational", "nullspace",
    "poly_arith", "rank", "rref", "series_exp", "series_expand_inverse", "series_log",
    "series_power", "solve", "symbols", "var",
]
