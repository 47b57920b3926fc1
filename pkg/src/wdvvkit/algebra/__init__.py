"""Exact arithmetic layer: rationals, polynomials, rational functions, matrices, parsing."""
from fractions import Fraction as Rat

from wdvvkit.algebra.matrix import PolyMatrix, RatOperator, bareiss_det, det_adj
from wdvvkit.algebra.parser import (
    ExponentError,
    ExprError,
    ExprSyntaxError,
    UnknownIdentifierError,
    format_expr,
    parse_expr,
)
from wdvvkit.algebra.poly import Poly, VarCtx, gcd
from wdvvkit.algebra.ratfn import RatFn


def diff(p: Poly, i: int) -> Poly:
    """Exact partial derivative of ``p`` with respect to x_i (1-based)."""
    return p.diff(i)


def eval_poly(p: Poly, point) -> Rat:
    """Exact value of ``p`` at a rational point."""
    return p.eval(point)


__all__ = [
    "Rat", "VarCtx", "Poly", "RatFn", "PolyMatrix", "RatOperator",
    "parse_expr", "format_expr", "diff", "eval_poly", "det_adj", "bareiss_det", "gcd",
    "ExprError", "ExprSyntaxError", "UnknownIdentifierError", "ExponentError",
]
