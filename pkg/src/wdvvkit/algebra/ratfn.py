"""Rational functions num/den over a shared variable context."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from wdvvkit.algebra.poly import Poly, gcd


class RatFn:
    """Quotient of two polynomials kept in lowest terms with a monic denominator.

    Zero tests only look at the numerator, so they stay exact even when a
    caller skips normalization (``reduce=False``).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, reduce: bool = True):
        if den is None:
            den = Poly.const(num.ctx, 1)
        if den.ctx != num.ctx:
            raise ValueError("numerator and denominator live in different contexts")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Poly.const(num.ctx, 1)
        elif den.is_constant():
            num = num.scale(1 / den.constant_value())
            den = Poly.const(num.ctx, 1)
        elif reduce:
            q = num.exact_div(den)
            if q is not None:
                num, den = q, Poly.const(num.ctx, 1)
            else:
                g = gcd(num, den)
                if not g.is_constant():
                    num, den = num.exact_div(g), den.exact_div(g)
                lc = den.leading_coefficient()
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFn":
        return cls(p)

    @property
    def ctx(self):
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.den.is_constant():
            q = self.num.exact_div(self.den)
            if q is None:
                raise ValueError("rational function is not a polynomial")
            return q
        return self.num.scale(1 / self.den.constant_value())

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, Poly):
            return RatFn(other)
        if isinstance(other, (int, Rational)):
            return RatFn(Poly.const(self.ctx, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.num.is_zero() or other.num.is_zero():
            return RatFn(Poly.zero(self.ctx))
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self.num * other.den - other.num * self.den).is_zero()

    def __hash__(self):
        r = RatFn(self.num, self.den)
        return hash((r.num, r.den))

    def diff(self, i: int) -> "RatFn":
        if self.den.is_constant():
            return RatFn(self.num.diff(i), self.den)
        return RatFn(self.num.diff(i) * self.den - self.num * self.den.diff(i), self.den * self.den)

    def eval(self, point) -> Fraction:
        d = self.den.eval(point)
        if not d:
            raise ZeroDivisionError("rational function evaluated on a pole")
        return self.num.eval(point) / d

    __call__ = eval

    def __str__(self):
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFn({str(self)!r})"
