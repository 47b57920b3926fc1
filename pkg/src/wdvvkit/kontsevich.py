"""Rational-curve counts N_k of the plane, computed two independent ways.

The reduced prepotential is the series

    f(x2, x3) = sum_k N_k x3^(3k-1) / (3k-1)! * exp(k x2)

and it must solve ``f_223^2 = f_333 + f_222 * f_233``.  :func:`nk_recursion`
uses the closed recursion on the N_k; :func:`solve_from_pde` ignores that
formula and instead reads each N_k off the PDE coefficient of
``exp(k x2) x3^(3k-4)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial


class IntegralityError(ArithmeticError):
    """A computed N_k is not an integer."""


class QSeries:
    """Truncated series ``sum c[k, m] x3^m exp(k x2)`` with ``1 <= k <= K``.

    Only exponential degrees ``k >= 1`` are representable, which is all the
    Kontsevich ansatz and its derivatives ever produce.
    """

    __slots__ = ("K", "coeffs")

    def __init__(self, K: int, coeffs=None):
        if K < 1:
            raise ValueError("truncation order must be at least 1")
        self.K = K
        self.coeffs = {}
        for (k, m), c in (coeffs or {}).items():
            if not 1 <= k <= K:
                continue
            if m < 0:
                raise ValueError("negative power of x3")
            c = Fraction(c)
            if c:
                self.coeffs[(k, m)] = c

    def __eq__(self, other):
        return isinstance(other, QSeries) and self.K == other.K and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def slice(self, k: int) -> dict[int, Fraction]:
        """``{m: c}`` for exponential degree ``k``."""
        return {m: c for (kk, m), c in self.coeffs.items() if kk == k}

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out.get(key, 0) + c
        return QSeries(min(self.K, other.K), out)

    def __neg__(self):
        return QSeries(self.K, {key: -c for key, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        K = min(self.K, other.K)
        out: dict = {}
        for (k1, m1), c1 in self.coeffs.items():
            for (k2, m2), c2 in other.coeffs.items():
                k = k1 + k2
                if k > K:
                    continue
                key = (k, m1 + m2)
                out[key] = out.get(key, 0) + c1 * c2
        return QSeries(K, out)

    def d2(self) -> "QSeries":
        """Derivative in x2: the k-slice is scaled by k."""
        return QSeries(self.K, {(k, m): k * c for (k, m), c in self.coeffs.items()})

    def d3(self) -> "QSeries":
        """Derivative in x3."""
        return QSeries(self.K, {(k, m - 1): m * c for (k, m), c in self.coeffs.items() if m})

    def __repr__(self):
        body = ", ".join(f"({k},{m}): {c}" for (k, m), c in sorted(self.coeffs.items()))
        return f"QSeries(K={self.K}, {{{body}}})"


@dataclass
class GwTable:
    """``values[k-1] = N_k``."""

    values: list[int] = field(default_factory=list)

    @property
    def K(self) -> int:
        return len(self.values)

    def __getitem__(self, k: int) -> int:
        if k < 1:
            raise IndexError(k)
        return self.values[k - 1]

    def pairs(self) -> list[list[int]]:
        return [[k, n] for k, n in enumerate(self.values, start=1)]

    def with_override(self, k: int, value: int) -> "GwTable":
        vals = list(self.values)
        vals[k - 1] = value
        return GwTable(vals)


def _integral(x: Fraction, k: int) -> int:
    if x.denominator != 1:
        raise IntegralityError(f"N_{k} = {x} is not an integer")
    return int(x)


def nk_recursion(K: int) -> GwTable:
    """N_1..N_K from the quadratic recursion.

    ``N_k = sum_{p+q=k} N_p N_q p^2 q [q C(3k-4, 3p-2) - p C(3k-4, 3p-1)]``
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    N = [0, 1]
    for k in range(2, K + 1):
        total = 0
        for p in range(1, k):
            q = k - p
            total += N[p] * N[q] * p * p * q * (q * comb(3 * k - 4, 3 * p - 2) - p * comb(3 * k - 4, 3 * p - 1))
        N.append(_integral(Fraction(total), k))
    return GwTable(N[1:])


def build_series(table: GwTable) -> QSeries:
    """The truncated ansatz ``sum N_k x3^(3k-1)/(3k-1)! e^(k x2)`` for ``k <= K``."""
    return QSeries(table.K, {(k, 3 * k - 1): Fraction(n, factorial(3 * k - 1))
                             for k, n in enumerate(table.values, start=1)})


def pde_residual(f: QSeries) -> QSeries:
    """``f_223^2 - f_333 - f_222 f_233`` truncated at the order of ``f``."""
    f2, f3 = f.d2(), f.d3()
    f22 = f2.d2()
    f223 = f22.d3()
    f222 = f22.d2()
    f233 = f2.d3().d3()
    f333 = f3.d3().d3()
    return f223 * f223 - f333 - f222 * f233


def residual_witness(res: QSeries) -> dict | None:
    """Lowest nonzero ``(k, m, coefficient)`` of a residual, or ``None``."""
    if res.is_zero():
        return None
    k, m = min(res.coeffs)
    return {"k": k, "x3_power": m, "coefficient": str(res.coeffs[(k, m)])}


def solve_from_pde(K: int) -> GwTable:
    """N_1..N_K by coefficient matching in the PDE, seeded with N_1 = 1.

    At exponential degree k the only term involving N_k is ``-f_333``,
    whose coefficient is ``-N_k / (3k-4)!`` on ``x3^(3k-4)``; every other
    contribution is a product of lower slices.  Setting N_k = 0, computing
    the residual slice and solving the linear equation gives N_k.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    values = [1]
    for k in range(2, K + 1):
        trial = build_series(GwTable(values + [0]))
        sl = pde_residual(trial).slice(k)
        target = 3 * k - 4
        stray = {m: c for m, c in sl.items() if m != target}
        if stray:
            raise ArithmeticError(f"inconsistent PDE slice at k={k}: unexpected powers {sorted(stray)}")
        # residual(N_k) = sl[target] - N_k / (3k-4)!  must vanish
        nk = sl.get(target, Fraction(0)) * factorial(target)
        values.append(_integral(nk, k))
    return GwTable(values)


def certify(table: GwTable) -> tuple[bool, dict | None]:
    """Whether the series built from ``table`` solves the PDE through its order."""
    res = pde_residual(build_series(table))
    return res.is_zero(), residual_witness(res)
