"""Hessian data of a prepotential and exact WDVV / associativity checks.

With ``c_j = d h / d x_j`` and pivot p, the generalized WDVV equations
``c_j c_p^{-1} c_l = c_l c_p^{-1} c_j`` are tested in cleared-denominator
form ``c_j adj(c_p) c_l - c_l adj(c_p) c_j == 0``.  The ordinary equations
additionally need ``c_p`` constant.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from wdvvkit.algebra import Poly, PolyMatrix, RatOperator, VarCtx, det_adj


class PivotDegenerateError(ValueError):
    """The pivot slice has identically vanishing determinant."""


@dataclass(frozen=True)
class Prepotential:
    ctx: VarCtx
    F: Poly
    pivot: int = 1

    def __post_init__(self):
        if len(self.ctx) < 2:
            raise ValueError("a prepotential needs at least two variables")
        if self.F.ctx != self.ctx:
            raise ValueError("F is not over the given variable context")
        if not 1 <= self.pivot <= len(self.ctx):
            raise ValueError(f"pivot {self.pivot} out of range 1..{len(self.ctx)}")

    @property
    def n(self) -> int:
        return len(self.ctx)


@dataclass(frozen=True)
class HessianData:
    h: PolyMatrix
    c: tuple  # c[j-1] = d h / d x_j
    det1: Poly
    adj1: PolyMatrix
    pivot: int

    @property
    def pivot_degenerate(self) -> bool:
        return self.det1.is_zero()

    @property
    def pivot_slice(self) -> PolyMatrix:
        return self.c[self.pivot - 1]


@dataclass(frozen=True)
class Witness:
    """One nonzero entry of a failing residual (all indices 1-based)."""

    j: int
    l: int
    row: int
    col: int
    monomial: str
    coefficient: str

    def to_dict(self) -> dict:
        return {"j": self.j, "l": self.l, "row": self.row, "col": self.col,
                "monomial": self.monomial, "coefficient": self.coefficient}


@dataclass
class WdvvVerdict:
    satisfied: bool
    ordinary: bool
    witnesses: list = field(default_factory=list)
    pivot_degenerate: bool = False
    ordinary_witness: dict | None = None

    @property
    def ordinary_solution(self) -> bool:
        """Solves the ordinary equations: generalized WDVV plus a constant pivot slice."""
        return self.satisfied and self.ordinary


def hessian(F: Poly) -> PolyMatrix:
    n = F.nvars
    grad = F.gradient()
    rows = [[None] * n for _ in range(n)]
    for j in range(n):
        for l in range(j, n):
            rows[j][l] = rows[l][j] = grad[j].diff(l + 1)
    return PolyMatrix(F.ctx, rows)


def hessian_data(P: Prepotential) -> HessianData:
    """Hessian, its gradient slices, and det/adjugate of the pivot slice."""
    h = hessian(P.F)
    c = tuple(h.diff(j) for j in range(1, P.n + 1))
    det1, adj1 = det_adj(c[P.pivot - 1])
    return HessianData(h=h, c=c, det1=det1, adj1=adj1, pivot=P.pivot)


def _require_pivot(data: HessianData) -> None:
    if data.pivot_degenerate:
        raise PivotDegenerateError(
            f"det(d h / d x_{data.pivot}) vanishes identically; choose another pivot"
        )


def residuals_from(data: HessianData) -> dict[tuple[int, int], PolyMatrix]:
    _require_pivot(data)
    adj = data.adj1
    c = data.c
    left = [cj @ adj for cj in c]
    out = {}
    for j, l in combinations(range(len(c)), 2):
        out[(j + 1, l + 1)] = left[j] @ c[l] - left[l] @ c[j]
    return out


def wdvv_residuals(P: Prepotential) -> dict[tuple[int, int], PolyMatrix]:
    """Cleared residual matrices ``R_jl = c_j adj c_l - c_l adj c_j`` for ``j < l`` (1-based keys)."""
    return residuals_from(hessian_data(P))


def residual_witnesses(residuals) -> list[Witness]:
    out = []
    for (j, l), R in residuals.items():
        for r, col, x in R.entries():
            if not x.is_zero():
                e, coeff = x.leading_term()
                out.append(Witness(j, l, r + 1, col + 1, x.monomial_str(e), str(coeff)))
    return out


def check_wdvv(P: Prepotential) -> WdvvVerdict:
    """Generalized WDVV verdict plus the constancy flag of the pivot slice.

    Raises :class:`PivotDegenerateError` when the pivot slice is singular.
    """
    data = hessian_data(P)
    res = residuals_from(data)
    witnesses = residual_witnesses(res)
    ordinary = True
    ord_witness = None
    for i, j, x in data.pivot_slice.entries():
        if not x.is_constant():
            ordinary = False
            e, _ = next((t for t in x.sorted_terms() if any(t[0])))
            ord_witness = {"row": i + 1, "col": j + 1, "monomial": x.monomial_str(e)}
            break
    return WdvvVerdict(
        satisfied=not witnesses,
        ordinary=ordinary,
        witnesses=witnesses,
        pivot_degenerate=False,
        ordinary_witness=ord_witness,
    )


def pivot_is_constant(P: Prepotential) -> bool:
    return hessian_data(P).pivot_slice.is_constant()


def structure_matrices(P: Prepotential) -> list[RatOperator]:
    """``C_j = c_p^{-1} c_j`` as ``(adj c_j, det)`` pairs; ``C_p`` normalizes to the identity."""
    data = hessian_data(P)
    _require_pivot(data)
    return [RatOperator(data.adj1 @ cj, data.det1) for cj in data.c]


def associativity_holds(ops: list[RatOperator]) -> bool:
    """All pairwise commutators of the structure matrices vanish."""
    return all(a.commutes_with(b) for a, b in combinations(ops, 2))
