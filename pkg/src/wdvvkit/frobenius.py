"""Frobenius-manifold axioms in flat coordinates.

With a constant metric the five axioms reduce to finite identities on
``c_jkm = sum_l g_ml C^l_jk``:

1. flat            g constant, symmetric, invertible
2. compatible      c_jkm totally symmetric
3. unity           C^l_ek = delta^l_k
4. cov_const_e     Christoffel symbols vanish, so a coordinate unity is parallel
5. potential       d_p c_jkm totally symmetric in all four indices

Associativity of the product is checked separately as pairwise
commutation of the multiplication matrices ``(L_j)^l_k = C^l_jk``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from wdvvkit.algebra import Poly, PolyMatrix, VarCtx
from wdvvkit.report import Report
from wdvvkit.wdvv import (
    PivotDegenerateError,
    Prepotential,
    check_wdvv,
    hessian_data,
    structure_matrices,
)


class NotOrdinaryError(ValueError):
    """The prepotential does not solve the ordinary WDVV equations."""


class ReconstructionError(ValueError):
    """No prepotential exists for the given structure constants."""


@dataclass(frozen=True)
class FrobeniusData:
    """``C[j][k][l]`` holds C^l_jk (0-based); ``g`` is a constant rational matrix."""

    ctx: VarCtx
    g: tuple
    C: tuple
    e_index: int = 1

    def __post_init__(self):
        n = len(self.ctx)
        g = tuple(tuple(Fraction(x) for x in r) for r in self.g)
        if len(g) != n or any(len(r) != n for r in g):
            raise ValueError(f"metric must be {n} x {n}")
        C = tuple(tuple(tuple(x if isinstance(x, Poly) else Poly.const(self.ctx, x) for x in ck)
                        for ck in cj) for cj in self.C)
        if len(C) != n or any(len(cj) != n or any(len(ck) != n for ck in cj) for cj in C):
            raise ValueError(f"structure constants must be {n} x {n} x {n}")
        if not 1 <= self.e_index <= n:
            raise ValueError(f"unity index {self.e_index} out of range 1..{n}")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "C", C)

    @property
    def n(self) -> int:
        return len(self.ctx)

    def lowered(self):
        """``c[j][k][m] = sum_l g_ml C^l_jk``."""
        n = self.n
        zero = Poly.zero(self.ctx)
        out = [[[zero] * n for _ in range(n)] for _ in range(n)]
        for j, k, m in product(range(n), repeat=3):
            acc = zero
            for l in range(n):
                if self.g[m][l]:
                    acc = acc + self.C[j][k][l] * self.g[m][l]
            out[j][k][m] = acc
        return out

    def multiplication_matrix(self, j: int) -> PolyMatrix:
        """``(L_j)[l][k] = C^l_jk`` for 0-based j."""
        n = self.n
        return PolyMatrix(self.ctx, [[self.C[j][k][l] for k in range(n)] for l in range(n)])


@dataclass
class AxiomReport:
    flat: bool
    compatible: bool
    unity: bool
    cov_const_e: bool
    potential: bool
    associative: bool
    F_reconstructed: Poly | None = None
    reconstruction_wdvv: bool | None = None
    witnesses: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    @property
    def all_axioms(self) -> bool:
        return self.flat and self.compatible and self.unity and self.cov_const_e and self.potential

    def to_report(self) -> Report:
        rep = Report("check-frobenius")
        for name in ("flat", "compatible", "unity", "cov_const_e", "potential", "associative"):
            rep.add(name, getattr(self, name), self.witnesses.get(name))
        rep.details["reductions"] = self.notes
        if self.F_reconstructed is not None:
            rep.details["F_reconstructed"] = str(self.F_reconstructed)
        if self.reconstruction_wdvv is not None:
            rep.add("reconstruction_wdvv", self.reconstruction_wdvv, self.witnesses.get("reconstruction_wdvv"))
        return rep


def from_prepotential(P: Prepotential) -> FrobeniusData:
    """Metric and structure constants of an ordinary WDVV solution."""
    verdict = check_wdvv(P)
    if not verdict.satisfied:
        raise NotOrdinaryError("F does not satisfy the WDVV equations")
    if not verdict.ordinary:
        raise NotOrdinaryError(
            f"pivot slice is not constant (entry {verdict.ordinary_witness}); "
            "a generalized solution has no constant metric in these coordinates"
        )
    data = hessian_data(P)
    g = [[x.constant_value() for x in r] for r in data.pivot_slice.rows]
    ops = structure_matrices(P)
    n = P.n
    # C_j = c_p^{-1} c_j has constant denominator here
    C = [[[ops[j].num.rows[l][k].scale(1 / ops[j].den.constant_value()) for l in range(n)]
          for k in range(n)] for j in range(n)]
    return FrobeniusData(P.ctx, g, C, P.pivot)


def _metric_ok(g, ctx) -> tuple[bool, object]:
    n = len(g)
    for i, j in combinations(range(n), 2):
        if g[i][j] != g[j][i]:
            return False, {"reason": "asymmetric", "entry": [i + 1, j + 1]}
    det = PolyMatrix(ctx, [[Poly.const(ctx, x) for x in r] for r in g]).det()
    if det.is_zero():
        return False, {"reason": "singular"}
    return True, None


def _sym3_witness(c):
    n = len(c)
    for j, k, m in product(range(n), repeat=3):
        if (c[j][k][m] != c[k][j][m]) or (c[j][k][m] != c[j][m][k]):
            return [j + 1, k + 1, m + 1]
    return None


def _sym4_witness(c):
    n = len(c)
    for j, k, m, p in product(range(n), repeat=4):
        if m < p and c[j][k][m].diff(p + 1) != c[j][k][p].diff(m + 1):
            return [j + 1, k + 1, m + 1, p + 1]
    return None


def check_axioms(D: FrobeniusData) -> AxiomReport:
    n = D.n
    witnesses = {}
    flat, w = _metric_ok(D.g, D.ctx)
    if w:
        witnesses["flat"] = w
    c = D.lowered()
    w = _sym3_witness(c)
    compatible = w is None
    if w:
        witnesses["compatible"] = w
    e = D.e_index - 1
    unity = True
    for k, l in product(range(n), repeat=2):
        if D.C[e][k][l] != (1 if k == l else 0):
            unity = False
            witnesses["unity"] = [k + 1, l + 1]
            break
    cov_const_e = flat
    w = _sym4_witness(c) if compatible else None
    potential = compatible and w is None
    if w:
        witnesses["potential"] = w
    if not compatible:
        witnesses.setdefault("potential", "requires a totally symmetric c_jkm")
    Ls = [D.multiplication_matrix(j) for j in range(n)]
    associative = True
    for a, b in combinations(range(n), 2):
        comm = Ls[a] @ Ls[b] - Ls[b] @ Ls[a]
        hit = comm.first_nonzero()
        if hit is not None:
            associative = False
            witnesses["associative"] = [a + 1, b + 1, hit[0] + 1, hit[1] + 1]
            break
    notes = {
        "flat": "constant metric: Riemann tensor vanishes identically",
        "compatible": "c_jkm = g_ml C^l_jk totally symmetric",
        "unity": f"C^l_(e,k) = delta^l_k with e = x{D.e_index}",
        "cov_const_e": "constant metric: Christoffel symbols vanish, coordinate unity is parallel",
        "potential": "d_p c_jkm totally symmetric in (j,k,m,p)",
        "associative": "multiplication matrices commute pairwise",
    }
    F = reconstruct_prepotential(D, _checked=True) if potential else None
    wd = None
    if F is not None and n >= 2:
        try:
            wd = check_wdvv(Prepotential(D.ctx, F, D.e_index)).ordinary_solution
        except PivotDegenerateError:
            wd = False
            witnesses["reconstruction_wdvv"] = "pivot slice of the reconstructed F is singular"
    return AxiomReport(flat, compatible, unity, cov_const_e, potential, associative, F, wd, witnesses, notes)


def reconstruct_prepotential(D: FrobeniusData, _checked: bool = False) -> Poly:
    """F with third derivatives ``c_jkm``, vanishing to second order at the origin.

    Uses ``F(x) = 1/2 sum c_jkm(t x) x_j x_k x_m (1-t)^2 dt`` integrated over
    [0, 1]; a degree-d monomial picks up ``1 / ((d+1)(d+2)(d+3))``.
    """
    c = D.lowered()
    if not _checked:
        w = _sym3_witness(c)
        if w is not None:
            raise ReconstructionError(f"c_jkm not totally symmetric at {tuple(w)}")
        w = _sym4_witness(c)
        if w is not None:
            raise ReconstructionError(f"d_p c_jkm not totally symmetric at {tuple(w)}")
    ctx = D.ctx
    n = D.n
    xs = [Poly.var(ctx, i) for i in range(1, n + 1)]
    F = Poly.zero(ctx)
    for j, k, m in product(range(n), repeat=3):
        a = c[j][k][m]
        if a.is_zero():
            continue
        w = Poly(ctx, {e: v / ((sum(e) + 1) * (sum(e) + 2) * (sum(e) + 3)) for e, v in a.terms.items()})
        F = F + w * xs[j] * xs[k] * xs[m]
    return F


def modulo_quadratic(F: Poly, G: Poly) -> bool:
    """``F - G`` has total degree at most 2."""
    return (F - G).degree() <= 2
