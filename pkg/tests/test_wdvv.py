import random
from fractions import Fraction

import pytest
import sympy

from helpers import kontsevich_family, mixed_n3_corpus, random_prepotential, separable_solution
from test_algebra import to_sympy
from wdvvkit.algebra import Poly, PolyMatrix, VarCtx, parse_expr
from wdvvkit.wdvv import (
    PivotDegenerateError,
    Prepotential,
    associativity_holds,
    check_wdvv,
    hessian,
    hessian_data,
    structure_matrices,
    wdvv_residuals,
)

CTX = VarCtx.standard(3)
X1, X2, X3 = (Poly.var(CTX, i) for i in (1, 2, 3))
QUAD = (X1 ** 2 * X3 + X1 * X2 ** 2) / 2
PERTURBED = QUAD + X2 ** 4 + X3 ** 4
A3 = parse_expr("1/2*x1^2*x3 + 1/2*x1*x2^2 + 1/4*x2^2*x3^2 + 1/60*x3^5", CTX)
H3 = parse_expr("1/2*x1^2*x3 + 1/2*x1*x2^2 + 1/6*x2^3*x3^2 + 1/20*x2^2*x3^5 + 1/3960*x3^11", CTX)


def const_matrix(rows):
    return PolyMatrix(CTX, [[Poly.const(CTX, x) for x in r] for r in rows])


class TestHessian:
    def test_quadratic_prepotential(self):
        assert hessian(QUAD) == PolyMatrix(CTX, [[X3, X2, X1], [X2, X1, 0], [X1, 0, 0]])

    def test_zero_is_degenerate(self):
        data = hessian_data(Prepotential(CTX, Poly.zero(CTX)))
        assert data.h.is_zero() and data.pivot_degenerate

    def test_quadratic_form_has_constant_slices(self):
        F = X1 ** 2 / 2 + X2 * X3 + X3 ** 2
        data = hessian_data(Prepotential(CTX, F))
        assert all(c.is_zero() for c in data.c)

    def test_slices_are_derivatives_of_hessian(self):
        data = hessian_data(Prepotential(CTX, A3))
        for j in range(3):
            assert data.c[j] == data.h.diff(j + 1)


class TestResiduals:
    def test_quadratic_solution(self):
        assert all(R.is_zero() for R in wdvv_residuals(Prepotential(CTX, QUAD)).values())
        v = check_wdvv(Prepotential(CTX, QUAD))
        assert v.satisfied and v.ordinary and v.ordinary_solution and not v.witnesses

    def test_perturbed_fails_with_witness(self):
        v = check_wdvv(Prepotential(CTX, PERTURBED))
        assert not v.satisfied
        w = v.witnesses[0]
        assert (w.j, w.l) in {(1, 2), (1, 3), (2, 3)} and w.coefficient != 0

    @pytest.mark.parametrize("F", [A3, H3], ids=["A3", "H3"])
    def test_polynomial_frobenius_potentials(self, F):
        assert check_wdvv(Prepotential(CTX, F)).ordinary_solution

    def test_keys_and_shapes(self):
        R = wdvv_residuals(Prepotential(CTX, PERTURBED))
        assert sorted(R) == [(1, 2), (1, 3), (2, 3)]
        assert all(M.n == 3 for M in R.values())

    def test_degenerate_pivot_raises(self):
        with pytest.raises(PivotDegenerateError):
            check_wdvv(Prepotential(CTX, X2 ** 3 + X3 ** 3))

    def test_generalized_but_not_ordinary(self):
        rng = random.Random(17)
        seen = 0
        for _ in range(10):
            v = check_wdvv(separable_solution(rng))
            assert v.satisfied
            seen += not v.ordinary
        assert seen > 0

    def test_against_sympy_adjugate(self):
        # oracle: sympy adjugate of c_1, commutators expanded
        rng = random.Random(99)
        cases = [Prepotential(CTX, QUAD), Prepotential(CTX, PERTURBED), kontsevich_family(rng),
                 separable_solution(rng), random_prepotential(rng, 3, 4, 5)]
        syms = sympy.symbols(CTX.names)
        for P in cases:
            Fs = to_sympy(P.F)
            h = sympy.hessian(Fs, syms)
            c = [h.diff(s) for s in syms]
            adj = c[0].adjugate()
            expected = all((c[j] * adj * c[l] - c[l] * adj * c[j]).applyfunc(sympy.expand) == sympy.zeros(3, 3)
                           for j in range(3) for l in range(j + 1, 3))
            assert check_wdvv(P).satisfied == expected


class TestStructureMatrices:
    def test_quadratic_solution(self):
        ops = structure_matrices(Prepotential(CTX, QUAD))
        assert ops[0].is_identity()
        C2 = ops[1].reduced()
        assert C2.den.is_constant()
        normalized = C2.num.scale(1 / C2.den.constant_value())
        assert normalized == const_matrix([[0, 0, 0], [1, 0, 0], [0, 1, 0]])
        C3 = ops[2].reduced()
        assert C3.num.scale(1 / C3.den.constant_value()) == const_matrix([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
        assert ops[1].commutes_with(ops[2])

    def test_pivot_operator_is_identity_for_random_input(self):
        rng = random.Random(1)
        for _ in range(10):
            P = random_prepotential(rng, 3, 4)
            assert structure_matrices(P)[0].is_identity()

    def test_associativity_matches_wdvv(self):
        for P in mixed_n3_corpus(7, 40):
            assert associativity_holds(structure_matrices(P)) == check_wdvv(P).satisfied


class TestTwoVariables:
    def test_n2_always_satisfied(self):
        rng = random.Random(2024)
        for _ in range(30):
            assert check_wdvv(random_prepotential(rng, 2, 5)).satisfied

    def test_n2_residual_is_scalar_commutation(self):
        ctx = VarCtx.standard(2)
        F = parse_expr("x1^3*x2 + x2^5/7 - 3*x1*x2^2", ctx)
        R = wdvv_residuals(Prepotential(ctx, F))
        assert list(R) == [(1, 2)] and R[(1, 2)].is_zero()


def test_pivot_choice_is_covariant():
    # relabelling x1 <-> x3 and pivoting on x3 must give the same verdict
    swap = {0: 2, 1: 1, 2: 0}
    for P in mixed_n3_corpus(3, 25):
        G = Poly(CTX, {tuple(e[swap[i]] for i in range(3)): c for e, c in P.F.terms.items()})
        try:
            v = check_wdvv(Prepotential(CTX, G, pivot=3))
        except PivotDegenerateError:
            continue
        assert v.satisfied == check_wdvv(P).satisfied


def test_verdict_is_independent_of_pivot_for_solutions():
    rng = random.Random(12)
    for _ in range(5):
        F = kontsevich_family(rng).F
        for p in (1, 2, 3):
            try:
                assert check_wdvv(Prepotential(CTX, F, pivot=p)).satisfied
            except PivotDegenerateError:
                pass


def test_witness_coefficient_is_exact():
    v = check_wdvv(Prepotential(CTX, PERTURBED))
    assert all(Fraction(w.coefficient) != 0 for w in v.witnesses)
    w = v.witnesses[0].to_dict()
    assert set(w) == {"j", "l", "row", "col", "monomial", "coefficient"}
