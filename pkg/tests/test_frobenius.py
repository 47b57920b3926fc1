import random
from fractions import Fraction
from itertools import product

import pytest

from helpers import kontsevich_family, rand_rat, separable_solution
from wdvvkit.algebra import Poly, VarCtx, parse_expr
from wdvvkit.documents import frobenius as read_frobenius
from wdvvkit.frobenius import (
    FrobeniusData,
    NotOrdinaryError,
    ReconstructionError,
    check_axioms,
    from_prepotential,
    modulo_quadratic,
    reconstruct_prepotential,
)
from wdvvkit.wdvv import Prepotential

CTX = VarCtx.standard(3)
X1, X2, X3 = (Poly.var(CTX, i) for i in (1, 2, 3))
QUAD = (X1 ** 2 * X3 + X1 * X2 ** 2) / 2
A3 = parse_expr("1/2*x1^2*x3 + 1/2*x1*x2^2 + 1/4*x2^2*x3^2 + 1/60*x3^5", CTX)
ANTIDIAG = ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def quad_data():
    return from_prepotential(Prepotential(CTX, QUAD))


class TestFromPrepotential:
    def test_metric(self):
        assert quad_data().g == tuple(tuple(Fraction(x) for x in r) for r in ANTIDIAG)

    def test_unity_column(self):
        D = quad_data()
        for k, l in product(range(3), repeat=2):
            assert D.C[0][k][l] == (1 if k == l else 0)

    def test_refuses_non_constant_pivot_slice(self):
        ctx = VarCtx.standard(2)
        with pytest.raises(NotOrdinaryError, match="not constant"):
            from_prepotential(Prepotential(ctx, parse_expr("x1^3*x2", ctx)))

    def test_refuses_non_solution(self):
        with pytest.raises(NotOrdinaryError, match="does not satisfy"):
            from_prepotential(Prepotential(CTX, QUAD + X2 ** 4 + X3 ** 4))

    def test_refuses_generalized_solution(self):
        with pytest.raises(NotOrdinaryError):
            from_prepotential(separable_solution(random.Random(3)))


class TestAxioms:
    @pytest.mark.parametrize("F", [QUAD, A3], ids=["quad", "A3"])
    def test_ordinary_solutions_pass(self, F):
        ax = check_axioms(from_prepotential(Prepotential(CTX, F)))
        assert ax.all_axioms and ax.associative and ax.reconstruction_wdvv
        assert modulo_quadratic(ax.F_reconstructed, F)
        assert ax.to_report().ok

    def test_raw_document(self, fixture_doc):
        D, _ = read_frobenius(fixture_doc("frobenius_a3_raw.json"))
        ax = check_axioms(D)
        assert ax.all_axioms and ax.associative
        assert modulo_quadratic(ax.F_reconstructed, A3)

    def test_broken_symmetry(self, fixture_doc):
        D, _ = read_frobenius(fixture_doc("frobenius_broken.json"))
        ax = check_axioms(D)
        assert not ax.compatible
        assert ax.witnesses["compatible"] == [2, 3, 3]
        rep = ax.to_report()
        assert rep.status == "fail"

    def test_perturbed_entry(self):
        D = quad_data()
        C = [[list(ck) for ck in cj] for cj in D.C]
        C[1][2][0] = C[1][2][0] + X1
        C[2][1][0] = C[2][1][0] + X1
        ax = check_axioms(FrobeniusData(CTX, D.g, C, 1))
        assert not ax.compatible and len(ax.witnesses["compatible"]) == 3

    def test_constant_structure_passes_potential(self):
        rng = random.Random(4)
        # c_jkm from a random symmetric cubic, raised with the antidiagonal metric
        coef = {}
        for j, k, m in product(range(3), repeat=3):
            key = tuple(sorted((j, k, m)))
            coef.setdefault(key, rand_rat(rng))
        C = [[[Poly.const(CTX, coef[tuple(sorted((j, k, 2 - l)))]) for l in range(3)]
              for k in range(3)] for j in range(3)]
        ax = check_axioms(FrobeniusData(CTX, ANTIDIAG, C, 1))
        assert ax.compatible and ax.potential
        cubic = reconstruct_prepotential(FrobeniusData(CTX, ANTIDIAG, C, 1))
        for j, k, m in product(range(3), repeat=3):
            assert cubic.diff(j + 1).diff(k + 1).diff(m + 1) == coef[tuple(sorted((j, k, m)))]
        assert cubic.degree() == 3 and all(sum(e) == 3 for e in cubic.terms)

    def test_singular_metric(self):
        D = quad_data()
        ax = check_axioms(FrobeniusData(CTX, ((1, 0, 0), (0, 0, 0), (0, 0, 1)), D.C, 1))
        assert not ax.flat and ax.witnesses["flat"]["reason"] == "singular"

    def test_asymmetric_metric(self):
        D = quad_data()
        ax = check_axioms(FrobeniusData(CTX, ((0, 0, 1), (0, 1, 0), (2, 0, 0)), D.C, 1))
        assert not ax.flat and not ax.cov_const_e

    def test_wrong_unity(self):
        D = quad_data()
        ax = check_axioms(FrobeniusData(CTX, D.g, D.C, 2))
        assert not ax.unity and ax.witnesses["unity"]

    def test_report_clause_names(self):
        names = {c.name for c in check_axioms(quad_data()).to_report().clauses}
        assert names == {"flat", "compatible", "unity", "cov_const_e", "potential", "associative",
                         "reconstruction_wdvv"}


class TestReconstruction:
    def test_quadratic(self):
        assert reconstruct_prepotential(quad_data()) == QUAD

    def test_family_round_trip(self):
        rng = random.Random(19)
        for _ in range(10):
            P = kontsevich_family(rng)
            assert modulo_quadratic(reconstruct_prepotential(from_prepotential(P)), P.F)

    def test_non_potential_raises(self):
        D = quad_data()
        C = [[list(ck) for ck in cj] for cj in D.C]
        # only c_223 moves, so c_jkm is no longer symmetric
        C[1][1][0] = C[1][1][0] + X1
        bad = FrobeniusData(CTX, D.g, C, 1)
        with pytest.raises(ReconstructionError):
            reconstruct_prepotential(bad)
        assert not check_axioms(bad).potential


def test_modulo_quadratic():
    assert modulo_quadratic(QUAD + X1 * X2 + 3, QUAD)
    assert not modulo_quadratic(QUAD + X1 ** 3, QUAD)
