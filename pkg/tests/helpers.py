"""Random instance generators shared by the test modules."""
import random
from fractions import Fraction
from itertools import combinations_with_replacement

from wdvvkit.algebra import Poly, VarCtx
from wdvvkit.wdvv import Prepotential, hessian_data


def rand_rat(rng, lo=-5, hi=5, maxden=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, maxden))


def rand_poly(rng, ctx, max_degree, nterms=6, min_degree=0):
    n = len(ctx)
    terms = {}
    for _ in range(nterms):
        d = rng.randint(min_degree, max_degree)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        terms[tuple(e)] = rand_rat(rng)
    return Poly(ctx, terms)


def rand_point(rng, n, lo=-7, hi=7):
    return [Fraction(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(n)]


def rand_matrix_entries(rng, ctx, n, max_degree, nterms=3):
    return [[rand_poly(rng, ctx, max_degree, nterms) for _ in range(n)] for _ in range(n)]


def nondegenerate(P):
    return not hessian_data(P).det1.is_zero()


def random_prepotential(rng, n, max_degree, nterms=8):
    """Random F (terms of degree 3..max_degree plus noise) with non-degenerate pivot slice."""
    ctx = VarCtx.standard(n)
    while True:
        F = rand_poly(rng, ctx, max_degree, nterms, min_degree=3) + rand_poly(rng, ctx, 2, 2)
        P = Prepotential(ctx, F)
        if nondegenerate(P):
            return P


def linear_form(rng, ctx):
    while True:
        coeffs = [rng.randint(-2, 2) for _ in range(len(ctx))]
        if coeffs[0]:
            return sum((Poly.var(ctx, i + 1) * c for i, c in enumerate(coeffs)), Poly.zero(ctx))


def separable_solution(rng, n=3, max_degree=4):
    """F = sum_i phi_i(l_i(x)): a generalized WDVV solution whenever the pivot slice is invertible."""
    ctx = VarCtx.standard(n)
    while True:
        F = Poly.zero(ctx)
        for _ in range(n):
            ell = linear_form(rng, ctx)
            for d in range(3, max_degree + 1):
                F = F + ell ** d * rand_rat(rng)
        F = F + rand_poly(rng, ctx, 2, 3)
        P = Prepotential(ctx, F)
        if nondegenerate(P):
            return P


def kontsevich_family(rng):
    """1/2(x1^2 x3 + x1 x2^2) + f(x2, x3) + quadratic noise: an ordinary solution.

    f is either a x2^3 or the A3 tail x2^2 x3^2/4 + x3^5/60; the sum of the
    two is not a solution.
    """
    ctx = VarCtx.standard(3)
    x1, x2, x3 = (Poly.var(ctx, i) for i in (1, 2, 3))
    F = (x1 * x1 * x3 + x1 * x2 * x2) * Fraction(1, 2)
    if rng.random() < 0.5:
        F = F + x2 ** 2 * x3 ** 2 / 4 + x3 ** 5 / 60
    else:
        F = F + x2 ** 3 * rand_rat(rng)
    return Prepotential(ctx, F + rand_poly(rng, ctx, 2, 3))


def monomials(ctx, degree):
    n = len(ctx)
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for k in combo:
            e[k] += 1
        yield tuple(e)


def mixed_n3_corpus(seed, count):
    """Random n=3 prepotentials of degree <= 4: generic ones plus known solution families."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        r = i % 4
        if r == 0:
            out.append(separable_solution(rng))
        elif r == 1:
            out.append(kontsevich_family(rng))
        else:
            out.append(random_prepotential(rng, 3, 4))
    return out
