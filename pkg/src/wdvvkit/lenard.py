"""Recursion operators, Lenard chains and complexes, Nijenhuis and Haantjes torsion.

Everything happens in one coordinate chart.  A symmetric square of
polynomials ``A`` gives the Jacobians ``M_j[l][m] = d A_jl / d x_m`` (row l
is the 1-form dA_jl).  The recursion operator K_j is defined by its
action on 1-forms, ``dA_jl = dA_pl K_j`` row by row, i.e. ``M_j = M_p K_j``,
and acts on vector fields by the ordinary matrix-vector product.  With
that convention ``K_j d/dx_p = d/dx_j`` for a Hessian square.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from wdvvkit.algebra import Poly, PolyMatrix, RatFn, RatOperator, VarCtx, det_adj, gcd
from wdvvkit.report import Report


class DegeneratePivotError(ValueError):
    """The differentials of the pivot row are linearly dependent."""


class NotIntegrableError(ValueError):
    """Third derivatives of the square are not totally symmetric."""


# -- fields ------------------------------------------------------------


def _rat(x) -> RatFn:
    return x if isinstance(x, RatFn) else RatFn(x)


class VectorField:
    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(_rat(c) for c in components)

    @classmethod
    def coordinate(cls, ctx: VarCtx, i: int) -> "VectorField":
        """The coordinate field d/dx_i (1-based)."""
        return cls([Poly.const(ctx, 1 if k == i - 1 else 0) for k in range(len(ctx))])

    @property
    def ctx(self):
        return self.components[0].ctx

    @property
    def n(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return isinstance(other, VectorField) and all(a == b for a, b in zip(self.components, other.components))

    def __add__(self, other):
        return VectorField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        return VectorField([a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField([-a for a in self.components])

    def eval(self, point) -> list[Fraction]:
        return [c.eval(point) for c in self.components]

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    __repr__ = __str__


class OneForm(VectorField):
    """Covector field; shares storage with :class:`VectorField`, differs in how operators act."""

    @classmethod
    def exact(cls, f: Poly) -> "OneForm":
        return cls(f.gradient())


class Tensor12:
    """Type (1,2) tensor with components ``num[i][j][k] / den``, antisymmetric in (j, k)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: Poly):
        self.num = num
        self.den = den

    @property
    def n(self) -> int:
        return len(self.num)

    def component(self, i: int, j: int, k: int) -> RatFn:
        """0-based component H^i_jk."""
        return RatFn(self.num[i][j][k], self.den)

    def is_zero(self) -> bool:
        return all(x.is_zero() for a in self.num for b in a for x in b)

    def is_antisymmetric(self) -> bool:
        n = self.n
        return all((self.num[i][j][k] + self.num[i][k][j]).is_zero()
                   for i in range(n) for j in range(n) for k in range(n))

    def first_nonzero(self):
        for i, j, k in product(range(self.n), repeat=3):
            if not self.num[i][j][k].is_zero():
                return i, j, k
        return None

    def eval_contract(self, X, Y, point) -> list[Fraction]:
        """``T(X, Y)`` at ``point`` by contracting evaluated components."""
        d = self.den.eval(point)
        if not d:
            raise ZeroDivisionError("tensor evaluated on a pole")
        xv = X.eval(point) if hasattr(X, "eval") else list(X)
        yv = Y.eval(point) if hasattr(Y, "eval") else list(Y)
        n = self.n
        out = []
        for i in range(n):
            s = Fraction(0)
            for j in range(n):
                if not xv[j]:
                    continue
                for k in range(n):
                    if yv[k]:
                        s += self.num[i][j][k].eval(point) * xv[j] * yv[k]
            out.append(s / d)
        return out


# -- squares and recursion operators ------------------------------------


@dataclass(frozen=True)
class SquareOfFunctions:
    ctx: VarCtx
    A: tuple
    pivot: int = 1

    def __post_init__(self):
        A = tuple(tuple(x if isinstance(x, Poly) else Poly.const(self.ctx, x) for x in r) for r in self.A)
        n = len(self.ctx)
        if len(A) != n or any(len(r) != n for r in A):
            raise ValueError(f"square must be {n} x {n}")
        for j, l in combinations(range(n), 2):
            if A[j][l] != A[l][j]:
                raise ValueError(f"square is not symmetric at ({j + 1}, {l + 1})")
        if not 1 <= self.pivot <= n:
            raise ValueError(f"pivot {self.pivot} out of range 1..{n}")
        object.__setattr__(self, "A", A)

    @classmethod
    def hessian_of(cls, F: Poly, pivot: int = 1) -> "SquareOfFunctions":
        from wdvvkit.wdvv import hessian

        return cls(F.ctx, hessian(F).rows, pivot)

    @property
    def n(self) -> int:
        return len(self.ctx)

    def jacobian(self, j: int) -> PolyMatrix:
        """``M_j[l][m] = d A_jl / d x_m`` for 1-based row j."""
        row = self.A[j - 1]
        return PolyMatrix(self.ctx, [a.gradient() for a in row])

    def a_coordinates(self) -> tuple:
        """The pivot-row functions A_pl."""
        return self.A[self.pivot - 1]

    def pivot_form(self) -> OneForm:
        p = self.pivot - 1
        return OneForm.exact(self.A[p][p])


class RecursionOperator(RatOperator):
    __slots__ = ("index",)

    def __init__(self, num: PolyMatrix, den: Poly, index: int):
        super().__init__(num, den)
        self.index = index


def recursion_operators(S: SquareOfFunctions) -> list[RecursionOperator]:
    """``K_j = adj(M_p) M_j / det(M_p)`` for j = 1..n."""
    det, adj = det_adj(S.jacobian(S.pivot))
    if det.is_zero():
        raise DegeneratePivotError(
            f"differentials of row {S.pivot} of the square are linearly dependent"
        )
    return [RecursionOperator(adj @ S.jacobian(j), det, j) for j in range(1, S.n + 1)]


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    n = X.n
    out = []
    for i in range(n):
        acc = RatFn(Poly.zero(X.ctx))
        for m in range(n):
            if X.components[m]:
                d = Y.components[i].diff(m + 1)
                if d:
                    acc = acc + X.components[m] * d
            if Y.components[m]:
                d = X.components[i].diff(m + 1)
                if d:
                    acc = acc - Y.components[m] * d
        out.append(acc)
    return VectorField(out)


def d_oneform(theta: OneForm) -> list[list[RatFn]]:
    """Exterior derivative as the antisymmetric matrix ``d_i theta_j - d_j theta_i``."""
    n = theta.n
    zero = RatFn(Poly.zero(theta.ctx))
    out = [[zero] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        v = theta.components[j].diff(i + 1) - theta.components[i].diff(j + 1)
        out[i][j] = v
        out[j][i] = -v
    return out


def _closed_witness(theta: OneForm):
    d = d_oneform(theta)
    for i, j in combinations(range(theta.n), 2):
        if d[i][j]:
            return [i + 1, j + 1]
    return None


def apply_to_vector(K: RatOperator, X: VectorField) -> VectorField:
    return VectorField(K.apply(X.components))


def apply_to_form(K: RatOperator, theta: OneForm) -> OneForm:
    return OneForm(K.covector_apply(theta.components))


def lenard_chain(ops, X: VectorField) -> list[VectorField]:
    """``X_j = K_j X`` for each operator."""
    return [apply_to_vector(K, X) for K in ops]


def correlations(S: SquareOfFunctions, chain) -> list[list[list[RatFn]]]:
    """``c[j][l][m] = dA_jl(X_m)`` (0-based indices)."""
    n = S.n
    grads = [[S.A[j][l].gradient() for l in range(n)] for j in range(n)]
    out = [[[None] * n for _ in range(n)] for _ in range(n)]
    for j, l, m in product(range(n), repeat=3):
        if l < j:
            out[j][l][m] = out[l][j][m]
            continue
        acc = RatFn(Poly.zero(S.ctx))
        for p in range(n):
            g = grads[j][l][p]
            x = chain[m].components[p]
            if g and x:
                acc = acc + x * g
        out[j][l][m] = acc
    return out


def correlation_asymmetry(c) -> list[int] | None:
    """First 1-based triple (j, l, m) with ``c_jlm != c_jml``, or ``None``."""
    n = len(c)
    for j, l, m in product(range(n), repeat=3):
        if l < m and not c[j][l][m] == c[j][m][l]:
            return [j + 1, l + 1, m + 1]
    return None


def _lcm(a: Poly, b: Poly) -> Poly:
    if a.is_constant():
        return b
    if b.is_constant():
        return a
    return (a * b).exact_div(gcd(a, b))


def fields_independent(fields) -> bool:
    """The fields are pointwise independent on a dense open set (det of components not identically 0)."""
    cols = []
    for X in fields:
        den = Poly.const(X.ctx, 1)
        for c in X.components:
            den = _lcm(den, c.den)
        cols.append([c.num * den.exact_div(c.den) for c in X.components])
    M = PolyMatrix(fields[0].ctx, [list(r) for r in zip(*cols)])
    return not M.det().is_zero()


def _commutator_witness(ops):
    for (ia, a), (ib, b) in combinations(enumerate(ops, start=1), 2):
        C = a.commutator_numerator(b)
        hit = C.first_nonzero()
        if hit is not None:
            i, j, _ = hit
            return [getattr(a, "index", ia), getattr(b, "index", ib), i + 1, j + 1]
    return None


def _chain_bracket_witness(chain):
    for (j, Xj), (l, Xl) in combinations(enumerate(chain, start=1), 2):
        if not lie_bracket(Xj, Xl).is_zero():
            return [j, l]
    return None


def _default_seed(S: SquareOfFunctions) -> VectorField:
    return VectorField.coordinate(S.ctx, S.pivot)


def check_lemma1(S: SquareOfFunctions, X: VectorField | None = None) -> Report:
    """Commuting independent Lenard chain (condition I) and symmetric correlations (condition II)."""
    X = X or _default_seed(S)
    ops = recursion_operators(S)
    chain = lenard_chain(ops, X)
    rep = Report("lemma1")
    rep.add("chain_commutes", (w := _chain_bracket_witness(chain)) is None, w)
    rep.add("chain_independent", fields_independent(chain))
    c = correlations(S, chain)
    rep.add("correlations_symmetric", (w := correlation_asymmetry(c)) is None, w)
    rep.details["chain"] = [[str(x) for x in Xj.components] for Xj in chain]
    return rep


def third_derivative_asymmetry(S: SquareOfFunctions) -> list[int] | None:
    n = S.n
    for j, l, m in product(range(n), repeat=3):
        if l < m and S.A[j][l].diff(m + 1) != S.A[j][m].diff(l + 1):
            return [j + 1, l + 1, m + 1]
    return None


def integrate_hessian(S: SquareOfFunctions) -> Poly:
    """F with ``Hessian(F) == A``, vanishing together with its gradient at the origin.

    The coordinates are taken as the distinguished ones.  Uses the
    homotopy formula ``F(x) = sum_jl x_j x_l int_0^1 (1-t) A_jl(t x) dt``,
    so a degree-d monomial of A_jl picks up ``1 / ((d+1)(d+2))``.
    """
    w = third_derivative_asymmetry(S)
    if w is not None:
        raise NotIntegrableError(f"d_m A_jl is not symmetric at (j, l, m) = {tuple(w)}")
    ctx = S.ctx
    n = S.n
    xs = [Poly.var(ctx, i) for i in range(1, n + 1)]
    F = Poly.zero(ctx)
    for j, l in product(range(n), repeat=2):
        a = S.A[j][l]
        if a.is_zero():
            continue
        weighted = Poly(ctx, {e: c / ((sum(e) + 1) * (sum(e) + 2)) for e, c in a.terms.items()})
        F = F + weighted * xs[j] * xs[l]
    from wdvvkit.wdvv import hessian

    if hessian(F).rows != S.A:  # pragma: no cover - guaranteed by the symmetry check
        raise ArithmeticError("reconstructed potential does not reproduce the square")
    return F


def check_lemma2(S: SquareOfFunctions, X: VectorField | None = None) -> Report:
    """Pairwise commutation of the recursion operators, cross-checked against WDVV."""
    from wdvvkit.wdvv import Prepotential, check_wdvv

    X = X or _default_seed(S)
    ops = recursion_operators(S)
    rep = Report("lemma2")
    w = _commutator_witness(ops)
    commute = w is None
    rep.add("operators_commute", commute, w)
    rep.details["operators"] = {str(K.index): str(K) for K in ops}
    if S.n >= 2 and third_derivative_asymmetry(S) is None:
        F = integrate_hessian(S)
        wd = check_wdvv(Prepotential(S.ctx, F, S.pivot))
        rep.add("wdvv_agreement", wd.satisfied == commute,
                None if wd.satisfied == commute else {"wdvv": wd.satisfied, "commute": commute})
        lemma1 = check_lemma1(S, X).ok
        rep.details["correspondence"] = {
            "lemma1": lemma1,
            "operators_commute": commute,
            "wdvv_satisfied": wd.satisfied,
            "lenard_complex_with_unity": lemma1 and commute,
        }
        rep.details["F"] = str(F)
    else:
        rep.details["correspondence"] = None
    return rep


# -- torsion -----------------------------------------------------------


def _as_operator(K) -> RatOperator:
    if isinstance(K, RatOperator):
        return K
    if isinstance(K, PolyMatrix):
        return RatOperator.from_polymatrix(K)
    raise TypeError(f"expected an operator, got {type(K).__name__}")


def _nijenhuis_numerator(P: PolyMatrix, d: Poly):
    """Numerator of N_K over ``d^3`` for ``K = P / d``."""
    n = P.n
    ctx = P.ctx
    const_den = d.is_constant()
    # Q[m][i][k] = numerator of d_m K^i_k over d^2
    Q = []
    for m in range(1, n + 1):
        dm = d.diff(m)
        rows = []
        for i in range(n):
            row = []
            for k in range(n):
                pik = P.rows[i][k]
                v = pik.diff(m) * d
                if not const_den and dm:
                    v = v - pik * dm
                row.append(v)
            rows.append(row)
        Q.append(rows)
    zero = Poly.zero(ctx)
    N = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j, k in combinations(range(n), 2):
            acc = zero
            for m in range(n):
                pmj, pmk = P.rows[m][j], P.rows[m][k]
                if pmj:
                    acc = acc + pmj * Q[m][i][k]
                if pmk:
                    acc = acc - pmk * Q[m][i][j]
                pim = P.rows[i][m]
                if pim:
                    acc = acc - pim * (Q[j][m][k] - Q[k][m][j])
            N[i][j][k] = acc
            N[i][k][j] = -acc
    return N


def nijenhuis(K) -> Tensor12:
    """Nijenhuis torsion in components.

    ``N^i_jk = sum_m (K^m_j d_m K^i_k - K^m_k d_m K^i_j) - sum_m K^i_m (d_j K^m_k - d_k K^m_j)``
    """
    K = _as_operator(K)
    N = _nijenhuis_numerator(K.num, K.den)
    return Tensor12(N, K.den ** 3)


def haantjes(K) -> Tensor12:
    """Haantjes torsion ``K^2 N(X,Y) + N(KX,KY) - K(N(KX,Y) + N(X,KY))`` in components."""
    K = _as_operator(K)
    P, d = K.num, K.den
    n = P.n
    N = _nijenhuis_numerator(P, d)
    P2 = P @ P
    zero = Poly.zero(P.ctx)
    rows = P.rows

    # T1[a][j][k] = N^a_bk P^b_j ; T2[a][j][k] = N^a_jb P^b_k
    def contract_first(a, j, k):
        acc = zero
        for b in range(n):
            if rows[b][j] and N[a][b][k]:
                acc = acc + N[a][b][k] * rows[b][j]
        return acc

    NPP = [[[zero] * n for _ in range(n)] for _ in range(n)]
    NP1 = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for j in range(n):
            for k in range(n):
                NP1[a][j][k] = contract_first(a, j, k)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc = zero
                for b in range(n):
                    if rows[b][k] and NP1[i][j][b]:
                        acc = acc + NP1[i][j][b] * rows[b][k]
                NPP[i][j][k] = acc
    H = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j, k in combinations(range(n), 2):
            acc = NPP[i][j][k]
            for a in range(n):
                if P2.rows[i][a] and N[a][j][k]:
                    acc = acc + P2.rows[i][a] * N[a][j][k]
                pia = rows[i][a]
                if pia:
                    # N^a_bk P^b_j + N^a_jb P^b_k = NP1[a][j][k] - NP1[a][k][j]
                    s = NP1[a][j][k] - NP1[a][k][j]
                    if s:
                        acc = acc - pia * s
            H[i][j][k] = acc
            H[i][k][j] = -acc
    return Tensor12(H, d ** 5)


def nijenhuis_bracket(K, X: VectorField, Y: VectorField) -> VectorField:
    """``[KX,KY] - K[KX,Y] - K[X,KY] + K^2[X,Y]`` computed with Lie brackets."""
    K = _as_operator(K)
    KX, KY = apply_to_vector(K, X), apply_to_vector(K, Y)
    t = lie_bracket(KX, KY)
    t = t - apply_to_vector(K, lie_bracket(KX, Y) + lie_bracket(X, KY))
    t = t + apply_to_vector(K, apply_to_vector(K, lie_bracket(X, Y)))
    return t


def haantjes_bracket(K, X: VectorField, Y: VectorField) -> VectorField:
    """``K^2 N(X,Y) + N(KX,KY) - K(N(KX,Y) + N(X,KY))`` with N from :func:`nijenhuis_bracket`."""
    K = _as_operator(K)
    KX, KY = apply_to_vector(K, X), apply_to_vector(K, Y)
    t = apply_to_vector(K, apply_to_vector(K, nijenhuis_bracket(K, X, Y)))
    t = t + nijenhuis_bracket(K, KX, KY)
    t = t - apply_to_vector(K, nijenhuis_bracket(K, KX, Y) + nijenhuis_bracket(K, X, KY))
    return t


# -- Lenard complexes ------------------------------------------------------


def check_lenard_complex(X: VectorField, A_potential: Poly, ops, pivot: int = 1,
                         require_unity: bool = True) -> Report:
    """Commuting chain, closed 1-form chain and square, unity, and vanishing Haantjes torsion.

    Every clause is evaluated even when an earlier one fails.  ``unity``
    only affects the status when ``require_unity`` is set.
    """
    ops = list(ops)
    rep = Report("lenard_complex")
    rep.add("operators_commute", (w := _commutator_witness(ops)) is None, w)
    chain = lenard_chain(ops, X)
    rep.add("chain_commutes", (w := _chain_bracket_witness(chain)) is None, w)
    dA = OneForm.exact(A_potential)
    theta = [apply_to_form(K, dA) for K in ops]
    w = next(([j] + wt for j, th in enumerate(theta, start=1) if (wt := _closed_witness(th))), None)
    rep.add("theta_chain_closed", w is None, w)
    w = None
    for (j, Kj), (l, Kl) in product(enumerate(ops, start=1), repeat=2):
        if l < j:
            continue
        wt = _closed_witness(apply_to_form(Kj @ Kl, dA))
        if wt:
            w = [j, l] + wt
            break
    rep.add("theta_square_closed", w is None, w)
    unity = ops[pivot - 1].is_identity()
    rep.details["unity"] = unity
    if require_unity:
        rep.add("unity", unity, None if unity else [pivot])
    w = None
    for K in ops:
        hit = haantjes(K).first_nonzero()
        if hit is not None:
            w = [getattr(K, "index", None)] + [x + 1 for x in hit]
            break
    rep.add("haantjes_flat", w is None, w)
    return rep


def lenard_complex_of(S: SquareOfFunctions, X: VectorField | None = None, require_unity: bool = True) -> Report:
    """:func:`check_lenard_complex` for the operators of a square, with the pivot diagonal as potential."""
    X = X or _default_seed(S)
    p = S.pivot - 1
    return check_lenard_complex(X, S.A[p][p], recursion_operators(S), S.pivot, require_unity)
