"""Square polynomial matrices, fraction-free determinant/adjugate, and exact operators."""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from wdvvkit.algebra.poly import Poly, VarCtx
from wdvvkit.algebra.ratfn import RatFn


class PolyMatrix:
    """Immutable n x n matrix of :class:`Poly` entries over one context.

    Row and column indices are 0-based here; reports translate to 1-based.
    """

    __slots__ = ("ctx", "rows")

    def __init__(self, ctx: VarCtx, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("PolyMatrix must be square and non-empty")
        fixed = []
        for r in rows:
            out = []
            for x in r:
                if not isinstance(x, Poly):
                    x = Poly.const(ctx, x)
                elif x.ctx != ctx:
                    raise ValueError("matrix entry from a different variable context")
                out.append(x)
            fixed.append(tuple(out))
        self.ctx = ctx
        self.rows = tuple(fixed)

    @classmethod
    def identity(cls, ctx, n: int, scale=1) -> "PolyMatrix":
        s = scale if isinstance(scale, Poly) else Poly.const(ctx, scale)
        z = Poly.zero(ctx)
        return cls(ctx, [[s if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ctx, n: int) -> "PolyMatrix":
        z = Poly.zero(ctx)
        return cls(ctx, [[z] * n for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entries(self):
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                yield i, j, x

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.rows for x in r)

    def is_symmetric(self) -> bool:
        n = self.n
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def is_constant(self) -> bool:
        return all(x.is_constant() for r in self.rows for x in r)

    def first_nonzero(self):
        """``(i, j, entry)`` of the first nonzero entry in row-major order, or ``None``."""
        for i, j, x in self.entries():
            if not x.is_zero():
                return i, j, x
        return None

    def map(self, fn) -> "PolyMatrix":
        return PolyMatrix(self.ctx, [[fn(x) for x in r] for r in self.rows])

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ctx, list(zip(*self.rows)))

    def diff(self, i: int) -> "PolyMatrix":
        return self.map(lambda x: x.diff(i))

    def scale(self, c) -> "PolyMatrix":
        return self.map(lambda x: x * c)

    def __add__(self, other):
        return PolyMatrix(self.ctx, [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return PolyMatrix(self.ctx, [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other):
        if isinstance(other, PolyMatrix):
            cols = list(zip(*other.rows))
            z = Poly.zero(self.ctx)
            out = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = z
                    for a, b in zip(r, c):
                        if a.terms and b.terms:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return PolyMatrix(self.ctx, out)
        # matrix times vector of Poly
        z = Poly.zero(self.ctx)
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, other):
                acc = acc + a * b
            out.append(acc)
        return out

    def eval(self, point):
        return [[x.eval(point) for x in r] for r in self.rows]

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"

    __repr__ = __str__

    def det(self) -> Poly:
        return bareiss_det(self)


def bareiss_det(M: PolyMatrix) -> Poly:
    """Determinant by Bareiss fraction-free elimination with row pivoting."""
    a = [list(r) for r in M.rows]
    n = M.n
    sign = 1
    prev = Poly.const(M.ctx, 1)
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            return Poly.zero(M.ctx)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                v = akk * a[i][j] - aik * a[k][j]
                a[i][j] = _divide(v, prev)
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def _divide(v: Poly, d: Poly) -> Poly:
    if d.is_constant():
        return v.scale(1 / d.constant_value())
    q = v.exact_div(d)
    if q is None:  # pragma: no cover - Bareiss divisions are exact
        raise ArithmeticError("inexact Bareiss division")
    return q


def det_adj(M: PolyMatrix) -> tuple[Poly, PolyMatrix]:
    """Determinant and adjugate of ``M`` with ``M @ adj == adj @ M == det * I``.

    Non-singular matrices go through Bareiss elimination of the augmented
    matrix ``[M | I]`` followed by fraction-free back substitution.  A
    singular matrix (det identically zero) falls back to cofactors, each a
    Bareiss determinant.
    """
    n = M.n
    ctx = M.ctx
    one, zero = Poly.const(ctx, 1), Poly.zero(ctx)
    if n == 1:
        return M.rows[0][0], PolyMatrix(ctx, [[one]])
    a = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(M.rows)]
    width = 2 * n
    sign = 1
    prev = one
    singular = False
    for k in range(n):
        piv = next((i for i in range(k, n) if not a[i][k].is_zero()), None)
        if piv is None:
            singular = True
            break
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, width):
                v = akk * a[i][j] - aik * a[k][j]
                a[i][j] = _divide(v, prev) if not v.is_zero() else zero
            a[i][k] = zero
        prev = akk
    if singular:
        return zero, _cofactor_adjugate(M)
    d = a[n - 1][n - 1]  # equals sign * det(M)
    det = d if sign == 1 else -d
    adj_cols = []
    for c in range(n):
        x = [zero] * n
        for i in range(n - 1, -1, -1):
            acc = d * a[i][n + c]
            for j in range(i + 1, n):
                if a[i][j].terms and x[j].terms:
                    acc = acc - a[i][j] * x[j]
            x[i] = _divide(acc, a[i][i])
        adj_cols.append(x if sign == 1 else [-v for v in x])
    adj = PolyMatrix(ctx, [[adj_cols[c][r] for c in range(n)] for r in range(n)])
    return det, adj


def _cofactor_adjugate(M: PolyMatrix) -> PolyMatrix:
    n = M.n
    out = [[None] * n for _ in range(n)]
    for i, j in product(range(n), repeat=2):
        minor = [[M.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
        cof = bareiss_det(PolyMatrix(M.ctx, minor))
        out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return PolyMatrix(M.ctx, out)


class RatOperator:
    """A matrix of rational functions stored as ``num / den`` with one scalar denominator.

    Keeping the denominator as a single polynomial turns operator identities
    (commutators, torsion) into polynomial-matrix identities.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: PolyMatrix, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.ctx, 1)
        if den.is_zero():
            raise ZeroDivisionError("operator with zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def from_polymatrix(cls, M: PolyMatrix) -> "RatOperator":
        return cls(M, Poly.const(M.ctx, 1))

    @classmethod
    def identity(cls, ctx, n: int) -> "RatOperator":
        return cls(PolyMatrix.identity(ctx, n))

    @property
    def ctx(self):
        return self.num.ctx

    @property
    def n(self) -> int:
        return self.num.n

    def entry(self, i: int, j: int) -> RatFn:
        return RatFn(self.num.rows[i][j], self.den)

    def entries(self) -> list[list[RatFn]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def reduced(self) -> "RatOperator":
        """Divide numerator and denominator by their common polynomial factor."""
        from wdvvkit.algebra.poly import gcd

        g = self.den
        for _, _, x in self.num.entries():
            if g.is_constant():
                break
            g = gcd(g, x)
        if g.is_constant():
            lc = self.den.leading_coefficient()
            return RatOperator(self.num.scale(1 / lc), self.den.scale(1 / lc))
        num = self.num.map(lambda x: x.exact_div(g))
        den = self.den.exact_div(g)
        lc = den.leading_coefficient()
        return RatOperator(num.scale(1 / lc), den.scale(1 / lc))

    def is_identity(self) -> bool:
        n = self.n
        return all(
            (self.num.rows[i][j] - (self.den if i == j else 0)).is_zero()
            for i in range(n) for j in range(n)
        )

    def is_polynomial(self) -> bool:
        return self.reduced().den.is_constant()

    def __matmul__(self, other: "RatOperator") -> "RatOperator":
        return RatOperator(self.num @ other.num, self.den * other.den)

    def commutator_numerator(self, other: "RatOperator") -> PolyMatrix:
        """``num_a @ num_b - num_b @ num_a``; zero iff the operators commute."""
        return self.num @ other.num - other.num @ self.num

    def commutes_with(self, other: "RatOperator") -> bool:
        return self.commutator_numerator(other).is_zero()

    def apply(self, vec) -> list[RatFn]:
        """Matrix-vector product on a vector of :class:`RatFn` (or Poly) components."""
        vec = [v if isinstance(v, RatFn) else RatFn(v) for v in vec]
        n = self.n
        out = []
        for i in range(n):
            acc = RatFn(Poly.zero(self.ctx))
            for j in range(n):
                x = self.num.rows[i][j]
                if x.terms and vec[j]:
                    acc = acc + vec[j] * x
            out.append(acc / self.den if not self.den.is_constant() else acc * (1 / self.den.constant_value()))
        return out

    def covector_apply(self, form) -> list[RatFn]:
        """Transpose action on a 1-form: ``(alpha K)_b = sum_a alpha_a K^a_b``."""
        form = [v if isinstance(v, RatFn) else RatFn(v) for v in form]
        n = self.n
        out = []
        for b in range(n):
            acc = RatFn(Poly.zero(self.ctx))
            for a in range(n):
                x = self.num.rows[a][b]
                if x.terms and form[a]:
                    acc = acc + form[a] * x
            out.append(acc / self.den if not self.den.is_constant() else acc * (1 / self.den.constant_value()))
        return out

    def eval(self, point) -> list[list[Fraction]]:
        d = self.den.eval(point)
        if not d:
            raise ZeroDivisionError("operator evaluated on a pole of its denominator")
        return [[v / d for v in r] for r in self.num.eval(point)]

    def __str__(self):
        r = self.reduced()
        if r.den == 1:
            return str(r.num)
        return f"({r.num}) / ({r.den})"

    __repr__ = __str__
