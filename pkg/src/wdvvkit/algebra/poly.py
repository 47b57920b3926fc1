"""Exact multivariate polynomials over the rationals.

A :class:`Poly` stores a dict from dense exponent tuples to ``Fraction``
coefficients, tied to a :class:`VarCtx` that fixes the variable order.
Monomials are ordered graded-lexicographically; that order decides the
leading term, the printed form, and gcd normalization.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from wdvvkit import kernels


@dataclass(frozen=True)
class VarCtx:
    """Ordered list of variable names shared by every polynomial in a computation."""

    names: tuple[str, ...]

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("a variable context needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names!r}")
        object.__setattr__(self, "names", names)

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "VarCtx":
        return cls([f"{prefix}{i}" for i in range(1, n + 1)])

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        """0-based slot of ``name``; raises ``KeyError`` if absent."""
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(name) from None


def _grlex_key(e):
    return (sum(e), e)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"expected an exact rational coefficient, got {type(c).__name__}")


class Poly:
    """Immutable polynomial with rational coefficients.

    Equality is structural: two polynomials are equal iff they share a
    context and have identical term dicts.  Comparing against a Python
    number compares against the constant polynomial.
    """

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarCtx, terms=None):
        n = len(ctx)
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n or any(x < 0 for x in e):
                raise ValueError(f"bad exponent vector {e!r} for {n} variables")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
        self.ctx = ctx
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, ctx, terms) -> "Poly":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.ctx = ctx
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, ctx) -> "Poly":
        return cls._raw(ctx, {})

    @classmethod
    def const(cls, ctx, c) -> "Poly":
        c = _as_fraction(c)
        return cls._raw(ctx, {(0,) * len(ctx): c} if c else {})

    @classmethod
    def var(cls, ctx, i: int) -> "Poly":
        """The coordinate function x_i (1-based index)."""
        if not 1 <= i <= len(ctx):
            raise IndexError(f"variable index {i} out of range 1..{len(ctx)}")
        e = [0] * len(ctx)
        e[i - 1] = 1
        return cls._raw(ctx, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, ctx, exps, c=1) -> "Poly":
        return cls(ctx, {tuple(exps): c})

    # -- inspection ---------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.ctx)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self, i: int | None = None) -> int:
        """Total degree, or degree in x_i (1-based).  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if i is None:
            return max(sum(e) for e in self.terms)
        return max(e[i - 1] for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def variables(self) -> set[int]:
        """0-based slots of the variables that actually occur."""
        out = set()
        for e in self.terms:
            out.update(k for k, p in enumerate(e) if p)
        return out

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ctx != self.ctx:
                raise ValueError("polynomials live in different variable contexts")
            return other
        if isinstance(other, (int, Rational)):
            return Poly.const(self.ctx, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.ctx, kernels.add(self.terms, other.terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.ctx, kernels.add(self.terms, other.terms, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Poly._raw(self.ctx, {e: -c for e, c in self.terms.items()})

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, Poly):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return Poly.zero(self.ctx)
        return Poly._raw(self.ctx, kernels.mul(self.terms, other.terms))

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly.zero(self.ctx)
        return Poly._raw(self.ctx, {e: v * c for e, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant():
                raise TypeError("use exact_div for division by a non-constant polynomial")
            other = other.constant_value()
        c = _as_fraction(other)
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation --------------------------------------

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to x_i (1-based)."""
        if not isinstance(i, int) or not 1 <= i <= self.nvars:
            raise IndexError(f"variable index {i} out of range 1..{self.nvars}")
        return Poly._raw(self.ctx, kernels.diff(self.terms, i - 1))

    def gradient(self) -> list["Poly"]:
        return [self.diff(i) for i in range(1, self.nvars + 1)]

    def eval(self, point) -> Fraction:
        point = [_as_fraction(v) for v in point]
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        return kernels.evaluate(self.terms, point)

    __call__ = eval

    def truncate_degree(self, max_degree: int) -> "Poly":
        """Drop every term of total degree above ``max_degree``."""
        return Poly._raw(self.ctx, {e: c for e, c in self.terms.items() if sum(e) <= max_degree})

    def high_part(self, min_degree: int) -> "Poly":
        """Keep only terms of total degree ``>= min_degree``."""
        return Poly._raw(self.ctx, {e: c for e, c in self.terms.items() if sum(e) >= min_degree})

    # -- division -----------------------------------------------------

    def exact_div(self, divisor: "Poly") -> "Poly | None":
        """Quotient ``self / divisor`` if the division is exact, else ``None``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            return self.scale(1 / divisor.constant_value())
        lt_e, lt_c = divisor.leading_term()
        lt_deg = sum(lt_e)
        rest = {e: c for e, c in divisor.terms.items() if e != lt_e}
        rem = dict(self.terms)
        quot = {}
        while rem:
            e = max(rem, key=_grlex_key)
            if sum(e) < lt_deg:
                return None
            q_e = tuple(a - b for a, b in zip(e, lt_e))
            if any(x < 0 for x in q_e):
                return None
            q_c = rem.pop(e) / lt_c
            quot[q_e] = q_c
            if rest:
                rem = kernels.add(rem, kernels.mul({q_e: q_c}, rest), -1)
        return Poly._raw(self.ctx, quot)

    def monic(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1 (zero stays zero)."""
        if not self.terms:
            return self
        return self.scale(1 / self.leading_coefficient())

    # -- printing -----------------------------------------------------

    def _monomial_str(self, e) -> str:
        parts = []
        for name, p in zip(self.ctx.names, e):
            if p == 1:
                parts.append(name)
            elif p:
                parts.append(f"{name}^{p}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = self._monomial_str(e)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            if idx == 0:
                chunks.append(body if sign == "+" else f"-{body}")
            else:
                chunks.append(f" {sign} {body}")
        return "".join(chunks)

    def __repr__(self):
        return f"Poly({str(self)!r}, vars={','.join(self.ctx.names)})"

    def monomial_str(self, e) -> str:
        """Printable form of one exponent vector (``1`` for the constant monomial)."""
        return self._monomial_str(e) or "1"


# -- gcd ---------------------------------------------------------------


def _coeffs_in(p: Poly, k: int) -> dict[int, Poly]:
    """View ``p`` as a polynomial in slot ``k`` with coefficients free of x_k."""
    out: dict[int, dict] = {}
    for e, c in p.terms.items():
        d = e[k]
        if d:
            e = e[:k] + (0,) + e[k + 1:]
        out.setdefault(d, {})[e] = c
    return {d: Poly._raw(p.ctx, t) for d, t in out.items()}


def _content(p: Poly, k: int) -> Poly:
    g = None
    for c in _coeffs_in(p, k).values():
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return Poly.const(p.ctx, 1)
    return g.monic()


def _prem(a: Poly, b: Poly, k: int) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` in x_k (up to a unit factor)."""
    bc = _coeffs_in(b, k)
    db = max(bc)
    lcb = bc[db]
    r = a
    while not r.is_zero():
        rc = _coeffs_in(r, k)
        dr = max(rc)
        if dr < db:
            break
        shift = [0] * r.nvars
        shift[k] = dr - db
        xk = Poly._raw(r.ctx, {tuple(shift): Fraction(1)})
        r = lcb * r - rc[dr] * xk * b
        if not r.is_zero():
            r = r.scale(1 / r.leading_coefficient())
    return r


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor over Q (primitive-PRS, recursive in the variables)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.const(a.ctx, 1)
    q = a.exact_div(b)
    if q is not None:
        return b.monic()
    q = b.exact_div(a)
    if q is not None:
        return a.monic()
    va, vb = a.variables(), b.variables()
    k = max(va | vb)
    if k not in va:
        return gcd(a, _content(b, k))
    if k not in vb:
        return gcd(_content(a, k), b)
    ca, cb = _content(a, k), _content(b, k)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    if pa.degree(k + 1) < pb.degree(k + 1):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, k)
        if r.is_zero():
            g = pb
            break
        if r.degree(k + 1) == 0:
            g = Poly.const(a.ctx, 1)
            break
        pa, pb = pb, r.exact_div(_content(r, k))
    return (gcd(ca, cb) * g).monic()
