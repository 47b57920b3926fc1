"""JSON input documents for the command-line checks.

Prepotential::

    {"vars": ["x1", "x2", "x3"], "F": "1/2*(x1^2*x3 + x1*x2^2)", "pivot": 1}

Square of functions::

    {"vars": [...], "A": [["expr", ...], ...], "pivot": 1, "X": ["1", "0", "0"]}

Frobenius data (either form)::

    {"vars": [...], "g": [[0, 0, 1], ...], "C": {"j,k": ["C^1_jk", ...]}, "e": 1}
    {"from_F": {<prepotential document>}}

Operator for the torsion check: ``{"vars": [...], "K": [["expr", ...]], "den": "expr"}``,
or any square / prepotential document (its recursion operators are used).
"""
from __future__ import annotations

import json
from fractions import Fraction

from wdvvkit.algebra import ExprError, Poly, PolyMatrix, RatOperator, VarCtx, parse_expr
from wdvvkit.frobenius import FrobeniusData
from wdvvkit.lenard import SquareOfFunctions, VectorField, recursion_operators
from wdvvkit.wdvv import Prepotential


class InputError(ValueError):
    """Malformed input document (no mathematical verdict possible)."""


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    return doc


def _require(doc: dict, key: str):
    if key not in doc:
        raise InputError(f"missing key {key!r}")
    return doc[key]


def context(doc: dict) -> VarCtx:
    names = _require(doc, "vars")
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise InputError("'vars' must be a list of identifier strings")
    try:
        return VarCtx(names)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def expr(text, ctx: VarCtx, where: str) -> Poly:
    if isinstance(text, int) and not isinstance(text, bool):
        return Poly.const(ctx, text)
    if not isinstance(text, str):
        raise InputError(f"{where}: expected an expression string")
    try:
        return parse_expr(text, ctx)
    except ExprError as exc:
        raise InputError(f"{where}: {exc}") from exc


def rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"{where}: floating-point values are not accepted; use 'p/q' strings")
    try:
        return Fraction(x) if isinstance(x, int) else Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: not a rational number: {x!r}") from exc


def _pivot(doc: dict, override: int | None, n: int) -> int:
    p = override if override is not None else doc.get("pivot", 1)
    if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= n:
        raise InputError(f"pivot must be an integer in 1..{n}")
    return p


def prepotential(doc: dict, pivot: int | None = None) -> Prepotential:
    ctx = context(doc)
    if len(ctx) < 2:
        raise InputError("a prepotential needs at least two variables")
    F = expr(_require(doc, "F"), ctx, "F")
    return Prepotential(ctx, F, _pivot(doc, pivot, len(ctx)))


def echo_prepotential(P: Prepotential) -> dict:
    return {"vars": list(P.ctx.names), "F": str(P.F), "pivot": P.pivot}


def square(doc: dict, pivot: int | None = None) -> tuple[SquareOfFunctions, VectorField]:
    ctx = context(doc)
    n = len(ctx)
    rows = _require(doc, "A")
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise InputError(f"'A' must be an {n} x {n} array of expressions")
    A = [[expr(x, ctx, f"A[{i + 1}][{j + 1}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    p = _pivot(doc, pivot, n)
    try:
        S = SquareOfFunctions(ctx, A, p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    X_doc = doc.get("X")
    if X_doc is None:
        X = VectorField.coordinate(ctx, p)
    else:
        if not isinstance(X_doc, list) or len(X_doc) != n:
            raise InputError(f"'X' must list {n} component expressions")
        X = VectorField([expr(x, ctx, f"X[{i + 1}]") for i, x in enumerate(X_doc)])
    return S, X


def echo_square(S: SquareOfFunctions, X: VectorField) -> dict:
    return {
        "vars": list(S.ctx.names),
        "A": [[str(a) for a in r] for r in S.A],
        "pivot": S.pivot,
        "X": [str(c) for c in X.components],
    }


def frobenius(doc: dict) -> tuple[FrobeniusData | None, Prepotential | None]:
    """Raw Frobenius data, or the prepotential behind a ``from_F`` document."""
    if "from_F" in doc:
        sub = doc["from_F"]
        if not isinstance(sub, dict):
            raise InputError("'from_F' must be a prepotential document")
        return None, prepotential(sub)
    ctx = context(doc)
    n = len(ctx)
    g_doc = _require(doc, "g")
    if not isinstance(g_doc, list) or len(g_doc) != n or any(not isinstance(r, list) or len(r) != n for r in g_doc):
        raise InputError(f"'g' must be an {n} x {n} array of rationals")
    g = [[rational(x, f"g[{i + 1}][{j + 1}]") for j, x in enumerate(r)] for i, r in enumerate(g_doc)]
    C_doc = _require(doc, "C")
    if not isinstance(C_doc, dict):
        raise InputError("'C' must map \"j,k\" keys to lists of expressions")
    C = [[None] * n for _ in range(n)]
    for key, vals in C_doc.items():
        try:
            j, k = (int(t) for t in key.split(","))
        except ValueError:
            raise InputError(f"bad structure-constant key {key!r}; expected \"j,k\"") from None
        if not (1 <= j <= n and 1 <= k <= n):
            raise InputError(f"structure-constant key {key!r} out of range")
        if not isinstance(vals, list) or len(vals) != n:
            raise InputError(f"C[{key}] must list {n} expressions (one per upper index)")
        C[j - 1][k - 1] = [expr(v, ctx, f"C[{key}][{l + 1}]") for l, v in enumerate(vals)]
    missing = [f"{j + 1},{k + 1}" for j in range(n) for k in range(n) if C[j][k] is None]
    if missing:
        raise InputError(f"missing structure constants for {missing}")
    e = doc.get("e", 1)
    if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
        raise InputError(f"'e' must be an integer in 1..{n}")
    return FrobeniusData(ctx, g, C, e), None


def echo_frobenius(D: FrobeniusData) -> dict:
    n = D.n
    return {
        "vars": list(D.ctx.names),
        "g": [[str(x) for x in r] for r in D.g],
        "C": {f"{j + 1},{k + 1}": [str(D.C[j][k][l]) for l in range(n)] for j in range(n) for k in range(n)},
        "e": D.e_index,
    }


def operators(doc: dict, pivot: int | None = None) -> tuple[list[RatOperator], dict]:
    """Operators whose torsion is requested, plus a canonical echo."""
    if "K" in doc:
        ctx = context(doc)
        n = len(ctx)
        rows = doc["K"]
        if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise InputError(f"'K' must be an {n} x {n} array of expressions")
        num = PolyMatrix(ctx, [[expr(x, ctx, f"K[{i + 1}][{j + 1}]") for j, x in enumerate(r)]
                               for i, r in enumerate(rows)])
        den = expr(doc.get("den", "1"), ctx, "den")
        if den.is_zero():
            raise InputError("'den' must not be zero")
        K = RatOperator(num, den)
        return [K], {"vars": list(ctx.names), "K": [[str(x) for x in r] for r in num.rows], "den": str(den)}
    if "A" in doc:
        S, X = square(doc, pivot)
        echo = echo_square(S, X)
    else:
        P = prepotential(doc, pivot)
        S = SquareOfFunctions.hessian_of(P.F, P.pivot)
        echo = echo_prepotential(P)
    return recursion_operators(S), echo
