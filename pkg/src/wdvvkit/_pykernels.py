"""Pure-Python sparse polynomial kernels.

Polynomials are plain dicts mapping exponent tuples to ``Fraction``
coefficients.  Every function returns a fresh dict with no zero entries.
The compiled module ``_ckernels`` exposes the same four functions.
"""
from fractions import Fraction

BACKEND = "python"


def add(a, b, sign=1):
    out = dict(a)
    if sign == 1:
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s += c
                if s:
                    out[e] = s
                else:
                    del out[e]
    else:
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = -c
            else:
                s -= c
                if s:
                    out[e] = s
                else:
                    del out[e]
    return out


def mul(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            s = get(e)
            out[e] = ca * cb if s is None else s + ca * cb
    return {e: c for e, c in out.items() if c}


def diff(a, k):
    """Partial derivative with respect to the variable at 0-based slot ``k``."""
    out = {}
    for e, c in a.items():
        p = e[k]
        if p:
            d = list(e)
            d[k] = p - 1
            out[tuple(d)] = c * p
    return out


def evaluate(a, point):
    powers = [{0: Fraction(1)} for _ in point]
    total = Fraction(0)
    for e, c in a.items():
        term = c
        for k, p in enumerate(e):
            if p:
                cache = powers[k]
                v = cache.get(p)
                if v is None:
                    v = cache[p] = point[k] ** p
                term = term * v
        total += term
    return total
