# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse polynomial kernels (same contract as ``_pykernels``)."""
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from cpython.ref cimport Py_INCREF
from fractions import Fraction

BACKEND = "cython"


cdef inline tuple _exp_sum(tuple ea, tuple eb):
    cdef Py_ssize_t i, n = len(ea)
    cdef tuple out = PyTuple_New(n)
    cdef object v
    for i in range(n):
        v = <long>ea[i] + <long>eb[i]
        Py_INCREF(v)
        PyTuple_SET_ITEM(out, i, v)
    return out


def add(dict a, dict b, int sign=1):
    cdef dict out = dict(a)
    cdef object e, c, s
    for e, c in b.items():
        if sign != 1:
            c = -c
        s = out.get(e)
        if s is None:
            out[e] = c
        else:
            s = s + c
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def mul(dict a, dict b):
    # Accumulate integer numerator/denominator pairs per monomial and build
    # one Fraction per output term instead of two per partial product.
    if len(a) < len(b):
        a, b = b, a
    cdef list bl = [(e, c.numerator, c.denominator) for e, c in b.items()]
    cdef dict acc = {}
    cdef object ea, ca, na, da, eb, nb, db, e, n, d, sd
    cdef list slot
    cdef tuple item
    for ea, ca in a.items():
        na = ca.numerator
        da = ca.denominator
        for item in bl:
            eb = item[0]
            nb = item[1]
            db = item[2]
            e = _exp_sum(<tuple>ea, <tuple>eb)
            n = na * nb
            d = da * db
            slot = acc.get(e)
            if slot is None:
                acc[e] = [n, d]
            else:
                sd = slot[1]
                if sd == d:
                    slot[0] = slot[0] + n
                else:
                    slot[0] = slot[0] * d + n * sd
                    slot[1] = sd * d
    cdef dict out = {}
    for e, slot in acc.items():
        if slot[0]:
            out[e] = Fraction(slot[0], slot[1])
    return out


def diff(dict a, Py_ssize_t k):
    cdef dict out = {}
    cdef object e, c
    cdef long p
    cdef list d
    for e, c in a.items():
        p = (<tuple>e)[k]
        if p:
            d = list(<tuple>e)
            d[k] = p - 1
            out[tuple(d)] = c * p
    return out


def evaluate(dict a, point):
    cdef Py_ssize_t k, n = len(point)
    cdef list powers = [{0: Fraction(1)} for _ in range(n)]
    cdef object total = Fraction(0)
    cdef object e, c, term, v
    cdef dict cache
    cdef long p
    for e, c in a.items():
        term = c
        for k in range(n):
            p = (<tuple>e)[k]
            if p:
                cache = <dict>powers[k]
                v = cache.get(p)
                if v is None:
                    v = point[k] ** p
                    cache[p] = v
                term = term * v
        total = total + term
    return total
