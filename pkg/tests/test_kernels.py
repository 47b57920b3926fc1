"""Both kernel backends must agree term for term."""
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wdvvkit import _pykernels, kernels

try:
    from wdvvkit import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

coeff = st.fractions(min_value=-50, max_value=50, max_denominator=12)
expo = st.tuples(*[st.integers(0, 4)] * 3)
poly = st.dictionaries(expo, coeff, max_size=8).map(lambda d: {e: c for e, c in d.items() if c})
point = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=6), min_size=3, max_size=3)


def test_backend_is_reported():
    assert kernels.BACKEND in ("python", "cython")


@needs_ext
@given(poly, poly)
@settings(max_examples=200)
def test_mul_agrees(a, b):
    assert _ckernels.mul(a, b) == _pykernels.mul(a, b)


@needs_ext
@given(poly, poly, st.sampled_from([1, -1]))
def test_add_agrees(a, b, sign):
    assert _ckernels.add(a, b, sign) == _pykernels.add(a, b, sign)


@needs_ext
@given(poly, st.integers(0, 2))
def test_diff_agrees(a, k):
    assert _ckernels.diff(a, k) == _pykernels.diff(a, k)


@needs_ext
@given(poly, point)
def test_evaluate_agrees(a, pt):
    assert _ckernels.evaluate(a, pt) == _pykernels.evaluate(a, pt)


@pytest.mark.parametrize("mod", [_pykernels, pytest.param(_ckernels, marks=needs_ext)])
def test_results_have_no_zero_coefficients(mod):
    a = {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(1)}
    b = {(1, 0, 0): Fraction(1), (0, 1, 0): Fraction(-1)}
    assert mod.mul(a, b) == {(2, 0, 0): 1, (0, 2, 0): -1}
    assert mod.add(a, a, -1) == {}
    assert all(isinstance(c, Fraction) for c in mod.mul(a, b).values())


@pytest.mark.parametrize("flag, expected", [("1", "python"), ("0", None)])
def test_backend_selection_by_environment(flag, expected):
    code = "from wdvvkit.kernels import BACKEND; print(BACKEND)"
    env = dict(os.environ, WDVVKIT_PURE_PYTHON=flag)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == (expected or ("cython" if _ckernels else "python"))


def test_reports_identical_across_backends():
    fixture = Path(__file__).resolve().parent.parent / "fixtures" / "lenard_perturbed.json"
    code = ("import io, json; from wdvvkit.cli import run; b = io.StringIO(); "
            f"run(['check-lenard', '--input', {str(fixture)!r}], b); "
            "d = json.loads(b.getvalue()); d.pop('timing_ms'); print(json.dumps(d, sort_keys=True))")
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, WDVVKIT_PURE_PYTHON=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                                   check=True).stdout)
    assert outs[0] == outs[1] and '"status": "fail"' in outs[0]


@pytest.mark.slow
def test_benchmark_runs():
    bench = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    out = subprocess.run([sys.executable, str(bench), "--repeat", "1"], capture_output=True, text=True, check=True)
    assert "mul" in out.stdout and "wdvv" in out.stdout
