"""The eight acceptance criteria, one test each.

Every test records a one-line verdict; ``conftest.py`` prints them in the
terminal summary.  Running this file as a script prints the same lines.
"""
import io
import json
import random
import sys
import time
from pathlib import Path

import pytest

from helpers import kontsevich_family, mixed_n3_corpus, rand_matrix_entries, rand_point, rand_poly, random_prepotential
from wdvvkit.algebra import PolyMatrix, VarCtx, parse_expr
from wdvvkit.cli import run
from wdvvkit.frobenius import from_prepotential, modulo_quadratic, reconstruct_prepotential
from wdvvkit.kontsevich import build_series, nk_recursion, pde_residual, solve_from_pde
from wdvvkit.lenard import (
    SquareOfFunctions,
    VectorField,
    haantjes,
    haantjes_bracket,
    integrate_hessian,
    nijenhuis,
    nijenhuis_bracket,
    recursion_operators,
)
from wdvvkit.wdvv import Prepotential, check_wdvv

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
RESULTS: dict[int, str] = {}

pytestmark = pytest.mark.acceptance


def record(n, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {title}" + (f" ({detail})" if detail else "")
    RESULTS[n] = line
    print(line)
    assert ok, line


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, json.loads(buf.getvalue())


def test_criterion_1_kontsevich_table():
    start = time.perf_counter()
    code, out = cli("kontsevich", "-k", "4")
    elapsed = time.perf_counter() - start
    ok = code == 0 and out["N"] == [[1, 1], [2, 1], [3, 12], [4, 620]] and elapsed < 1.0
    record(1, "kontsevich -k 4 gives 1, 1, 12, 620", ok, f"{elapsed * 1000:.0f} ms")


def test_criterion_2_mutual_oracles():
    start = time.perf_counter()
    table = nk_recursion(10)
    agree = table.values == solve_from_pde(10).values
    zero = pde_residual(build_series(table)).is_zero()
    elapsed = time.perf_counter() - start
    record(2, "recursion = PDE solver through k = 10, residual zero", agree and zero and elapsed < 5.0,
           f"{elapsed * 1000:.0f} ms")


def test_criterion_3_two_variables():
    rng = random.Random(20260318)
    bad = [P.F for P in (random_prepotential(rng, 2, 5) for _ in range(100)) if not check_wdvv(P).satisfied]
    record(3, "100 random n = 2 prepotentials satisfy WDVV", not bad, f"{len(bad)} failures")


def test_criterion_4_commutation_equals_wdvv():
    mismatches = 0
    solutions = 0
    for P in mixed_n3_corpus(4, 100):
        wdvv = check_wdvv(P).satisfied
        ops = recursion_operators(SquareOfFunctions.hessian_of(P.F))
        commute = all(a.commutes_with(b) for i, a in enumerate(ops) for b in ops[i + 1:])
        mismatches += wdvv != commute
        solutions += wdvv
    record(4, "operator commutation verdict = WDVV verdict on 100 n = 3 prepotentials", mismatches == 0,
           f"{mismatches} mismatches, {solutions} solutions")


def test_criterion_5_quadratic_corpus():
    start = time.perf_counter()
    runs = {
        "check-wdvv": cli("check-wdvv", "--input", str(FIXTURES / "quad.json"), "--mode", "ordinary"),
        "check-lenard": cli("check-lenard", "--input", str(FIXTURES / "lenard_quad.json")),
        "check-frobenius": cli("check-frobenius", "--input", str(FIXTURES / "frobenius_quad.json")),
        "haantjes": cli("haantjes", "--input", str(FIXTURES / "quad.json")),
    }
    elapsed = time.perf_counter() - start
    ok = all(code == 0 and out["status"] == "pass" for code, out in runs.values())
    ok = ok and runs["check-wdvv"][1]["ordinary"] is True and runs["check-lenard"][1]["unity"] is True
    frob = {c["name"] for c in runs["check-frobenius"][1]["clauses"] if c["ok"]}
    ok = ok and {"flat", "compatible", "unity", "cov_const_e", "potential"} <= frob
    ok = ok and all(v["haantjes_zero"] for v in runs["haantjes"][1]["torsion"].values())
    record(5, "quadratic solution passes all four checks", ok and elapsed < 1.0, f"{elapsed * 1000:.0f} ms")


def test_criterion_6_round_trips():
    rng = random.Random(6)
    hess_bad = 0
    for _ in range(50):
        F = random_prepotential(rng, 3, 5).F
        hess_bad += (F - integrate_hessian(SquareOfFunctions.hessian_of(F))).degree() > 1
    ctx = VarCtx.standard(3)
    corpus = [Prepotential(ctx, parse_expr(json.loads((FIXTURES / f).read_text())["F"], ctx))
              for f in ("quad.json", "a3.json", "h3.json")]
    corpus += [kontsevich_family(rng) for _ in range(10)]
    frob_bad = sum(not modulo_quadratic(reconstruct_prepotential(from_prepotential(P)), P.F) for P in corpus)
    record(6, "Hessian and Frobenius reconstructions invert their constructions", hess_bad == frob_bad == 0,
           f"{hess_bad}/50 Hessian, {frob_bad}/{len(corpus)} Frobenius failures")


def test_criterion_7_torsion_forms_agree():
    rng = random.Random(7)
    ctx = VarCtx.standard(3)
    mismatches = 0
    for _ in range(20):
        K = PolyMatrix(ctx, rand_matrix_entries(rng, ctx, 3, 2, 2))
        N, H = nijenhuis(K), haantjes(K)
        X = VectorField([rand_poly(rng, ctx, 1, 2) for _ in range(3)])
        Y = VectorField([rand_poly(rng, ctx, 1, 2) for _ in range(3)])
        nb, hb = nijenhuis_bracket(K, X, Y), haantjes_bracket(K, X, Y)
        for _ in range(50):
            pt = rand_point(rng, 3)
            mismatches += nb.eval(pt) != N.eval_contract(X, Y, pt)
            mismatches += hb.eval(pt) != H.eval_contract(X, Y, pt)
    record(7, "bracket and component torsion agree at 50 points on 20 operators", mismatches == 0,
           f"{mismatches} mismatches")


def test_criterion_8_negative_controls():
    runs = {
        "N_3 -> 13": cli("kontsevich", "-k", "4", "--check-pde", "--override", "3=13"),
        "F + x2^4 + x3^4": cli("check-wdvv", "--input", str(FIXTURES / "quad_perturbed.json")),
        "broken C": cli("check-frobenius", "--input", str(FIXTURES / "frobenius_broken.json")),
    }
    bad = [name for name, (code, out) in runs.items()
           if code != 1 or out["status"] != "fail"
           or not any(not c["ok"] and c.get("witness") is not None for c in out["clauses"])]
    record(8, "perturbed inputs fail with witnesses, never error", not bad, ", ".join(bad) or "3 controls")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
