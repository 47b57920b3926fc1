"""Command-line entry point: ``wdvvkit <subcommand> ...``.

Every subcommand prints one JSON report on stdout.  Exit status is 0 when
all clauses hold, 1 on a mathematical failure, 2 on an input or
precondition error (usage errors also exit 2, with usage on stderr).
"""
from __future__ import annotations

import argparse
import sys
import time

from wdvvkit import documents, kontsevich
from wdvvkit.documents import InputError
from wdvvkit.frobenius import NotOrdinaryError, check_axioms, from_prepotential
from wdvvkit.lenard import (
    DegeneratePivotError,
    check_lemma1,
    check_lemma2,
    haantjes,
    lenard_complex_of,
    nijenhuis,
)
from wdvvkit.report import ERROR, FAIL, PASS, Report
from wdvvkit.wdvv import PivotDegenerateError, check_wdvv

EXIT = {PASS: 0, FAIL: 1, ERROR: 2}


def _check_wdvv(args) -> Report:
    rep = Report("check-wdvv")
    P = documents.prepotential(documents.load(args.input), args.pivot)
    rep.inputs_echo = documents.echo_prepotential(P)
    v = check_wdvv(P)
    rep.add("residuals_zero", v.satisfied, [w.to_dict() for w in v.witnesses[:1]] or None)
    if args.mode == "ordinary":
        rep.add("pivot_slice_constant", v.ordinary, v.ordinary_witness)
    rep.details.update({
        "mode": args.mode,
        "satisfied": v.satisfied,
        "ordinary": v.ordinary,
        "witness_count": len(v.witnesses),
    })
    return rep


def _parse_override(text: str) -> tuple[int, int]:
    try:
        k, v = text.split("=")
        k, v = int(k), int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K=VALUE, got {text!r}") from None
    if k < 1:
        raise argparse.ArgumentTypeError("override index must be >= 1")
    return k, v


def _kontsevich(args) -> Report:
    rep = Report("kontsevich")
    K = args.k
    if K < 1:
        raise InputError("-k must be at least 1")
    overrides = dict(args.override or [])
    rep.inputs_echo = {"k": K, "check_pde": args.check_pde,
                       "override": {str(k): v for k, v in sorted(overrides.items())}}
    table = kontsevich.nk_recursion(K)
    for k, v in overrides.items():
        if k > K:
            raise InputError(f"override index {k} exceeds -k {K}")
        table = table.with_override(k, v)
    rep.add("positive_integers", all(isinstance(n, int) and n > 0 for n in table.values))
    oracle = kontsevich.solve_from_pde(K)
    mismatch = next(([k, a, b] for k, (a, b) in enumerate(zip(table.values, oracle.values), start=1) if a != b), None)
    rep.add("pde_oracle_agreement", mismatch is None,
            None if mismatch is None else {"k": mismatch[0], "table": mismatch[1], "pde": mismatch[2]})
    rep.details["N"] = table.pairs()
    if args.check_pde:
        zero, witness = kontsevich.certify(table)
        rep.add("pde_residual_zero", zero, witness)
        rep.details["pde_residual_zero"] = zero
    return rep


def _check_lenard(args) -> Report:
    rep = Report("check-lenard")
    S, X = documents.square(documents.load(args.input), args.pivot)
    rep.inputs_echo = documents.echo_square(S, X)
    rep.extend(check_lemma1(S, X), "lemma1.")
    l2 = check_lemma2(S, X)
    rep.extend(l2, "lemma2.")
    lc = lenard_complex_of(S, X)
    rep.extend(lc, "complex.")
    rep.details["unity"] = lc.details["unity"]
    rep.details["correspondence"] = l2.details.get("correspondence")
    rep.details["operators"] = l2.details["operators"]
    return rep


def _check_frobenius(args) -> Report:
    doc = documents.load(args.input)
    D, P = documents.frobenius(doc)
    if P is not None:
        D = from_prepotential(P)
    ax = check_axioms(D)
    rep = ax.to_report()
    rep.inputs_echo = documents.echo_frobenius(D)
    if P is not None:
        rep.details["from_F"] = documents.echo_prepotential(P)
    return rep


def _haantjes(args) -> Report:
    rep = Report("haantjes")
    ops, echo = documents.operators(documents.load(args.input), args.pivot)
    rep.inputs_echo = echo
    torsion = {}
    for idx, K in enumerate(ops, start=1):
        label = str(getattr(K, "index", idx))
        N = nijenhuis(K)
        H = haantjes(K)
        hit = H.first_nonzero()
        rep.add(f"haantjes_zero.K{label}", hit is None, None if hit is None else [x + 1 for x in hit])
        torsion[label] = {"nijenhuis_zero": N.is_zero(), "haantjes_zero": hit is None}
    rep.details["torsion"] = torsion
    return rep


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wdvvkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-wdvv", help="decide the WDVV equations for a prepotential")
    p.add_argument("--input", required=True)
    p.add_argument("--pivot", type=int)
    p.add_argument("--mode", choices=("generalized", "ordinary"), default="generalized")
    p.set_defaults(func=_check_wdvv)

    p = sub.add_parser("kontsevich", help="rational-curve counts N_k, two independent ways")
    p.add_argument("-k", type=int, default=8)
    p.add_argument("--check-pde", action="store_true")
    p.add_argument("--override", type=_parse_override, action="append", metavar="K=VALUE",
                   help="replace N_K before checking (negative control)")
    p.set_defaults(func=_kontsevich)

    p = sub.add_parser("check-lenard", help="Lenard chain, recursion operators and complex")
    p.add_argument("--input", required=True)
    p.add_argument("--pivot", type=int)
    p.set_defaults(func=_check_lenard)

    p = sub.add_parser("check-frobenius", help="Frobenius-manifold axioms in flat coordinates")
    p.add_argument("--input", required=True)
    p.set_defaults(func=_check_frobenius)

    p = sub.add_parser("haantjes", help="Nijenhuis and Haantjes torsion of operators")
    p.add_argument("--input", required=True)
    p.add_argument("--pivot", type=int)
    p.set_defaults(func=_haantjes)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except (InputError, PivotDegenerateError, DegeneratePivotError, NotOrdinaryError) as exc:
        rep = Report(args.command, error=str(exc))
    rep.timing_ms = int((time.perf_counter() - start) * 1000)
    out.write(rep.to_json() + "\n")
    return EXIT[rep.status]


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
