"""Command-line front end.

Exit codes: 0 success or certificate produced, 1 usage or input error,
2 refuted (a smaller representation exists), 3 inconclusive (budget exhausted).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .errors import BiquadError, BudgetExceeded, Refuted
from .families import (
    Family,
    family_report,
    family_scan,
    make_family,
    norm_bound,
    universal_form_bounds,
    verify_norm_formulas,
    association_identities,
)
from .field import FieldSpec, format_element, make_field, parse_element
from .ring import (
    codifferent_basis,
    discriminant,
    integral_basis,
    subfield_discriminant_product,
    to_integral_coords,
)
from .sos import SearchBudget, WitnessKind, certify_min_rank, pythagoras_scan, sos_rank, witness_element

EXIT_OK, EXIT_USAGE, EXIT_REFUTED, EXIT_INCONCLUSIVE = 0, 1, 2, 3

ENV_MAX_NODES = "BIQUAD_MAX_NODES"
ENV_TIME_LIMIT = "BIQUAD_TIME_LIMIT"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "value") and isinstance(getattr(x, "value"), str):
        return x.value
    return x


def field_summary(f: FieldSpec) -> dict:
    return {
        "p": f.p, "q": f.q, "r": f.r,
        "p0": f.p0, "q0": f.q0, "r0": f.r0,
        "basis_type": f.basis_type.value,
        "roles": list(f.roles),
    }


def _report(args, f: FieldSpec | None, result: Any, t0: float, budget: SearchBudget | None = None) -> dict:
    return _jsonable({
        "command": args.argv,
        "field": None if f is None else field_summary(f),
        "result": result,
        "wall_time": round(time.monotonic() - t0, 6),
        "budget": None if budget is None else {
            "max_depth": budget.max_depth, "node_limit": budget.node_limit, "time_limit": budget.time_limit},
        "version": __version__,
    })


def _emit(obj: dict, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _budget(args) -> SearchBudget:
    nodes = args.max_nodes if args.max_nodes is not None else int(os.environ.get(ENV_MAX_NODES, SearchBudget.node_limit))
    tl = args.time_limit if args.time_limit is not None else float(os.environ.get(ENV_TIME_LIMIT, SearchBudget.time_limit))
    return SearchBudget(max_depth=args.max_depth, node_limit=nodes, time_limit=tl)


# -- commands -----------------------------------------------------------------


def cmd_field(args, out) -> int:
    t0 = time.monotonic()
    f = make_field(args.p, args.q)
    basis = integral_basis(f)
    phis = codifferent_basis(f)
    result = {
        "integral_basis": [format_element(g) for g in basis.elements],
        "codifferent_basis": [format_element(g) for g in phis.elements],
        "discriminant": discriminant(f),
        "subfield_discriminant_product": subfield_discriminant_product(f),
    }
    _emit(_report(args, f, result, t0), out)
    return EXIT_OK


def _element_result(a) -> dict:
    cp = a.char_poly()
    out = {
        "element": format_element(a),
        "coords": [str(c) for c in a.coords],
        "trace": a.trace(),
        "norm": a.norm(),
        "char_poly": {"A": cp.A, "B": cp.B, "C": cp.C, "D": cp.D},
        "totally_positive": a.is_totally_positive(),
        "embeddings": list(a.approx_embeddings()),
    }
    try:
        out["integral_coords"] = list(to_integral_coords(a).coords)
    except BiquadError:
        out["integral_coords"] = None
    return out


def cmd_elt(args, out) -> int:
    t0 = time.monotonic()
    f = make_field(args.p, args.q)
    a = parse_element(args.a, f)
    b = parse_element(args.b, f) if args.b is not None else None
    op = args.op
    binary = {"add": lambda: a + b, "sub": lambda: a - b, "mul": lambda: a * b, "div": lambda: a / b}
    if op in binary:
        if b is None:
            raise BiquadError(f"{op} needs two elements")
        result = _element_result(binary[op]())
    elif op == "conj":
        result = _element_result(a.conjugate(args.index))
    elif op == "dominates":
        if b is None:
            raise BiquadError("dominates needs two elements")
        result = {"dominates": a.dominates(b)}
    else:
        result = _element_result(a)
    _emit(_report(args, f, result, t0), out)
    return EXIT_OK


def _run_certificate(args, out, f: FieldSpec, target, m: int | None) -> int:
    t0 = time.monotonic()
    budget = _budget(args)
    try:
        if m is None:
            cert = sos_rank(target, budget, workers=args.threads)
        else:
            cert = certify_min_rank(target, m, budget, workers=args.threads)
    except Refuted as exc:
        _emit(_report(args, f, {"refuted": str(exc), **exc.certificate.to_dict()}, t0, budget), out)
        return EXIT_REFUTED
    except BudgetExceeded as exc:
        _emit(_report(args, f, {"inconclusive": str(exc), **exc.certificate.to_dict()}, t0, budget), out)
        return EXIT_INCONCLUSIVE
    _emit(_report(args, f, cert.to_dict(), t0, budget), out)
    return EXIT_OK


def cmd_sos_rank(args, out) -> int:
    f = make_field(args.p, args.q)
    target = to_integral_coords(parse_element(args.elt, f))
    return _run_certificate(args, out, f, target, args.min)


def cmd_certify(args, out) -> int:
    f = make_field(args.p, args.q)
    kind = WitnessKind(args.witness)
    target = witness_element(kind, f)
    m = args.min if args.min is not None else (7 if kind is WitnessKind.Main7 else 6)
    return _run_certificate(args, out, f, target, m)


def cmd_scan(args, out) -> int:
    t0 = time.monotonic()
    f = make_field(args.p, args.q)
    budget = _budget(args)
    best, certs = pythagoras_scan(f, samples=args.samples, budget=budget, seed=args.seed,
                                  coord_range=args.coord_range)
    result = {
        "empirical_lower_bound": best,
        "seed": args.seed,
        "certificates": [c.to_dict() for c in certs],
    }
    _emit(_report(args, f, result, t0, budget), out)
    return EXIT_OK


_CSV_COLUMNS = ["label", "t", "integral_coords", "element", "norm", "formula_norm", "minTr",
                "minTr_witness", "indecomposable_verified"]


def cmd_family(args, out) -> int:
    t0 = time.monotonic()
    fam = Family(args.family.upper())
    if args.action == "scan":
        rows = family_scan(fam, args.n_from, args.n_to)
        _emit(_report(args, None, {"family": fam.value, "rows": rows}, t0), out)
        return EXIT_OK
    if args.n is None:
        raise BiquadError(f"family {args.action} needs --n")
    fp = make_family(fam, args.n)
    if args.action == "report":
        rows = family_report(fp, t_max=args.t_max, check_indecomposable=args.check_indecomposable,
                             reduced=args.reduced)
        if args.format == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=_CSV_COLUMNS, extrasaction="ignore", lineterminator="\n")
            w.writeheader()
            for row in rows:
                w.writerow({k: (" ".join(map(str, v)) if isinstance(v, list) else v) for k, v in row.items()})
            out.write(buf.getvalue())
            return EXIT_OK
        result = {
            "family": fam.value, "n": fp.n,
            "norm_bound": norm_bound(fp),
            "max_norm": max(r["norm"] for r in rows),
            "elements": rows,
        }
    elif args.action == "norms":
        result = {"norm_bound": norm_bound(fp), "rows": verify_norm_formulas(fp, strict=False)}
    elif args.action == "identities":
        result = association_identities(fp, strict=False)
    else:
        result = universal_form_bounds(fp)
    _emit(_report(args, fp.field, result, t0), out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biquad", description="Exact computations in real biquadratic fields.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--threads", type=int, default=1, help="worker processes for searches")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_args(p):
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--q", type=int, required=True)

    def budget_args(p):
        p.add_argument("--max-depth", type=int, default=8)
        p.add_argument("--max-nodes", type=int, default=None,
                       help=f"node limit per root branch (default ${ENV_MAX_NODES} or built-in)")
        p.add_argument("--time-limit", type=float, default=None,
                       help=f"seconds (default ${ENV_TIME_LIMIT} or built-in)")

    p = sub.add_parser("field", help="integral basis, codifferent and discriminant")
    p.add_argument("action", nargs="?", default="info", choices=["info"])
    field_args(p)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("elt", help="element arithmetic and invariants")
    field_args(p)
    p.add_argument("op", choices=["show", "add", "sub", "mul", "div", "conj", "dominates"])
    p.add_argument("a")
    p.add_argument("b", nargs="?")
    p.add_argument("--index", type=int, default=1, choices=[1, 2, 3, 4], help="embedding for conj")
    p.set_defaults(func=cmd_elt)

    p = sub.add_parser("sos-rank", help="exact sum-of-squares rank or a lower-bound certificate")
    field_args(p)
    p.add_argument("--elt", required=True)
    p.add_argument("--min", type=int, default=None, help="prove rank >= MIN instead of computing the rank")
    budget_args(p)
    p.set_defaults(func=cmd_sos_rank)

    p = sub.add_parser("certify", help="certify the rank lower bound of a named witness element")
    field_args(p)
    p.add_argument("--witness", required=True, choices=[k.value for k in WitnessKind])
    p.add_argument("--min", type=int, default=None)
    budget_args(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("scan", help="empirical Pythagoras lower bound from random sums of squares")
    field_args(p)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coord-range", type=int, default=2)
    budget_args(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("family", help="indecomposable families F1, F2, F3")
    fam_common = _Parser(add_help=False)
    fam_common.add_argument("--family", type=str.lower, choices=["f1", "f2", "f3"], default=argparse.SUPPRESS)
    fam_common.add_argument("--n", type=int, default=argparse.SUPPRESS)
    p.add_argument("--family", type=str.lower, choices=["f1", "f2", "f3"], required=False)
    p.add_argument("--n", type=int, default=None)
    actions = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    a = actions.add_parser("report", parents=[fam_common])
    a.add_argument("--format", choices=["json", "csv"], default="json")
    a.add_argument("--t-max", type=int, default=2)
    a.add_argument("--check-indecomposable", action="store_true")
    a.add_argument("--reduced", action="store_true", help="one element per association class")
    a = actions.add_parser("scan", parents=[fam_common])
    a.add_argument("--n-from", type=int, required=True)
    a.add_argument("--n-to", type=int, required=True)
    actions.add_parser("norms", parents=[fam_common])
    actions.add_parser("identities", parents=[fam_common])
    actions.add_parser("forms", parents=[fam_common])
    p.set_defaults(func=cmd_family)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = argv
    if args.command == "family" and not args.family:
        parser.error("family needs --family")
    try:
        return args.func(args, out)
    except (BiquadError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
