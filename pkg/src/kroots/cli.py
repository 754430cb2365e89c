"""Command-line front end.

Exit status: 0 on success, 1 if a requested verification fails, 2 for bad
parameters, 3 for unparsable expressions or permutations.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from kroots.action import (
    filtration_basis,
    lattice_count,
    parse_permutation,
    rep_matrix,
    verify_filtration,
)
from kroots.monomials import ParameterError, SparseVector, check_params, format_rational
from kroots.parsing import ExpressionSyntaxError, MonomialExpr, elaborate_root, parse_expression
from kroots.rewrite import decompose_kroot, monomial_decompose, monomial_label
from kroots.roots import (
    InvalidLabelError,
    NotAKRootError,
    enumerate_canonical_basis,
    from_label,
    label_of,
)
from kroots.spherical import certify, spherical_function, spherical_table
from kroots.verify import run_suite

EXIT_OK, EXIT_FAILED, EXIT_PARAMS, EXIT_PARSE = 0, 1, 2, 3


class ParseFailure(Exception):
    pass


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _table(rows) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows) + "\n"


def _emit(args, fmt_json, fmt_csv, fmt_plain) -> None:
    if args.format == "json":
        text = json.dumps(fmt_json(), indent=2) + "\n"
    elif args.format == "csv":
        text = fmt_csv()
    else:
        text = fmt_plain()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------

def cmd_basis(args) -> int:
    basis = enumerate_canonical_basis(args.n, args.k)
    rows = [(label_of(b), str(b), b.height) for b in basis]
    _emit(args,
          lambda: {"n": args.n, "k": args.k,
                   "basis": [{"label": w, "root": r, "height": h} for w, r, h in rows]},
          lambda: _csv([("label", "root", "height")] + rows),
          lambda: _table([("label", "root", "height")] + rows))
    return EXIT_OK


def cmd_decompose(args) -> int:
    if bool(args.root) == bool(args.monomial):
        raise ParameterError("give exactly one of --root or --monomial")
    text = args.root or args.monomial
    try:
        expr = parse_expression(text)
        if isinstance(expr, MonomialExpr):
            I = tuple(sorted(expr.indices))
            if len(set(I)) != len(I) or len(I) != args.k or not all(1 <= i <= args.n for i in I):
                raise ParseFailure(f"{text!r} is not a monomial of V_({args.n},{args.k})")
        else:
            root = elaborate_root(expr, args.n, args.k)
    except (ExpressionSyntaxError, NotAKRootError, ParameterError) as exc:
        raise ParseFailure(str(exc)) from exc

    if isinstance(expr, MonomialExpr):
        dec = monomial_decompose(I, args.n)
        header = {"monomial": str(SparseVector.monomial(args.n, I)),
                  "label": monomial_label(I, args.n)}
    else:
        dec = decompose_kroot(root)
        header = {"root": str(root), "sign": root.sign}
    items = dec.items()

    def plain():
        head = "  ".join(f"{k}={v}" for k, v in header.items())
        return head + "\n" + _table([("coefficient", "label", "basis element")] + [
            (format_rational(c), w, str(from_label(w, args.k))) for w, c in items])

    _emit(args, lambda: {**dec.to_json(), **header}, dec.to_csv, plain)
    return EXIT_OK


def cmd_spherical(args) -> int:
    n, k = args.n, args.k
    if args.all or args.j is None:
        js = list(range(k + 1))
    else:
        if not 0 <= args.j <= k:
            raise ParameterError(f"need 0 <= j <= {k}")
        js = [args.j]
    phis = {j: spherical_function(n, k, j, certify_result=False) for j in range(k + 1)}
    reports = {j: certify(phis[j], phis) for j in js}
    table = spherical_table(n, k)
    ok = all(r.passed for rep in reports.values() for r in rep.values())

    def as_json():
        return {
            "n": n, "k": k,
            "functions": [{
                "j": j,
                "vector": phis[j].vector.to_dict(),
                "coeffs": {w: format_rational(c) for w, c in phis[j].coeffs.items()},
                "denominator_bound": phis[j].denominator_bound,
                "certificate": {name: res.to_json() for name, res in reports[j].items()},
            } for j in js],
            "table": [[format_rational(x) for x in table[j]] for j in js],
        }

    def as_csv():
        return _csv([["j"] + [f"m={m}" for m in range(k + 1)]]
                    + [[j] + [format_rational(x) for x in table[j]] for j in js])

    def plain():
        out = []
        for j in js:
            phi = phis[j]
            out.append(f"Phi({n},{k},{j}) = {phi.vector}")
            out.append("  = " + " + ".join(f"{format_rational(c)}*[{w}]" for w, c in phi.coeffs.items()))
            out.append(f"  denominator bound N = {phi.denominator_bound}")
            for name, res in reports[j].items():
                out.append(f"  [{'PASS' if res.passed else 'FAIL'}] {name}")
        out.append("")
        out.append(_table([["j"] + [f"m={m}" for m in range(k + 1)]]
                          + [[j] + [format_rational(x) for x in table[j]] for j in js]))
        return "\n".join(out)

    _emit(args, as_json, as_csv, plain)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_matrix(args) -> int:
    if not args.perm:
        raise ParameterError("--perm is required")
    try:
        w = parse_permutation(args.perm, args.n)
    except ParameterError as exc:
        raise ParseFailure(str(exc)) from exc
    rm = rep_matrix(w, args.n, args.k)
    body = [[format_rational(x) for x in row] for row in rm.matrix]
    _emit(args,
          lambda: {"n": args.n, "k": args.k, "perm": str(w), "labels": list(rm.labels),
                   "matrix": body, "integral": rm.integral, "sign_coherent": rm.sign_coherent},
          lambda: _csv([["label"] + list(rm.labels)] + [[lab] + row for lab, row in zip(rm.labels, body)]),
          lambda: _table([[""] + list(rm.labels)] + [[lab] + row for lab, row in zip(rm.labels, body)])
          + f"integral: {rm.integral}\nsign-coherent: {rm.sign_coherent}\n")
    return EXIT_OK if rm.integral and rm.sign_coherent else EXIT_FAILED


def cmd_filtration(args) -> int:
    n, k = args.n, args.k
    levels = range(k + 1) if args.level is None else [args.level]
    rows = []
    for t in levels:
        lvl = filtration_basis(n, k, t)
        rows.append((t, lvl.dimension, lattice_count(n, k - t) if t >= 0 else 0))
    checks = verify_filtration(n, k)
    ok = all(checks.values())

    def as_json():
        out = {"n": n, "k": k,
               "levels": [{"t": t, "dimension": d, "quotient_dimension": q} for t, d, q in rows],
               "checks": checks}
        if args.level is not None:
            out["basis"] = [label_of(b) for b in filtration_basis(n, k, args.level).basis]
        return out

    _emit(args, as_json,
          lambda: _csv([("t", "dimension", "quotient_dimension")] + rows),
          lambda: _table([("t", "dim V^(t)", "dim quotient")] + rows)
          + "".join(f"[{'PASS' if v else 'FAIL'}] {name}\n" for name, v in checks.items()))
    return EXIT_OK if ok else EXIT_FAILED


def cmd_verify(args) -> int:
    checks = run_suite(args.n, args.k, seed=args.seed)
    ok = all(c.passed for c in checks)
    _emit(args,
          lambda: {"n": args.n, "k": args.k, "seed": args.seed, "passed": ok,
                   "checks": [{"name": c.name, "pass": c.passed, "detail": c.detail} for c in checks]},
          lambda: _csv([("check", "pass", "detail")] + [(c.name, c.passed, c.detail) for c in checks]),
          lambda: "".join(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}"
                          + (f" ({c.detail})" if c.detail else "") + "\n" for c in checks)
          + f"{sum(c.passed for c in checks)}/{len(checks)} checks passed\n")
    return EXIT_OK if ok else EXIT_FAILED


COMMANDS = {
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "spherical": cmd_spherical,
    "matrix": cmd_matrix,
    "filtration": cmd_filtration,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-n", type=int, required=True, help="number of variables")
    common.add_argument("-k", type=int, required=True, help="degree (1 <= k <= n/2)")
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    parser = argparse.ArgumentParser(prog="kroots", description="k-roots and the canonical basis B_{n,k}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("basis", parents=[common], help="list the canonical basis")
    p = sub.add_parser("decompose", parents=[common], help="canonical-basis coordinates")
    p.add_argument("--root", metavar="EXPR", help='k-root such as "(x1-x4)(x2+x3)"')
    p.add_argument("--monomial", metavar="EXPR", help='monomial such as "x1*x3"')
    p = sub.add_parser("spherical", parents=[common], help="spherical functions")
    p.add_argument("--j", type=int)
    p.add_argument("--all", action="store_true")
    p = sub.add_parser("matrix", parents=[common], help="representation matrix of a permutation")
    p.add_argument("--perm", metavar="STR", help='"2 1 3 4" or "(1 2)(3 4)"')
    p = sub.add_parser("filtration", parents=[common], help="the height filtration V^(t)")
    p.add_argument("--level", type=int)
    sub.add_parser("verify", parents=[common], help="run the property suite")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        check_params(args.n, args.k)
        return COMMANDS[args.command](args)
    except ParseFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ParameterError, InvalidLabelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS


if __name__ == "__main__":
    sys.exit(main())
