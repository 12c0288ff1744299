"""Command-line surface: expansions, genus reports, Siegel lifts and the
verification suites.

Exit codes: 0 success, 2 parse/validation failure, 3 identity or
divisibility failure, 4 insufficient precision.
"""

import argparse
import json
import sys
from fractions import Fraction

from .errors import (
    InexactDivisionError,
    JacobiLiftError,
    PrecisionError,
    ValidationError,
)
from .genpoly import parse_generator_polynomial
from .genus import (
    CYInvariants,
    chi_y_polynomial,
    divisibility_report,
    elliptic_genus,
    relation_check,
)
from .jacobi import generator, xi06
from .lifts import (
    arithmetic_lift,
    e_form,
    exp_lift,
    lift_window_for,
    sqeg,
)
from .series import series_to_dict

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_IDENTITY = 3
EXIT_PRECISION = 4

NAMED_FORMS = {
    "phi01": "Phi1",
    "phi02": "Phi2",
    "phi03": "Phi3",
    "phi04": "Phi4",
}


def _resolve_form(text, qprec):
    """A JacobiForm from a named generator or a Phi-polynomial string."""
    name = text.strip()
    if name == "xi06":
        return xi06(qprec)
    expr = NAMED_FORMS.get(name.lower(), name)
    poly = parse_generator_polynomial(expr)
    poly.index()  # must be index-homogeneous
    return poly.evaluate(tuple(generator(m, qprec) for m in (1, 2, 3, 4)))


def _monomial_str(num, den, var):
    if num == 0:
        return ""
    e = Fraction(num, den)
    if e == 1:
        return var
    if e.denominator == 1:
        return f"{var}^{e.numerator}"
    return f"{var}^({e.numerator}/{e.denominator})"


def _row_str(row):
    """Render one y-row, highest power first, in the (y^k +- ...) style."""
    parts = []
    for ly in sorted(row, reverse=True):
        c = row[ly]
        mono = _monomial_str(ly, 4, "y")
        if mono:
            if c == 1:
                body = mono
            elif c == -1:
                body = f"-{mono}"
            else:
                body = f"{c}*{mono}"
        else:
            body = str(c)
        if parts and not body.startswith("-"):
            body = "+" + body
        parts.append(body)
    return "(" + "".join(parts) + ")" if parts else "(0)"


def _form_text(form):
    lines = [f"weight {form.weight}  index {form.index}  q-orders {form.qprec_orders()}"]
    rows = {}
    for (nq, ly), c in form.series.terms.items():
        rows.setdefault(nq, {})[ly] = c
    for nq in sorted(rows):
        q = _monomial_str(nq, 24, "q") or "1"
        lines.append(f"{q}: {_row_str(rows[nq])}")
    return "\n".join(lines)


def _form_json(form):
    return {
        "weight2": form.weight2,
        "index2": form.index2,
        "series": series_to_dict(form.series),
    }


def _siegel_text(ss):
    lines = [
        f"weight2 {ss.weight2}  character_order {ss.character_order}"
        f"  index_t {ss.index_t}"
    ]
    for key, coeff in ss.series.sorted_terms():
        nq, ly, ms = key
        monos = [
            _monomial_str(nq, 24, "q"),
            _monomial_str(ly, 4, "y"),
            _monomial_str(ms, 24, "s"),
        ]
        body = " ".join(m for m in monos if m) or "1"
        lines.append(f"{coeff:+d} {body}")
    return "\n".join(lines)


def _emit(args, text_fn, json_obj):
    out = (
        json.dumps(json_obj, indent=2, sort_keys=True)
        if args.json
        else text_fn()
    )
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def cmd_expand(args):
    qprec = 24 * (args.qmax + 1)
    form = _resolve_form(args.form, qprec)
    form = form.truncate(24 * args.qmax) if args.qmax else form
    _emit(args, lambda: _form_text(form), _form_json(form))
    return EXIT_OK


def _invariants_from_args(args):
    if args.chi is not None:
        chi = [int(x) for x in args.chi.split(",")]
        return CYInvariants(args.d, chi)
    if args.euler is not None:
        return CYInvariants.from_euler(args.d, args.euler)
    raise ValidationError("provide --chi or --euler")


def cmd_genus(args):
    inv = _invariants_from_args(args)
    relations = relation_check(inv)
    broken = [k for k, (ok, _) in relations.items() if not ok]
    if broken:
        for k, (ok, res) in relations.items():
            status = "ok  " if ok else "FAIL"
            print(f"{status} {k}  (residual {res})", file=sys.stderr)
        print(f"failed: {'; '.join(broken)}", file=sys.stderr)
        return EXIT_IDENTITY
    genus = elliptic_genus(inv, qprec=24 * (args.qmax + 1))
    # the torsion congruences apply to integral-index forms (even d)
    divis = divisibility_report(genus, d=inv.d) if inv.d % 2 == 0 else {}
    chi_y = chi_y_polynomial(genus, inv.d)
    report = {
        "d": inv.d,
        "chi": list(chi_y.chi),
        "euler": inv.euler,
        "genus": _form_json(genus.truncate(24 * args.qmax)),
        "relations": {k: [ok, str(res)] for k, (ok, res) in relations.items()},
        "divisibility": {k: bool(ok) for k, (ok, _) in divis.items()},
    }
    failed = [k for k, (ok, _) in relations.items() if not ok]
    failed += [k for k, (ok, _) in divis.items() if not ok]

    def text():
        lines = [
            f"d = {inv.d}  chi = {inv.chi}  e = {inv.euler}",
            _form_text(genus.truncate(24 * args.qmax)),
        ]
        for k, (ok, res) in relations.items():
            lines.append(f"{'ok  ' if ok else 'FAIL'} {k}  (residual {res})")
        for k, (ok, _) in divis.items():
            lines.append(f"{'ok  ' if ok else 'FAIL'} {k}")
        return "\n".join(lines)

    _emit(args, text, report)
    if failed:
        print(f"failed: {'; '.join(failed)}", file=sys.stderr)
        return EXIT_IDENTITY
    return EXIT_OK


def cmd_lift(args):
    if args.kind == "explift":
        if not args.form:
            raise ValidationError("lift explift needs --form")
        probe = _resolve_form(args.form, 48)
        qprec, sprec, inq = lift_window_for(probe, args.qmax, args.smax)
        form = _resolve_form(args.form, inq)
        ss = exp_lift(form, qprec, sprec, ywindow=args.ywindow)
    elif args.kind == "sqeg":
        inv = _invariants_from_args(args)
        pmax = args.pmax if args.pmax is not None else 2
        chi = elliptic_genus(inv, qprec=24 * (args.qmax * pmax + 2))
        series = sqeg(chi, 24 * args.qmax + 1, 24 * pmax + 1, ywindow=args.ywindow)
        data = series_to_dict(series)
        _emit(args, lambda: "\n".join(str(t) for t in series.sorted_terms()), data)
        return EXIT_OK
    elif args.kind == "eform":
        inv = _invariants_from_args(args)
        ywindow = args.ywindow if args.ywindow is not None else 60
        ss = e_form(inv, 24 * args.qmax + 1, 24 * args.smax + 1, ywindow=ywindow)
    elif args.kind == "arith":
        if args.name not in ("Delta2", "Delta1"):
            raise ValidationError("lift arith needs --name Delta2 or Delta1")
        bound = args.bound if args.bound is not None else max(args.qmax, args.smax)
        ss = arithmetic_lift(args.name, 24 * bound + 1, 24 * bound + 1)
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown lift kind {args.kind!r}")
    _emit(args, lambda: _siegel_text(ss), ss.to_dict())
    return EXIT_OK


def cmd_verify(args):
    from .verify import run_suite

    report = run_suite(args.suite, qmax=args.qmax_opt)

    def text():
        lines = []

        def render(rep):
            if "suites" in rep:
                for sub in rep["suites"]:
                    render(sub)
            else:
                for c in rep["checks"]:
                    lines.append(f"{'ok  ' if c['ok'] else 'FAIL'} [{rep['suite']}] {c['name']}")
        render(report)
        lines.append(f"suite {report['suite']}: {'ok' if report['ok'] else 'FAIL'}")
        return "\n".join(lines)

    _emit(args, text, report)
    return EXIT_OK if report["ok"] else EXIT_IDENTITY


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jacobilift",
        description="Exact expansions of weak Jacobi forms, Calabi-Yau "
        "elliptic genera and their Siegel paramodular lifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, smax=False, pmax=False):
        p.add_argument("--qmax", type=int, default=3,
                       help="whole q-orders to compute")
        if smax:
            p.add_argument("--smax", type=int, default=3,
                           help="whole s-orders to compute")
        if pmax:
            p.add_argument("--pmax", type=int, default=None,
                           help="whole p-orders for the symmetric-product genus")
        p.add_argument("--json", action="store_true",
                       help="emit machine-readable JSON")
        p.add_argument("--out", default=None, help="write output to a file")

    p = sub.add_parser("expand", help="expand a weak Jacobi form")
    p.add_argument("form", help="name (phi01..phi04, xi06) or Phi-polynomial"
                   " such as 'Phi1*Phi3-Phi2^2'")
    common(p)
    p.set_defaults(fn=cmd_expand)

    p = sub.add_parser("genus", help="elliptic genus of Calabi-Yau data")
    p.add_argument("--d", type=int, required=True, help="complex dimension")
    p.add_argument("--chi", default=None, help="comma-separated chi_0..chi_d")
    p.add_argument("--euler", type=int, default=None,
                   help="Euler number (d = 3 or 5)")
    common(p)
    p.set_defaults(fn=cmd_genus)

    p = sub.add_parser("lift", help="Siegel lifts and related series")
    p.add_argument("kind", choices=("explift", "sqeg", "eform", "arith"))
    p.add_argument("--form", default=None, help="lift input (explift)")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--chi", default=None)
    p.add_argument("--euler", type=int, default=None)
    p.add_argument("--name", default=None, help="Delta2 or Delta1 (arith)")
    p.add_argument("--bound", type=int, default=None,
                   help="whole q- and s-orders (arith)")
    p.add_argument("--ywindow", type=int, default=None,
                   help="truncate y-support to |l| <= ywindow/4 during products")
    common(p, smax=True, pmax=True)
    p.set_defaults(fn=cmd_lift)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=("ring", "basis", "hecke", "congruences",
                                     "lifts", "all"))
    p.add_argument("--qmax", type=int, default=None, dest="qmax_opt",
                   help="override the suite's q-order window")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PrecisionError as exc:
        print(f"precision error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except InexactDivisionError as exc:
        print(f"identity failure: {exc}", file=sys.stderr)
        return EXIT_IDENTITY
    except (ValidationError, JacobiLiftError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
