"""Command line interface.

Exit codes: 0 success, 1 the input fails a check (or is rejected as
invalid), 2 the file cannot be read or has the wrong shape, 3 internal error.
"""

import argparse
import json
import sys

import numpy as np

from . import dsl
from .algebra_file import load_algebra
from .cobordism import evaluate, normal_form
from .errors import AlgebraFileError, AxiomViolation, IncompatiblePair, TQFTError
from .frobenius import (
    closed_surface,
    counit_law_residual,
    frobenius_residual,
    handle_operator,
    snake_residual,
    verify_axioms,
)
from .hermitian import adjoint_residual, build_involution, extract_real_form
from .linalg import DEFAULT_TOL, max_norm
from .unitary import classify, cstar_check, handle_spectrum

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_INTERNAL = 0, 1, 2, 3


class Formatter:
    def __init__(self, digits=12):
        self.digits = digits

    def real(self, x):
        return float(f"{float(x):.{self.digits}g}") + 0.0

    def cplx(self, z):
        z = complex(z)
        return [self.real(z.real), self.real(z.imag)]

    def array(self, arr, complex_=True):
        arr = np.asarray(arr)
        if arr.ndim == 0:
            return self.cplx(arr) if complex_ else self.real(arr.real)
        return [self.array(x, complex_) for x in arr]

    def entry(self, pair):
        re, im = pair
        if im == 0:
            return f"{re:.{self.digits}g}"
        return f"{re:.{self.digits}g}{im:+.{self.digits}g}i"

    def text(self, x):
        if isinstance(x, float):
            return f"{x:.{self.digits}g}"
        if isinstance(x, list):
            return "[" + ", ".join(self.text(v) for v in x) + "]"
        return str(x)


def _report(command, passed, residuals, data):
    return {"command": command, "pass": bool(passed), "residuals": residuals, "data": data}


class MissingHermitian(TQFTError):
    pass


def _hermitian_or_fail(h):
    if h is None:
        raise MissingHermitian("the algebra file has no 'hermitian' matrix")
    return h


def cmd_check(args, fmt):
    a, _ = load_algebra(args.file, tol=args.tol, validate=False)
    rep = verify_axioms(a, args.tol)
    res = {k: fmt.real(v) for k, v in rep.residuals.items()}
    data = {"dimension": a.dim, "axioms": dict(rep.passed)}
    if rep.ok:
        res["snake"] = fmt.real(snake_residual(a))
        res["frobenius_relation"] = fmt.real(frobenius_residual(a))
        res["counit_law"] = fmt.real(counit_law_residual(a))
    return _report("check", rep.ok, res, data)


def cmd_hermitian(args, fmt):
    a, h = load_algebra(args.file, tol=args.tol)
    h = _hermitian_or_fail(h)
    rep = build_involution(a, h, tol=args.tol, strict=False)
    data = {
        "checks": dict(rep.passed),
        "signature": list(rep.signature),
        "positive_definite": h.is_positive_definite(args.tol),
        "involution": fmt.array(rep.involution.mat),
    }
    res = {k: fmt.real(v) for k, v in rep.residuals.items()}
    if rep.ok:
        rf = extract_real_form(a, rep.involution, tol=args.tol)
        data["real_form"] = {
            "basis": fmt.array(rf.basis.T),
            "mul": fmt.array(rf.mul, complex_=False),
            "unit": fmt.array(rf.unit, complex_=False),
            "counit": fmt.array(rf.counit, complex_=False),
        }
        res.update({f"real_form_{k}": fmt.real(v) for k, v in rf.residuals.items()})
    return _report("hermitian", rep.ok, res, data)


def cmd_classify(args, fmt):
    a, h = load_algebra(args.file, tol=args.tol)
    h = _hermitian_or_fail(h)
    c = classify(a, h, tol=args.tol, seed=args.seed)
    spectrum = handle_spectrum(c)
    eig = np.sort(np.linalg.eigvals(handle_operator(a)).real)
    res = {k: fmt.real(v) for k, v in c.residuals.items()}
    res["handle_spectrum"] = fmt.real(max_norm(np.sort(spectrum) - eig) / np.max(spectrum))
    cs = cstar_check(a, h, samples=args.samples, seed=args.seed, tol=args.tol, classification=c)
    res["cstar_norm_identity"] = fmt.real(cs.norm_identity_deviation)
    res["cstar_positivity_formula"] = fmt.real(cs.positivity_formula_deviation)
    data = {
        "weights": [fmt.real(w) for w in c.weights],
        "spectrum": [fmt.real(x) for x in spectrum],
        "idempotents": fmt.array(c.idempotents.T),
        "cstar": {"samples": cs.samples, "positivity_min": fmt.real(cs.positivity_min), "pass": cs.ok},
    }
    return _report("classify", cs.ok, res, data)


def cmd_eval(args, fmt):
    a, _ = load_algebra(args.file, tol=args.tol)
    expr = dsl.parse(args.expr)
    cob = dsl.to_cobordism(expr)
    z = evaluate(a, cob)
    direct = dsl.evaluate_direct(a, expr)
    scale = max(max_norm(direct), 1.0)
    res = {"generator_composition": fmt.real(max_norm(z - direct) / scale)}
    _, _, comps = normal_form(cob)
    data = {
        "expression": dsl.pretty(expr),
        "arity": [cob.n_in, cob.n_out],
        "components": [list(c.shape) for c in comps],
        "matrix": fmt.array(z),
    }
    return _report("eval", res["generator_composition"] <= args.tol, res, data)


def cmd_surface(args, fmt):
    a, _ = load_algebra(args.file, tol=args.tol)
    if args.genus < 0:
        raise TQFTError("genus must be non-negative")
    value = closed_surface(a, args.genus)
    return _report("surface", True, {}, {"genus": args.genus, "value": fmt.cplx(value)})


def cmd_adjoint(args, fmt):
    a, h = load_algebra(args.file, tol=args.tol)
    h = _hermitian_or_fail(h)
    expr = dsl.parse(args.expr)
    cob = dsl.to_cobordism(expr)
    r = adjoint_residual(a, h, cob)
    data = {"expression": dsl.pretty(expr), "arity": [cob.n_in, cob.n_out]}
    return _report("adjoint", r <= args.tol, {"adjoint": fmt.real(r)}, data)


def _common_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOL), help="relative tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for randomized steps")
    parser.add_argument("--json", action="store_true", default=default(False), help="machine-readable report")
    parser.add_argument("--quiet", action="store_true", default=default(False), help="print nothing to stdout")
    parser.add_argument("--precision", type=int, default=default(12), help="significant digits in reports")


def build_parser():
    parser = argparse.ArgumentParser(prog="tqft2d", description="2D TQFTs as commutative Frobenius algebras")
    _common_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, expr=False):
        p = sub.add_parser(name, help=help_)
        _common_flags(p, suppress=True)
        p.add_argument("file", help="algebra JSON file")
        if expr:
            p.add_argument("-e", "--expr", required=True, help="cobordism expression")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "Frobenius axiom report")
    add("hermitian", cmd_hermitian, "involution checks and real form")
    p = add("classify", cmd_classify, "idempotent weights and handle spectrum of unitary data")
    p.add_argument("--samples", type=int, default=1000, help="random samples for the C*-identity check")
    add("eval", cmd_eval, "matrix of a cobordism expression", expr=True)
    p = add("surface", cmd_surface, "closed surface invariant")
    p.add_argument("-g", "--genus", type=int, required=True)
    add("adjoint", cmd_adjoint, "adjoint residual of an expression", expr=True)
    return parser


def _print_text(report, fmt, out):
    status = "PASS" if report["pass"] else "FAIL"
    print(f"{report['command']}: {status}", file=out)
    for k, v in report["residuals"].items():
        print(f"  residual {k}: {fmt.text(v)}", file=out)
    _print_data(report["data"], fmt, out, "  ")


# keys holding complex data as [re, im] pairs; a real 2-vector looks the same, hence the explicit lists
_COMPLEX_MATRICES = {"matrix", "involution", "idempotents", "basis"}
_COMPLEX_SCALARS = {"value"}


def _print_data(data, fmt, out, indent):
    for k, v in data.items():
        if k in _COMPLEX_MATRICES:
            print(f"{indent}{k}:", file=out)
            for row in v:
                print(f"{indent}  " + "  ".join(fmt.entry(x) for x in row), file=out)
        elif k in _COMPLEX_SCALARS:
            print(f"{indent}{k}: {fmt.entry(v)}", file=out)
        elif isinstance(v, dict) and k != "checks":
            print(f"{indent}{k}:", file=out)
            _print_data(v, fmt, out, indent + "  ")
        else:
            print(f"{indent}{k}: {fmt.text(v) if not isinstance(v, dict) else json.dumps(v)}", file=out)


def _diag(msg):
    print(f"tqft2d: {msg}", file=sys.stderr)


def main(argv=None):
    args = build_parser().parse_args(argv)
    fmt = Formatter(args.precision)
    code = EXIT_OK
    try:
        report = args.func(args, fmt)
        if not report["pass"]:
            code = EXIT_VALIDATION
    except (OSError, AlgebraFileError) as exc:
        _diag(exc)
        report, code = _report(args.command, False, {}, {"error": str(exc)}), EXIT_IO
    except (AxiomViolation, IncompatiblePair) as exc:
        _diag(exc)
        data = {"error": str(exc), "checks": dict(exc.report.passed)}
        res = {k: fmt.real(v) for k, v in exc.report.residuals.items()}
        report, code = _report(args.command, False, res, data), EXIT_VALIDATION
    except TQFTError as exc:
        _diag(exc)
        report = _report(args.command, False, {}, {"error": f"{type(exc).__name__}: {exc}"})
        code = EXIT_VALIDATION
    except Exception as exc:  # noqa: BLE001
        _diag(f"internal error: {exc!r}")
        report, code = _report(args.command, False, {}, {"error": repr(exc)}), EXIT_INTERNAL

    if not args.quiet:
        if args.json:
            sys.stdout.write(json.dumps(report, indent=2) + "\n")
        else:
            _print_text(report, fmt, sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
