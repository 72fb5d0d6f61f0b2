"""Command-line front end.

Every command prints one JSON document (``--format structured``, the
default) or an indented key/value rendering (``--format pretty``).  ``sweep``
writes one JSON record per line to ``--out`` and prints a summary document.

Exit codes: 0 verdict produced, 1 malformed input, 2 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .cartan import (
    BoundaryTriple,
    cartan_invariant,
    circle_residual,
    decompose_generators,
    mu_from_nu,
)
from .freeness import (
    GENERATOR_A,
    NU_SQUARED_BOUND,
    TAG_CIRCLE,
    VerdictKind,
    check_free_lu,
    check_free_main,
    check_free_quat,
    check_free_vertical_quat,
    flawed_prior_bound,
    flawed_prior_condition,
    generator_b,
    generator_pair,
    identity_word_search,
    is_projective_identity,
    threshold_equivalence,
    threshold_from_nu_squared,
    trace_ab,
    word_evaluate,
)
from .heisenberg import heis_mul, heis_translation_matrix, parse_heis_point
from .hermitian import EXACT, QUATERNION, Matrix3, Vector3, format_matrix, format_vector
from .scalars import (
    DEFAULT_TOL,
    ExactComplex,
    ExactScalar,
    ImaginaryQuat,
    ParseError,
    Quaternion,
    format_complex,
    format_quaternion,
    format_scalar,
    parse_complex,
    parse_imaginary_quat,
    parse_quaternion,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INTERNAL = 2

SWEEP_RECORD_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["nu", "nu_squared", "mu", "mu_abs2", "verdict", "certificate",
                 "tangent", "diagnostics"],
    "additionalProperties": False,
    "properties": {
        "nu": {"type": "string"},
        "nu_squared": {"type": "string"},
        "mu": {"type": "string"},
        "mu_abs2": {"type": "string"},
        "verdict": {"enum": [k.value for k in VerdictKind]},
        "certificate": {"type": "string"},
        "tangent": {
            "type": "object",
            "required": ["im", "re", "tan"],
            "additionalProperties": False,
            "properties": {
                "im": {"type": "string"},
                "re": {"type": "string"},
                "tan": {"type": "string"},
            },
        },
        "diagnostics": {
            "type": "object",
            "required": ["angle_rad"],
            "properties": {
                "angle_rad": {
                    "type": "object",
                    "required": ["value", "tol"],
                    "properties": {"value": {"type": "number"}, "tol": {"type": "number"}},
                },
            },
        },
    },
}


class InvariantViolation(RuntimeError):
    pass


def _floating(value: float, tol: float) -> dict:
    return {"value": value, "tol": tol}


def _jsonable(x):
    if isinstance(x, (ExactScalar,)):
        return format_scalar(x)
    if isinstance(x, ExactComplex):
        return format_complex(x)
    if isinstance(x, Quaternion):
        return format_quaternion(x)
    if isinstance(x, ImaginaryQuat):
        return format_quaternion(x.to_quaternion())
    if isinstance(x, (Matrix3,)):
        return format_matrix(x)
    if isinstance(x, Vector3):
        return format_vector(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _report(command, inputs, verdict, certificate, diagnostics, exact=True) -> dict:
    return {
        "command": command,
        "input": inputs,
        "verdict": verdict,
        "certificate": certificate,
        "diagnostics": _jsonable(diagnostics),
        "exactness": "exact" if exact else "floating",
    }


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


# --- commands -----------------------------------------------------------

def cmd_check(mu: str, path: str = "complex", search_depth: int = 0, tol: float = DEFAULT_TOL,
              workers: int = 1) -> dict:
    inputs = {"mu": mu, "path": path, "depth": search_depth}
    if path == "quaternion":
        if search_depth > 0:
            raise ParseError("exact word search is not available on the quaternion path; "
                             "use --depth 0")
        q = parse_quaternion(mu)
        v = check_free_quat(q, tol)
        diag = {
            "tau": v.details["tau"],
            "conjugator": v.details["conjugator"],
            "circle_residual": _floating(v.details["circle_residual"], tol),
            "mu_abs2": _floating(q.abs2(), tol),
            "trace_ab": _floating(trace_ab(q), tol),
        }
        return _report("check", inputs, v.kind.value, str(v.certificate), diag, exact=False)
    z = parse_complex(mu)
    v = check_free_main(z, search_depth=search_depth, workers=workers)
    diag = dict(v.details)
    certificate = str(v.certificate)
    if v.kind is VerdictKind.NON_FREE_WITNESS:
        if not is_projective_identity(word_evaluate(generator_pair(z), v.certificate)):
            raise InvariantViolation("witness word does not evaluate to a projective identity")
        diag["witness_pretty"] = v.certificate.pretty()
    return _report("check", inputs, v.kind.value, certificate, diag)


def cmd_cartan(nu: str | None = None, nu_squared: str | None = None,
               tol: float = DEFAULT_TOL) -> dict:
    if (nu is None) == (nu_squared is None):
        raise ParseError("give exactly one of --nu or --nu-squared")
    if nu_squared is not None:
        nu2 = _parse_rational(nu_squared)
        rep = threshold_from_nu_squared(nu2)
        kind = VerdictKind.CERTIFIED_FREE if rep.condition_holds else VerdictKind.NOT_COVERED
        diag = {
            "nu_squared": rep.nu_squared,
            "mu_abs2": rep.mu_squared,
            "nu_squared_bound": NU_SQUARED_BOUND,
            "nu_bound_holds": rep.nu_bound_holds,
            "mu_bound_holds": rep.condition_holds,
            "bound_equality": rep.nu_squared == NU_SQUARED_BOUND,
        }
        cert = TAG_CIRCLE if rep.condition_holds else f"|mu|^2 = {rep.mu_squared} < 3/128"
        return _report("cartan", {"nu_squared": nu_squared}, kind.value, cert, diag)

    x = _parse_rational(nu)
    mu = mu_from_nu(x)
    dec = decompose_generators(mu)
    inv = cartan_invariant(BoundaryTriple.standard(x))
    im, re = inv.tangent_pair
    rep = threshold_equivalence(x)
    if rep.condition_holds != rep.nu_bound_holds:
        raise InvariantViolation("threshold forms disagree")
    verdict = check_free_main(mu)
    diag = {
        "mu": mu,
        "mu_abs2": mu.abs2(),
        "tangent": {"im": im, "re": re, "tan": inv.tangent},
        "angle_rad": _floating(inv.angle, tol),
        "nu_squared": rep.nu_squared,
        "nu_squared_bound": NU_SQUARED_BOUND,
        "nu_bound_holds": rep.nu_bound_holds,
        "mu_bound_holds": rep.condition_holds,
        "A_equals_i0_i2": dec.i0 * dec.i2 == GENERATOR_A,
        "B_equals_i2_i1": dec.i2 * dec.i1 == generator_b(mu),
        "i0": dec.i0,
        "i1": dec.i1,
        "i2": dec.i2,
    }
    return _report("cartan", {"nu": nu}, verdict.kind.value, str(verdict.certificate), diag)


REFUTATION_MU = Fraction(-3, 4)


def cmd_refute(tol: float = DEFAULT_TOL, workers: int = 1) -> dict:
    mu = ExactComplex(REFUTATION_MU)
    pair = generator_pair(mu)
    ab = pair.A * pair.B
    cube = ab ** 3
    lam = cube.scalar_multiple_of_identity()
    order = next((k for k in (1, 2, 3) if is_projective_identity(ab ** k)), None)
    if order != 3 or lam is None:
        raise InvariantViolation("AB does not have projective order 3 at mu = -3/4")
    word = identity_word_search(pair, 6, workers=workers)
    if word is None:
        raise InvariantViolation("no identity word found at depth 6")
    diag = {
        "flawed_condition": flawed_prior_condition(mu),
        "flawed_bound": _floating(flawed_prior_bound(), tol),
        "mu_abs": _floating(math.sqrt(float(mu.abs2())), tol),
        "circle_residual": circle_residual(mu),
        "AB": ab,
        "trace_ab": trace_ab(mu),
        "trace_literal": ab.trace(),
        "AB_cubed_scalar": lam,
        "order": order,
        "witness": str(word),
    }
    return _report("refute", {"mu": format_scalar(ExactScalar(REFUTATION_MU))},
                   VerdictKind.NON_FREE_WITNESS.value, str(word), diag)


def sweep_records(nu_min: Fraction, nu_max: Fraction, steps: int, tol: float = DEFAULT_TOL):
    if steps < 1:
        raise ParseError("steps must be at least 1")
    if nu_min > nu_max:
        raise ParseError("nu_min must not exceed nu_max")
    for k in range(steps):
        nu = nu_min if steps == 1 else nu_min + (nu_max - nu_min) * k / (steps - 1)
        mu = mu_from_nu(nu)
        inv = cartan_invariant(BoundaryTriple.standard(nu))
        im, re = inv.tangent_pair
        v = check_free_main(mu)
        yield {
            "nu": str(nu),
            "nu_squared": str(nu * nu),
            "mu": format_complex(mu),
            "mu_abs2": format_scalar(mu.abs2()),
            "verdict": v.kind.value,
            "certificate": str(v.certificate),
            "tangent": {"im": format_scalar(im), "re": format_scalar(re),
                        "tan": format_scalar(inv.tangent)},
            "diagnostics": {"angle_rad": _floating(inv.angle, tol)},
        }


def cmd_sweep(nu_min: str, nu_max: str, steps: int, out: str, tol: float = DEFAULT_TOL) -> dict:
    lo, hi = _parse_rational(nu_min), _parse_rational(nu_max)
    records = list(sweep_records(lo, hi, steps, tol))
    with open(out, "w", encoding="utf-8") as fh:
        for r in records:
            fh.write(json.dumps(r, sort_keys=True) + "\n")
    counts = {}
    for r in records:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return {
        "command": "sweep",
        "input": {"nu_min": nu_min, "nu_max": nu_max, "steps": steps, "out": out},
        "records": len(records),
        "verdict_counts": counts,
        "exactness": "exact",
    }


def cmd_heis(p: str, q: str, path: str = "complex", tol: float = DEFAULT_TOL) -> dict:
    kpath = QUATERNION if path == "quaternion" else EXACT
    a, b = parse_heis_point(p, kpath), parse_heis_point(q, kpath)
    prod = heis_mul(a, b)
    lhs = heis_translation_matrix(prod)
    rhs = heis_translation_matrix(a) * heis_translation_matrix(b)
    consistent = lhs == rhs if kpath == EXACT else lhs.isclose(rhs, tol)
    if not consistent:
        raise InvariantViolation("translation matrices do not respect the group law")
    diag = {"product": str(prod), "matrix": lhs, "homomorphism_check": consistent}
    if kpath == QUATERNION:
        diag["tol"] = tol
    return {
        "command": "heis",
        "input": {"p": p, "q": q, "path": path},
        "result": str(prod),
        "diagnostics": _jsonable(diag),
        "exactness": "exact" if kpath == EXACT else "floating",
    }


def cmd_lu(m: str, n: str) -> dict:
    v = check_free_lu(parse_complex(m), parse_complex(n))
    return _report("lu", {"m": m, "n": n}, v.kind.value, str(v.certificate), v.details)


def cmd_vquat(tau: str, tol: float = DEFAULT_TOL) -> dict:
    t = parse_imaginary_quat(tau)
    if t.is_zero():
        raise ParseError("tau must be nonzero")
    v = check_free_vertical_quat(t, tol)
    d = v.details
    diag = {
        "tau_norm": _floating(t.norm(), tol),
        "alpha": d["alpha"],
        "conjugated_tau": d["conjugated_tau"],
        "conjugation_residual": _floating(d["residual"], 1e-9),
        "A_conj": d["A_conj"],
        "B_conj": d["B_conj"],
    }
    return _report("vquat", {"tau": tau}, v.kind.value, str(v.certificate), diag, exact=False)


# --- argument parsing ---------------------------------------------------

def _render_pretty(doc, indent=0) -> str:
    lines = []
    pad = "  " * indent
    for k, v in doc.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines.append(_render_pretty(v, indent + 1))
        else:
            lines.append(f"{pad}{k}: {v}")
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--depth", type=int, default=0, help="word search depth")
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="float tolerance")
    common.add_argument("--format", choices=("structured", "pretty"), default="structured")
    common.add_argument("--workers", type=int, default=1)

    parser = _Parser(prog="heisfree", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="freeness verdict for mu")
    p.add_argument("--mu", required=True)
    p.add_argument("--path", choices=("complex", "quaternion"), default="complex")

    p = sub.add_parser("cartan", parents=[common], help="decomposition and angular invariant")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--nu")
    g.add_argument("--nu-squared", dest="nu_squared")

    sub.add_parser("refute", parents=[common], help="the mu = -3/4 counterexample")

    p = sub.add_parser("sweep", parents=[common], help="batch records along the circle")
    p.add_argument("--nu-min", required=True)
    p.add_argument("--nu-max", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("heis", parents=[common], help="Heisenberg group law")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--path", choices=("complex", "quaternion"), default="complex")

    p = sub.add_parser("lu", parents=[common], help="Lyndon-Ullman condition |mn| >= 4")
    p.add_argument("--m", required=True)
    p.add_argument("--n", required=True)

    p = sub.add_parser("vquat", parents=[common], help="vertical quaternionic pair, |tau| >= 2")
    p.add_argument("--tau", required=True)
    return parser


def run(args) -> dict:
    if args.command == "check":
        return cmd_check(args.mu, args.path, args.depth, args.tol, args.workers)
    if args.command == "cartan":
        return cmd_cartan(args.nu, args.nu_squared, args.tol)
    if args.command == "refute":
        return cmd_refute(args.tol, args.workers)
    if args.command == "sweep":
        return cmd_sweep(args.nu_min, args.nu_max, args.steps, args.out, args.tol)
    if args.command == "heis":
        return cmd_heis(args.p, args.q, args.path, args.tol)
    if args.command == "lu":
        return cmd_lu(args.m, args.n)
    if args.command == "vquat":
        return cmd_vquat(args.tau, args.tol)
    raise AssertionError(args.command)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = run(args)
    except (InvariantViolation, ArithmeticError) as exc:
        print(json.dumps({"error": "internal", "message": str(exc)}), file=sys.stderr)
        return EXIT_INTERNAL
    except OSError as exc:
        print(json.dumps({"error": "io", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, TypeError) as exc:
        print(json.dumps({"error": "input", "message": str(exc)}), file=sys.stderr)
        return EXIT_INPUT
    if args.format == "pretty":
        print(_render_pretty(doc))
    else:
        print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
