"""Command-line interface: ``hilb <command> ...`` with JSON on stdout.

Exit codes: 0 success, 1 domain error, 2 usage error (bad flags, unreadable
input, malformed polynomials).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from . import verify
from .ampleness import collinear_support, h0_ideal_twist, kva_criterion, phi1_fiber, phi_map
from .betacurves import build_pencil, decompose_global, recognize
from .binform import (
    BinaryForm,
    FormPencil,
    embed_member,
    generic_probe,
    pencil_B_degree,
    pencil_class,
    pencil_D_degree,
)
from .divisors import (
    CurveClass,
    DivisorClass,
    degree1_classes,
    effective_coordinates,
    effective_generators,
    is_effective_curve,
    is_nef,
    nef_generators,
    pair,
    very_ample_class,
)
from .idealspace import IdealSubspace, min_generators, parse_ideal, socle
from .pluecker import pluecker_coords
from .polyparse import PolynomialSyntaxError
from .randgen import DEFAULT_SEED
from .scheme import HomogeneousForm, PointedScheme

SEED_ENV = "HILB_SEED"


class UsageError(Exception):
    pass


def _rows_json(rows) -> list[list[str]]:
    return [[str(x) for x in r] for r in rows]


def _ideal_json(I: IdealSubspace) -> dict:
    return {"N": I.ctx.N, "generators": I.generator_strings()}


def _split_gens(text: str) -> list[str]:
    return [g for g in (t.strip() for t in text.split(",")) if g]


def _load_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}") from exc


def _ideal_from_json(data) -> IdealSubspace:
    return parse_ideal(int(data["N"]), list(data.get("generators", [])))


def _ideal_arg(args) -> IdealSubspace:
    if args.ideal:
        return _ideal_from_json(_load_json(args.ideal))
    if args.N is None:
        raise UsageError("give --N and --gens, or --ideal FILE")
    return parse_ideal(args.N, _split_gens(args.gens or ""))


def _samples(data) -> list:
    return data["samples"] if isinstance(data, dict) else data


def _scheme_arg(path: str) -> PointedScheme:
    return PointedScheme.from_json(_load_json(path))


# commands ------------------------------------------------------------------------

def cmd_ideal(args) -> dict:
    I = _ideal_arg(args)
    if args.action == "colength":
        return {"colength": I.colength}
    if I.is_unit:
        return {"unit": True}
    if args.action == "socle":
        s = socle(I)
        return {"socle_dim": len(s), "socle": [str(f) for f in s]}
    if args.action == "mingens":
        return {"min_generators": min_generators(I)}
    out = _ideal_json(I)
    out.update({"colength": I.colength, "rows": _rows_json(I.rows), "socle_dim": len(socle(I))})
    return out


def cmd_pluecker(args) -> dict:
    I = _ideal_arg(args)
    if I.rank == 0:
        raise ValueError("the zero subspace has no Plücker coordinates")
    return pluecker_coords(I.rows, I.ctx.dim).to_json()


def cmd_betacurve(args) -> dict:
    if args.action == "build":
        if args.n is None or args.eta is None or args.f is None or args.g is None:
            raise UsageError("betacurve build needs --n, --eta, --f and --g")
        # parse one degree higher so that a missing m^n is visible
        eta = parse_ideal(args.n + 1, _split_gens(args.eta))
        ctx = eta.ctx
        p = build_pencil(eta, ctx.parse(args.f), ctx.parse(args.g))
        if p.n != args.n:
            raise ValueError(f"eta has colength {p.eta.colength}, so n = {p.n}, not {args.n}")
        members = [p.member(1, 0), p.member(0, 1), p.member(1, 1)]
        return {
            "n": p.n,
            "eta": _ideal_json(p.eta),
            "f": str(p.f),
            "g": str(p.g),
            "members": [_ideal_json(J) for J in members],
        }
    if args.samples is None:
        raise UsageError(f"betacurve {args.action} needs --samples FILE")
    data = _samples(_load_json(args.samples))
    if args.action == "recognize":
        rec = recognize([_ideal_from_json(d) for d in data])
        return {
            "result": "beta_n",
            "n": rec.pencil.n,
            "eta": _ideal_json(rec.eta),
            "common": _rows_json(rec.common),
            "span": _rows_json(rec.span),
        }
    d = decompose_global([PointedScheme.from_json(s) for s in data])
    return {"result": "beta_n", **d.to_json()}


def cmd_cone(args) -> dict:
    n = args.n
    if args.action == "deg1":
        return {"classes": [c.to_json() for c in degree1_classes(n)]}
    if args.action == "generators":
        return {
            "nef": [str(D) for D in nef_generators(n)],
            "effective": [str(c) for c in effective_generators(n)],
        }
    if args.action == "nef":
        if args.divisor is None:
            raise UsageError("cone nef needs --divisor")
        D = DivisorClass.parse(n, args.divisor)
        return {
            "divisor": str(D),
            "nef": is_nef(D),
            "pairings": [str(pair(D, c)) for c in effective_generators(n)],
        }
    c = CurveClass(n, Fraction(args.a), Fraction(args.b))
    if args.action == "effective":
        x, y = effective_coordinates(c)
        return {"curve": str(c), "effective": is_effective_curve(c), "coordinates": [str(x), str(y)]}
    # pair
    D = DivisorClass.parse(n, args.divisor) if args.divisor else very_ample_class(n)
    return {"divisor": str(D), "curve": str(c), "pairing": str(pair(D, c))}


def cmd_kva(args) -> dict:
    return kva_criterion(args.a, args.k).to_json()


def cmd_h0(args) -> dict:
    return h0_ideal_twist(_scheme_arg(args.scheme), args.degree).to_json()


def cmd_phi(args) -> dict:
    xi = _scheme_arg(args.scheme)
    degree = xi.length - 1 if args.degree is None else args.degree
    return phi_map(xi, degree).to_json()


def cmd_phi1_fiber(args) -> dict:
    return phi1_fiber(_scheme_arg(args.scheme)).to_json()


def cmd_collinear(args) -> dict:
    schemes = [_scheme_arg(p) for p in args.scheme]
    line = collinear_support(schemes)
    return {"line": None if line is None else str(line)}


def _form_pencil(args) -> FormPencil:
    F = BinaryForm.parse(args.F, args.n)
    G = BinaryForm.parse(args.G, args.n)
    return FormPencil.on_line(F, G, HomogeneousForm.parse(args.line, 1), allow_base_points=True)


def cmd_binform(args) -> dict:
    p = _form_pencil(args)
    if args.action == "embed":
        return embed_member(p, Fraction(args.lam), Fraction(args.mu)).to_json()
    probe = [Fraction(x) for x in args.probe.split(",")] if args.probe else generic_probe(p)
    c = pencil_class(p, probe)
    out = p.to_json()
    out.update({
        "coprime": p.coprime,
        "probe": [str(x) for x in probe],
        "D_degree": pencil_D_degree(p, probe),
        "B_degree": pencil_B_degree(p),
        "class": c.to_json(),
        "degree": str(pair(very_ample_class(p.n), c)),
    })
    return out


def cmd_verify(args) -> tuple[dict, int]:
    seed = args.seed if args.seed is not None else int(os.environ.get(SEED_ENV, DEFAULT_SEED))
    names = list(verify.SUITES) if args.suite == "all" else [args.suite]
    if any(n not in verify.SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)} or all")
    reports = [verify.run_suite(name, args.n, args.trials, seed) for name in names]
    timings = not args.no_timings
    ok = all(r.passed for r in reports)
    if len(reports) == 1:
        body = reports[0].to_json(timings)
    else:
        body = {"pass": ok, "seed": seed, "suites": [r.to_json(timings) for r in reports]}
    return body, 0 if ok else 1


# parser ----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hilb", description="Exact computations on Hilbert schemes of points of P^2.")
    sub = ap.add_subparsers(dest="command", required=True)

    def ideal_flags(p):
        p.add_argument("--N", type=int, help="truncation order")
        p.add_argument("--gens", help="comma-separated generators, e.g. 'u^2,u*v,v^2'")
        p.add_argument("--ideal", help="JSON file {\"N\":..,\"generators\":[..]}")

    p = sub.add_parser("ideal", help="colength, socle, minimal generators")
    p.add_argument("action", choices=["colength", "socle", "mingens", "show"])
    ideal_flags(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("pluecker", help="Plücker coordinates of an ideal in R/m^N")
    ideal_flags(p)
    p.set_defaults(func=cmd_pluecker)

    p = sub.add_parser("betacurve", help="build, recognize or decompose beta_n curves")
    p.add_argument("action", choices=["build", "recognize", "decompose"])
    p.add_argument("--n", type=int)
    p.add_argument("--eta", help="comma-separated generators of eta")
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--samples", help="JSON file with sample ideals or schemes")
    p.set_defaults(func=cmd_betacurve)

    p = sub.add_parser("cone", help="nef/effective cones and pairings")
    p.add_argument("action", choices=["nef", "effective", "deg1", "pair", "generators"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--divisor", help="e.g. '3*D - 1/2*B'")
    p.add_argument("--a", default="0", help="beta_l coefficient of a curve class")
    p.add_argument("--b", default="0", help="beta_n coefficient of a curve class")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("kva", help="k-very-ampleness criterion for O(a)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_kva)

    p = sub.add_parser("h0", help="degree-m forms through a scheme")
    p.add_argument("--scheme", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=cmd_h0)

    p = sub.add_parser("phi", help="Plücker image of a scheme under the degree-m map")
    p.add_argument("--scheme", required=True)
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("phi1-fiber", help="fibre type of the degree-(n-1) map")
    p.add_argument("--scheme", required=True)
    p.set_defaults(func=cmd_phi1_fiber)

    p = sub.add_parser("collinear", help="the unique line containing the schemes")
    p.add_argument("--scheme", action="append", required=True)
    p.set_defaults(func=cmd_collinear)

    p = sub.add_parser("binform", help="pencils of binary forms on a line")
    p.add_argument("action", choices=["class", "embed"])
    p.add_argument("--n", type=int)
    p.add_argument("--F", required=True)
    p.add_argument("--G", required=True)
    p.add_argument("--line", required=True)
    p.add_argument("--probe", help="probe point on the line, 'x0,x1,x2' or 'U,V'")
    p.add_argument("--lam", default="1")
    p.add_argument("--mu", default="0")
    p.set_defaults(func=cmd_binform)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", help=f"one of {', '.join(verify.SUITES)}, or all")
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, help=f"defaults to ${SEED_ENV} or {DEFAULT_SEED}")
    p.add_argument("--no-timings", action="store_true", help="omit timings for byte-identical reports")
    p.set_defaults(func=cmd_verify)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (UsageError, PolynomialSyntaxError) as exc:
        print(f"hilb: usage error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, KeyError) as exc:
        print(f"hilb: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    print(json.dumps(result))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
