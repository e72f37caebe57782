"""Command-line driver: one subcommand per experiment, JSON or CSV output.

Exit status is 0 on success (including findings that contradict a
conjecture, which are report content), 2 on usage or parameter errors and 3
on numerical failures, with a diagnostic JSON object on stdout.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import counterexample as cx
from . import invertibility as inv
from . import predicates as pr
from . import spectral as sp
from . import splines as spl
from . import toeplitz as tp
from .core import load_matrix
from .exceptions import ArgumentError, CapabilityError, NumericalError, StructmatError
from .reports import scalar_to_json

SEED_ENV = "STRUCTMAT_SEED"
DEFAULT_TOLERANCES = {"minor": pr.DEFAULT_TOL, "day": 1e-8, "winding": 1e-9, "imag": None}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def resolve_seed(seed: int | None) -> int:
    """``--seed`` when given, else ``STRUCTMAT_SEED``, else 0."""
    if seed is not None:
        return seed
    env = os.environ.get(SEED_ENV)
    if env is None or env == "":
        return 0
    try:
        return int(env)
    except ValueError as exc:
        raise ArgumentError(f"{SEED_ENV} must be an integer, got {env!r}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ArgumentError(f"expected comma-separated integers, got {text!r}") from exc


def _complex(text: str) -> complex:
    """``"re"``, ``"re,im"`` or a Python complex literal such as ``"-0.2+0.1j"``."""
    try:
        if "," in text:
            re, im = text.split(",")
            return complex(float(re), float(im))
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise ArgumentError(f"cannot parse {text!r} as a complex number") from exc


def _eig_json(ev) -> list:
    return [[float(z.real), float(z.imag)] for z in ev]


def _param_json(t):
    return str(t) if isinstance(t, Fraction) else t


# --------------------------------------------------------------------------
# subcommands


CLASS_TESTS = {
    "P": lambda A, a: pr.is_p_matrix(A, tol=a.tol_minor),
    "GKK": lambda A, a: pr.is_gkk(A, tol=a.tol_minor),
    "weakly_sign_symmetric": lambda A, a: pr.is_weakly_sign_symmetric(A, tol=a.tol_minor),
    "hadamard_fisher": lambda A, a: pr.hadamard_fisher_check(A, tol=a.tol_minor),
    "sign_symmetric": lambda A, a: pr.is_sign_symmetric(A, tol=a.tol_minor),
    "TP": lambda A, a: pr.is_totally_positive(A, tol=a.tol_minor),
    "TN": lambda A, a: pr.is_totally_nonnegative(A, tol=a.tol_minor),
    "oscillatory": lambda A, a: pr.is_oscillatory(A, tol=a.tol_minor),
    "M": lambda A, a: pr.is_m_matrix(A, tol=a.tol_minor),
    "ultrametric": lambda A, a: pr.is_ultrametric(A, tol=a.tol_minor),
    "strictly_ultrametric": lambda A, a: pr.is_strictly_ultrametric(A, tol=a.tol_minor),
    "checkerboard": lambda A, a: pr.is_checkerboard(A),
    "row_diagonally_dominant": lambda A, a: pr.is_diagonally_dominant(A, "row", tol=a.tol_minor),
    "omega": lambda A, a: sp.is_omega_tau(A, a.mode).omega,
    "tau": lambda A, a: sp.is_omega_tau(A, a.mode).tau,
    "kellogg_wedge": lambda A, a: sp.kellogg_wedge_check(A),
}


def cmd_classify(args):
    A = load_matrix(args.file)
    names = [c.strip() for c in args.classes.split(",") if c.strip()]
    unknown = [c for c in names if c not in CLASS_TESTS]
    if unknown:
        raise ArgumentError(f"unknown classes {unknown}; choose from {sorted(CLASS_TESTS)}")
    return {"reports": [CLASS_TESTS[c](A, args).to_json() for c in names]}


def cmd_counterexample(args):
    if args.limit:
        M = cx.build_limit(args.k)
        out = {"k": args.k, "order": M.order, "limit": True}
    else:
        if args.n is None or args.t is None:
            raise ArgumentError("--n and --t are required unless --limit is given")
        M = cx.build_counterexample(args.n, args.k, args.t)
        out = {"k": args.k, "n": args.n, "t": _param_json(cx.parse_parameter(args.t)), "limit": False}
    out["first_row"] = [scalar_to_json(a) for a in M.first_row]
    if args.minors:
        out["leading_minors"] = [scalar_to_json(d) for d in M.leading_minors()]
    if args.spectrum:
        out["eigenvalues"] = _eig_json(sp.eigenvalues(M.to_array(exact=False)))
    if args.least_real:
        out["least_real_eigenvalue"] = scalar_to_json(sp.min_real_eigenvalue(M.to_array()))
    return out


def cmd_spectrum(args):
    A = load_matrix(args.file)
    report = sp.spectrum_report(A)
    if args.format == "csv":
        return report.to_csv()
    return report.to_json()


def emit_figure_data(k: int, t, orders, outdir: Path, grid_size: int = 1024) -> dict:
    """Write ``curve.csv`` and ``spectrum_n{order}.csv`` files for the counterexample band."""
    t = cx.parse_parameter(t)
    if not 0 < t < 1:
        raise ArgumentError(f"t must lie in (0, 1), got {t}")
    outdir.mkdir(parents=True, exist_ok=True)
    sym = cx.counterexample_symbol(k, t)
    curve = tp.symbol_curve(sym, grid_size)
    files = {"curve": str(outdir / "curve.csv")}
    (outdir / "curve.csv").write_text(curve.to_csv())
    sweep = tp.finite_section_sweep((k, t), orders)
    stats = {}
    for n in sweep.orders:
        name = outdir / f"spectrum_n{n}.csv"
        name.write_text(sweep.order_csv(n))
        files[f"spectrum_n{n}"] = str(name)
        stats[str(n)] = tp.day_gap_statistic(sym, sweep.spectra[n])
    return {"files": files, "median_gap": stats}


def cmd_sweep(args):
    orders = _int_list(args.orders)
    if args.outdir:
        out = emit_figure_data(args.k, args.t, orders, Path(args.outdir), args.grid_size)
        out.update({"k": args.k, "t": _param_json(cx.parse_parameter(args.t)), "orders": orders})
        return out
    sweep = tp.finite_section_sweep((args.k, cx.parse_parameter(args.t)), orders)
    if args.format == "csv":
        return sweep.to_csv()
    sym = cx.counterexample_symbol(args.k, cx.parse_parameter(args.t))
    return {"k": args.k, "t": _param_json(cx.parse_parameter(args.t)), "orders": orders,
            "median_gap": {str(n): tp.day_gap_statistic(sym, sweep.spectra[n]) for n in orders}}


def cmd_hurwitz_cert(args):
    return cx.instability_certificate(args.k).to_json()


def cmd_invertibility(args):
    fam = args.family
    if fam in ("companion", "hilbert"):
        curve = inv.shifted_inverse_family(fam, args.alpha, _int_list(args.orders))
        return curve.to_csv() if args.format == "csv" else {
            "family": curve.family, "alpha": args.alpha,
            "rows": [curve.row(n) for n in curve.orders]}
    if fam == "symbol-product":
        rep = inv.symbol_product_experiment(_complex(args.c), args.k, _int_list(args.orders))
        return rep.curve.to_csv() if args.format == "csv" else rep.to_json()
    if fam == "mms":
        A = args.alpha * np.eye(args.n) + inv.companion_matrix(args.n)
        return inv.mms_inverse_check(A, args.tol_minor).to_json()
    raise ArgumentError(f"unknown family {fam!r}")


def cmd_toeplitz_limit(args):
    if args.star:
        p, q = _int_list(args.star)
        star = tp.biernacki_star(p, q)
        return {"p": p, "q": q, "radius_max": star.radius_max, "rays": star.ray_roots_of_unity_count}
    t = cx.parse_parameter(args.t)
    if args.negative_axis:
        scan = tp.negative_axis_scan(args.k, float(t), args.lam_min, args.points, args.tol_day)
        return {**scan.to_json(), "t": _param_json(t)}
    sym = cx.counterexample_symbol(args.k, t)
    lam = complex(cx.negative_point(args.k, t)) if args.lam is None else _complex(args.lam)
    res = tp.day_limit_member(sym, lam, args.tol_day)
    out = {"k": args.k, "t": _param_json(t), "lambda": [lam.real, lam.imag],
           "is_member": res.is_member, "gap": res.gap}
    if t > 0:
        # at t = 0 the symbol has poles on the unit circle
        out["in_operator_spectrum"] = tp.winding_spectrum_member(sym, lam, args.tol_winding)
    return out


def cmd_spline(args, seed):
    if args.knots:
        with open(args.knots) as fh:
            knots = spl.KnotSequence.from_json(fh.read(), args.k)
        s = spl.sample_gram(knots, seed)
        return {"n": s.n, "k": s.k, "inv_norm_inf": s.inv_norm_inf, "lambda_min": s.lambda_min,
                "symmetric_bound": s.symmetric_bound}
    exp = spl.deboor_conjecture_experiment(args.k, args.samples, args.n_max, seed, args.stress)
    return exp.to_csv() if args.format == "csv" else exp.to_json()


def cmd_newton_report(args):
    return pr.newton_inequality_report(load_matrix(args.file)).to_json()


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (default: ${SEED_ENV}, else 0)")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write the result here instead of stdout")
    common.add_argument("--tol-minor", type=float, default=DEFAULT_TOLERANCES["minor"],
                        help="relative tolerance of float minor tests (default 1e-10)")
    common.add_argument("--tol-day", type=float, default=DEFAULT_TOLERANCES["day"],
                        help="root-modulus tie tolerance of the limit-set test (default 1e-8)")
    common.add_argument("--tol-winding", type=float, default=DEFAULT_TOLERANCES["winding"],
                        help="on-curve distance for winding-number membership (default 1e-9)")

    parser = _Parser(prog="structmat", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], allow_abbrev=False, help="run class predicates on a matrix file")
    p.add_argument("--file", required=True)
    p.add_argument("--classes", required=True, help=f"comma-separated from {','.join(CLASS_TESTS)}")
    p.add_argument("--mode", choices=("exhaustive", "leading_principal"), default="exhaustive",
                   help="principal submatrices compared by omega/tau")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("counterexample", parents=[common], allow_abbrev=False, help="build the Toeplitz Hessenberg family")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", help='parameter in (0, 1); "p/q" keeps it exact')
    p.add_argument("--limit", action="store_true", help="the order 2k+2 limit matrix instead")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--minors", action="store_true")
    p.add_argument("--least-real", action="store_true", help="certified least real eigenvalue")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("spectrum", parents=[common], allow_abbrev=False, help="eigenvalues and stability data of a matrix file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", parents=[common], allow_abbrev=False, help="finite-section spectra of the counterexample band")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--orders", required=True, help="comma-separated ascending orders")
    p.add_argument("--outdir", help="write curve and per-order spectrum CSV files here")
    p.add_argument("--grid-size", type=int, default=1024)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("hurwitz-cert", parents=[common], allow_abbrev=False, help="Hurwitz-minor instability certificate")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_hurwitz_cert)

    p = sub.add_parser("invertibility", parents=[common], allow_abbrev=False, help="bounded-invertibility families")
    p.add_argument("--family", required=True, choices=("companion", "hilbert", "symbol-product", "mms"))
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--orders", default="50,100,200")
    p.add_argument("--c", default="3")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--n", type=int, default=50)
    p.set_defaults(func=cmd_invertibility)

    p = sub.add_parser("toeplitz-limit", parents=[common], allow_abbrev=False, help="limit-set membership and star curves")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--t", default="1/5")
    p.add_argument("--lam", help='probe point "re,im" (default: the symbol value at s = -1)')
    p.add_argument("--star", help='"p,q": report the star curve instead')
    p.add_argument("--negative-axis", action="store_true",
                   help="scan (lam-min, 0) for limit points instead of probing one point")
    p.add_argument("--lam-min", type=float, default=-1.0)
    p.add_argument("--points", type=int, default=400)
    p.set_defaults(func=cmd_toeplitz_limit)

    p = sub.add_parser("spline", parents=[common], allow_abbrev=False, help="B-spline Gram experiments")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--stress", type=float, default=5.0)
    p.add_argument("--knots", help="JSON knot file; reports that single Gram matrix")
    p.set_defaults(func=cmd_spline)

    p = sub.add_parser("newton-report", parents=[common], allow_abbrev=False, help="Newton-inequality gaps of a matrix file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_newton_report)
    return parser


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        seed = resolve_seed(args.seed)
        if args.func is cmd_spline:
            result = cmd_spline(args, seed)
        else:
            result = args.func(args)
        text = _render(result)
    except (UsageError, ArgumentError, CapabilityError) as exc:
        sys.stderr.write(f"structmat: error: {exc}\n")
        return 2
    except (NumericalError, StructmatError, AssertionError, np.linalg.LinAlgError) as exc:
        sys.stdout.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True) + "\n")
        return 3
    except OSError as exc:
        sys.stderr.write(f"structmat: error: {exc}\n")
        return 2
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
