"""Command-line front end.

Subcommands: lattice-info, eisenstein, density, verify.  Exit codes:
0 success, 1 verification failure, 2 input error, 3 counting budget
exceeded.  The env var JE_BUDGET overrides the counting work ceiling.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .arith import PiRational, ord_p
from .counting import ShiftedForm
from .density import (
    DensityReport,
    density_counting,
    density_good_prime,
    density_infty,
    density_na1_odd,
    density_na1_two,
    density_na1_two_stable,
    density_unimodular,
)
from .eisenstein import q_expansion
from .errors import BudgetExceeded, JEFormsError
from .lattice import Lattice, get_preset, load_lattice_file
from .verify import run_formula_vs_oracle_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _load_lattice(args) -> Lattice:
    if args.lattice_file:
        return load_lattice_file(args.lattice_file)
    if args.lattice:
        return get_preset(args.lattice)
    raise JEFormsError("one of --lattice / --lattice-file is required")


def _fmt_value(v) -> str:
    if isinstance(v, PiRational):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return repr(v)


def cmd_lattice_info(args) -> int:
    lat = _load_lattice(args)
    info = {
        "name": lat.name,
        "rank": lat.rank,
        "det": lat.det,
        "level": lat.level,
        "discriminant_group_order": lat.det,
        "gram": [list(r) for r in lat.gram],
        "dual_gram": [[_fmt_value(v) for v in row] for row in lat.dual_gram],
    }
    if args.json:
        print(json.dumps(info, indent=2))
    else:
        print(f"lattice {lat.name}: rank {lat.rank}, det {lat.det}, level {lat.level}")
        print(f"|L^v / L| = {lat.det}")
        print("dual gram:")
        for row in lat.dual_gram:
            print("  " + "  ".join(str(v) for v in row))
    return EXIT_OK


def cmd_eisenstein(args) -> int:
    lat = _load_lattice(args)
    qe = q_expansion(
        lat,
        args.k,
        args.m,
        args.n_max,
        pipeline=args.pipeline,
        a_max=args.a_max,
        c_max=args.c_max,
    )
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(qe.to_json(), fh, indent=1)
        print(f"wrote {len(qe.entries)} coefficients to {args.out}")
    if args.per_lambda:
        print(f"{'n':>4} {'lambda':<28} {'Delta':>8}  coefficient")
        for (n, lam), coeff in sorted(qe.entries.items()):
            d = qe.delta(n, lam)
            print(f"{n:>4} {str(tuple(str(c) for c in lam)):<28} {str(d):>8}  {_fmt_value(coeff.value)}")
    else:
        # group by (n, Delta): for unimodular lattices the coefficient depends
        # only on Delta, so one line per orbit is the readable view
        orbits: dict = {}
        for (n, lam), coeff in qe.entries.items():
            d = qe.delta(n, lam)
            key = (n, d, _fmt_value(coeff.value))
            orbits[key] = orbits.get(key, 0) + 1
        print(f"{'n':>4} {'Delta':>8} {'#lambda':>8}  coefficient")
        for (n, d, val), count in sorted(orbits.items(), key=lambda t: (t[0][0], t[0][1])):
            print(f"{n:>4} {str(d):>8} {count:>8}  {val}")
    return EXIT_OK


def cmd_density(args) -> int:
    lat = _load_lattice(args)
    if args.p == "inf":
        value = density_infty(lat, args.t)
        report = DensityReport(value, "inf", "infinity")
    elif args.lam is not None:
        lam = [int(x) for x in args.lam.split(",")]
        if not lat.is_na1:
            raise JEFormsError("--lam densities are defined for nA1 lattices")
        p = int(args.p)
        delta = 4 * args.t - sum(c * c for c in lam)
        if p == 2:
            value = density_na1_two_stable(lat.rank, lam, delta)
            report = DensityReport(value, 2, "na1_two")
        else:
            e = ord_p(delta, p) if delta else 0
            value = density_na1_odd(lat.rank, p, e + 1, delta)
            report = DensityReport(value, p, "na1_odd")
    else:
        p = int(args.p)
        if (2 * lat.det) % p != 0:
            report = DensityReport(density_good_prime(lat, p, args.t), p, "good_prime")
        elif lat.is_unimodular and lat.rank % 2 == 0:
            e = ord_p(args.t, p)
            value = density_unimodular(lat.rank, p, e + 1, args.t)
            report = DensityReport(value, p, "unimodular_lemma")
        else:
            report = density_counting(lat, p, args.t)
    print(f"delta_{report.place}({args.t}, {lat.name}) = {_fmt_value(report.value)}")
    print(f"method: {report.method}")
    if report.stabilization_exponent is not None:
        print(f"stabilization exponent: {report.stabilization_exponent}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = run_formula_vs_oracle_suite(args.grid)
    print(report.format_table(verbose=args.verbose))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report.to_json(), fh, indent=1)
        print(f"report written to {args.out}")
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="jeforms",
        description="Jacobi-Eisenstein series for even positive-definite lattices",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_lattice_args(p):
        p.add_argument("--lattice", help="preset name (E8, D4, A1, 2A1, 4A1, ...)")
        p.add_argument("--lattice-file", help="JSON file {'name':..., 'gram': [[...]]}")

    p_info = sub.add_parser("lattice-info", help="rank, det, level, dual data")
    add_lattice_args(p_info)
    p_info.add_argument("--json", action="store_true")
    p_info.set_defaults(func=cmd_lattice_info)

    p_eis = sub.add_parser("eisenstein", help="q-expansion of E_{k,m}")
    add_lattice_args(p_eis)
    p_eis.add_argument("--k", type=int, required=True, help="weight (even, > rank+2)")
    p_eis.add_argument("--m", type=int, default=1, help="index")
    p_eis.add_argument("--n-max", type=int, default=3)
    p_eis.add_argument(
        "--pipeline",
        choices=["auto", "unimodular", "na1", "general"],
        default="auto",
    )
    p_eis.add_argument("--a-max", type=int, default=50)
    p_eis.add_argument("--c-max", type=int, default=40)
    p_eis.add_argument("--out", help="write the expansion as JSON")
    p_eis.add_argument(
        "--per-lambda", action="store_true", help="list every lambda instead of orbits"
    )
    p_eis.set_defaults(func=cmd_eisenstein)

    p_den = sub.add_parser("density", help="local density at a prime or inf")
    add_lattice_args(p_den)
    p_den.add_argument("--p", required=True, help="prime, or 'inf'")
    p_den.add_argument("--t", type=int, required=True)
    p_den.add_argument(
        "--lam",
        help="comma-separated integer vector: report the shifted nA1 density "
        "with Delta = 4t - q(lambda)",
    )
    p_den.set_defaults(func=cmd_density)

    p_ver = sub.add_parser("verify", help="run the formula-vs-oracle battery")
    p_ver.add_argument("--grid", choices=["default", "extended"], default="default")
    p_ver.add_argument("--q-trunc", type=int, default=None, help="(reserved)")
    p_ver.add_argument("--out", help="write the JSON report")
    p_ver.add_argument("--verbose", action="store_true")
    p_ver.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (JEFormsError, KeyError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return code


if __name__ == "__main__":
    sys.exit(main())
