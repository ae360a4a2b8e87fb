"""Command-line entry point: ``qkantorovich {moments,converge,weighted-converge,bounds,moduli}``.

Every subcommand writes a CSV and exits 0 when all rows pass, 1 otherwise;
argument errors exit 2.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from .errors import QDomainError
from .functions import build_catalog
from .harness import (
    SUITES,
    ExperimentRow,
    emit_csv,
    emit_errata_csv,
    moment_rows,
    run_bound_suite,
    run_convergence_study,
    run_moment_verification,
    run_weighted_convergence,
)
from .moduli import (
    ModulusQuery,
    modulus_ditzian_totik_1,
    modulus_ditzian_totik_2,
    modulus_omega,
    modulus_omega2,
    modulus_weighted,
)
from .operators import VARIANTS, OperatorSpec, StancuParams
from .qcore import QContext, QInterval

MODULUS_KINDS = ("omega", "omega2", "weighted", "dt1", "dt2")


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pairs(text: str) -> list:
    out = []
    for item in text.split(","):
        try:
            a, b = item.split(":")
            out.append((float(a), float(b)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected alpha:beta pairs, got {item!r}")
    return out


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--tail-tol", type=float, default=1e-13, help="k-sum tail tolerance")
    p.add_argument("--series-tol", type=float, default=1e-14, help="q-series tail tolerance")
    p.add_argument("--grid", type=int, default=2001, help="modulus x-grid points")
    p.add_argument("--h-subdivisions", type=int, default=64, help="modulus step-grid size")
    p.add_argument("--x-max", type=float, default=10.0, help="truncation of [0, inf) sweeps")
    p.add_argument("--seed", type=int, default=0, help="reserved; all computation is deterministic")
    p.add_argument("--variant", choices=VARIANTS, default="aligned", help="Kantorovich cell variant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qkantorovich",
        description="Numerical checks for Kantorovich-Stancu q-Beta operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moments", help="raw moments against closed forms")
    p.add_argument("--n-list", type=_ints, default=[5, 10, 20, 50])
    p.add_argument("--q-list", type=_floats, default=[0.5, 0.8, 0.9, 0.99])
    p.add_argument("--stancu-list", type=_pairs, default=[(0.0, 0.0), (0.0, 1.0), (1.0, 2.0)],
                   help="alpha:beta pairs, e.g. 0:0,1:2")
    p.add_argument("--alpha", type=float, help="single alpha (overrides --stancu-list with --beta)")
    p.add_argument("--beta", type=float, help="single beta")
    p.add_argument("--x-list", type=_floats, default=[0.0, 0.1, 0.5, 1.0, 2.0])
    p.add_argument("--errata-out", help="optional CSV of published-formula mismatches")
    _common(p)

    p = sub.add_parser("converge", help="sup-grid error along a sequence of n")
    p.add_argument("--f", default="e2", help="catalog function name")
    p.add_argument("--n-start", type=int, default=8)
    p.add_argument("--n-end", type=int, default=128)
    p.add_argument("--n-list", type=_ints, help="explicit n values (overrides start/end doubling)")
    p.add_argument("--q-rule", choices=("drifting", "fixed"), default="drifting")
    p.add_argument("--q", type=float, help="q for the fixed rule")
    p.add_argument("--b", type=float, default=1.0, help="interval [0, b]")
    p.add_argument("--points", type=int, default=101, help="x-grid points on [0, b]")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--min-ratio", type=float, help="required error(first)/error(last)")
    _common(p)

    p = sub.add_parser("weighted-converge", help="weighted-norm convergence on [0, x-max]")
    p.add_argument("--f", default="x2_over_1px", help="comma-separated catalog names")
    p.add_argument("--n-list", type=_ints, default=[8, 32, 128])
    p.add_argument("--alpha-hat", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    _common(p)

    p = sub.add_parser("bounds", help="error-estimate suites")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--q", type=float, default=0.9)
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=2.0)
    _common(p)

    p = sub.add_parser("moduli", help="grid moduli with refinement check")
    p.add_argument("--f", default="e2", help="catalog function name")
    p.add_argument("--kind", choices=MODULUS_KINDS, required=True)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--gamma", type=float, default=0.0, help="weight exponent for --kind weighted")
    p.add_argument("--b", type=float, default=1.0, help="domain [0, b] for omega/omega2")
    p.add_argument("--a", type=float, default=1.0, help="domain [0, 1+a] for dt1/dt2")
    _common(p)
    return parser


def _catalog_entry(catalog, name):
    if name not in catalog:
        raise QDomainError(f"unknown function {name!r}; choose from {sorted(catalog)}")
    return catalog[name]


def _cmd_moments(args) -> list:
    pairs = args.stancu_list
    if args.alpha is not None or args.beta is not None:
        pairs = [(args.alpha or 0.0, args.beta or 0.0)]
    reports = run_moment_verification(
        n_list=args.n_list,
        q_list=args.q_list,
        stancu_list=[StancuParams(a, b) for a, b in pairs],
        x_list=args.x_list,
        k_tail_tol=args.tail_tol,
        series_tol=args.series_tol,
        variant=args.variant,
    )
    if args.errata_out:
        count = emit_errata_csv(reports, args.errata_out)
        print(f"errata: {count} published-formula mismatches -> {args.errata_out}")
    return moment_rows(reports)


def _cmd_converge(args, catalog) -> list:
    if args.n_list:
        ns = args.n_list
    else:
        ns, n = [], args.n_start
        while n <= args.n_end:
            ns.append(n)
            n *= 2
    return run_convergence_study(
        _catalog_entry(catalog, args.f), ns, args.q_rule, args.q, args.b, args.points,
        StancuParams(args.alpha, args.beta), args.min_ratio, args.tail_tol, args.series_tol, args.variant,
    )


def _cmd_weighted(args, catalog) -> list:
    entries = [_catalog_entry(catalog, name) for name in args.f.split(",") if name]
    return run_weighted_convergence(
        entries, args.n_list, args.x_max, args.grid, args.alpha_hat, StancuParams(args.alpha, args.beta),
        args.tail_tol, args.series_tol, args.variant,
    )


def _cmd_bounds(args, catalog) -> list:
    spec = OperatorSpec(args.n, QContext(args.q, series_tol=args.series_tol), StancuParams(args.alpha, args.beta),
                        k_tail_tol=args.tail_tol, variant=args.variant)
    return run_bound_suite(args.suite, spec, catalog, args.x_max, args.grid, args.h_subdivisions)


def _phi_step(x):
    return np.sqrt(x * (1.0 + x))


def _cmd_moduli(args, catalog) -> list:
    f = _catalog_entry(catalog, args.f).f
    values = {}
    for d in (1, 2):
        gp, hs = (args.grid - 1) * d + 1, args.h_subdivisions * d
        if args.kind == "omega":
            v = modulus_omega(ModulusQuery(f, args.delta, QInterval(0.0, args.b), gp, hs))
        elif args.kind == "omega2":
            v = modulus_omega2(ModulusQuery(f, args.delta, QInterval(0.0, args.b), gp, hs))
        elif args.kind == "weighted":
            v = modulus_weighted(f, args.delta, args.gamma, args.x_max, gp, hs)
        elif args.kind == "dt1":
            v = modulus_ditzian_totik_1(f, args.delta, None, QInterval(0.0, 1.0 + args.a), gp, hs)
        else:
            v = modulus_ditzian_totik_2(f, args.delta, _phi_step, QInterval(0.0, 1.0 + args.a), gp, hs)
        values[gp] = v
    (g1, v1), (g2, v2) = sorted(values.items())
    ok = abs(v2 - v1) <= 0.01 * abs(v2) + 1e-12
    hi = args.x_max if args.kind == "weighted" else (1.0 + args.a if args.kind.startswith("dt") else args.b)
    metric = f"{args.f}:{args.kind};delta={args.delta:g};refinement_change<=1%"
    if args.kind == "weighted":
        metric += f";gamma={args.gamma:g}"
    return [ExperimentRow(f"modulus_{args.kind}", 0, 0.0, 0.0, 0.0, 0.0, hi, metric, v1, v2, ok, g2)]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        catalog = build_catalog(x_max=args.x_max)
        if args.command == "moments":
            rows = _cmd_moments(args)
        elif args.command == "converge":
            rows = _cmd_converge(args, catalog)
        elif args.command == "weighted-converge":
            rows = _cmd_weighted(args, catalog)
        elif args.command == "bounds":
            rows = _cmd_bounds(args, catalog)
        else:
            rows = _cmd_moduli(args, catalog)
    except QDomainError as exc:
        parser.error(str(exc))
    emit_csv(rows, args.out)
    failed = sum(not r.passed for r in rows)
    print(f"{args.command}: {len(rows)} rows, {failed} failed -> {args.out}")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
