"""Command-line front end.

Every subcommand resolves its configuration (JSON config file merged
under explicit flags, flags win), echoes it under "params", and writes
deterministic JSON or CSV: same config and seed give byte-identical
output at any thread count.

Exit codes: 0 success, 2 parameter error, 3 resource-guard refusal.
Errors print one machine-parsable line to stderr: "<tag>: <message>".
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import (
    arith,
    characters,
    congruence,
    equidist,
    multfunc,
    partition,
    phase,
    sums,
    vinogradov,
)
from .errors import ParameterError, ResourceError, WeylsumError

SCHEMA_VERSION = 1


def _complex_fields(z: complex, prefix: str = "sum") -> dict:
    return {f"{prefix}_re": z.real, f"{prefix}_im": z.imag, f"{prefix}_abs": abs(z)}


def _emit(payload: dict, params: dict, out: str | None) -> None:
    doc = {"schema_version": SCHEMA_VERSION, "params": params}
    doc.update(payload)
    text = json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(header: list[str], rows: list[list], out: str | None) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(x) for x in row))
    text = "\n".join(lines) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _f_by_name(name: str, F, sieve, N: int, threads: int):
    if name in multfunc.BUILTINS:
        return multfunc.BUILTINS[name]()
    if name == "extremal":
        res = multfunc.extremal_construct(F, sieve, N, threads=threads)
        return res.f
    raise ParameterError(f"unknown multiplicative function {name!r}")


def _cmd_primes(args, params):
    sieve = arith.build_sieve(args.limit)
    _emit(
        {
            "count": sieve.pi(args.limit),
            "count_upper_half": sieve.pi(args.limit) - sieve.pi(args.limit // 2),
        },
        params,
        args.out,
    )
    return 0


def _cmd_sum(args, params):
    F = phase.parse_phase(args.phase)
    sieve = arith.build_sieve(max(args.N, 2))
    f = _f_by_name(args.f, F, sieve, args.N, args.threads)
    values = multfunc.sieve_values(f, sieve, args.N)
    if args.report:
        r_txt, a_txt = args.report.split(",")
        rep = sums.theorem1_report(
            values, F, args.N, int(r_txt), float(a_txt), threads=args.threads
        )
        payload = {
            "lhs": rep.lhs,
            "rhs_main": rep.rhs_main,
            "rhs_arc": rep.rhs_arc,
            "rhs_tail": rep.rhs_tail,
            "ratio": rep.ratio,
            "C": rep.C,
            "arc_label": rep.arc_label,
            "q_in_clean_window": rep.q_in_clean_window,
            "approx": {
                "ell": rep.approx.ell,
                "a": rep.approx.a,
                "q": rep.approx.q,
                "R": rep.approx.R,
                "err": rep.approx.err,
            },
        }
    else:
        payload = _complex_fields(sums.weyl_sum(values, F, args.N, threads=args.threads))
    _emit(payload, params, args.out)
    return 0


def _cmd_sharpness(args, params):
    F = phase.parse_phase(args.phase)
    sieve = arith.build_sieve(max(args.N, 2))
    res = multfunc.extremal_construct(
        F, sieve, args.N, grid_size=args.grid, threads=args.threads
    )
    payload = {
        "lower_bound": res.lower_bound,
        "n_over_10_log_n": args.N / (10.0 * math.log(args.N)),
        "z0_re": res.z0.real,
        "z0_im": res.z0.imag,
        "grid_size": res.grid_size,
        "grid_certified": res.grid_certified,
        "grid_max": res.grid_max,
        "refined_max": res.refined_max,
        "g_at_zero": res.g_at_zero,
    }
    payload.update(_complex_fields(res.sum_value))
    _emit(payload, params, args.out)
    return 0


def _cmd_partition(args, params):
    sieve = arith.build_sieve(max(args.N, 2))
    scheme = partition.build_partition(args.N, args.s)
    if args.weight == "unit":
        weight = lambda p, n: 1  # noqa: E731
    else:
        F = phase.parse_phase(args.phase)
        ph = phase.phase_values(F, args.N)

        def weight(p, n, _ph=ph):
            return math.log(p) * _ph[p * n]

    rep = partition.verify_partition(scheme, sieve, weight)
    payload = {
        "max_multiplicity": rep.max_multiplicity,
        "min_p_width": rep.min_p_width,
        "min_n_width": rep.min_n_width,
        "min_area": rep.min_area,
        "n_points": rep.n_points,
        "n_covered": rep.n_covered,
        "n_exceptional": rep.n_exceptional,
        "n_rectangles": rep.n_rectangles,
        "widths_ok": rep.widths_ok,
        "area_ok": rep.area_ok,
        "area_bound": rep.area_bound,
        "area_bound_derived": rep.area_bound_derived,
        "sums_exact": rep.sums_exact,
    }
    payload.update(_complex_fields(complex(rep.direct_sum), "direct"))
    payload.update(_complex_fields(complex(rep.partitioned_sum), "partitioned"))
    _emit(payload, params, args.out)
    return 0


def _cmd_vmvt(args, params):
    payload: dict = {}
    if args.primes:
        y_txt, x_txt = args.primes.split(",")
        Y, X = int(y_txt), int(x_txt)
        sieve = arith.build_sieve(Y + X)
        payload["J"] = vinogradov.jrd_primes(Y, X, args.r, args.d, sieve)
        payload["variables"] = "primes"
    elif args.intervals:
        with open(args.intervals) as fh:
            spec_list = json.load(fh)
        ivs = [(int(a), int(b)) for a, b in spec_list]
        payload["J"] = vinogradov.jrd_intervals(ivs, args.r, args.d)
        payload["variables"] = "intervals"
    else:
        if args.V is None:
            raise ParameterError("vmvt needs --V (or --primes / --intervals)")
        payload["J"] = vinogradov.jrd(args.V, args.r, args.d)
        payload["variables"] = "range"
        ladder = sorted({max(2, args.V // 4), max(3, args.V // 2), args.V})
        slope_table = []
        for small, large in zip(ladder, ladder[1:]):
            slope_table.append(
                {
                    "V_small": small,
                    "V_large": large,
                    "slope": vinogradov.slope_estimate(args.r, args.d, small, large),
                }
            )
        payload["slope_table"] = slope_table
        payload["slope_exponent_bound"] = 2 * args.r - args.d * (args.d + 1) / 2
    _emit(payload, params, args.out)
    return 0


def _cmd_roots(args, params):
    sieve = arith.build_sieve(max(args.N, 2))
    poly = congruence.parse_poly(args.poly)
    table = congruence.build_root_table(
        poly, sieve, args.N, allow_large=args.allow_large
    )
    rows = []
    for n in range(1, args.N + 1):
        roots = " ".join(str(int(v)) for v in table.roots(n))
        rows.append([n, int(table.rho[n]), roots])
    _emit_csv(["n", "rho", "roots"], rows, args.out)
    return 0


def _cmd_equidist(args, params):
    sieve = arith.build_sieve(max(args.N, 2))
    poly = congruence.parse_poly(args.poly)
    F = phase.parse_phase(args.phase)
    table = congruence.build_root_table(
        poly, sieve, args.N, allow_large=args.allow_large
    )
    ladder = sorted({max(2, args.N // 100), max(2, args.N // 10), args.N})
    rows = []
    for Nx in ladder:
        w = equidist.joint_weyl_sum(table, F, Nx, args.h1, args.h2)
        total = table.sum_rho(Nx)
        wnorm = abs(w) / total if total else 0.0
        if args.discrepancy:
            seq = equidist.joint_sequence(table, F, Nx)
            disc = equidist.star_discrepancy_2d(seq, args.grid).grid_value
        else:
            disc = ""
        rows.append([Nx, repr(wnorm), repr(disc) if disc != "" else ""])
    _emit_csv(["N", "W_normalized", "discrepancy"], rows, args.out)
    return 0


def _cmd_charsum(args, params):
    chars = characters.enumerate_characters(args.k)
    if not (0 <= args.chi_index < len(chars)):
        raise ParameterError(
            f"chi-index must be in [0, {len(chars) - 1}] for k = {args.k}"
        )
    chi = chars[args.chi_index]
    F = phase.parse_phase(args.phase)
    value = characters.mixed_char_sum(chi, F, args.N)
    payload = {
        "k": args.k,
        "chi": list(chi.exponents),
        "N": args.N,
        "sum_re": value.real,
        "sum_im": value.imag,
        "normalized": abs(value) / args.N,
    }
    _emit(payload, params, args.out)
    return 0


def _cmd_approx(args, params):
    if args.alpha is not None:
        ap = phase.dirichlet_approx(phase.FracFixed.coerce(args.alpha), args.R)
        payload = {
            "a": ap.a,
            "q": ap.q,
            "R": ap.R,
            "err": ap.err,
            "residual_beta": ap.residual_beta,
        }
    else:
        F = phase.parse_phase(args.phase)
        arc = phase.classify_arc(F, args.N, args.B)
        payload = {
            "label": arc.label,
            "q_threshold": arc.q_threshold,
            "approxes": [
                {"ell": ap.ell, "a": ap.a, "q": ap.q, "R": ap.R, "err": ap.err}
                for ap in arc.approxes
            ],
        }
    _emit(payload, params, args.out)
    return 0


_COMMANDS = {
    "primes": _cmd_primes,
    "sum": _cmd_sum,
    "sharpness": _cmd_sharpness,
    "partition": _cmd_partition,
    "vmvt": _cmd_vmvt,
    "roots": _cmd_roots,
    "equidist": _cmd_equidist,
    "charsum": _cmd_charsum,
    "approx": _cmd_approx,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weylsum",
        description="experiments on exponential sums with multiplicative coefficients",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config merged under explicit flags")
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=["json", "csv"], default=None)
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default WEYL_THREADS or 1)")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("primes", help="sieve summary")
    p.add_argument("--limit", type=int, required=True)
    common(p)

    p = sub.add_parser("sum", help="weyl sum or bound report")
    p.add_argument("--f", required=True,
                   choices=["mobius", "liouville", "unit", "extremal"])
    p.add_argument("--phase", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--report", help="'r,A' to emit the bound report")
    common(p)

    p = sub.add_parser("sharpness", help="extremal lower-bound construction")
    p.add_argument("--phase", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--grid", type=int, default=None)
    common(p)

    p = sub.add_parser("partition", help="hyperbola partition verification")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--weight", choices=["unit", "phase"], default="unit")
    p.add_argument("--phase", default="sqrt:2*x")
    common(p)

    p = sub.add_parser("vmvt", help="Vinogradov system counts")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--V", type=int)
    p.add_argument("--primes", help="'Y,X' for prime variables in [Y, Y+X]")
    p.add_argument("--intervals", help="JSON file with [lo, hi] interval list")
    common(p)

    p = sub.add_parser("roots", help="polynomial congruence root table (CSV)")
    p.add_argument("--poly", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--allow-large", action="store_true")
    common(p)

    p = sub.add_parser("equidist", help="joint equidistribution trend (CSV)")
    p.add_argument("--poly", required=True)
    p.add_argument("--phase", required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--h1", type=int, default=1)
    p.add_argument("--h2", type=int, default=1)
    p.add_argument("--discrepancy", action="store_true")
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--allow-large", action="store_true")
    common(p)

    p = sub.add_parser("charsum", help="mixed character sum")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--chi-index", type=int, required=True)
    p.add_argument("--phase", required=True)
    p.add_argument("--N", type=int, required=True)
    common(p)

    p = sub.add_parser("approx", help="Dirichlet approximation / arc classification")
    p.add_argument("--alpha", help="decimal literal or constant token")
    p.add_argument("--R", type=float, default=100.0)
    p.add_argument("--phase", help="classify all coefficients of this phase")
    p.add_argument("--N", type=int, default=10**4)
    p.add_argument("--B", type=float, default=1.0)
    common(p)

    return parser


def _merge_config(args: argparse.Namespace, parser_defaults: dict,
                  argv: list[str]) -> argparse.Namespace:
    """Fill unset options from the JSON config file; explicit flags win."""
    if not args.config:
        return args
    with open(args.config) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ParameterError("config file must hold a JSON object")
    known = set(vars(args))
    unknown = [k for k in cfg if k.replace("-", "_") not in known]
    if unknown:
        raise ParameterError(f"unknown config keys: {sorted(unknown)}")
    explicit = {a.lstrip("-").replace("-", "_").split("=")[0]
                for a in argv if a.startswith("--")}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest in explicit or dest == "config":
            continue
        setattr(args, dest, value)
    return args


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args = _merge_config(args, {}, argv)
        if args.threads is None:
            args.threads = int(os.environ.get("WEYL_THREADS", "1"))
        params = {
            k: v for k, v in sorted(vars(args).items()) if k not in ("config",)
        }
        return _COMMANDS[args.command](args, params)
    except ParameterError as exc:
        sys.stderr.write(f"{exc.tag}: {exc}\n")
        return 2
    except ResourceError as exc:
        sys.stderr.write(f"{exc.tag}: {exc}\n")
        return 3
    except WeylsumError as exc:
        sys.stderr.write(f"{exc.tag}: {exc}\n")
        return 2
    except FileNotFoundError as exc:
        sys.stderr.write(f"parameter-error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
