"""Command-line front end; every subcommand prints one JSON document."""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .algebra import LabelError, load_algebra, parse_label
from .character import UnsupportedFamilyError, compare_completeness
from .linalg import SingularMatrixError
from .qsystem import convergence, q_system_residual, r_series
from .sce import PartialResultError, sce_report
from .strings import (
    SparseArray,
    all_p_nonnegative,
    delta_term,
    f_matrix,
    genericity_condition,
    lemma_saa_sides,
    r_number,
    vacancy_p,
    vacancy_p_hat,
    xi_eta,
)


class UsageError(Exception):
    pass


def _sparse(text: str | None, flag: str) -> SparseArray:
    if text is None:
        raise UsageError(f"missing {flag}")
    try:
        return SparseArray.parse(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _alg(text: str):
    try:
        return load_algebra(parse_label(text))
    except LabelError as exc:
        raise UsageError(str(exc)) from None


def _check_range(alg, *arrays: SparseArray) -> None:
    for arr in arrays:
        if arr.max_color() > alg.n:
            raise UsageError(f"color {arr.max_color()} out of range 1..{alg.n} for {alg.label}")


def cmd_algebra(args) -> tuple[dict, bool]:
    return _alg(args.type).to_dict(), True


def cmd_rnum(args):
    alg = _alg(args.type)
    nu, N = _sparse(args.nu, "--nu"), _sparse(args.pattern, "--pattern")
    _check_range(alg, nu, N)
    H = N.support()
    out = {
        "R": r_number(alg, nu, N),
        "detF": f_matrix(alg, nu, N).det() if N else 1,
        "P": [[f"{a},{m}", vacancy_p(alg, nu, N, a, m)] for a, m in H],
        "P_hat": [[f"{a},{m}", vacancy_p_hat(alg, nu, N, a, m)] for a, m in H],
        "generic_condition": genericity_condition(alg, nu, N),
        "regime": "counting" if all_p_nonnegative(alg, nu, N) else "series-only",
    }
    return out, True


def cmd_rseries(args):
    alg = _alg(args.type)
    nu = _sparse(args.nu, "--nu")
    _check_range(alg, nu)
    s = r_series(alg, nu, args.deg)
    out = {
        "family": str(alg.label),
        "nu": str(nu),
        "degree": args.deg,
        "series": str(s),
        "coefficients": s.to_json(),
        "max_nonzero_degree": s.max_degree(),
    }
    return out, s.constant_term() == 1


def cmd_qcheck(args):
    alg = _alg(args.type)
    rows, ok = [], True
    for a in range(1, alg.n + 1):
        for m in range(1, args.mmax + 1):
            res = q_system_residual(alg, a, m, args.deg)
            nz = res.nonzero_count()
            ok = ok and nz == 0
            rows.append({"a": a, "m": m, "residual_nonzero": nz})
    conv = []
    for a in range(1, alg.n + 1):
        c = convergence(alg, a, args.deg, args.mmax)
        conv.append({"a": a, "stable": c.stable, "m0": c.m0, "limit": str(c.limit) if c.limit else None})
    return {"family": str(alg.label), "degree": args.deg, "residuals": rows, "convergence": conv}, ok


def cmd_sce(args):
    alg = _alg(args.type)
    nu, N = _sparse(args.nu, "--nu"), _sparse(args.pattern, "--pattern")
    _check_range(alg, nu, N)
    if not N:
        raise UsageError("--pattern must be nonempty for the string-centre equations")
    rep = sce_report(alg, nu, N, method=args.method)
    return rep.to_dict(), rep.match


def cmd_complete(args):
    alg = _alg(args.type)
    nu = _sparse(args.nu, "--nu")
    _check_range(alg, nu)
    rep = compare_completeness(alg, nu, args.deg)
    return rep.to_dict(), rep.match


def cmd_orders(args):
    alg = _alg(args.type)
    nu, N = _sparse(args.nu, "--nu"), _sparse(args.pattern, "--pattern")
    _check_range(alg, nu, N)
    if not 1 <= args.i <= args.m:
        raise UsageError("need 1 <= i <= m")
    xp, xm, ep, em = xi_eta(alg, nu, N, args.a, args.m, args.i)
    lhs, rhs = lemma_saa_sides(alg, nu, N, args.a, args.m, args.i)
    j = abs(args.m + 1 - 2 * args.i)
    out = {
        "xi_plus": xp,
        "xi_minus": xm,
        "eta_plus": ep,
        "eta_minus": em,
        "delta": delta_term(alg, N, args.a, j) if j else 0,
        "lhs": lhs,
        "rhs": rhs,
    }
    return out, lhs == rhs


def cmd_selftest(args):
    results = acceptance.run_all()
    for r in results:
        print(r.line(), file=sys.stderr)
    return {"criteria": [r.to_dict() for r in results]}, all(r.passed for r in results)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stringcount", description=__doc__)
    p.add_argument("--out", help="also write the JSON report to this file")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *flags):
        sp = sub.add_parser(name)
        sp.set_defaults(func=fn)
        if "type" in flags:
            sp.add_argument("--type", required=True, help="algebra label, e.g. A2^2")
        if "nu" in flags:
            sp.add_argument("--nu", required=True, help="quantum space datum 'a,m:count;...'")
        if "pattern" in flags:
            sp.add_argument("--pattern", required=True, help="string pattern 'a,m:count;...'")
        if "deg" in flags:
            sp.add_argument("--deg", type=int, required=True)
        sp.add_argument("--out", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return sp

    add("algebra", cmd_algebra, "type")
    add("rnum", cmd_rnum, "type", "nu", "pattern")
    add("rseries", cmd_rseries, "type", "nu", "deg")
    q = add("qcheck", cmd_qcheck, "type", "deg")
    q.add_argument("--mmax", type=int, default=4)
    s = add("sce", cmd_sce, "type", "nu", "pattern")
    s.add_argument("--method", choices=("enumerate", "moebius", "both"), default="both")
    add("complete", cmd_complete, "type", "nu", "deg")
    o = add("orders", cmd_orders, "type", "nu", "pattern")
    o.add_argument("--a", type=int, required=True)
    o.add_argument("--m", type=int, required=True)
    o.add_argument("--i", type=int, required=True)
    add("selftest", cmd_selftest)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "deg", 0) < 0 or getattr(args, "mmax", 1) < 1:
        print("stringcount: --deg must be >= 0 and --mmax >= 1", file=sys.stderr)
        return 2
    try:
        payload, ok = args.func(args)
    except (UsageError, UnsupportedFamilyError) as exc:
        print(f"stringcount: {exc}", file=sys.stderr)
        return 2
    except (SingularMatrixError, PartialResultError, AssertionError) as exc:
        payload, ok = {"error": type(exc).__name__, "message": str(exc)}, False
    text = json.dumps(payload)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
