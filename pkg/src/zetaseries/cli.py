"""Command-line front end: ``compute``, ``verify`` and ``bench``.

Exit codes: 0 success, 1 malformed flags, 2 domain error, 3 non-convergence,
4 failed verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import mpmath

from .errors import DomainError, InvalidSequence, NonConvergence, ZetaSeriesError
from .mpcore import Precision, Tolerance
from .oracle import digamma_ref, hurwitz_zeta_ref, stieltjes_ref
from .stieltjes import (Method, euler_gamma_telescope, gamma0_telescope,
                        stieltjes_base_k, stieltjes_dyadic)
from .zeta import (DirichletCharacter, brun_beta, dirichlet_l, hurwitz_zeta_base_k,
                   hurwitz_zeta_series, identity_suite)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_NONCONVERGENCE, EXIT_VERIFY = 0, 1, 2, 3, 4

QUANTITIES = ("stieltjes", "zeta", "brun-beta", "dirichlet-l", "gamma0-telescope",
              "euler-gamma")
CSV_HEADER = ("method", "ell", "a", "k", "n", "partial_value", "abs_error", "inner_terms")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _decimal(text: str) -> str:
    """Validate a real given as a decimal or ratio string; keep it as text."""
    try:
        Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")
    return text.strip()


def _uint(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a nonnegative integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"not a nonnegative integer: {text!r}")
    return value


def _uint_list(text: str) -> List[int]:
    return [_uint(part) for part in text.split(",") if part.strip()]


def _tolerance(text: str) -> Tolerance:
    try:
        return Tolerance(_decimal(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zetaseries",
                     description="Stieltjes constants and zeta values from double series.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--tol", type=_tolerance, default=Tolerance("1e-12"))
        p.add_argument("--prec-bits", type=_uint, default=256)
        p.add_argument("--digits", type=_uint, default=30)

    c = sub.add_parser("compute", help="evaluate one quantity, print JSON")
    c.add_argument("--quantity", choices=QUANTITIES, required=True)
    c.add_argument("--ell", type=_uint)
    c.add_argument("--a", type=_decimal)
    c.add_argument("--s", type=_decimal)
    c.add_argument("--k", type=_uint, default=2)
    c.add_argument("--method", choices=[m.value for m in Method])
    c.add_argument("--modulus", type=_uint)
    c.add_argument("--chi")
    c.add_argument("--format", choices=("json", "csv"), default="json")
    common(c)

    v = sub.add_parser("verify", help="identity suite, route agreement, oracle checks")
    v.add_argument("--grid", choices=("small", "full"), default="small")
    v.add_argument("--perturb", type=_decimal, default="0")
    common(v)

    b = sub.add_parser("bench", help="outer-sum convergence profiles as CSV")
    b.add_argument("--quantity", choices=("stieltjes",), default="stieltjes")
    b.add_argument("--ell", type=_uint_list, default=[0])
    b.add_argument("--a", type=_decimal, default="1")
    b.add_argument("--k", type=_uint_list, default=[2])
    b.add_argument("--method", choices=(Method.DYADIC.value, Method.BASE_K.value),
                   default=Method.BASE_K.value)
    b.add_argument("--format", choices=("json", "csv"), default="csv")
    common(b)
    return parser


def _precision(args) -> Precision:
    try:
        return Precision(args.prec_bits, args.digits)
    except ValueError as exc:
        raise UsageError(str(exc))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"--quantity {args.quantity} needs " +
                         ", ".join("--" + n for n in missing))


_FORMAT_CTX = mpmath.MPContext()
_FORMAT_CTX.prec = 4096


def _nstr(x, digits):
    """Decimal string of ``x`` at ``digits`` significant digits, without a
    detour through the (53-bit) global mpmath context."""
    return _FORMAT_CTX.nstr(_FORMAT_CTX.convert(x), digits)


# --------------------------------------------------------------------- compute

def _evaluate(args, prec: Precision):
    """Return (record, SumReport) for ``compute``; record holds the echo fields."""
    q = args.quantity
    tol = args.tol
    record = {"quantity": q}
    if q == "stieltjes":
        _need(args, "ell", "a")
        method = Method(args.method or Method.DYADIC.value)
        record.update(method=method.value, ell=args.ell, a=args.a)
        if method is Method.DYADIC:
            rep = stieltjes_dyadic(args.ell, args.a, tol, prec).report
        elif method is Method.BASE_K:
            record["k"] = args.k
            rep = stieltjes_base_k(args.ell, args.a, args.k, tol, prec).report
        else:
            if args.ell != 0:
                raise DomainError("the digamma telescope only gives ell = 0")
            rep = gamma0_telescope(args.a, tol, prec)
    elif q == "zeta":
        _need(args, "s")
        a = args.a or "1"
        method = Method(args.method or Method.DYADIC.value)
        record.update(method=method.value, s=args.s, a=a)
        if method is Method.DYADIC:
            rep = hurwitz_zeta_series(args.s, a, tol, prec)
        elif method is Method.BASE_K:
            record["k"] = args.k
            rep = hurwitz_zeta_base_k(args.s, a, args.k, tol, prec)
        else:
            raise UsageError("--quantity zeta supports --method dyadic or base-k")
    elif q == "brun-beta":
        _need(args, "s")
        record.update(method="dyadic", s=args.s)
        rep = brun_beta(args.s, tol, prec)
    elif q == "dirichlet-l":
        _need(args, "s", "modulus", "chi")
        record.update(method="dyadic", s=args.s, modulus=args.modulus, chi=args.chi)
        chi = DirichletCharacter.parse(args.modulus, args.chi)
        rep = dirichlet_l(args.s, chi, tol, prec)
    elif q == "gamma0-telescope":
        _need(args, "a")
        record.update(method=Method.PSI_TELESCOPE.value, a=args.a)
        rep = gamma0_telescope(args.a, tol, prec)
    else:
        record.update(method=Method.PSI_TELESCOPE.value)
        rep = euler_gamma_telescope(tol, prec)
    return record, rep


def cmd_compute(args, out) -> int:
    prec = _precision(args)
    start = time.perf_counter()
    record, rep = _evaluate(args, prec)
    elapsed = (time.perf_counter() - start) * 1000
    record.update(value=_nstr(rep.value, prec.out_digits),
                  error_bound=_nstr(rep.error_bound, 6),
                  outer_terms=rep.outer_terms,
                  inner_terms_total=rep.inner_terms_total,
                  elapsed_ms=round(elapsed, 3))
    if args.format == "json":
        out.write(json.dumps(record) + "\n")
    else:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(record.keys())
        w.writerow(record.values())
    return EXIT_OK


# ---------------------------------------------------------------------- verify

@dataclass(frozen=True)
class Check:
    group: str
    label: str
    residual: object
    threshold: object

    @property
    def passed(self) -> bool:
        return abs(self.residual) <= self.threshold


@dataclass(frozen=True)
class Grid:
    s: Sequence[str]
    a_zeta: Sequence[str]
    ells: Sequence[int]
    a_stieltjes: Sequence[str]
    ks: Sequence[int]


GRIDS = {
    "small": Grid(s=("2",), a_zeta=("1/2", "1"), ells=(0, 1), a_stieltjes=("1",),
                  ks=(2, 3)),
    "full": Grid(s=("1.25", "1.5", "2", "3", "5"), a_zeta=("1/4", "1/2", "1", "2"),
                 ells=tuple(range(6)), a_stieltjes=("1/2", "1", "3/2", "2"), ks=(2, 3, 5)),
}
IDENTITY_S = {"small": ("2",), "full": ("1.5", "2", "3")}


def run_checks(grid_name: str, tol: Tolerance, prec: Precision, perturb=0) -> List[Check]:
    """Every verification check in a fixed order."""
    grid = GRIDS[grid_name]
    ctx = prec.context()
    tol_v = tol.mpf(ctx)
    shift = ctx.mpf(Fraction(perturb).numerator) / Fraction(perturb).denominator
    checks = []

    def add(group, label, residual, threshold=tol_v):
        checks.append(Check(group, label, ctx.convert(residual) + shift, threshold))

    # identities (the suite applies the perturbation itself)
    a_grid = grid.a_zeta
    for r in identity_suite(IDENTITY_S[grid_name], a_grid, tol, prec,
                            perturb=perturb, raise_on_violation=False):
        where = f"s={r.s}" + ("" if r.a is None else f" a={r.a}")
        checks.append(Check("identity", f"{r.name} {where}", ctx.convert(r.value),
                            ctx.convert(r.threshold)))

    # Euler's constant by three routes
    gamma = -ctx.convert(digamma_ref(1, prec))
    add("route", "gamma dyadic", ctx.convert(stieltjes_dyadic(0, 1, tol, prec).value) - gamma)
    add("route", "gamma telescope", ctx.convert(euler_gamma_telescope(tol, prec).value) - gamma)
    add("route", "gamma 1-beta(1)", 1 - ctx.convert(brun_beta(1, tol, prec).value) - gamma)

    # Stieltjes: dyadic vs oracle, base-k vs dyadic
    for ell in grid.ells:
        for a in grid.a_stieltjes:
            dy = stieltjes_dyadic(ell, a, tol, prec)
            dv = ctx.convert(dy.value)
            add("oracle", f"stieltjes ell={ell} a={a}", dv - ctx.convert(stieltjes_ref(ell, a, prec)))
            for k in grid.ks:
                bk = stieltjes_base_k(ell, a, k, tol, prec, cross_check=True)
                add("route", f"base-k ell={ell} a={a} k={k}", ctx.convert(bk.value) - dv,
                    ctx.convert(bk.error_bound) + ctx.convert(dy.error_bound))

    # Hurwitz zeta vs oracle, Brun's series vs Hurwitz at a = 1
    for s in grid.s:
        for a in grid.a_zeta:
            z = hurwitz_zeta_series(s, a, tol, prec)
            add("oracle", f"hurwitz s={s} a={a}",
                ctx.convert(z.value) - ctx.convert(hurwitz_zeta_ref(s, a, prec=prec)))
        z1 = hurwitz_zeta_series(s, 1, tol, prec)
        beta = brun_beta(s, tol, prec)
        s_v = ctx.mpf(Fraction(s).numerator) / Fraction(s).denominator
        add("route", f"brun s={s}",
            1 / (s_v - 1) + 1 - ctx.convert(beta.value) - ctx.convert(z1.value),
            ctx.convert(beta.error_bound) + ctx.convert(z1.error_bound) + 8 * ctx.eps)

    # Dirichlet L against Euler-Maclaurin Hurwitz values
    chi4 = DirichletCharacter(4, (1, 0, -1, 0))
    ref = (ctx.convert(hurwitz_zeta_ref(2, "1/4", prec=prec))
           - ctx.convert(hurwitz_zeta_ref(2, "3/4", prec=prec))) / 16
    add("oracle", "dirichlet-l chi4 s=2", ctx.convert(dirichlet_l(2, chi4, tol, prec).value) - ref)
    return checks


def cmd_verify(args, out) -> int:
    prec = _precision(args)
    checks = run_checks(args.grid, args.tol, prec, Fraction(args.perturb))
    width = max(len(c.label) for c in checks)
    failed = 0
    for c in checks:
        failed += not c.passed
        out.write(f"{'PASS' if c.passed else 'FAIL'}  {c.group:<8}  {c.label:<{width}}  "
                  f"residual={_nstr(c.residual, 3):>10}  threshold={_nstr(c.threshold, 3)}\n")
    out.write(f"{len(checks)} checks, {failed} failed\n")
    return EXIT_VERIFY if failed else EXIT_OK


# ----------------------------------------------------------------------- bench

def fit_ratio(ns: Sequence[int], errors: Sequence) -> float:
    """exp of the least-squares slope of log|error| against n."""
    pts = [(n, math.log(float(e))) for n, e in zip(ns, errors) if e > 0]
    if len(pts) < 2:
        return math.nan
    mean_n = sum(n for n, _ in pts) / len(pts)
    mean_y = sum(y for _, y in pts) / len(pts)
    num = sum((n - mean_n) * (y - mean_y) for n, y in pts)
    den = sum((n - mean_n) ** 2 for n, _ in pts)
    return math.exp(num / den)


def profile(method: str, ell: int, a: str, k: int, tol, prec: Precision):
    if method == Method.DYADIC.value:
        res = stieltjes_dyadic(ell, a, tol, prec, record_history=True)
        k = 2
    else:
        res = stieltjes_base_k(ell, a, k, tol, prec, record_history=True)
    final = res.value
    rows = [(n, partial, abs(partial - final), inner) for n, partial, inner in res.report.history]
    # rows near the end sit on the final value; the first few are pre-asymptotic
    # and are dropped when enough remain (fast cases, e.g. ell >= 1 at a = 1,
    # have only a handful of rows)
    fit_rows = [r for r in rows if r[2] > 100 * res.error_bound]
    if len(fit_rows) > 5:
        fit_rows = fit_rows[3:]
    ratio = fit_ratio([r[0] for r in fit_rows], [r[2] for r in fit_rows])
    return k, rows, ratio, res.report.outer_terms


def cmd_bench(args, out) -> int:
    prec = _precision(args)
    cells = [(ell, k) for ell in args.ell for k in args.k]
    results = []
    for ell, k in cells:
        if k < 2:
            raise DomainError(f"k must be >= 2, got {k}")
        results.append((ell,) + profile(args.method, ell, args.a, k, args.tol, prec))
    digits = prec.out_digits
    if args.format == "json":
        doc = [{"method": args.method, "ell": ell, "a": args.a, "k": k,
                "outer_terms": outer, "fitted_ratio": _nstr(ratio, 6),
                "rows": [{"n": n, "partial_value": _nstr(p, digits),
                          "abs_error": _nstr(e, 6), "inner_terms": c}
                         for n, p, e, c in rows]}
               for ell, k, rows, ratio, outer in results]
        out.write(json.dumps(doc, indent=1) + "\n")
        return EXIT_OK
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for ell, k, rows, _, _ in results:
        for n, p, e, c in rows:
            w.writerow((args.method, ell, args.a, k, n, _nstr(p, digits), _nstr(e, 6), c))
    out.write(buf.getvalue())
    for ell, k, _, ratio, outer in results:
        out.write(f"# fitted_ratio method={args.method} ell={ell} a={args.a} k={k} "
                  f"ratio={_nstr(ratio, 6)} outer_terms={outer}\n")
    return EXIT_OK


COMMANDS: dict = {"compute": cmd_compute, "verify": cmd_verify, "bench": cmd_bench}


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except (DomainError, InvalidSequence) as exc:
        err.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except NonConvergence as exc:
        err.write(f"no convergence: {exc}\n")
        return EXIT_NONCONVERGENCE
    except ZetaSeriesError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
