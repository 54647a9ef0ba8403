"""Command-line front end: ``braidexp <subcommand> [flags]``.

Standard output carries only the report (json or csv); diagnostics go to
standard error.  Exit status is 0 when every check passed (or the run is
report-only), 1 when any check failed and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import biseq, fourier_oracle, group_algebra, kontsevich, series_engine, vassiliev
from ._backend import BACKEND
from .report import CheckReport, exact_str


@dataclass
class RunConfig:
    subcommand: str
    params: dict = field(default_factory=dict)
    format: str = "json"
    seed: int = 0
    tolerance: Optional[float] = None
    backend: str = BACKEND


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _finite_float(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text}")
    return v


def _tol(cfg: RunConfig, default: float) -> float:
    return default if cfg.tolerance is None else cfg.tolerance


# -- subcommands -----------------------------------------------------------


def cmd_tau(args, cfg):
    N = args.window
    t = series_engine.tau(N)
    c = t.window(-N, N)
    antisym = float(np.max(np.abs(c + c[::-1])))
    log = series_engine.tau_via_log_trick(N, N)
    return [
        CheckReport.check("tau antisymmetry max|c_k + c_-k|", antisym, 0.0, 0.0),
        CheckReport.check(
            "tau equals log(1+q) - log(1+p)",
            float(np.max(np.abs(log.window(-N, N) - c))),
            0.0,
            0.0,
            note="exact coefficientwise equality" if log == t else "coefficients differ",
        ),
        CheckReport.check(
            "l2 norm of tau window vs pi/sqrt(3)",
            biseq.l2_norm(t),
            math.pi / math.sqrt(3.0),
            t.tail_bound,
            _tol(cfg, 1e-13),
            note="bound is the l2 tail sqrt(sum_{|k|>N} 1/k^2)",
        ),
    ]


def cmd_exp_check(args, cfg):
    if args.probe > args.window:
        raise UsageError("--probe must not exceed --window")
    return series_engine.verify_exp_tau(args.window, args.terms, args.probe, _tol(cfg, 0.0))


def cmd_parseval(args, cfg):
    theta = fourier_oracle.theta_grid(args.grid)
    tau = series_engine.tau(args.window)
    ones = np.ones_like(theta)
    e1 = np.exp(1j * theta)
    tol = _tol(cfg, 1e-12)
    return [
        fourier_oracle.parseval_check(tau, tau, args.window, theta, theta, "parseval A=B=theta", tol),
        fourier_oracle.parseval_check(tau, biseq.delta(0), args.window, theta, ones, "parseval A=theta B=1", tol),
        fourier_oracle.parseval_check(
            biseq.delta(1), biseq.delta(1), args.window, e1, e1, "parseval A=B=e^(i theta)", tol
        ),
    ]


def cmd_tau_power(args, cfg):
    m, N = args.m, args.window
    tp = fourier_oracle.tau_power(m, N)
    target = fourier_oracle.tau_power_norm_sq(m)
    total = math.fsum(tp.coefficients**2) + tp.tail_bound**2
    reports = [
        CheckReport.check(
            f"|tau^{m}|^2 window sum + analytic tail vs pi^{2 * m}/{2 * m + 1}",
            total,
            target,
            0.0,
            _tol(cfg, 1e-10 * target),
            note=f"analytic tail {tp.tail_bound ** 2!r}",
        )
    ]
    for n in (0, 1):
        exact = fourier_oracle.theta_power_coeff(m, n)
        reports.append(
            CheckReport.check(
                f"c_{n}(tau^{m}) fast path vs exact recursion",
                tp[n],
                exact.evaluate(),
                exact.rounding_bound() + 4 * np.finfo(float).eps * exact.magnitude(),
                _tol(cfg, 0.0),
                note=repr(exact),
            )
        )
    return reports


def cmd_simplex(args, cfg):
    n = args.n
    vol = kontsevich.simplex_volume_exact(n)
    reports = [CheckReport.exact_check(f"simplex volume n={n}", vol, Fraction(1, math.factorial(n)))]
    if args.mc_samples:
        est, se = kontsevich.simplex_volume_mc(n, args.mc_samples, cfg.seed)
        reports.append(
            CheckReport.check(
                f"simplex volume n={n} monte carlo",
                est,
                1.0 / math.factorial(n),
                3.0 * se,
                note=f"{args.mc_samples} samples, seed {cfg.seed}, bound = 3 stderr",
            )
        )
    return reports


def cmd_b_slice(args, cfg):
    m, k = args.m, args.k
    return [
        CheckReport.exact_check(
            f"b_{m}(q^{k})", kontsevich.b_constant_slice(m, k), Fraction(k) ** m / math.factorial(m)
        )
    ]


def _vanishing_order_at_one(e: vassiliev.LaurentElement, cap: int) -> int:
    # order of the zero at q = 1 via derivatives of q^-lo * e
    lo = min(e.support)
    coeffs = {n - lo: c for n, c in e.support.items()}
    for k in range(cap + 1):
        deriv = sum((c * math.perm(j, k) for j, c in coeffs.items()), Fraction(0))
        if deriv != 0:
            return k
    return cap


def cmd_vassiliev_degree(args, cfg):
    try:
        e = vassiliev.LaurentElement.parse(args.coeffs)
    except ValueError as exc:
        raise UsageError(f"--coeffs: {exc}") from exc
    if not e:
        raise UsageError("--coeffs describes the zero element, which lies in every V_d")
    d = vassiliev.vassiliev_degree(e, args.max_check)
    return [
        CheckReport.check(
            "vassiliev degree vs order of vanishing at q=1",
            d,
            _vanishing_order_at_one(e, args.max_check),
            0.0,
            exact={"element": repr(e), "augmentation": exact_str(vassiliev.augmentation(e))},
        )
    ]


def cmd_density(args, cfg):
    w = vassiliev.density_witness(args.n)
    return [
        CheckReport.exact_check(f"augmentation of density witness n={args.n}", vassiliev.augmentation(w), Fraction(0)),
        CheckReport.exact_check(
            f"squared l2 distance to q^0, n={args.n}",
            vassiliev.l2_distance_sq(w, vassiliev.ONE),
            Fraction(1, args.n),
        ),
    ]


def cmd_abel_sum(args, cfg):
    if not 0.0 < args.x < 1.0:
        raise UsageError("--x must lie in (0, 1)")
    rep = vassiliev.abel_twist_sum(args.x, args.max_terms)
    closed = vassiliev.abel_closed_form(args.x)
    return [
        rep,
        CheckReport.check(f"abel twist sum vs 2x/(1+x), x={args.x!r}", rep.computed, closed, 0.0, _tol(cfg, 1e-12)),
    ]


def cmd_p3_probe(args, cfg):
    try:
        rep = group_algebra.l2_product_probe(args.profile, args.s, args.L)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return [rep]


COMMANDS: dict[str, Callable] = {
    "tau": cmd_tau,
    "exp-check": cmd_exp_check,
    "parseval": cmd_parseval,
    "tau-power": cmd_tau_power,
    "simplex": cmd_simplex,
    "b-slice": cmd_b_slice,
    "vassiliev-degree": cmd_vassiliev_degree,
    "density": cmd_density,
    "abel-sum": cmd_abel_sum,
    "p3-probe": cmd_p3_probe,
}


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--format", choices=("json", "csv"), default="json")
    shared.add_argument("--seed", type=int, default=0, help="Monte Carlo seed (default 0)")
    shared.add_argument("--tolerance", type=_finite_float, default=None,
                        help="override the default tolerance of checks without an analytic bound")

    p = _Parser(prog="braidexp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    s = sub.add_parser("tau", parents=[shared], help="build tau and check its basic identities")
    s.add_argument("--window", type=_positive_int, default=2048)

    s = sub.add_parser("exp-check", parents=[shared], help="exp(tau) = q by oracle and direct convolution")
    s.add_argument("--window", type=_positive_int, default=2048)
    s.add_argument("--terms", type=_positive_int, default=40)
    s.add_argument("--probe", type=_nonneg_int, default=16)

    s = sub.add_parser("parseval", parents=[shared], help="Parseval identity on sampled functions")
    s.add_argument("--grid", type=_positive_int, default=4097)
    s.add_argument("--window", type=_positive_int, default=10_000)

    s = sub.add_parser("tau-power", parents=[shared], help="norm identity for tau^m")
    s.add_argument("--m", type=_positive_int, default=2)
    s.add_argument("--window", type=_positive_int, default=100_000)

    s = sub.add_parser("simplex", parents=[shared], help="ordered simplex volume, exact and Monte Carlo")
    s.add_argument("--n", type=_positive_int, default=6)
    s.add_argument("--mc-samples", type=_positive_int, default=None)

    s = sub.add_parser("b-slice", parents=[shared], help="b_m(q^k) for a constant-twist braid")
    s.add_argument("--m", type=_nonneg_int, default=2)
    s.add_argument("--k", type=int, default=1)

    s = sub.add_parser("vassiliev-degree", parents=[shared], help="largest d with (q-1)^d dividing the element")
    s.add_argument("--coeffs", required=True, help='exponent:rational pairs, e.g. "1:1,0:-1"')
    s.add_argument("--max-check", type=_positive_int, default=64)

    s = sub.add_parser("density", parents=[shared], help="V_1 element approaching q^0")
    s.add_argument("--n", type=_positive_int, default=1000)

    s = sub.add_parser("abel-sum", parents=[shared], help="Abel-regularised twist sum")
    s.add_argument("--x", type=_finite_float, default=0.999)
    s.add_argument("--max-terms", type=_positive_int, default=10**8)

    s = sub.add_parser("p3-probe", parents=[shared], help="report-only probe of l2 products in P3")
    s.add_argument("--s", type=_finite_float, default=2.0)
    s.add_argument("--L", type=_nonneg_int, default=6)
    s.add_argument("--profile", choices=group_algebra.PROFILES, default="power")
    return p


def _num(x) -> str:
    if x is None:
        return ""
    return repr(float(x))


def render(cfg: RunConfig, reports: list[CheckReport]) -> str:
    if cfg.format == "json":
        doc = {"run_config": asdict(cfg), "reports": [r.as_dict() for r in reports]}
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "computed", "target", "bound", "passed", "exact"])
    for r in reports:
        passed = "" if r.passed is None else str(r.passed).lower()
        w.writerow([r.name, _num(r.computed), _num(r.target), _num(r.bound), passed, r.exact.get("computed", "")])
    return buf.getvalue()


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        old_err, sys.stderr = sys.stderr, stderr
        try:
            args = parser.parse_args(argv)
        finally:
            sys.stderr = old_err
        params = {k: v for k, v in vars(args).items() if k not in {"subcommand", "format", "seed", "tolerance"}}
        cfg = RunConfig(args.subcommand, params, args.format, args.seed, args.tolerance)
        reports = COMMANDS[args.subcommand](args, cfg)
    except UsageError as exc:
        print(exc, file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    stdout.write(render(cfg, reports))
    failed = [r for r in reports if r.passed is False]
    for r in failed:
        print(f"FAILED: {r.name}: |{r.computed!r} - {r.target!r}| > {max(r.bound, r.tolerance)!r}", file=stderr)
    return 1 if failed else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
