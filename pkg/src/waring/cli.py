"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or data error,
3 operation budget exceeded.
"""

import argparse
import random
import sys
from contextlib import contextmanager
from decimal import Decimal, InvalidOperation
from fractions import Fraction

import numpy as np

from . import acceptance, arcs, bounds, exponents, expsums, oracles
from .errors import DEFAULT_BUDGET, BudgetExceeded, ConvergenceError, DataError, PreconditionError
from .smoothset import (
    SmoothContext,
    enumerate_kernel_divisors,
    enumerate_kernel_divisors_above,
    enumerate_smooth,
    enumerate_vaughan_block,
    primes_upto,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class VerificationFailed(Exception):
    pass


def rational(text):
    """Parse ``p/q`` or an integer exactly; decimals are converted with a warning."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        value = Fraction(Decimal(text))
    except (InvalidOperation, ValueError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    print(f"warning: decimal {text} read as {value}", file=sys.stderr)
    return value


def k_range(text):
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def int_list(text):
    return [int(x) for x in text.split(",") if x]


def rational_list(text):
    return [rational(x) for x in text.split(",") if x]


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _fmt(x):
    if isinstance(x, complex):
        return f"{x.real:.12g},{x.imag:.12g}"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


# -- subcommands --------------------------------------------------------------

def cmd_constants(args, out):
    c = exponents.constants()
    out.write("name,value\n")
    for name in ("omega", "C1", "C2", "delta_at_gamma1", "gamma_star"):
        out.write(f"{name},{getattr(c, name):.10f}\n")


def cmd_omega(args, out):
    w = exponents.solve_omega()
    out.write(f"omega,{w:.12f}\nresidual,{abs(exponents.omega_equation(w)):.3e}\n")


def cmd_delta(args, out):
    if args.mode == "table":
        d = exponents.load_exponent_table().delta(args.k, int(args.v))
        if d is None:
            raise DataError(f"no tabulated exponent for k={args.k}, s={args.v}")
        out.write(f"k,v,delta,source\n{args.k},{args.v},{d},table\n")
        return
    if args.v != int(args.v) or int(args.v) % 2:
        print("warning: the formula exponent is only asserted for even v", file=sys.stderr)
    d = exponents.solve_delta_formula(args.k, args.v)
    out.write(f"k,v,delta,source\n{args.k},{args.v:g},{d:.10f},formula\n")


def _table(args):
    return exponents.load_exponent_table() if args.mode == "table" else None


def cmd_tau(args, out):
    t = exponents.tau(args.k, args.mode, _table(args))
    out.write("k,tau,T,order,source\n")
    out.write(f"{t.k},{t.tau:.12g},{t.T:.6f},{t.argmax_even_order},{t.source}\n")


def cmd_delta_star(args, out):
    table = exponents.load_exponent_table()
    tau_val = args.tau if args.tau is not None else exponents.tau(args.k, args.mode, _table(args)).tau
    cands = exponents.delta_star_candidates(args.k, args.s, tau_val, table)
    best = min(v for _, v in cands)
    if args.candidates:
        out.write("t,value\n")
        for t, v in cands:
            out.write(f"{t},{v:.10f}\n")
    else:
        out.write(f"k,s,tau,delta_star\n{args.k},{args.s},{tau_val:.12g},{best:.10f}\n")


def cmd_g0(args, out):
    value, v = bounds.g0(args.k, args.mode, _table(args))
    out.write(f"k,G0,v,bound\n{args.k},{value:.6f},{v},{bounds.g_upper(args.k, args.mode, _table(args))}\n")


def cmd_bounds(args, out):
    ks = args.range if args.range else [args.k]
    out.write(bounds.format_report_csv(bounds.table_report(ks, args.mode)))


def cmd_smooth(args, out):
    if args.pi is not None:
        if args.M is not None:
            vals = enumerate_vaughan_block(args.M, args.pi, args.R)
        else:
            vals = enumerate_kernel_divisors_above(args.P, args.R, args.q or 1, args.pi)
    elif args.q is not None:
        vals = enumerate_kernel_divisors(args.P, args.R, args.q)
    else:
        vals = enumerate_smooth(args.P, args.R)
    out.write("\n".join(map(str, vals)) + ("\n" if vals else ""))


def cmd_weyl(args, out):
    ctx = SmoothContext(args.k, args.P, args.R)
    f = expsums.weyl_sum(args.alpha, ctx)
    out.write(f"alpha,re,im,abs\n{args.alpha},{f.real:.12g},{f.imag:.12g},{abs(f):.12g}\n")


def _verify_identity(args, out):
    ctx = SmoothContext(args.k, args.P, args.R)
    M = args.M if args.M is not None else args.R
    rng = np.random.default_rng(args.seed)
    alphas = rng.random(args.samples)
    atol = expsums.identity_atol(ctx)
    if args.lemma == "3.1":
        worst = expsums.lemma31_residuals(alphas, ctx, M, args.q).max()
    elif args.lemma == "3.3":
        worst = expsums.lemma33_residuals(alphas, ctx, M, args.q).max()
    else:
        pairs = ([(args.m, args.pi)] if args.m is not None and args.pi is not None else
                 [(m, pi) for pi in primes_upto(args.R) for m in enumerate_vaughan_block(M, pi, args.R)])
        worst = 0.0
        for m, pi in pairs:
            worst = max(worst, expsums.lemma41_residuals(alphas, ctx, m, args.q, pi).max())
    out.write(f"lemma,samples,worst_residual,tolerance\n{args.lemma},{args.samples},{worst:.3e},{atol:.3e}\n")
    if not worst < atol:
        raise VerificationFailed(f"residual {worst:.3e} exceeds {atol:.3e}")


def _verify_rescaling(args, out):
    rnd = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        deg = rnd.randint(0, 5)
        F = {h: complex(rnd.uniform(-1, 1), rnd.uniform(-1, 1)) for h in range(-deg, deg + 1)}
        _, _, res = arcs.verify_lemma23(F, args.q, args.w, args.Q, args.P, args.k)
        worst = max(worst, res)
    lhs, rhs = arcs.lemma23_measures(args.q, args.w, args.Q, args.P, args.k)
    out.write(f"lemma,samples,worst_residual,measure_lhs,measure_rhs\n"
              f"2.3,{args.samples},{worst:.3e},{lhs},{rhs}\n")
    if not (worst < 1e-12 and lhs == rhs):
        raise VerificationFailed("rescaling identity failed")


def cmd_verify(args, out):
    if args.lemma == "2.3":
        if args.Q is None:
            raise PreconditionError("--Q is required for the rescaling check")
        _verify_rescaling(args, out)
    else:
        _verify_identity(args, out)


def cmd_arcs(args, out):
    region = arcs.dyadic_shell(args.Q, args.P, args.k) if args.shell else arcs.major_arcs(args.Q, args.P, args.k)
    out.write("num_lo,den_lo,num_hi,den_hi\n")
    for line in region.to_csv_lines():
        out.write(line + "\n")
    print(f"measure {region.measure()}", file=sys.stderr)


def cmd_moment(args, out):
    ctx = SmoothContext(args.k, args.P, args.R)
    if args.region_Q is None:
        res = oracles.moment_complete_even(args.t, ctx, args.budget)
    elif args.quadrature:
        res = oracles.moment_quadrature(2 * args.t, ctx, arcs.major_arcs(args.region_Q, args.P, args.k))
    else:
        res = oracles.moment_restricted_even(args.t, ctx, arcs.major_arcs(args.region_Q, args.P, args.k),
                                             args.budget)
    value = str(res.exact) if res.exact is not None else f"{res.value:.12g}"
    out.write(f"value,method,error_estimate\n{value},{res.method},{res.error_estimate:.3e}\n")


def cmd_reps(args, out):
    if args.smooth_P is not None:
        ctx = SmoothContext(args.k, args.smooth_P, args.smooth_R or args.smooth_P)
        r = oracles.count_smooth_representations(args.n, args.s, ctx)
    else:
        r = oracles.count_representations(args.n, args.s, args.k)
    out.write(f"{r}\n")


def cmd_gauss(args, out):
    S = oracles.gauss_sum(args.q, args.a, args.k)
    out.write(f"re,im\n{S.real:.12g},{S.imag:.12g}\n")


def cmd_singular(args, out):
    out.write(f"{oracles.singular_series_truncated(args.n, args.s, args.k, args.X):.12g}\n")


def cmd_scaling_report(args, out):
    first = True
    for P in args.P_list:
        ctx = SmoothContext(args.k, P, args.R)
        rows = oracles.scaling_rows(args.s, ctx, args.delta, args.Q_grid, args.budget)
        text = oracles.format_scaling_csv(rows)
        out.write(text if first else text.split("\n", 1)[1])
        first = False


def cmd_selftest(args, out):
    results = acceptance.run_all()
    for r in results:
        out.write(r.line() + "\n")
    if not all(r.passed for r in results):
        raise VerificationFailed("acceptance suite failed")


# -- parser -------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = argparse.ArgumentParser(prog="waring", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    def mode(sp, default="formula"):
        sp.add_argument("--mode", choices=("formula", "table"), default=default)

    add("constants", cmd_constants)
    add("omega", cmd_omega)

    sp = add("delta", cmd_delta)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--v", type=float, required=True)
    mode(sp)

    sp = add("tau", cmd_tau)
    sp.add_argument("--k", type=int, required=True)
    mode(sp)

    sp = add("delta-star", cmd_delta_star)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--tau", type=float, default=None)
    sp.add_argument("--candidates", action="store_true")
    mode(sp, "table")

    sp = add("g0", cmd_g0)
    sp.add_argument("--k", type=int, required=True)
    mode(sp)

    sp = add("bounds", cmd_bounds)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--range", type=k_range)
    mode(sp, "table")

    sp = add("smooth", cmd_smooth)
    sp.add_argument("--P", type=rational, required=True)
    sp.add_argument("--R", type=int, required=True)
    sp.add_argument("--q", type=int)
    sp.add_argument("--pi", type=int)
    sp.add_argument("--M", type=int, help="with --pi: list the block (M, M pi]")

    sp = add("weyl", cmd_weyl)
    sp.add_argument("--alpha", type=rational, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--R", type=int, required=True)

    sp = add("verify", cmd_verify)
    sp.add_argument("--lemma", choices=("2.3", "3.1", "3.3", "4.1"), required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--R", type=int, default=2)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--M", type=int)
    sp.add_argument("--m", type=int)
    sp.add_argument("--pi", type=int)
    sp.add_argument("--w", type=int, default=1)
    sp.add_argument("--Q", type=rational)
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("arcs", cmd_arcs)
    sp.add_argument("--Q", type=rational, required=True)
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--shell", action="store_true")

    sp = add("moment", cmd_moment)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--P", type=int, required=True)
    sp.add_argument("--R", type=int, required=True)
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--region-Q", dest="region_Q", type=rational)
    sp.add_argument("--quadrature", action="store_true")

    sp = add("reps", cmd_reps)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--smooth-P", dest="smooth_P", type=int)
    sp.add_argument("--smooth-R", dest="smooth_R", type=int)

    sp = add("gauss", cmd_gauss)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("singular", cmd_singular)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--X", type=int, required=True)

    sp = add("scaling-report", cmd_scaling_report)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--s", type=int, default=6)
    sp.add_argument("--P-list", dest="P_list", type=int_list, default=[20, 30, 40])
    sp.add_argument("--Q-grid", dest="Q_grid", type=rational_list, default=None,
                    help="comma-separated heights (default: powers of 2 up to P)")
    sp.add_argument("--R", type=int, default=5)
    sp.add_argument("--delta", type=float, default=None,
                    help="exponent in the predictor (default max(0, k - s/2))")

    add("selftest", cmd_selftest)
    return p


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "budget", 1) <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "scaling-report" and args.delta is None:
        args.delta = max(0.0, args.k - args.s / 2)
    try:
        with _output(args.out) as out:
            args.func(args, out)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ConvergenceError as exc:
        print(f"did not converge: {exc} (best estimate {exc.estimate})", file=sys.stderr)
        return EXIT_VERIFY
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
