"""Command-line front end.

Subcommands::

    converge       error sweep for one formula, written as CSV
    compare        both formulas side by side plus fitted convergence slopes
    tabulate       approximation vs reference at chosen points
    verify-bounds  numerical check of the auxiliary inequalities

Exit codes: 0 success, 1 computation error, 2 usage error.  Every failure
prints one line starting with ``error:`` on stderr.
"""

import argparse
import math
import sys

import numpy as np

from . import bench, inequalities, maps
from .exceptions import SincError, UsageError
from .sincdiff import build_approximant, evaluate_derivatives, select_params

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _Usage(message)


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {value}")
    return value


def _order(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if not 0 <= value <= bench.ORACLE_MAX_ORDER:
        raise argparse.ArgumentTypeError(f"must be in 0..{bench.ORACLE_MAX_ORDER}, got {value}")
    return value


def _points(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse point list {text!r}") from None


def _add_sweep_options(p, with_formula):
    p.add_argument("--function", required=True, choices=[f.id for f in bench.corpus()])
    if with_formula:
        p.add_argument("--formula", required=True, choices=bench.FORMULAS)
    p.add_argument("--m", type=_order, default=2)
    p.add_argument("--n-min", type=_positive_int, default=5)
    p.add_argument("--n-max", type=_positive_int, default=100)
    p.add_argument("--n-step", type=_positive_int, default=5)
    p.add_argument("--out", required=True, help="output CSV path ('-' for stdout)")


def build_parser():
    parser = _Parser(prog="sincderiv", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("converge", help="error sweep for one formula")
    _add_sweep_options(p, with_formula=True)

    p = sub.add_parser("compare", help="Stenger vs improved sweep")
    _add_sweep_options(p, with_formula=False)

    p = sub.add_parser("tabulate", help="approximation vs reference at given points")
    p.add_argument("--function", required=True, choices=[f.id for f in bench.corpus()])
    p.add_argument("--formula", required=True, choices=bench.FORMULAS)
    p.add_argument("--m", type=_order, default=2)
    p.add_argument("--l", type=_order, default=0)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--points", type=_points, required=True, help="comma separated t values")
    p.add_argument("--out", required=True, help="output CSV path ('-' for stdout)")

    p = sub.add_parser("verify-bounds", help="check the auxiliary inequalities")
    p.add_argument("--grid-size", type=int, default=2001)
    return parser


def _n_list(args):
    if args.n_min > args.n_max:
        raise _Usage(f"--n-min ({args.n_min}) must not exceed --n-max ({args.n_max})")
    return list(range(args.n_min, args.n_max + 1, args.n_step))


def _destination(path):
    return sys.stdout if path == "-" else path


def _converge(args):
    report = bench.run_sweep(args.function, args.formula, args.m, _n_list(args))
    bench.write_csv(report, _destination(args.out))
    return EXIT_OK


def _fmt_slope(value):
    return "n/a" if value is None else f"{value:.4f}"


def _compare(args):
    n_list = _n_list(args)
    reports = {f: bench.run_sweep(args.function, f, args.m, n_list) for f in bench.FORMULAS}
    bench.write_compare_csv(reports["stenger"], reports["improved"], _destination(args.out))
    out = sys.stderr if args.out == "-" else sys.stdout
    print(f"{'formula':<9} {'map':<5} {'d':>6} {'mu':>8} {'theoretical':>12}", file=out)
    for formula, rep in reports.items():
        p = rep.profile
        print(
            f"{formula:<9} {rep.map_id:<5} {p.d:>6.3g} {p.mu:>8.4g} {bench.theoretical_slope(p):>12.4f}",
            file=out,
        )
    print(f"{'l':<3} {'fitted_se':>10} {'fitted_imp':>10}", file=out)
    for l in range(args.m + 1):
        fitted = []
        for formula in bench.FORMULAS:
            try:
                fitted.append(bench.fit_rate(reports[formula], l))
            except bench.FitError:
                fitted.append(None)
        print(f"{l:<3} {_fmt_slope(fitted[0]):>10} {_fmt_slope(fitted[1]):>10}", file=out)
    return EXIT_OK


def _tabulate(args):
    if args.l > args.m:
        raise _Usage(f"--l ({args.l}) must not exceed --m ({args.m})")
    if not args.points:
        raise _Usage("--points must list at least one value")
    fn = bench.get_function(args.function)
    map_spec = maps.MapSpec(fn.map_for(args.formula), args.m)
    points = np.array(args.points, dtype=float)
    for t in points.tolist():
        a, b = map_spec.interval
        if not (math.isfinite(t) and a < t < b):
            raise SincError(f"point t = {t!r} is outside the interval ({a}, {b}) of {fn.id}")
    approx = build_approximant(fn.eval, map_spec, select_params(fn.profile_for(args.formula), args.n, args.m))
    values = evaluate_derivatives(approx, points, args.l)[args.l]
    exact = bench.oracle_derivatives(fn, points, args.l)[args.l]
    comments = [
        f"function: {fn.id}",
        f"formula: {args.formula}",
        f"map: {map_spec.id}",
        f"m: {args.m}",
        f"l: {args.l}",
        f"n: {args.n}",
    ]
    body = [
        [bench.format_float(x) for x in (t, v, e, abs(v - e))]
        for t, v, e in zip(points.tolist(), values.tolist(), exact.tolist())
    ]
    bench.write_table(_destination(args.out), comments, ["t", "approx", "oracle", "abs_error"], body)
    return EXIT_OK


def _verify_bounds(args):
    if args.grid_size < 10:
        raise _Usage(f"--grid-size must be at least 10, got {args.grid_size}")
    failing = []
    for ineq_id in inequalities.INEQUALITY_IDS:
        grid = inequalities.default_grid(ineq_id, args.grid_size)
        violation = inequalities.verify_inequality(ineq_id, grid)
        ok = violation <= inequalities.TOLERANCE
        print(f"{'PASS' if ok else 'FAIL'} {ineq_id} max_violation={violation:.6e}")
        if not ok:
            failing.append(ineq_id)
    if failing:
        print(f"error: inequalities violated: {','.join(failing)}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


_COMMANDS = {
    "converge": _converge,
    "compare": _compare,
    "tabulate": _tabulate,
    "verify-bounds": _verify_bounds,
}


def _one_line(message):
    return " ".join(str(message).split())


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_USAGE
    except (SincError, OSError) as exc:
        print(f"error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
