"""Convergence experiments for the two benchmark functions.

Two test functions are provided:

``example1``
    ``f(t) = sqrt(t / (1 + t)) exp(-t) (1 - exp(-t))^2`` on ``(0, inf)``,
    approximated with weight ``g(t) = (1 - exp(-t))^m`` through SE2
    (Stenger) or IMP2 (improved).
``example2``
    ``f(t) = 1 / ((4 + t^2)(1 + exp(pi t / 2)))`` on the real line,
    approximated through SE4 (Stenger) or IMP4 (improved), weight 1.

Errors are absolute errors, maximised over fixed dyadic evaluation grids.
The reference derivatives come from jet propagation through the closed-form
expressions; they do not touch the map or Sinc machinery.
"""

import csv
import io
import math
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, Tuple

import numpy as np

from . import jets, maps
from .exceptions import DomainError, SincError, UsageError
from .sincdiff import DecayProfile, build_approximant, evaluate_derivatives, select_params

FORMULAS = ("stenger", "improved")
ROUNDOFF_FLOOR = 1e-12
DEFAULT_N_LIST = tuple(range(5, 101, 5))
DEFAULT_FIT_WINDOW = (10, 60)
ORACLE_MAX_ORDER = 4


class SweepError(SincError):
    """A sweep aborted; carries the offending resolution, point and order."""

    def __init__(self, message, n=None, t=None, l=None):
        super().__init__(message)
        self.n = n
        self.t = t
        self.l = l


class FitError(UsageError):
    """Not enough above-floor rows to fit a convergence rate."""


@dataclass(frozen=True)
class TestFunction:
    id: str
    interval: Tuple[float, float]
    eval: Callable = field(repr=False)
    eval_jet: Callable = field(repr=False)
    profile_se: DecayProfile
    profile_imp: DecayProfile
    map_se: maps.MapId
    map_imp: maps.MapId

    __test__ = False  # not a pytest class

    def map_for(self, formula):
        return self.map_se if _check_formula(formula) == "stenger" else self.map_imp

    def profile_for(self, formula):
        return self.profile_se if _check_formula(formula) == "stenger" else self.profile_imp


def _check_formula(formula):
    if formula not in FORMULAS:
        raise UsageError(f"formula must be one of {FORMULAS}, got {formula!r}")
    return formula


def _example1(t):
    t = np.asarray(t, dtype=float)
    out = np.sqrt(t / (1.0 + t)) * np.exp(-t) * np.expm1(-t) ** 2
    return float(out) if out.ndim == 0 else out


def _example1_jet(t, K):
    x = jets.jet_variable(t, K)
    return jets.sqrt(x / (1.0 + x)) * jets.exp(-x) * jets.expm1(-x) ** 2


def _example2(t):
    t = np.asarray(t, dtype=float)
    with np.errstate(over="ignore"):
        e = np.exp(-0.5 * math.pi * np.abs(t))
    # for t > 0 multiply through by exp(-pi t / 2) so large t underflows to 0
    numer = np.where(t > 0, e, 1.0)
    out = numer / ((4.0 + t * t) * (1.0 + e))
    return float(out) if out.ndim == 0 else out


def _example2_jet(t, K):
    x = jets.jet_variable(t, K)

    def right(u):
        e = jets.exp(-0.5 * math.pi * u)
        return e / ((4.0 + u * u) * (1.0 + e))

    def left(u):
        return 1.0 / ((4.0 + u * u) * (1.0 + jets.exp(0.5 * math.pi * u)))

    return jets.piecewise(x, x.coeffs[0] > 0, right, left, 1.0, 0.0)


EXAMPLE1 = TestFunction(
    id="example1",
    interval=(0.0, math.inf),
    eval=_example1,
    eval_jet=_example1_jet,
    profile_se=DecayProfile(alpha=0.5, beta=1.0, d=1.57),
    profile_imp=DecayProfile(alpha=0.5, beta=1.0, d=3.14),
    map_se=maps.SE2,
    map_imp=maps.IMP2,
)

EXAMPLE2 = TestFunction(
    id="example2",
    interval=(-math.inf, math.inf),
    eval=_example2,
    eval_jet=_example2_jet,
    profile_se=DecayProfile(alpha=2.0, beta=math.pi / 4, d=1.57),
    profile_imp=DecayProfile(alpha=2.0, beta=math.pi / 2, d=2.07),
    map_se=maps.SE4,
    map_imp=maps.IMP4,
)

_CORPUS = {f.id: f for f in (EXAMPLE1, EXAMPLE2)}


def corpus():
    return (EXAMPLE1, EXAMPLE2)


def get_function(fid):
    if isinstance(fid, TestFunction):
        return fid
    try:
        return _CORPUS[fid]
    except KeyError:
        raise UsageError(f"unknown function {fid!r}; expected one of {sorted(_CORPUS)}") from None


def evaluation_grid(fid):
    """Dyadic evaluation points: ``2^i`` (example1) or ``+-2^i`` and 0 (example2), ``|i| <= 50``."""
    fid = get_function(fid).id
    powers = np.ldexp(1.0, np.arange(-50, 51))
    if fid == "example1":
        return powers
    return np.concatenate([-powers[::-1], [0.0], powers])


def _check_in_interval(fn, t):
    a, b = fn.interval
    t = np.asarray(t, dtype=float)
    bad = ~(np.isfinite(t) & (t > a) & (t < b))
    if np.any(bad):
        value = float(t[bad].ravel()[0]) if t.ndim else float(t)
        raise DomainError(f"t = {value!r} is outside the interval of {fn.id}", value=value)


def oracle_derivatives(fid, t, L):
    """Exact derivatives of order ``0..L`` at ``t`` from jet propagation."""
    fn = get_function(fid)
    if int(L) != L or not 0 <= L <= ORACLE_MAX_ORDER:
        raise UsageError(f"oracle order must be in 0..{ORACLE_MAX_ORDER}, got {L!r}")
    _check_in_interval(fn, t)
    return jets.jet_derivatives(fn.eval_jet(np.asarray(t, dtype=float), int(L)))


def oracle_derivative(fid, l, t):
    values = oracle_derivatives(fid, t, l)[l]
    return float(values) if np.ndim(values) == 0 else values


@dataclass(frozen=True)
class SweepRow:
    n: int
    h: float
    M: int
    N: int
    errors: Tuple[float, ...]


@dataclass(frozen=True)
class ErrorReport:
    function_id: str
    formula: str
    m: int
    rows: Tuple[SweepRow, ...]
    grid_id: str
    profile: DecayProfile
    map_id: str = ""
    timestamp: str = ""

    def errors(self, l):
        return np.array([row.errors[l] for row in self.rows])

    def ns(self):
        return np.array([row.n for row in self.rows])


def run_sweep(fid, formula, m, n_list=DEFAULT_N_LIST, grid=None):
    """Maximum absolute error over the evaluation grid for each ``n`` and order ``0..m``."""
    fn = get_function(fid)
    _check_formula(formula)
    n_list = [int(n) for n in n_list]
    if not n_list:
        raise UsageError("n_list must not be empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise UsageError("n_list must be strictly ascending")
    if m > ORACLE_MAX_ORDER:
        raise UsageError(f"m must be at most {ORACLE_MAX_ORDER}")
    map_spec = maps.MapSpec(fn.map_for(formula), m)
    profile = fn.profile_for(formula)
    grid_id = fn.id if grid is None else "custom"
    grid = evaluation_grid(fn) if grid is None else np.asarray(grid, dtype=float)
    exact = oracle_derivatives(fn, grid, m)

    rows = []
    for n in n_list:
        params = select_params(profile, n, m)
        try:
            approx = build_approximant(fn.eval, map_spec, params)
            values = evaluate_derivatives(approx, grid, m)
        except SincError as exc:
            t = getattr(exc, "t", None) or getattr(exc, "value", None)
            raise SweepError(f"sweep failed at n = {n}: {exc}", n=n, t=t) from exc
        diff = np.abs(values - exact)
        bad = ~np.isfinite(diff)
        if bad.any():
            l, i = np.argwhere(bad)[0]
            raise SweepError(
                f"non-finite error at n = {n}, t = {grid[i]!r}, l = {l}", n=n, t=float(grid[i]), l=int(l)
            )
        rows.append(SweepRow(n, params.h, params.M, params.N, tuple(float(e) for e in diff.max(axis=1))))

    return ErrorReport(
        function_id=fn.id,
        formula=formula,
        m=int(m),
        rows=tuple(rows),
        grid_id=grid_id,
        profile=profile,
        map_id=str(map_spec.id),
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )


def fit_rate(report, l, n_window=DEFAULT_FIT_WINDOW, floor=ROUNDOFF_FLOOR):
    """Least-squares slope of ``log(error)`` against ``sqrt(n)`` inside ``n_window``.

    Rows at or below ``floor`` are ignored.
    """
    lo, hi = n_window
    ns, errs = [], []
    for row in report.rows:
        if lo <= row.n <= hi and row.errors[l] > floor:
            ns.append(row.n)
            errs.append(row.errors[l])
    if len(ns) < 3:
        raise FitError(f"need at least 3 rows above {floor:g} in n in [{lo}, {hi}], found {len(ns)}")
    slope, _ = np.polyfit(np.sqrt(ns), np.log(errs), 1)
    return float(slope)


def theoretical_slope(profile):
    """``-sqrt(pi d mu)``: the exponent of the root-exponential error bound."""
    return -math.sqrt(math.pi * profile.d * profile.mu)


# CSV ------------------------------------------------------------------------

def format_float(x):
    return f"{x:.16e}"


def _metadata(report):
    p = report.profile
    return [
        f"function: {report.function_id}",
        f"formula: {report.formula}",
        f"map: {report.map_id}",
        f"m: {report.m}",
        f"grid: {report.grid_id}",
        f"profile: alpha={p.alpha!r}, beta={p.beta!r}, d={p.d!r}",
    ]


def _open_for_write(destination):
    if hasattr(destination, "write"):
        return destination, False
    try:
        return open(destination, "w", newline="", encoding="utf-8"), True
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {os.fspath(destination)}: {exc.strerror}") from exc


def write_table(destination, comments, header, body):
    fh, close = _open_for_write(destination)
    try:
        for line in comments:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(body)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write CSV to {destination}: {exc.strerror}") from exc
    finally:
        if close:
            fh.close()


def report_header(m, suffix=""):
    cols = ["h", "M", "N"] + [f"err_l{l}" for l in range(m + 1)]
    return [c + suffix for c in cols]


def _row_fields(row):
    return [format_float(row.h), str(row.M), str(row.N)] + [format_float(e) for e in row.errors]


def write_csv(report, destination):
    """Write one report.  Only the ``# timestamp`` line varies between identical runs."""
    comments = _metadata(report) + [f"timestamp: {report.timestamp}"]
    header = ["n"] + report_header(report.m)
    body = [[str(row.n)] + _row_fields(row) for row in report.rows]
    write_table(destination, comments, header, body)


def write_compare_csv(stenger, improved, destination):
    """Merge a Stenger and an improved report over the same ``n`` values."""
    if [r.n for r in stenger.rows] != [r.n for r in improved.rows] or stenger.m != improved.m:
        raise UsageError("reports must share m and n values to be merged")
    comments = [
        f"function: {stenger.function_id}",
        f"m: {stenger.m}",
        f"grid: {stenger.grid_id}",
    ]
    for tag, rep in (("se", stenger), ("imp", improved)):
        p = rep.profile
        comments.append(f"{tag}: map={rep.map_id}, alpha={p.alpha!r}, beta={p.beta!r}, d={p.d!r}")
    comments.append(f"timestamp: {stenger.timestamp}")
    header = ["n"] + report_header(stenger.m, "_se") + report_header(improved.m, "_imp")
    body = [
        [str(a.n)] + _row_fields(a) + _row_fields(b) for a, b in zip(stenger.rows, improved.rows)
    ]
    write_table(destination, comments, header, body)


def read_csv(source):
    """Parse a CSV written by this module into ``(metadata, header, rows)``.

    Integer columns (``n``, ``M``, ``N`` and suffixed variants) become ints,
    everything else floats.
    """
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    metadata = {}
    lines = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(":")
            metadata[key.strip()] = value.strip()
        elif line:
            lines.append(line)
    if not lines:
        return metadata, [], []
    reader = csv.reader(io.StringIO("\n".join(lines)))
    header = next(reader)
    is_int = [c.split("_")[0] in ("n", "M", "N") for c in header]
    rows = [[int(v) if flag else float(v) for v, flag in zip(rec, is_int)] for rec in reader]
    return metadata, header, rows
