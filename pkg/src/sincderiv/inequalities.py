"""Constant-free inequalities behind the error analysis, checked on real grids.

Each check returns ``max(lhs - rhs)`` over the grid; a value at or below
:data:`TOLERANCE` counts as a pass.

``log_ratio``   ``L / (1 + L) <= 1 / (1 + exp(-x))`` with ``L = log(1 + exp(x))``, x real
``sub_ineq``    ``1 / ((1 - exp(-p(t))) sqrt(4 + t^2)) <= 1 / (2 (1 - exp(-1/2)))``, t real
``dd_plus``     ``exp(1 / log(1 + exp(x))) <= exp(1 / log 2)``, x >= 0
``dd_minus``    ``|1 / (log(1 + exp(x)) - 1)| <= 1 / (1 - log 2)``, x < 0
``fg2_decay``   ``|f(t) / g(t)| <= (t / (1 + t))^(1/2) exp(-t)`` for the first benchmark
                function with ``g(t) = (1 - exp(-t))^2``, t > 0
"""

import math

import numpy as np

from .bench import EXAMPLE1
from .exceptions import UsageError

TOLERANCE = 1e-12
INEQUALITY_IDS = ("log_ratio", "sub_ineq", "dd_plus", "dd_minus", "fg2_decay")

_DOMAINS = {
    "log_ratio": "real",
    "sub_ineq": "real",
    "dd_plus": "nonnegative",
    "dd_minus": "negative",
    "fg2_decay": "positive",
}


def _softplus(x):
    return np.where(x > 0, x + np.log1p(np.exp(-np.abs(x))), np.log1p(np.exp(np.minimum(x, 0.0))))


def _p(t):
    r = np.sqrt(4.0 + t * t)
    return np.where(t >= 0, 0.5 * (t + r), 2.0 / (r - t))


def _log_ratio(x):
    L = _softplus(x)
    lhs = np.abs(L / (1.0 + L))
    rhs = 1.0 / (1.0 + np.exp(-np.maximum(x, -700.0)))
    return lhs, rhs


def _sub_ineq(t):
    lhs = 1.0 / (-np.expm1(-_p(t)) * np.sqrt(4.0 + t * t))
    rhs = 1.0 / (2.0 * (-math.expm1(-0.5)))
    return lhs, np.full_like(lhs, rhs)


def _dd_plus(x):
    lhs = np.exp(1.0 / _softplus(x))
    return lhs, np.full_like(lhs, math.exp(1.0 / math.log(2.0)))


def _dd_minus(x):
    lhs = np.abs(1.0 / (_softplus(x) - 1.0))
    return lhs, np.full_like(lhs, 1.0 / (1.0 - math.log(2.0)))


def _fg2_decay(t):
    alpha, beta = EXAMPLE1.profile_imp.alpha, EXAMPLE1.profile_imp.beta
    f = np.asarray(EXAMPLE1.eval(t), dtype=float)
    g = np.expm1(-t) ** 2
    lhs = np.abs(f / g)
    rhs = (t / (1.0 + t)) ** alpha * np.exp(-t) ** beta
    return lhs, rhs


_CHECKS = {
    "log_ratio": _log_ratio,
    "sub_ineq": _sub_ineq,
    "dd_plus": _dd_plus,
    "dd_minus": _dd_minus,
    "fg2_decay": _fg2_decay,
}


def _check_domain(ineq_id, grid):
    domain = _DOMAINS[ineq_id]
    if not np.all(np.isfinite(grid)):
        raise UsageError("grid must be finite")
    if domain == "nonnegative" and np.any(grid < 0):
        raise UsageError(f"{ineq_id} is stated for x >= 0")
    if domain == "negative" and np.any(grid >= 0):
        raise UsageError(f"{ineq_id} is stated for x < 0")
    if domain == "positive" and np.any(grid <= 0):
        raise UsageError(f"{ineq_id} is stated for t > 0")


def verify_inequality(ineq_id, grid):
    """Largest ``lhs - rhs`` over ``grid``; at most :data:`TOLERANCE` means the bound holds."""
    if ineq_id not in _CHECKS:
        raise UsageError(f"unknown inequality {ineq_id!r}; expected one of {INEQUALITY_IDS}")
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise UsageError("grid must not be empty")
    _check_domain(ineq_id, grid)
    lhs, rhs = _CHECKS[ineq_id](grid)
    return float(np.max(lhs - rhs))


def default_grid(ineq_id, size=2001, lo=-10.0, hi=3.0):
    """``size`` log-spaced points (magnitudes ``10**lo .. 10**hi``) covering the stated domain."""
    if ineq_id not in _DOMAINS:
        raise UsageError(f"unknown inequality {ineq_id!r}; expected one of {INEQUALITY_IDS}")
    if size < 3:
        raise UsageError("grid size must be at least 3")
    domain = _DOMAINS[ineq_id]
    if domain == "real":
        half = np.logspace(lo, hi, (size - 1) // 2)
        pos = np.logspace(lo, hi, size - 1 - half.size)
        return np.concatenate([-half[::-1], [0.0], pos])
    if domain == "nonnegative":
        return np.concatenate([[0.0], np.logspace(lo, hi, size - 1)])
    if domain == "negative":
        return -np.logspace(lo, hi, size)[::-1]
    return np.logspace(lo, hi, size)


def verify_all(size=2001):
    """``{id: max_violation}`` for every inequality on its default grid."""
    return {i: verify_inequality(i, default_grid(i, size)) for i in INEQUALITY_IDS}
