"""Truncated Taylor (jet) arithmetic.

A :class:`Jet` stores the scaled derivatives ``c_j = F^(j)(x0) / j!`` of a
function at an anchor ``x0``, up to a fixed order ``K``.  Arithmetic and the
elementary functions below act on these coefficient sequences with the usual
Taylor-mode recurrences, so composing jets carries derivatives through an
expression exactly as Faa di Bruno's partition sum would, without ever
enumerating partitions.

Coefficients are numpy arrays of shape ``(K + 1, *batch)``.  The trailing
batch dimensions let a single jet hold many independent expansions (one per
evaluation point, one per Sinc node, ...) that are propagated together; every
operation is elementwise in the batch.  A scalar jet simply has an empty
batch shape.

Jets are immutable: the coefficient array is copied on construction and
marked read-only.
"""

import math

import numpy as np

from .exceptions import SingularityError, UsageError

MAX_ORDER = 8

# Below this magnitude the sinc kernel switches to its even power series.
SINC_SERIES_RADIUS = 0.25
SINC_SERIES_TERMS = 10
SINC_QUADRATURE_RADIUS = 8.0

_DIV_GUARD = np.finfo(float).tiny
_FACTORIALS = np.array([float(math.factorial(j)) for j in range(21)])
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(40)
_GL_NODES, _GL_WEIGHTS = 0.5 * (_GL_NODES + 1.0), 0.5 * _GL_WEIGHTS
_SINC_SERIES = [(-1.0) ** i / math.factorial(2 * i + 1) for i in range(SINC_SERIES_TERMS + 1)]


def _first(values):
    values = np.asarray(values)
    return float(values.ravel()[0]) if values.size else float("nan")


class Jet:
    """Truncated Taylor expansion of a function at ``anchor``.

    Parameters
    ----------
    anchor : float or ndarray
        Expansion point(s). Only used for compatibility checks.
    coeffs : array_like, shape (K + 1, ...)
        Taylor coefficients, ``coeffs[j] = F^(j)(anchor) / j!``.
    """

    __slots__ = ("_anchor", "_coeffs")

    def __init__(self, anchor, coeffs):
        coeffs = np.array(coeffs, dtype=float)
        if coeffs.ndim == 0:
            raise UsageError("jet coefficients need at least one entry")
        if coeffs.shape[0] - 1 > len(_FACTORIALS) - 1:
            raise UsageError(f"jet order {coeffs.shape[0] - 1} is too large")
        finite = np.isfinite(coeffs)
        if not finite.all():
            bad = np.argwhere(~finite)[0]
            raise SingularityError(
                f"non-finite Taylor coefficient of order {bad[0]}", c0=_first(coeffs[0])
            )
        coeffs.flags.writeable = False
        anchor = np.array(anchor, dtype=float)
        anchor.flags.writeable = False
        self._anchor = anchor if anchor.ndim else float(anchor)
        self._coeffs = coeffs

    @property
    def anchor(self):
        return self._anchor

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def order(self):
        return self._coeffs.shape[0] - 1

    @property
    def value(self):
        """Order-0 coefficient (the function value)."""
        c0 = self._coeffs[0]
        return float(c0) if c0.ndim == 0 else c0

    def derivatives(self):
        return jet_derivatives(self)

    def with_c0(self, c0):
        """Copy of the jet with its constant term replaced."""
        coeffs = self._coeffs.copy()
        coeffs[0] = c0
        return Jet(self._anchor, coeffs)

    def __repr__(self):
        return f"Jet(anchor={self._anchor!r}, coeffs={self._coeffs.tolist()!r})"

    # arithmetic ------------------------------------------------------------

    def _lift(self, other):
        coeffs = np.zeros_like(self._coeffs) + np.zeros_like(np.asarray(other, dtype=float))
        coeffs[0] = other
        return Jet(self._anchor, coeffs)

    def __add__(self, other):
        if isinstance(other, Jet):
            return jet_arith(self, other, "add")
        coeffs = self._coeffs.copy() + np.zeros_like(np.asarray(other, dtype=float))
        coeffs[0] = coeffs[0] + other
        return Jet(self._anchor, coeffs)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return jet_arith(self, other, "sub")
        return self + (-np.asarray(other, dtype=float))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Jet(self._anchor, -self._coeffs)

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_arith(self, other, "mul")
        return Jet(self._anchor, self._coeffs * np.asarray(other, dtype=float))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return jet_arith(self, other, "div")
        return Jet(self._anchor, self._coeffs / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return jet_arith(self._lift(other), self, "div")

    def __pow__(self, r):
        return pow_real(self, r)


def jet_variable(x0, K, max_order=MAX_ORDER):
    """Jet of the identity function at ``x0``: coefficients ``(x0, 1, 0, ...)``."""
    K = _check_order(K, max_order)
    x0 = np.asarray(x0, dtype=float)
    coeffs = np.zeros((K + 1,) + x0.shape)
    coeffs[0] = x0
    if K >= 1:
        coeffs[1] = 1.0
    return Jet(x0, coeffs)


def jet_constant(value, anchor, K, max_order=MAX_ORDER):
    """Jet of a constant function."""
    K = _check_order(K, max_order)
    value = np.asarray(value, dtype=float)
    shape = np.broadcast_shapes(value.shape, np.shape(anchor))
    coeffs = np.zeros((K + 1,) + shape)
    coeffs[0] = value
    return Jet(anchor, coeffs)


def _check_order(K, max_order):
    if int(K) != K or K < 0:
        raise UsageError(f"jet order must be a nonnegative integer, got {K!r}")
    if K > max_order:
        raise UsageError(f"jet order {K} exceeds the configured maximum {max_order}")
    return int(K)


def _check_compatible(a, b):
    if a.order != b.order:
        raise UsageError(f"jet order mismatch: {a.order} vs {b.order}")
    if not np.array_equal(a.anchor, b.anchor):
        raise UsageError("jet anchor mismatch")


def _cauchy(a, b, K):
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for k in range(K + 1):
        acc = a[0] * b[k]
        for j in range(1, k + 1):
            acc = acc + a[j] * b[k - j]
        out[k] = acc
    return out


def _divide(a, b, K):
    b0 = b[0]
    if np.any(np.abs(b0) < _DIV_GUARD):
        bad = np.asarray(b0)[np.abs(b0) < _DIV_GUARD]
        raise SingularityError("jet division by a (near-)zero constant term", c0=_first(bad))
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
    for k in range(K + 1):
        acc = a[k]
        for j in range(1, k + 1):
            acc = acc - b[j] * out[k - j]
        out[k] = acc / b0
    return out


def jet_arith(a, b, op):
    """Combine two jets pointwise; ``op`` is one of add, sub, mul, div."""
    _check_compatible(a, b)
    K = a.order
    x, y = a.coeffs, b.coeffs
    if op == "add":
        coeffs = x + y
    elif op == "sub":
        coeffs = x - y
    elif op == "mul":
        coeffs = _cauchy(x, y, K)
    elif op == "div":
        coeffs = _divide(x, y, K)
    else:
        raise UsageError(f"unknown jet operation {op!r}")
    return Jet(a.anchor, coeffs)


def jet_derivatives(a):
    """Derivatives ``F^(j)(anchor) = c_j * j!`` for ``j = 0..K``."""
    c = a.coeffs
    scale = _FACTORIALS[: a.order + 1].reshape((-1,) + (1,) * (c.ndim - 1))
    return c * scale


def where(cond, a, b):
    """Select coefficientwise between two jets of the same order."""
    if a.order != b.order:
        raise UsageError(f"jet order mismatch: {a.order} vs {b.order}")
    return Jet(a.anchor, np.where(cond, a.coeffs, b.coeffs))


def piecewise(x, cond, f_true, f_false, fill_true, fill_false):
    """Apply ``f_true`` where ``cond`` holds and ``f_false`` elsewhere.

    Each branch only sees constant terms it is valid for: entries routed to
    the other branch have their ``c0`` replaced by ``fill_true`` or
    ``fill_false`` before evaluation and are discarded afterwards.
    """
    cond = np.asarray(cond)
    if np.all(cond):
        return f_true(x)
    if not np.any(cond):
        return f_false(x)
    c0 = x.coeffs[0]
    left = f_true(x.with_c0(np.where(cond, c0, fill_true)))
    right = f_false(x.with_c0(np.where(cond, fill_false, c0)))
    return where(cond, left, right)


def compose(outer, inner):
    """Jet of ``F(G(x))`` from the jet of F at ``G(x0)`` and the jet of G at x0."""
    if outer.order != inner.order:
        raise UsageError(f"jet order mismatch: {outer.order} vs {inner.order}")
    if not np.allclose(outer.anchor, inner.coeffs[0], rtol=1e-12, atol=0.0):
        raise UsageError("outer jet must be anchored at the inner jet's value")
    shift = inner.with_c0(np.zeros_like(inner.coeffs[0]))
    f = outer.coeffs
    result = jet_constant(f[-1], inner.anchor, inner.order, max_order=len(_FACTORIALS) - 1)
    for i in range(outer.order - 1, -1, -1):
        result = result * shift + f[i]
    return result


# elementary functions ------------------------------------------------------

def _require(cond, name, c0):
    if not np.all(cond):
        bad = np.asarray(c0)[~np.asarray(cond)] if np.ndim(c0) else c0
        raise SingularityError(f"{name} outside its real domain", c0=_first(bad))


def _exp_coeffs(a, e0):
    K = a.shape[0] - 1
    e = np.zeros_like(a)
    e[0] = e0
    for k in range(1, K + 1):
        acc = a[1] * e[k - 1]
        for j in range(2, k + 1):
            acc = acc + j * a[j] * e[k - j]
        e[k] = acc / k
    return e


def _log_coeffs(a, l0, base0):
    K = a.shape[0] - 1
    out = np.zeros_like(a)
    out[0] = l0
    for k in range(1, K + 1):
        acc = a[k]
        for j in range(1, k):
            acc = acc - (j / k) * out[j] * a[k - j]
        out[k] = acc / base0
    return out


def exp(a):
    c = a.coeffs
    return Jet(a.anchor, _exp_coeffs(c, np.exp(c[0])))


def expm1(a):
    c = a.coeffs
    out = _exp_coeffs(c, np.exp(c[0]))
    out[0] = np.expm1(c[0])
    return Jet(a.anchor, out)


def log(a):
    c = a.coeffs
    _require(c[0] > 0, "log", c[0])
    return Jet(a.anchor, _log_coeffs(c, np.log(c[0]), c[0]))


def log1p(a):
    c = a.coeffs
    _require(c[0] > -1, "log1p", c[0])
    return Jet(a.anchor, _log_coeffs(c, np.log1p(c[0]), 1.0 + c[0]))


def sqrt(a):
    c = a.coeffs
    _require(c[0] > 0, "sqrt", c[0])
    K = a.order
    s = np.zeros_like(c)
    s[0] = np.sqrt(c[0])
    for k in range(1, K + 1):
        acc = c[k]
        for j in range(1, k):
            acc = acc - s[j] * s[k - j]
        s[k] = acc / (2.0 * s[0])
    return Jet(a.anchor, s)


def _sin_cos(c, hyperbolic):
    K = c.shape[0] - 1
    s = np.zeros_like(c)
    co = np.zeros_like(c)
    if hyperbolic:
        s[0], co[0], sign = np.sinh(c[0]), np.cosh(c[0]), 1.0
    else:
        s[0], co[0], sign = np.sin(c[0]), np.cos(c[0]), -1.0
    for k in range(1, K + 1):
        acc_s = c[1] * co[k - 1]
        acc_c = c[1] * s[k - 1]
        for j in range(2, k + 1):
            acc_s = acc_s + j * c[j] * co[k - j]
            acc_c = acc_c + j * c[j] * s[k - j]
        s[k] = acc_s / k
        co[k] = sign * acc_c / k
    return s, co


def sin(a):
    return Jet(a.anchor, _sin_cos(a.coeffs, False)[0])


def cos(a):
    return Jet(a.anchor, _sin_cos(a.coeffs, False)[1])


def sinh(a):
    return Jet(a.anchor, _sin_cos(a.coeffs, True)[0])


def cosh(a):
    return Jet(a.anchor, _sin_cos(a.coeffs, True)[1])


def tanh(a):
    # y' = (1 - y^2) a', integrated term by term
    c = a.coeffs
    K = a.order
    y = np.zeros_like(c)
    w = np.zeros_like(c)
    y[0] = np.tanh(c[0])
    # sech^2 directly, 1 - tanh^2 cancels for large |c0|
    e = np.exp(-2.0 * np.abs(c[0]))
    w[0] = 4.0 * e / (1.0 + e) ** 2
    for k in range(1, K + 1):
        i = k - 1
        if i:
            acc = -y[0] * y[i]
            for p in range(1, i + 1):
                acc = acc - y[p] * y[i - p]
            w[i] = acc
        total = c[1] * w[k - 1]
        for j in range(2, k + 1):
            total = total + j * c[j] * w[k - j]
        y[k] = total / k
    return Jet(a.anchor, y)


def asinh(a):
    c = a.coeffs
    K = a.order
    out = np.zeros_like(c)
    out[0] = np.arcsinh(c[0])
    if K == 0:
        return Jet(a.anchor, out)
    # d/dx asinh(a) = a' / sqrt(1 + a^2), integrated term by term
    sq = _cauchy(c, c, K)[:K]
    sq[0] += 1.0
    q = _sqrt_coeffs(sq)
    da = np.stack([(j + 1) * c[j + 1] for j in range(K)])
    d = _divide(da, q, K - 1)
    for k in range(1, K + 1):
        out[k] = d[k - 1] / k
    return Jet(a.anchor, out)


def _sqrt_coeffs(c):
    s = np.zeros_like(c)
    s[0] = np.sqrt(c[0])
    for k in range(1, c.shape[0]):
        acc = c[k]
        for j in range(1, k):
            acc = acc - s[j] * s[k - j]
        s[k] = acc / (2.0 * s[0])
    return s


def pow_real(a, r):
    """``a ** r``.  Integer exponents accept any base; others need ``c0 > 0``."""
    r_float = float(r)
    if r_float.is_integer():
        n = int(r_float)
        if n < 0:
            return 1.0 / pow_real(a, -n)
        result = jet_constant(1.0, a.anchor, a.order, max_order=len(_FACTORIALS) - 1)
        result = result * np.ones_like(a.coeffs[0])
        base = a
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result
    c = a.coeffs
    _require(c[0] > 0, f"pow_real({r_float})", c[0])
    K = a.order
    p = np.zeros_like(c)
    p[0] = c[0] ** r_float
    for k in range(1, K + 1):
        acc = ((r_float + 1.0) - k) * c[1] * p[k - 1]
        for j in range(2, k + 1):
            acc = acc + ((r_float + 1.0) * j - k) * c[j] * p[k - j]
        p[k] = acc / (k * c[0])
    return Jet(a.anchor, p)


def sinc(a):
    """``sin(u) / u`` with the removable singularity at ``u = 0`` filled in.

    Entries with ``|c0| <= SINC_SERIES_RADIUS`` use the even power series
    truncated after ``SINC_SERIES_TERMS`` terms.  Up to
    ``SINC_QUADRATURE_RADIUS`` the Taylor coefficients at ``c0`` come from
    ``sinc(u) = int_0^1 cos(s u) ds`` by Gauss-Legendre quadrature, since
    jet division by ``u`` amplifies rounding by ``|c0|^-j`` there.  Beyond
    that, plain jet division is used.
    """
    c0 = a.coeffs[0]
    r = np.abs(c0)
    near = r <= SINC_SERIES_RADIUS
    mid = ~near & (r <= SINC_QUADRATURE_RADIUS)
    far = ~(near | mid)
    parts = []
    if near.any():
        parts.append((near, _sinc_series(a.with_c0(np.where(near, c0, 0.0)))))
    if mid.any():
        parts.append((mid, _sinc_quadrature(a.with_c0(np.where(mid, c0, 1.0)))))
    if far.any():
        safe = a.with_c0(np.where(far, c0, 2.0 * SINC_QUADRATURE_RADIUS))
        parts.append((far, sin(safe) / safe))
    cond, result = parts[0]
    for cond, part in parts[1:]:
        result = where(cond, part, result)
    return result


def _sinc_quadrature(a):
    # c_j = (1/j!) int_0^1 s^j cos(s u0 + j pi / 2) ds
    u0 = np.asarray(a.coeffs[0], dtype=float)
    K = a.order
    j = np.arange(K + 1).reshape((-1,) + (1,) * u0.ndim + (1,))
    phase = u0[..., None] * _GL_NODES + j * (0.5 * math.pi)
    integrals = np.sum(_GL_NODES**j * np.cos(phase) * _GL_WEIGHTS, axis=-1)
    integrals[0] = np.sin(u0) / u0  # exact enough away from 0, and no cancellation
    outer = Jet(u0, integrals / _FACTORIALS[: K + 1].reshape((-1,) + (1,) * u0.ndim))
    return compose(outer, a)


def _sinc_series(a):
    w = a * a
    result = w * _SINC_SERIES[-1] + _SINC_SERIES[-2]
    for coef in reversed(_SINC_SERIES[:-2]):
        result = result * w + coef
    return result


_ELEMENTARY = {
    "exp": exp,
    "log": log,
    "log1p": log1p,
    "expm1": expm1,
    "sqrt": sqrt,
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "asinh": asinh,
    "sinc": sinc,
}


def jet_elem(a, fn, r=None):
    """Apply an elementary function by name; ``pow_real`` takes exponent ``r``."""
    if fn == "pow_real":
        if r is None:
            raise UsageError("pow_real needs an exponent")
        return pow_real(a, r)
    try:
        func = _ELEMENTARY[fn]
    except KeyError:
        raise UsageError(f"unknown elementary function {fn!r}") from None
    return func(a)
