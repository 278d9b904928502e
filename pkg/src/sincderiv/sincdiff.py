"""Sinc approximation of a function and its derivatives through a variable map.

For a map ``phi`` from the real line onto ``(a, b)`` with weight ``g`` the
approximation reads

    f^(l)(t) ~ sum_{k=-M}^{N} f(phi(kh)) / g(phi(kh))
                 * (d/dt)^l [ g(t) * S(k, h)(phi^{-1}(t)) ],

where ``S(k, h)(x) = sinc(pi (x - kh) / h)``.  The truncation numbers and the
mesh size follow from the decay profile ``(alpha, beta, d)`` of ``f / g``:

    mu = min(alpha, beta),  M = ceil(mu / alpha * n),  N = ceil(mu / beta * n),
    h = sqrt(pi * d / (mu * n)).

The derivatives of each basis term are obtained by jet propagation through
``g``, the inverse map and the sinc kernel, batched over evaluation points
and nodes.
"""

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import jets, maps
from .exceptions import SamplingError, SingularWeightError, UsageError

_CHUNK = 256


class TheoremRangeWarning(UserWarning):
    """The strip width ``d`` lies outside the range covered by the convergence theory."""


@dataclass(frozen=True)
class DecayProfile:
    """Decay rates ``alpha`` (left end), ``beta`` (right end) and strip half-width ``d``."""

    alpha: float
    beta: float
    d: float

    def __post_init__(self):
        for name in ("alpha", "beta", "d"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float, np.floating)) and math.isfinite(value) and value > 0):
                raise UsageError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def mu(self):
        return min(self.alpha, self.beta)

    def in_theorem_range(self, map_id):
        """True when ``d`` is below pi/2 (Stenger maps) or pi (improved maps)."""
        limit = math.pi if maps.MapId.parse(map_id).is_improved else math.pi / 2
        return self.d < limit

    def check(self, map_id):
        if not self.in_theorem_range(map_id):
            warnings.warn(
                f"d = {self.d} is outside the theorem range for map {map_id}",
                TheoremRangeWarning,
                stacklevel=2,
            )
        return self


@dataclass(frozen=True)
class SincParams:
    m: int
    n: int
    mu: float
    M: int
    N: int
    h: float


def _ceil_ratio(num, den, n):
    # exact rational arithmetic on the binary values, so mu == alpha gives M == n
    return math.ceil(Fraction(num) / Fraction(den) * n)


def select_params(profile, n, m):
    """Truncation numbers and mesh size for resolution ``n`` and derivative order ``m``."""
    if not isinstance(profile, DecayProfile):
        raise UsageError("profile must be a DecayProfile")
    if int(n) != n or n < 1:
        raise UsageError(f"n must be a positive integer, got {n!r}")
    if int(m) != m or m < 0:
        raise UsageError(f"m must be a nonnegative integer, got {m!r}")
    n, m = int(n), int(m)
    mu = profile.mu
    return SincParams(
        m=m,
        n=n,
        mu=mu,
        M=_ceil_ratio(mu, profile.alpha, n),
        N=_ceil_ratio(mu, profile.beta, n),
        h=math.sqrt(math.pi * profile.d / (mu * n)),
    )


def _frozen(values):
    values = np.array(values)
    values.flags.writeable = False
    return values


@dataclass(frozen=True)
class Approximant:
    """Sampled Sinc expansion: nodes ``t_k = map(k h)`` and coefficients ``f(t_k) / g(t_k)``."""

    map: maps.MapSpec
    params: SincParams
    ks: np.ndarray = field(repr=False)
    xs: np.ndarray = field(repr=False)
    ts: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)

    @property
    def nodes(self):
        return list(zip(self.ks.tolist(), self.xs.tolist(), self.ts.tolist()))

    def __call__(self, t, l=0):
        return evaluate_derivative(self, t, l)


def build_approximant(f, map_spec, params):
    """Sample ``f`` at the Sinc nodes of ``map_spec`` and divide by the weight.

    Raises
    ------
    SamplingError
        ``f`` returned a non-finite value at a node.
    SingularWeightError
        The weight underflowed to zero at a node.
    """
    if not isinstance(map_spec, maps.MapSpec):
        map_spec = maps.MapSpec(maps.MapId.parse(map_spec), params.m)
    if map_spec.weight_exponent != params.m:
        raise UsageError(
            f"weight exponent {map_spec.weight_exponent} differs from derivative order m = {params.m}"
        )
    ks = np.arange(-params.M, params.N + 1)
    xs = ks * params.h
    ts = np.asarray(maps.map_forward(map_spec.id, xs), dtype=float)
    a, b = map_spec.interval
    inside = (ts > a) & (ts < b)
    if not inside.all():
        k = int(ks[~inside][0])
        raise SingularWeightError(f"node k = {k} collapsed onto an endpoint of ({a}, {b})", k=k, t=float(ts[ks == k][0]))
    if np.any(np.diff(ts) <= 0):
        k = int(ks[1:][np.diff(ts) <= 0][0])
        raise SamplingError(f"nodes are not strictly increasing at k = {k}", k=k)
    g = np.asarray(maps.weight(map_spec.id, params.m, ts), dtype=float)
    values = np.empty_like(ts)
    for i, (k, t) in enumerate(zip(ks.tolist(), ts.tolist())):
        v = float(f(t))
        if not math.isfinite(v):
            raise SamplingError(f"f(t) is not finite at node k = {k}, t = {t!r}", k=k, t=t)
        values[i] = v
    zero = g == 0
    if zero.any():
        k = int(ks[zero][0])
        raise SingularWeightError(f"weight underflowed to zero at node k = {k}", k=k, t=float(ts[zero][0]))
    coefficients = values / g
    return Approximant(map_spec, params, _frozen(ks), _frozen(xs), _frozen(ts), _frozen(coefficients))


def _basis_jets(map_id, m, ks, h, t, K):
    # t: 1-d array -> coefficients of shape (K + 1, len(t), len(ks))
    tj = jets.jet_variable(t.reshape(-1, 1), K)
    x = maps._inverse(map_id, tj)
    g = maps._weight(map_id, m, tj)
    u = (x - np.asarray(ks, dtype=float) * h) * (math.pi / h)
    return g * jets.sinc(u)


def _check_max_order(L):
    if int(L) != L or L < 0:
        raise UsageError(f"derivative order must be a nonnegative integer, got {L!r}")
    if L > jets.MAX_ORDER:
        raise UsageError(f"derivative order {L} exceeds the maximum jet order {jets.MAX_ORDER}")
    return int(L)


def basis_term_derivs(map_spec, m, k, h, t, L):
    """Derivatives of order ``0..L`` of ``g(t) S(k, h)(map^{-1}(t))`` with respect to ``t``."""
    L = _check_max_order(L)
    if not h > 0:
        raise UsageError(f"h must be positive, got {h!r}")
    map_id = map_spec.id if isinstance(map_spec, maps.MapSpec) else maps.MapId.parse(map_spec)
    maps.check_interior(map_id, t)
    t = np.asarray(t, dtype=float)
    basis = _basis_jets(map_id, int(m), np.array([k]), float(h), t.reshape(-1), L)
    out = jets.jet_derivatives(basis)[:, :, 0]
    return out[:, 0] if t.ndim == 0 else out.reshape((L + 1,) + t.shape)


def compensated_sum(terms, axis=-1):
    """Neumaier-compensated sum along ``axis``, accumulated in index order."""
    terms = np.moveaxis(np.asarray(terms, dtype=float), axis, 0)
    total = np.zeros(terms.shape[1:])
    comp = np.zeros(terms.shape[1:])
    for term in terms:
        new = total + term
        comp += np.where(np.abs(total) >= np.abs(term), (total - new) + term, (term - new) + total)
        total = new
    return total + comp


def evaluate_derivatives(approx, t, L=None):
    """All derivative approximations of order ``0..L`` at ``t``; shape ``(L + 1, *t.shape)``."""
    params = approx.params
    L = params.m if L is None else _check_max_order(L)
    if L > params.m:
        raise UsageError(f"derivative order {L} exceeds m = {params.m}")
    map_id = approx.map.id
    maps.check_interior(map_id, t)
    t = np.asarray(t, dtype=float)
    flat = t.reshape(-1)
    out = np.empty((L + 1, flat.size))
    for start in range(0, flat.size, _CHUNK):
        chunk = flat[start:start + _CHUNK]
        basis = jets.jet_derivatives(_basis_jets(map_id, params.m, approx.ks, params.h, chunk, L))
        out[:, start:start + _CHUNK] = compensated_sum(basis * approx.coefficients, axis=-1)
    return out.reshape((L + 1,) + t.shape)


def evaluate_derivative(approx, t, l):
    """Approximate ``f^(l)(t)`` for ``0 <= l <= m``."""
    if int(l) != l or l < 0:
        raise UsageError(f"derivative order must be a nonnegative integer, got {l!r}")
    if l > approx.params.m:
        raise UsageError(f"derivative order {l} exceeds m = {approx.params.m}")
    values = evaluate_derivatives(approx, t, int(l))[int(l)]
    return float(values) if np.ndim(values) == 0 else values
