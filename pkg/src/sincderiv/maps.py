"""Catalog of variable transformations for Sinc approximation on infinite intervals.

Each map carries the real line onto a target interval ``(a, b)``:

======  ====================================  ===============  ====================
tag     forward map t = map(x)                interval         weight g(t)
======  ====================================  ===============  ====================
SE1     exp(x)                                (0, inf)         (t / (1 + t))^m
SE2     arsinh(exp(x))                        (0, inf)         (1 - exp(-t))^m
SE3     sinh(x)                               (-inf, inf)      1
SE4     sinh(log(arsinh(exp(x))))             (-inf, inf)      1
SE5     (b-a)/2 tanh(x/2) + (b+a)/2           (a, b)           (t - a)^m (b - t)^m
IMP2    log(1 + exp(x))                       (0, inf)         (1 - exp(-t))^m
IMP4    2 sinh(log(log(1 + exp(x))))          (-inf, inf)      1
======  ====================================  ===============  ====================

Inverse maps, written in the form used for the jets below:

* SE2: ``exp(x) = sinh(t)`` so ``x = log(sinh t)``.  For ``t > 1`` this is
  evaluated as ``t - log 2 + log1p(-exp(-2t))`` to avoid overflow.
* SE4: with ``y = asinh(t)``, ``arsinh(exp(x)) = exp(y) = t + sqrt(1 + t^2)``,
  hence ``exp(x) = sinh(t + sqrt(1 + t^2))`` and
  ``x = log(sinh(t + sqrt(1 + t^2)))``.  Note ``t + sqrt(1 + t^2) = p(2t)``.
* IMP2: ``exp(x) = exp(t) - 1`` so ``x = log(expm1 t)``; for ``t > 1`` use
  ``t + log1p(-exp(-t))``.
* IMP4: with ``L = log(1 + exp(x))`` the forward map is ``t = L - 1/L``, a
  quadratic in L with positive root ``L = p(t) = (t + sqrt(4 + t^2)) / 2``.
  Hence the inverse is the IMP2 inverse evaluated at ``p(t)``.
* SE5: ``x = log((t - a) / (b - t))``.

``p(t)`` is evaluated as ``2 / (sqrt(4 + t^2) - t)`` for ``t < 0`` so that it
stays accurate when ``t`` is large and negative.

All inverses and weights are returned as :class:`~sincderiv.jets.Jet` objects,
which gives their derivatives to any order up to the jet order.  Inputs may be
scalars or arrays; arrays are handled as jet batches.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import jets
from .exceptions import DomainError, UsageError

_TAGS = ("SE1", "SE2", "SE3", "SE4", "SE5", "IMP2", "IMP4")
_HALF_LINE = ("SE1", "SE2", "IMP2")
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class MapId:
    """Identity of a catalog map.  Only SE5 takes endpoints."""

    tag: str
    a: Optional[float] = None
    b: Optional[float] = None

    def __post_init__(self):
        if self.tag not in _TAGS:
            raise UsageError(f"unknown map {self.tag!r}; expected one of {_TAGS}")
        if self.tag == "SE5":
            if self.a is None or self.b is None:
                raise UsageError("SE5 needs finite endpoints a < b")
            if not (math.isfinite(self.a) and math.isfinite(self.b) and self.a < self.b):
                raise UsageError(f"SE5 needs finite endpoints a < b, got ({self.a}, {self.b})")
        elif self.a is not None or self.b is not None:
            raise UsageError(f"{self.tag} has a fixed interval; endpoints are not accepted")

    @property
    def interval(self):
        if self.tag == "SE5":
            return (float(self.a), float(self.b))
        if self.tag in _HALF_LINE:
            return (0.0, math.inf)
        return (-math.inf, math.inf)

    @property
    def is_improved(self):
        return self.tag.startswith("IMP")

    def __str__(self):
        if self.tag == "SE5":
            return f"SE5({self.a!r},{self.b!r})"
        return self.tag

    @classmethod
    def parse(cls, text):
        """Parse ``'IMP2'``, ``'se3'`` or ``'SE5(0, 1)'``."""
        if isinstance(text, cls):
            return text
        text = str(text).strip()
        upper = text.upper()
        if upper.startswith("SE5"):
            inner = text[3:].strip()
            if not (inner.startswith("(") and inner.endswith(")")):
                raise UsageError(f"SE5 must be written as SE5(a,b), got {text!r}")
            try:
                a, b = (float(v) for v in inner[1:-1].split(","))
            except ValueError:
                raise UsageError(f"cannot parse SE5 endpoints from {text!r}") from None
            return cls("SE5", a, b)
        return cls(upper)


SE1 = MapId("SE1")
SE2 = MapId("SE2")
SE3 = MapId("SE3")
SE4 = MapId("SE4")
IMP2 = MapId("IMP2")
IMP4 = MapId("IMP4")


def se5(a, b):
    return MapId("SE5", float(a), float(b))


@dataclass(frozen=True)
class MapSpec:
    """A map together with the exponent ``m`` of its weight function."""

    id: MapId
    weight_exponent: int = 0

    def __post_init__(self):
        if not isinstance(self.id, MapId):
            object.__setattr__(self, "id", MapId.parse(self.id))
        if int(self.weight_exponent) != self.weight_exponent or self.weight_exponent < 0:
            raise UsageError(f"weight exponent must be a nonnegative integer, got {self.weight_exponent!r}")
        object.__setattr__(self, "weight_exponent", int(self.weight_exponent))

    @property
    def interval(self):
        return self.id.interval


def _as_id(map_id):
    if isinstance(map_id, MapSpec):
        return map_id.id
    return MapId.parse(map_id)


def check_interior(map_id, t):
    """Raise :class:`DomainError` unless every ``t`` is strictly inside the interval."""
    a, b = _as_id(map_id).interval
    t = np.asarray(t, dtype=float)
    bad = ~(np.isfinite(t) & (t > a) & (t < b))
    if np.any(bad):
        value = float(t[bad].ravel()[0]) if t.ndim else float(t)
        raise DomainError(f"t = {value!r} is not inside the open interval ({a}, {b})", value=value)


# forward maps --------------------------------------------------------------

def _asinh_exp(x):
    return jets.piecewise(
        x,
        x.coeffs[0] <= 0,
        lambda u: jets.asinh(jets.exp(u)),
        lambda u: u + jets.log1p(jets.sqrt(1.0 + jets.exp(-2.0 * u))),
        0.0,
        1.0,
    )


def _softplus(x):
    return jets.piecewise(
        x,
        x.coeffs[0] <= 0,
        lambda u: jets.log1p(jets.exp(u)),
        lambda u: u + jets.log1p(jets.exp(-u)),
        0.0,
        1.0,
    )


def _forward(map_id, x):
    tag = map_id.tag
    if tag == "SE1":
        return jets.exp(x)
    if tag == "SE2":
        return _asinh_exp(x)
    if tag == "SE3":
        return jets.sinh(x)
    if tag == "SE4":
        s = _asinh_exp(x)
        return 0.5 * (s - 1.0 / s)
    if tag == "SE5":
        a, b = map_id.interval
        return 0.5 * (b - a) * jets.tanh(0.5 * x) + 0.5 * (b + a)
    if tag == "IMP2":
        return _softplus(x)
    if tag == "IMP4":
        s = _softplus(x)
        return s - 1.0 / s
    raise UsageError(f"unknown map {tag!r}")


def map_forward_jet(map_id, x, K):
    """Jet of the forward map at ``x``."""
    map_id = _as_id(map_id)
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise UsageError("map_forward needs finite x")
    return _forward(map_id, jets.jet_variable(x, K))


def map_forward(map_id, x):
    """Evaluate the forward map ``t = map(x)`` (scalar or array)."""
    return map_forward_jet(map_id, x, 0).value


# inverse maps --------------------------------------------------------------

def _p(t):
    return jets.piecewise(
        t,
        t.coeffs[0] >= 0,
        lambda u: 0.5 * (u + jets.sqrt(4.0 + u * u)),
        lambda u: 2.0 / (jets.sqrt(4.0 + u * u) - u),
        0.0,
        -1.0,
    )


def _log_sinh(s):
    return jets.piecewise(
        s,
        s.coeffs[0] <= 1,
        lambda u: jets.log(jets.sinh(u)),
        lambda u: u - _LOG2 + jets.log1p(-jets.exp(-2.0 * u)),
        0.5,
        2.0,
    )


def _log_expm1(s):
    return jets.piecewise(
        s,
        s.coeffs[0] <= 1,
        lambda u: jets.log(jets.expm1(u)),
        lambda u: u + jets.log1p(-jets.exp(-u)),
        0.5,
        2.0,
    )


def _inverse(map_id, t):
    tag = map_id.tag
    if tag == "SE1":
        return jets.log(t)
    if tag == "SE2":
        return _log_sinh(t)
    if tag == "SE3":
        return jets.asinh(t)
    if tag == "SE4":
        return _log_sinh(_p(2.0 * t))
    if tag == "SE5":
        a, b = map_id.interval
        return jets.log(t - a) - jets.log(b - t)
    if tag == "IMP2":
        return _log_expm1(t)
    if tag == "IMP4":
        return _log_expm1(_p(t))
    raise UsageError(f"unknown map {tag!r}")


def map_inverse_jet(map_id, t, K):
    """Jet of the inverse map at ``t``.

    Raises
    ------
    DomainError
        If ``t`` is not strictly inside the map's interval.
    """
    map_id = _as_id(map_id)
    check_interior(map_id, t)
    return _inverse(map_id, jets.jet_variable(t, K))


def map_inverse(map_id, t):
    return map_inverse_jet(map_id, t, 0).value


def p_jet(t, K):
    """Jet of ``p(t) = (t + sqrt(4 + t^2)) / 2``."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise UsageError("p_jet needs finite t")
    return _p(jets.jet_variable(t, K))


# weights -------------------------------------------------------------------

def _weight(map_id, m, t):
    tag = map_id.tag
    if m == 0 or tag in ("SE3", "SE4", "IMP4"):
        return jets.jet_constant(np.ones_like(t.coeffs[0]), t.anchor, t.order)
    if tag == "SE1":
        base = t / (1.0 + t)
    elif tag in ("SE2", "IMP2"):
        base = -jets.expm1(-t)
    elif tag == "SE5":
        a, b = map_id.interval
        base = (t - a) * (b - t)
    else:
        raise UsageError(f"unknown map {tag!r}")
    return jets.pow_real(base, m)


def weight_jet(map_id, m, t, K):
    """Jet of the weight function ``g`` (exponent ``m``) at ``t``."""
    map_id = _as_id(map_id)
    if int(m) != m or m < 0:
        raise UsageError(f"weight exponent must be a nonnegative integer, got {m!r}")
    check_interior(map_id, t)
    return _weight(map_id, int(m), jets.jet_variable(t, K))


def weight(map_id, m, t):
    return weight_jet(map_id, m, t, 0).value
