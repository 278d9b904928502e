"""scikit-learn style wrapper around :mod:`sincderiv.sincdiff`.

The estimator is "fitted" by sampling a callable at the Sinc nodes; ``X`` is
the set of evaluation points, never training data.

>>> import numpy as np
>>> est = SincDerivativeApproximator(func=np.exp, map="SE3", m=1, n=40,
...                                  alpha=1.0, beta=1.0, d=0.5)
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import jets, maps
from .exceptions import UsageError
from .sincdiff import DecayProfile, build_approximant, evaluate_derivatives, select_params
from .validation import (
    check_map,
    check_nonnegative_int,
    check_points,
    check_positive_finite,
    check_positive_int,
)


class SincDerivativeApproximator(TransformerMixin, BaseEstimator):
    """Sinc approximation of ``func`` and its first ``m`` derivatives.

    Parameters
    ----------
    func : callable
        Scalar function ``t -> f(t)`` on the map's interval.
    map : str or MapId
        Variable transformation, e.g. ``"IMP2"``, ``"SE4"`` or ``"SE5(0,1)"``.
    m : int
        Highest derivative order; also the weight exponent.
    n : int
        Resolution parameter.
    alpha, beta, d : float
        Decay profile of ``func / g``.
    order : int
        Derivative order returned by :meth:`predict`.
    """

    def __init__(self, func=None, map="IMP2", m=2, n=30, alpha=1.0, beta=1.0, d=1.0, order=0):
        self.func = func
        self.map = map
        self.m = m
        self.n = n
        self.alpha = alpha
        self.beta = beta
        self.d = d
        self.order = order

    def _validate(self):
        if not callable(self.func):
            raise UsageError("func must be callable")
        map_id = check_map(self.map)
        m = check_nonnegative_int(self.m, "m", upper=jets.MAX_ORDER)
        n = check_positive_int(self.n, "n")
        order = check_nonnegative_int(self.order, "order", upper=m)
        profile = DecayProfile(
            check_positive_finite(self.alpha, "alpha"),
            check_positive_finite(self.beta, "beta"),
            check_positive_finite(self.d, "d"),
        )
        return map_id, m, n, order, profile

    def fit(self, X=None, y=None):
        """Sample ``func`` at the Sinc nodes.  ``X`` and ``y`` are ignored."""
        map_id, m, n, _, profile = self._validate()
        self.profile_ = profile.check(map_id)
        self.params_ = select_params(profile, n, m)
        self.approximant_ = build_approximant(self.func, maps.MapSpec(map_id, m), self.params_)
        self.nodes_ = np.asarray(self.approximant_.ts)
        return self

    def transform(self, X):
        """Derivatives of order ``0..m`` at the points ``X``; shape ``(len(X), m + 1)``."""
        check_is_fitted(self, "approximant_")
        t = check_points(X, self.approximant_.map.id)
        return evaluate_derivatives(self.approximant_, t).T

    def predict(self, X):
        """Approximation of the ``order``-th derivative at ``X``."""
        check_is_fitted(self, "approximant_")
        order = check_nonnegative_int(self.order, "order", upper=self.params_.m)
        t = check_points(X, self.approximant_.map.id)
        return evaluate_derivatives(self.approximant_, t, order)[order]

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.requires_fit = True
        tags.input_tags.allow_nan = False
        return tags
