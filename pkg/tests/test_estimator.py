import math

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from sincderiv import SincDerivativeApproximator, bench
from sincderiv.exceptions import DomainError, SamplingError, UsageError


def example2_estimator(**kw):
    params = dict(func=bench.EXAMPLE2.eval, map="IMP4", m=2, n=40, alpha=2.0, beta=math.pi / 2, d=2.07)
    params.update(kw)
    return SincDerivativeApproximator(**params)


def test_params_roundtrip_and_clone():
    est = example2_estimator(order=1)
    params = est.get_params()
    assert params["map"] == "IMP4" and params["order"] == 1
    twin = clone(est)
    assert twin.get_params()["n"] == 40 and not hasattr(twin, "approximant_")
    est.set_params(n=20)
    assert est.n == 20


def test_fit_transform_predict_match_library():
    est = example2_estimator().fit()
    assert est.params_.M == 32 and est.params_.N == 40
    assert len(est.nodes_) == 73
    t = np.array([-1.0, 0.0, 2.0])
    out = est.transform(t)
    assert out.shape == (3, 3)
    exact = bench.oracle_derivatives("example2", t, 2).T
    # all three points lie on the sweep grid, so the sweep error bounds them
    bound = bench.run_sweep("example2", "improved", 2, [40]).rows[0].errors
    assert np.all(np.abs(out - exact) <= np.array(bound))
    np.testing.assert_array_equal(est.predict(t), out[:, 0])
    est.set_params(order=2)
    np.testing.assert_array_equal(est.predict(t.reshape(-1, 1)), out[:, 2])


def test_fit_transform_shortcut():
    est = example2_estimator(m=1)
    out = est.fit_transform(np.array([0.5, 1.5]))
    assert out.shape == (2, 2)


def test_not_fitted():
    with pytest.raises(NotFittedError):
        example2_estimator().predict([0.0])


@pytest.mark.parametrize(
    "kw",
    [
        {"func": None},
        {"map": "SE9"},
        {"map": 3},
        {"m": -1},
        {"m": 1.5},
        {"n": 0},
        {"alpha": 0.0},
        {"d": math.inf},
        {"order": 3},
    ],
)
def test_invalid_parameters(kw):
    with pytest.raises(UsageError):
        example2_estimator(**kw).fit()


def test_invalid_points():
    est = SincDerivativeApproximator(func=bench.EXAMPLE1.eval, map="IMP2", m=2, n=20,
                                     alpha=0.5, beta=1.0, d=3.14).fit()
    with pytest.raises(DomainError):
        est.predict([1.0, -2.0])
    with pytest.raises(ValueError):
        est.predict([1.0, np.nan])
    with pytest.raises(UsageError):
        est.transform(np.ones((3, 2)))


def test_order_above_m_at_predict():
    est = example2_estimator(m=1).fit()
    est.set_params(order=2)
    with pytest.raises(UsageError):
        est.predict([0.0])


def test_theorem_range_warning_and_sampling_error():
    from sincderiv import TheoremRangeWarning

    with pytest.warns(TheoremRangeWarning):
        SincDerivativeApproximator(func=bench.EXAMPLE1.eval, map="SE2", m=0, n=5,
                                   alpha=0.5, beta=1.0, d=3.0).fit()
    with pytest.raises(SamplingError):
        example2_estimator(func=lambda t: math.inf).fit()


def test_se5_map_string():
    # f / g = t (1 - t) e^t vanishes linearly at both ends
    est = SincDerivativeApproximator(func=lambda t: (t * (1 - t)) ** 2 * math.exp(t), map="SE5(0,1)", m=1,
                                     n=30, alpha=1.0, beta=1.0, d=1.5).fit()
    t = np.array([0.25, 0.5])
    q = t * (1 - t)
    exact = np.stack([q**2 * np.exp(t), (q**2 + 2 * q * (1 - 2 * t)) * np.exp(t)], axis=1)
    np.testing.assert_allclose(est.transform(t), exact, atol=1e-6)
