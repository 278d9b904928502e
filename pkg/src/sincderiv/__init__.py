"""Sinc approximation of derivatives on infinite intervals through variable maps."""

from .estimator import SincDerivativeApproximator
from .exceptions import (
    DomainError,
    SamplingError,
    SincError,
    SingularityError,
    SingularWeightError,
    UsageError,
)
from .jets import Jet, jet_arith, jet_constant, jet_derivatives, jet_elem, jet_variable
from .maps import IMP2, IMP4, SE1, SE2, SE3, SE4, MapId, MapSpec, se5
from .sincdiff import (
    Approximant,
    DecayProfile,
    SincParams,
    TheoremRangeWarning,
    basis_term_derivs,
    build_approximant,
    evaluate_derivative,
    evaluate_derivatives,
    select_params,
)

__version__ = "0.1.0"

__all__ = [
    "Approximant",
    "DecayProfile",
    "DomainError",
    "IMP2",
    "IMP4",
    "Jet",
    "MapId",
    "MapSpec",
    "SE1",
    "SE2",
    "SE3",
    "SE4",
    "SamplingError",
    "SincDerivativeApproximator",
    "SincError",
    "SincParams",
    "SingularWeightError",
    "SingularityError",
    "TheoremRangeWarning",
    "UsageError",
    "basis_term_derivs",
    "build_approximant",
    "evaluate_derivative",
    "evaluate_derivatives",
    "jet_arith",
    "jet_constant",
    "jet_derivatives",
    "jet_elem",
    "jet_variable",
    "se5",
    "select_params",
]
