"""Sigma and al functions of the cyclic trigonal curve y^3 = (x - b_1)...(x - b_4).

Periods and the Abel map come from contour integration on the curve,
sigma from a theta series with a half-integer characteristic, and the al
functions from two independent routes (sigma quotients and determinant
formulas on divisors).  A hyperelliptic module serves as a calibration.
"""

from .curve import CurveSpec
from .errors import InputError, NumericalFailure, TrigalError
from .periods import PeriodData, abel, trigonal_period_data
from .sigma import SigmaContext, build_sigma, sigma, sigma_deriv
from .theta import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CurveSpec",
    "InputError",
    "NumericalFailure",
    "PeriodData",
    "SigmaContext",
    "TrigalError",
    "abel",
    "build_sigma",
    "sigma",
    "sigma_deriv",
    "trigonal_period_data",
]
