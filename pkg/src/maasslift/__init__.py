"""Exact q-series, vector-valued forms and Borcherds-Shimura lifts for a level-3 CM example.

The package computes the holomorphic part of a harmonic Maass form whose
xi-image is the CM newform ``eta(3z)^8``, with every Fourier coefficient an
exact rational number.
"""

from .errors import DomainError, IdentificationError, MaassLiftError, PoleError, PrecisionError, RecognitionError
from .exact import Polynomial, QuadElem, RationalFunction, poly_eval, quad_arith
from .qseries import PuiseuxSeries, series_inv, series_mul, series_pow, series_rescale
from .eta import EtaQuotientSpec, eta_quotient, named_form
from .vvforms import VectorValuedSeries, basis_fm, basis_polynomial, kohnen_split, pairing, tensor
from .theta import BinaryLatticeSpec, binary_theta, hecke_theta_eta8, unary_theta
from .numerics import CMPoint, chowla_selberg, eval_eta, eval_j3, recognize_algebraic
from .shimura import (HeegnerClass, MockCoefficientTable, PoleDatum, heegner_points, identify_rational,
                      lift_expansion, minimal_poly_j3, mock_coefficients, pole_data, scalar_preimage)
from .config import RunConfig

__version__ = "0.1.0"

__all__ = [
    "BinaryLatticeSpec", "CMPoint", "DomainError", "EtaQuotientSpec", "HeegnerClass", "IdentificationError",
    "MaassLiftError", "MockCoefficientTable", "PoleDatum", "PoleError", "Polynomial", "PrecisionError",
    "PuiseuxSeries", "QuadElem", "RationalFunction", "RecognitionError", "RunConfig", "VectorValuedSeries",
    "basis_fm", "basis_polynomial", "binary_theta", "chowla_selberg", "eta_quotient", "eval_eta", "eval_j3",
    "hecke_theta_eta8", "heegner_points", "identify_rational", "kohnen_split", "lift_expansion",
    "minimal_poly_j3", "mock_coefficients", "named_form", "pairing", "pole_data", "poly_eval", "quad_arith",
    "recognize_algebraic", "scalar_preimage", "series_inv", "series_mul", "series_pow", "series_rescale",
    "tensor", "unary_theta",
]
