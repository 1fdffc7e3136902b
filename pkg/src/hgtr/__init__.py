"""Exact topological recursion for the confluent hypergeometric spectral curves.

Everything is computed in exact arithmetic over Q or a quadratic extension
Q(sqrt(d)): correlation differentials, free energies, quantum curves and
their SL-forms, WKB expansions, and Voros coefficients, together with the
Bernoulli closed forms they are checked against.
"""

__version__ = "0.1.0"

from .field import QQ, FieldValue, parse_value, format_value, sqrt_in_field
from .ratfunc import Polynomial, RationalFunction, Point, INFINITY, LaurentSeries, LogRational
from .catalog import CURVE_NAMES, build_curve
from .curve import SpectralCurve, CurveGeometry, analyze_geometry, classical_potential
from .recursion import PoleBasisDifferential, RecursionTable, DivisorLegs
from .free_energy import free_energy, free_energy_result, phi_primitive
from .quantize import (
    QuantizationDivisor,
    QuantumCurve,
    SLPotential,
    VorosCoefficient,
    WkbExpansion,
    divisor_from_label_data,
    quantize,
    riccati_expand,
    sl_form,
    verify_quantization,
    voros_from_w,
    voros_riccati,
)
from .bernoulli import bernoulli_number, bernoulli_polynomial
from .hbar import HbarSeries, LogCombination
from .oracles import (
    FreeEnergyExpression,
    check_appendix_toolbox,
    check_contiguity_gauss,
    check_relation_i,
    check_three_term,
    oracle_free_energy,
    oracle_free_energy_expression,
    oracle_voros,
)

__all__ = [
    "QQ",
    "FieldValue",
    "parse_value",
    "format_value",
    "sqrt_in_field",
    "Polynomial",
    "RationalFunction",
    "Point",
    "INFINITY",
    "LaurentSeries",
    "LogRational",
    "CURVE_NAMES",
    "build_curve",
    "SpectralCurve",
    "CurveGeometry",
    "analyze_geometry",
    "classical_potential",
    "PoleBasisDifferential",
    "RecursionTable",
    "DivisorLegs",
    "free_energy",
    "free_energy_result",
    "phi_primitive",
    "QuantizationDivisor",
    "QuantumCurve",
    "SLPotential",
    "VorosCoefficient",
    "WkbExpansion",
    "divisor_from_label_data",
    "quantize",
    "riccati_expand",
    "sl_form",
    "verify_quantization",
    "voros_from_w",
    "voros_riccati",
    "bernoulli_number",
    "bernoulli_polynomial",
    "HbarSeries",
    "LogCombination",
    "FreeEnergyExpression",
    "check_appendix_toolbox",
    "check_contiguity_gauss",
    "check_relation_i",
    "check_three_term",
    "oracle_free_energy",
    "oracle_free_energy_expression",
    "oracle_voros",
]
