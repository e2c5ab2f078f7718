"""Exact scalar, coefficient, series and jet arithmetic."""

from __future__ import annotations

from .codec import series_from_dict, series_from_json, series_to_dict, series_to_json
from .coef import (
    ONE,
    QW,
    VARIABLES,
    ZETA,
    CoefError,
    CoefFn,
    mono,
    mono_inv,
    mono_mul,
    mono_pow,
    var_index,
)
from .cyclotomic import (
    DEFAULT_ORDER,
    Cyc,
    CyclotomicError,
    cyclotomic_polynomial,
    imaginary_unit,
    root_of_unity,
    scalar_str,
)
from .jet import (
    JetError,
    WJet,
    bernoulli_numbers,
    constant_jet,
    jet_from_series,
    shift_argument,
    w_monomial,
)
from .series import (
    FourierSeries,
    SeriesError,
    SubstitutionError,
    TruncationError,
    geometric_family,
)

__all__ = [
    "DEFAULT_ORDER",
    "ONE",
    "QW",
    "VARIABLES",
    "ZETA",
    "CoefError",
    "CoefFn",
    "Cyc",
    "CyclotomicError",
    "FourierSeries",
    "JetError",
    "SeriesError",
    "SubstitutionError",
    "TruncationError",
    "WJet",
    "bernoulli_numbers",
    "constant_jet",
    "cyclotomic_polynomial",
    "geometric_family",
    "imaginary_unit",
    "jet_from_series",
    "mono",
    "mono_inv",
    "mono_mul",
    "mono_pow",
    "root_of_unity",
    "scalar_str",
    "series_from_dict",
    "series_from_json",
    "series_to_dict",
    "series_to_json",
    "shift_argument",
    "var_index",
    "w_monomial",
]
