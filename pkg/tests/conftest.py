"""Shared fixtures: analyzed curves and memoized recursion tables."""

from __future__ import annotations

import pytest

from hgtr.field import QQ
from hgtr.catalog import build_curve
from hgtr.curve import analyze_geometry
from hgtr.recursion import RecursionTable

# three admissible parameter points per curve (exact rationals)
PARAM_POINTS = {
    "gauss": (
        {"lambda0": QQ(3), "lambda1": QQ(1), "lambda_inf": QQ(1)},
        {"lambda0": QQ(5), "lambda1": QQ(2), "lambda_inf": QQ(2)},  # Lambda = 225, rational field
        {"lambda0": QQ(2), "lambda1": QQ(1), "lambda_inf": QQ(5)},
    ),
    "degenerate-gauss": (
        {"lambda1": QQ(1), "lambda_inf": QQ(2)},
        {"lambda1": QQ(2), "lambda_inf": QQ(5)},
        {"lambda1": QQ(1, 2), "lambda_inf": QQ(3)},
    ),
    "kummer": (
        {"lambda0": QQ(1), "lambda_inf": QQ(2)},
        {"lambda0": QQ(3), "lambda_inf": QQ(5)},  # radicand 16, rational field
        {"lambda0": QQ(2), "lambda_inf": QQ(1, 2)},
    ),
    "legendre": (
        {"lambda_inf": QQ(1)},
        {"lambda_inf": QQ(2)},
        {"lambda_inf": QQ(5, 3)},
    ),
    "bessel": (
        {"lambda0": QQ(1)},
        {"lambda0": QQ(2)},
        {"lambda0": QQ(3, 2)},
    ),
    "whittaker": (
        {"lambda_inf": QQ(1)},
        {"lambda_inf": QQ(3)},
        {"lambda_inf": QQ(1, 2)},
    ),
    "weber": (
        {"lambda_inf": QQ(1)},
        {"lambda_inf": QQ(4)},
        {"lambda_inf": QQ(2)},  # irrational uniformizer, Q(sqrt(2))
    ),
    "degenerate-bessel": ({},),
    "airy": ({},),
}

_cache = {}


def geometry_for(name, params):
    key = (name, tuple(sorted((k, str(v)) for k, v in params.items())))
    if key not in _cache:
        curve = build_curve(name, params)
        geom = analyze_geometry(curve)
        _cache[key] = (geom, RecursionTable(geom))
    return _cache[key]


@pytest.fixture(scope="session")
def geometries():
    return geometry_for
