"""The curve catalog: the confluent family of hypergeometric spectral curves.

Each entry builds the exact rational parametrization (x(z), y(z)) from
rational parameter values, records the admissible-parameter constraints,
the singular labels carrying Voros coefficients, and the classical
potential for cross-checks.  The Gauss curve lives in Q(sqrt(Lambda)) with
Lambda = (l0+l1+li)(l0+l1-li)(l0-l1+li)(l0-l1-li); Kummer in
Q(sqrt(li^2-l0^2)); Weber in Q(sqrt(li)).
"""

from __future__ import annotations

from .field import QQ, FieldValue, ONE, sqrt_any
from .ratfunc import INFINITY, Point, RationalFunction
from .curve import ConstraintViolated, SpectralCurve

Z = RationalFunction.variable()

CURVE_NAMES = (
    "gauss",
    "degenerate-gauss",
    "kummer",
    "legendre",
    "bessel",
    "whittaker",
    "weber",
    "degenerate-bessel",
    "airy",
)

# parameter names used by each entry, in CLI order
CURVE_PARAMETERS = {
    "gauss": ("lambda0", "lambda1", "lambda_inf"),
    "degenerate-gauss": ("lambda1", "lambda_inf"),
    "kummer": ("lambda0", "lambda_inf"),
    "legendre": ("lambda_inf",),
    "bessel": ("lambda0",),
    "whittaker": ("lambda_inf",),
    "weber": ("lambda_inf",),
    "degenerate-bessel": (),
    "airy": (),
}

# singular labels (points of the base carrying a Voros coefficient)
CURVE_LABELS = {
    "gauss": ("0", "1", "inf"),
    "degenerate-gauss": ("1", "inf"),
    "kummer": ("0", "inf"),
    "legendre": ("inf",),
    "bessel": ("0",),
    "whittaker": ("inf",),
    "weber": ("inf",),
    "degenerate-bessel": (),
    "airy": (),
}

CURVE_CONSTRAINTS = {
    "gauss": "lambda0, lambda1, lambda_inf != 0 and Lambda != 0",
    "degenerate-gauss": "lambda1, lambda_inf != 0 and lambda_inf != +-lambda1",
    "kummer": "lambda0 != 0 and lambda_inf != +-lambda0",
    "legendre": "lambda_inf != 0",
    "bessel": "lambda0 != 0",
    "whittaker": "lambda_inf != 0",
    "weber": "lambda_inf != 0",
    "degenerate-bessel": "none",
    "airy": "none",
}


def label_point(label: str) -> Point:
    if label == "inf":
        return INFINITY
    return Point.finite(FieldValue(QQ(label)))


def gauss_radicand(l0, l1, li) -> QQ:
    return (l0 + l1 + li) * (l0 + l1 - li) * (l0 - l1 + li) * (l0 - l1 - li)


def _require(cond, message):
    if not cond:
        raise ConstraintViolated(message)


def build_curve(name: str, parameters=None) -> SpectralCurve:
    """Construct a catalog curve from exact rational parameter values."""
    params = {k: QQ(v) for k, v in (parameters or {}).items()}
    known = CURVE_PARAMETERS.get(name)
    if known is None:
        raise ConstraintViolated("unknown curve %r" % name)
    missing = [k for k in known if k not in params]
    _require(not missing, "missing parameters for %s: %s" % (name, ", ".join(missing)))
    extra = [k for k in params if k not in known]
    _require(not extra, "unknown parameters for %s: %s" % (name, ", ".join(extra)))

    if name == "gauss":
        l0, l1, li = params["lambda0"], params["lambda1"], params["lambda_inf"]
        _require(l0 != 0 and l1 != 0 and li != 0, "lambda0, lambda1, lambda_inf must be nonzero")
        lam = gauss_radicand(l0, l1, li)
        _require(lam != 0, "Lambda = 0: lambda_inf = +-(lambda0 +- lambda1) is excluded")
        s = sqrt_any(lam)
        li_f = FieldValue(li)
        x = (s / (4 * li_f ** 2)) * (Z + 1 / Z) + FieldValue((li * li + l0 * l0 - l1 * l1) / (2 * li * li))
        betas = [
            -FieldValue((l0 + li) ** 2 - l1 * l1) / s,  # beta_{0+}
            -FieldValue((l0 - li) ** 2 - l1 * l1) / s,  # beta_{0-}
            FieldValue((l1 + li) ** 2 - l0 * l0) / s,   # beta_{1+}
            FieldValue((l1 - li) ** 2 - l0 * l0) / s,   # beta_{1-}
        ]
        denom = RationalFunction.const(ONE)
        for b in betas:
            denom = denom * (Z - RationalFunction.const(b))
        y = (4 * li_f ** 3) * Z * (Z * Z - 1) / (s * denom)
        return SpectralCurve(name, x, y, params, lam)

    if name == "degenerate-gauss":
        l1, li = params["lambda1"], params["lambda_inf"]
        _require(l1 != 0 and li != 0, "lambda1, lambda_inf must be nonzero")
        _require(li + l1 != 0 and li - l1 != 0, "lambda_inf = +-lambda1 is excluded")
        x = FieldValue(l1 * l1 - li * li) / (Z * Z - FieldValue(li * li))
        y = -(Z * (Z * Z - FieldValue(li * li))) / (Z * Z - FieldValue(l1 * l1))
        return SpectralCurve(name, x, y, params, None)

    if name == "kummer":
        l0, li = params["lambda0"], params["lambda_inf"]
        _require(l0 != 0, "lambda0 must be nonzero")
        _require(li + l0 != 0 and li - l0 != 0, "lambda_inf = +-lambda0 is excluded")
        rad = li * li - l0 * l0
        s = sqrt_any(rad)
        x = s * (Z + 1 / Z) - FieldValue(2 * li)
        bp = (FieldValue(li) + FieldValue(l0)) / s
        bm = (FieldValue(li) - FieldValue(l0)) / s
        y = (Z * Z - 1) / (2 * (Z - RationalFunction.const(bp)) * (Z - RationalFunction.const(bm)))
        return SpectralCurve(name, x, y, params, rad)

    if name == "legendre":
        li = params["lambda_inf"]
        _require(li != 0, "lambda_inf must be nonzero")
        x = (Z + 1 / Z) * FieldValue(QQ(1, 2))
        y = FieldValue(2 * li) * Z / (Z * Z - 1)
        return SpectralCurve(name, x, y, params, None)

    if name == "bessel":
        l0 = params["lambda0"]
        _require(l0 != 0, "lambda0 must be nonzero")
        x = FieldValue(4 * l0 * l0) * (Z * Z - 1)
        y = Z / (FieldValue(4 * l0) * (Z * Z - 1))
        return SpectralCurve(name, x, y, params, None)

    if name == "whittaker":
        li = params["lambda_inf"]
        _require(li != 0, "lambda_inf must be nonzero")
        x = FieldValue(-4 * li) / (Z * Z - 1)
        y = Z * FieldValue(QQ(1, 2))
        return SpectralCurve(name, x, y, params, None)

    if name == "weber":
        li = params["lambda_inf"]
        _require(li != 0, "lambda_inf must be nonzero")
        s = sqrt_any(li)
        x = s * (Z + 1 / Z)
        y = (s / 2) * (Z - 1 / Z)
        return SpectralCurve(name, x, y, params, li)

    if name == "degenerate-bessel":
        return SpectralCurve(name, Z * Z, 1 / Z, params, None)

    if name == "airy":
        return SpectralCurve(name, Z * Z, Z, params, None)

    raise ConstraintViolated("unknown curve %r" % name)


def classical_potential_table(name: str, params) -> RationalFunction:
    """The potential Q_cl(x) of y^2 - Q_cl(x) = 0, as tabulated.

    The Bessel and Kummer rows use the normalization consistent with the
    parametrizations (constant terms 4*lambda0^2).
    """
    params = {k: QQ(v) for k, v in (params or {}).items()}
    X = RationalFunction.variable()
    if name == "gauss":
        l0, l1, li = params["lambda0"], params["lambda1"], params["lambda_inf"]
        num = FieldValue(li * li) * X * X - FieldValue(li * li + l0 * l0 - l1 * l1) * X + FieldValue(l0 * l0)
        return num / (X * X * (X - 1) ** 2)
    if name == "degenerate-gauss":
        l1, li = params["lambda1"], params["lambda_inf"]
        return (FieldValue(li * li) * X + FieldValue(l1 * l1 - li * li)) / (X * (X - 1) ** 2)
    if name == "kummer":
        l0, li = params["lambda0"], params["lambda_inf"]
        return (X * X + FieldValue(4 * li) * X + FieldValue(4 * l0 * l0)) / (4 * X * X)
    if name == "legendre":
        li = params["lambda_inf"]
        return FieldValue(li * li) / (X * X - 1)
    if name == "bessel":
        l0 = params["lambda0"]
        return (X + FieldValue(4 * l0 * l0)) / (4 * X * X)
    if name == "whittaker":
        li = params["lambda_inf"]
        return (X - FieldValue(4 * li)) / (4 * X)
    if name == "weber":
        li = params["lambda_inf"]
        return X * X * FieldValue(QQ(1, 4)) - FieldValue(li)
    if name == "degenerate-bessel":
        return 1 / X
    if name == "airy":
        return X
    raise ConstraintViolated("unknown curve %r" % name)
