"""Free energies F_g (g >= 2) from the one-point differentials.

F_g = 1/(2-2g) * sum over ramification points r of Res_{z=r} Phi(z) W_{g,1}(z),
with Phi a primitive of y dx.  The sum runs over ALL ramification points:
Phi may have poles or log points at ineffective ones even though W_{g,1}
is holomorphic there.

Residues against the logarithmic part of Phi are exact: a log point away
from r contributes through the analytic series of log(1 + t/(r - p)) (its
constant branch multiplies a vanishing residue and is dropped), while a log
point at r itself reduces by parts to -Res[Omega dlog t] with the local
primitive Omega normalized to zero constant term, which vanishes for
residue-free W; it is therefore dropped as well.
"""

from __future__ import annotations

from .field import FieldValue, ZERO, ONE
from .ratfunc import LaurentSeries, LogRational, antiderivative
from .recursion import RecursionTable


def phi_primitive(geom) -> LogRational:
    """A primitive of y(z) x'(z) dz with explicit log terms."""
    ydx = geom.curve.y * geom.curve.x.derivative()
    return antiderivative(ydx, geom.curve.radicand, geom.special_points)


def _log_series_at(p: FieldValue, r: Point, order: int) -> LaurentSeries:
    """Analytic part of log(z - p) at r (finite or the w = 1/z chart).

    Branch constants are omitted: they pair with vanishing residues.
    At infinity, log(z - p) = -log w + log(1 - p w); the -log w part is the
    log-at-r case handled (dropped) by the caller.
    """
    if r.is_infinity:
        coeffs = []
        if not p.is_zero():
            acc = ONE
            for k in range(1, order + 1):
                acc = acc * p
                coeffs.append(-acc / FieldValue(k))
        return LaurentSeries(r, 1, coeffs, order + 1)
    u = (r.value - p).inverse()
    coeffs = []
    acc = ONE
    for k in range(1, order + 1):
        acc = acc * u
        # log(1 + u t) = sum (-1)^(k+1) u^k t^k / k
        coeffs.append((acc if k % 2 == 1 else -acc) / FieldValue(k))
    return LaurentSeries(r, 1, coeffs, order + 1)


def _phi_series_at(phi: LogRational, r: Point, order: int) -> LaurentSeries:
    """Series of Phi at r with log-at-r terms dropped (see module docstring)."""
    ser = phi.rational_part.laurent(r, order)
    for c, p in phi.log_terms:
        if (not r.is_infinity) and r.value == p:
            continue  # log point at r: integration-by-parts reduction gives zero
        ser = ser + _log_series_at(p, r, order).scale(c)
    return ser


def free_energy(table: RecursionTable, g: int, phi: LogRational = None):
    """(value, per-ramification contributions) for the genus-g free energy.

    Any primitive of y dx may be passed in; the value does not depend on
    the choice (they differ by constants, and W_{g,1} is residue-free).
    """
    if g < 2:
        raise ValueError("the residue formula defines F_g for g >= 2 only")
    geom = table.geom
    if phi is None:
        phi = phi_primitive(geom)
    w = table.compute_w(g, 1)
    from .ratfunc import SeriesWindow

    with table._lock:
        for _ in range(6):
            try:
                return _residue_pass(table, geom, phi, w, g)
            except SeriesWindow:
                table._grow()
    raise ArithmeticError("series order did not stabilize in the free-energy residues")


def _residue_pass(table, geom, phi, w, g):
    contributions = {}
    total = ZERO
    for r in geom.ramification:
        frame = table._frame(r)
        wser = LaurentSeries(r, 0, [], frame.order)
        for (form,), c in w.terms.items():
            wser = wser + frame.form_series(form, 0).scale(c)
        pser = _phi_series_at(phi, r, frame.order)
        res = ZERO
        # residue of the product: all exponent pairs (k, j) with k + j = -1
        for k in range(wser.valuation, min(wser.prec, 0)):
            res = res + wser.coefficient(k) * pser.coefficient(-1 - k)
        if pser.valuation < 0:
            for j in range(pser.valuation, 0):
                k = -1 - j
                if 0 <= k:
                    res = res + wser.coefficient(k) * pser.coefficient(j)
        contributions[r] = res
        total = total + res
    value = total / FieldValue(2 - 2 * g)
    return value, contributions


def one_point_integral(table: RecursionTable, g: int, label) -> "FieldValue":
    """int from beta_- to beta_+ of W_{g,1}: the first variation of F_g
    with respect to the label's parameter."""
    from .recursion import form_primitive_value

    geom = table.geom
    upper = geom.beta_plus[label]
    lower = geom.beta_minus[label]
    w = table.compute_w(g, 1)
    acc = ZERO
    for (form,), c in w.terms.items():
        acc = acc + c * (form_primitive_value(form, upper) - form_primitive_value(form, lower))
    return acc


class FreeEnergyResult:
    __slots__ = ("g", "value", "per_ramification_contributions")

    def __init__(self, g, value, contributions):
        self.g = g
        self.value = value
        self.per_ramification_contributions = contributions

    def __repr__(self):
        return "F_%d = %s" % (self.g, self.value)


def free_energy_result(table: RecursionTable, g: int) -> FreeEnergyResult:
    value, contributions = free_energy(table, g)
    return FreeEnergyResult(g, value, contributions)
