"""Quantum curves, SL-forms, WKB expansions, and Voros coefficients.

The quantization of a spectral curve with a weight-1 divisor on the fiber
of its singular points is the operator

    hbar^2 psi'' + q(x) hbar psi' + r(x) psi = 0,
    q = q0 + hbar q1,   r = r0 + hbar r1 + hbar^2 r2,

whose coefficient functions are determined on the base by pushing forward
three explicit sigma-anti/invariant combinations on the curve.  Voros
coefficients are computed two independent ways: from divisor integrals of
the correlation differentials, and from the Riccati expansion of the
quantum curve itself; both are exact and must agree.
"""

from __future__ import annotations

from .field import QQ, FieldValue, ZERO
from .hbar import LogCombination, ResidualLogSymbol
from .ratfunc import (
    INFINITY,
    DivergentEndpoint,
    Point,
    RationalFunction,
)
from .curve import CurveError, CurveGeometry, NotSigmaInvariant, pushforward
from .recursion import DivisorLegs, RecursionTable, voros_from_correlators


class BranchAmbiguity(CurveError):
    pass


class QuantizationDivisor:
    """Weights nu_beta on the fiber points of the singular labels, sum 1."""

    __slots__ = ("weights",)

    def __init__(self, weights):
        self.weights = {}
        total = QQ(0)
        for p, v in weights.items():
            if not isinstance(p, Point):
                p = Point.finite(p)
            v = QQ(v)
            total += v
            if v != 0:
                self.weights[p] = self.weights.get(p, QQ(0)) + v
        if total != 1:
            raise ValueError("divisor weights must sum to 1, got %s" % total)

    def weight(self, p: Point) -> QQ:
        return self.weights.get(p, QQ(0))

    def nu_difference(self, geom: CurveGeometry, label) -> QQ:
        return self.weight(geom.beta_plus[label]) - self.weight(geom.beta_minus[label])

    def validate_support(self, geom: CurveGeometry):
        for p in self.weights:
            if p not in geom.b_set:
                raise ValueError("divisor point %r is not a fiber point of a singular point" % p)


def divisor_from_label_data(geom: CurveGeometry, nu=None, nu_sum=None) -> QuantizationDivisor:
    """Build a divisor from per-label differences nu_j (and optional pair
    sums); unpaired fiber points absorb the leftover weight.

    With L labeled pairs and no unpaired point, pair sums default to 1/L;
    with an unpaired point (a ramified fiber) the sums default to 0 and the
    unpaired point carries weight 1.
    """
    nu = {str(k): QQ(v) for k, v in (nu or {}).items()}
    nu_sum = {str(k): QQ(v) for k, v in (nu_sum or {}).items()}
    labels = geom.labels
    paired = {}
    unpaired = [p for p in geom.b_set if p not in geom.beta_plus.values() and p not in geom.beta_minus.values()]
    default_sum = QQ(0) if unpaired else (QQ(1, len(labels)) if labels else QQ(1))
    weights = {}
    for b in labels:
        key = _label_key(b)
        diff = nu.get(key, QQ(0))
        s = nu_sum.get(key, default_sum)
        weights[geom.beta_plus[b]] = s / 2 + diff / 2
        weights[geom.beta_minus[b]] = s / 2 - diff / 2
        paired[key] = True
    leftover = 1 - sum(weights.values(), QQ(0))
    if unpaired:
        weights[unpaired[0]] = leftover
    elif leftover != 0:
        raise ValueError("pair sums add to %s != 1 and no unpaired point exists" % (1 - leftover))
    return QuantizationDivisor(weights)


def _label_key(b: Point) -> str:
    if b.is_infinity:
        return "inf"
    return str(b.value)


class QuantumCurve:
    __slots__ = ("q0", "q1", "r0", "r1", "r2")

    def __init__(self, q0, q1, r0, r1, r2):
        self.q0 = q0
        self.q1 = q1
        self.r0 = r0
        self.r1 = r1
        self.r2 = r2

    def coefficients(self):
        return {"q0": self.q0, "q1": self.q1, "r0": self.r0, "r1": self.r1, "r2": self.r2}


def _rhs_functions(geom: CurveGeometry, divisor: QuantizationDivisor):
    """The three displayed right-hand sides, as rational functions of z."""
    z = RationalFunction.variable()
    sigma = geom.sigma
    delta = geom.delta
    x = geom.curve.x
    xp = x.derivative()

    def inv_linear(p: Point):
        if p.is_infinity:
            return RationalFunction.const(ZERO)
        return 1 / (z - RationalFunction.const(p.value))

    sum_q = RationalFunction.const(ZERO)
    sum_r1 = RationalFunction.const(ZERO)
    for p in geom.b_set:
        nu_p = divisor.weight(p)
        nu_pbar = divisor.weight(_sigma_point(geom, p))
        if nu_p == 0 and nu_pbar == 0:
            continue
        sum_q = sum_q + FieldValue(nu_p + nu_pbar) * inv_linear(p)
        sum_r1 = sum_r1 + FieldValue(nu_p - nu_pbar) * inv_linear(p)
    rhs_q1 = -(delta.derivative() / delta) + 2 / (z - sigma) - sum_q

    q0z = geom.q0z
    rhs_r1 = q0z.derivative() * FieldValue(QQ(1, 2)) + xp * q0z * (rhs_q1 / xp) * FieldValue(QQ(1, 2)) + delta * sum_r1 * FieldValue(QQ(1, 2))

    # nu_p nu_pbar / C_p * 1/(z - p), summed over the order-two fiber points
    sum_r2 = RationalFunction.const(ZERO)
    for p in geom.b1_set:
        nu_p = divisor.weight(p)
        nu_pbar = divisor.weight(_sigma_point(geom, p))
        if nu_p == 0 or nu_pbar == 0:
            continue
        sum_r2 = sum_r2 + (FieldValue(nu_p * nu_pbar) / geom.c_beta[p]) * inv_linear(p)
    rhs_r2 = delta * sum_r2
    return rhs_q1, rhs_r1, rhs_r2


def _sigma_point(geom: CurveGeometry, p: Point) -> Point:
    if p.is_infinity:
        # sigma is a Moebius map; its value at infinity
        s = geom.sigma
        if s.num.degree > s.den.degree:
            return INFINITY
        return Point.finite(s.evaluate(INFINITY))
    den = geom.sigma.den.evaluate(p.value)
    if den.is_zero():
        return INFINITY
    return Point.finite(geom.sigma.evaluate(p.value))


def quantize(geom: CurveGeometry, divisor: QuantizationDivisor) -> QuantumCurve:
    """The quantum curve of the spectral curve for the given divisor."""
    divisor.validate_support(geom)
    xp = geom.curve.x.derivative()
    rhs_q1, rhs_r1, rhs_r2 = _rhs_functions(geom, divisor)
    q0 = pushforward(geom, geom.q0z)
    r0 = pushforward(geom, geom.r0z)
    q1 = pushforward(geom, rhs_q1 / xp)
    r1 = pushforward(geom, rhs_r1 / xp)
    r2 = pushforward(geom, rhs_r2 / xp)
    return QuantumCurve(q0, q1, r0, r1, r2)


def verify_quantization(geom: CurveGeometry, divisor: QuantizationDivisor, candidate: QuantumCurve) -> bool:
    """Check the defining identities in z exactly (no pushforward)."""
    x = geom.curve.x
    xp = x.derivative()
    rhs_q1, rhs_r1, rhs_r2 = _rhs_functions(geom, divisor)
    if candidate.q0.compose(x) != geom.q0z:
        return False
    if candidate.r0.compose(x) != geom.r0z:
        return False
    if xp * candidate.q1.compose(x) != rhs_q1:
        return False
    if xp * candidate.r1.compose(x) != rhs_r1:
        return False
    if xp * candidate.r2.compose(x) != rhs_r2:
        return False
    return True


class SLPotential:
    """Q(x, hbar) = Q0 + hbar Q1 + hbar^2 Q2 of the gauge-reduced form."""

    __slots__ = ("q_0", "q_1", "q_2")

    def __init__(self, q_0, q_1, q_2):
        self.q_0 = q_0
        self.q_1 = q_1
        self.q_2 = q_2

    def __eq__(self, other):
        if not isinstance(other, SLPotential):
            return NotImplemented
        return self.q_0 == other.q_0 and self.q_1 == other.q_1 and self.q_2 == other.q_2


def sl_form(qc: QuantumCurve) -> SLPotential:
    """Q = q^2/4 - r + (hbar/2) dq/dx, expanded in powers of hbar."""
    quarter = FieldValue(QQ(1, 4))
    half = FieldValue(QQ(1, 2))
    q_0 = qc.q0 * qc.q0 * quarter - qc.r0
    q_1 = qc.q0 * qc.q1 * half - qc.r1 + qc.q0.derivative() * half
    q_2 = qc.q1 * qc.q1 * quarter - qc.r2 + qc.q1.derivative() * half
    return SLPotential(q_0, q_1, q_2)


class WkbExpansion:
    """Terms S_{-1}, S_0, ..., S_m of the WKB logarithmic derivative,
    pulled back to the curve: entry [i] is S_{i-1}(x(z)) as a rational
    function of z."""

    __slots__ = ("terms", "geom")

    def __init__(self, terms, geom):
        self.terms = terms
        self.geom = geom

    def s(self, m: int) -> RationalFunction:
        return self.terms[m + 1]


def riccati_expand(qc: QuantumCurve, geom: CurveGeometry, m_max: int, branch: str = "plus") -> WkbExpansion:
    """Solve the Riccati recursion on the curve, exactly, up to S_{m_max}.

    S_{-1}(x(z)) is y(z) for the "plus" branch (y o sigma for "minus");
    the ladder divides by 2 S_{-1} + q0 = +-Delta at each step.
    """
    x = geom.curve.x
    xp = x.derivative()
    if branch == "plus":
        s_m1 = geom.curve.y
    elif branch == "minus":
        s_m1 = geom.curve.y.compose(geom.sigma)
    else:
        raise BranchAmbiguity("branch must be 'plus' or 'minus'")
    q0 = geom.q0z
    r0 = geom.r0z
    if not (s_m1 * s_m1 + q0 * s_m1 + r0).is_zero():
        raise BranchAmbiguity("S_-1 does not solve the characteristic equation")
    q1 = qc.q1.compose(x)
    r1 = qc.r1.compose(x)
    r2 = qc.r2.compose(x)
    denom = 2 * s_m1 + q0  # = +-Delta
    if denom.is_zero():
        raise BranchAmbiguity("degenerate branch: 2 S_-1 + q0 = 0")
    inv_denom = 1 / denom
    terms = [s_m1]
    # S_0 = -(S_-1' + q1 S_-1 + r1) / (2 S_-1 + q0)
    s0 = -((s_m1.derivative() / xp) + q1 * s_m1 + r1) * inv_denom
    terms.append(s0)
    for m in range(1, m_max + 1):
        prev = terms[m]  # S_{m-1}
        acc = prev.derivative() / xp + q1 * prev
        if m == 1:
            acc = acc + r2
        for i in range(0, m):
            acc = acc + terms[i + 1] * terms[m - i]  # S_i S_{m-1-i}, i,j >= 0
        terms.append(-acc * inv_denom)
    return WkbExpansion(terms, geom)


class VorosCoefficient:
    __slots__ = ("label", "coefficients")

    def __init__(self, label, coefficients):
        self.label = label
        self.coefficients = list(coefficients)

    def __getitem__(self, m: int) -> FieldValue:
        return self.coefficients[m - 1]

    def __len__(self):
        return len(self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, VorosCoefficient):
            return NotImplemented
        return self.coefficients == other.coefficients


def _integrate_between(integrand: RationalFunction, upper: Point, lower: Point, radicand, hints):
    """Exact integral of a rational differential between two endpoints.

    Works directly on the partial-fraction decomposition, avoiding the
    coefficient blow-up of assembling a global primitive.  Returns
    (value, raw log entries), log entries as in LogRational.
    """
    from .ratfunc import partial_fractions

    poly, parts = partial_fractions(integrand, radicand, hints)
    pol_prim = poly.antiderivative()
    value = ZERO
    logs = []
    for sign, pt in ((1, upper), (-1, lower)):
        if pt.is_infinity:
            if not pol_prim.is_zero():
                raise DivergentEndpoint("polynomial part diverges at infinity")
        else:
            value = value + FieldValue(sign) * pol_prim.evaluate(pt.value)
    for pole, coeffs in parts:
        for k, c in coeffs.items():
            if k == 1:
                total = ZERO
                for sign, pt in ((1, upper), (-1, lower)):
                    if pt.is_infinity:
                        total = total + FieldValue(sign) * c
                        continue
                    arg = pt.value - pole
                    if arg.is_zero():
                        raise DivergentEndpoint("log endpoint hits its branch point")
                    logs.append((FieldValue(sign) * c, arg))
                # at an infinite endpoint all log terms combine to
                # (sum c_i) log z which must cancel overall; tracked below
                if not total.is_zero() and (upper.is_infinity or lower.is_infinity):
                    logs.append((total, None))
            else:
                scale = -c / FieldValue(k - 1)
                for sign, pt in ((1, upper), (-1, lower)):
                    if pt.is_infinity:
                        continue
                    if pt.value == pole:
                        raise DivergentEndpoint("primitive evaluated at its pole")
                    value = value + FieldValue(sign) * scale * (pt.value - pole) ** (1 - k)
    # combine the formal log-at-infinity markers
    inf_total = ZERO
    clean = []
    for c, arg in logs:
        if arg is None:
            inf_total = inf_total + c
        else:
            clean.append((c, arg))
    if not inf_total.is_zero():
        raise DivergentEndpoint("log terms diverge at the infinite endpoint")
    return value, clean


def voros_riccati(wkb: WkbExpansion, geom: CurveGeometry, label, m_max: int) -> VorosCoefficient:
    """Voros coefficients as endpoint differences of primitives of S_m dx.

    Each S_m(x(z)) x'(z) dz (m >= 1) is an exact rational differential, so
    its primitive is rational up to log terms; surviving log parts must
    cancel as a multiplicative relation, else ResidualLogSymbol.
    """
    xp = geom.curve.x.derivative()
    upper = geom.beta_plus[label]
    lower = geom.beta_minus[label]
    out = []
    for m in range(1, m_max + 1):
        integrand = wkb.s(m) * xp
        value, logs = _integrate_between(integrand, upper, lower, geom.curve.radicand, geom.special_points)
        if logs:
            comb = LogCombination()
            irrational = []
            for c, arg in logs:
                if not c.is_rational:
                    irrational.append((c, arg))
                    continue
                if arg.is_rational:
                    comb = comb + LogCombination.single(c.a, arg.a)
                else:
                    irrational.append((c, arg))
            if irrational:
                resolved = _pair_conjugate_logs(irrational)
                if resolved is None:
                    raise ResidualLogSymbol("irrational log arguments do not pair")
                comb = comb + resolved
            if not comb.is_zero():
                raise ResidualLogSymbol("non-cancelling log part in V_%d" % m)
        out.append(value)
    return VorosCoefficient(label, out)


def _pair_conjugate_logs(entries):
    """Reduce sum c log(a + b sqrt(d)) by pairing conjugates into norms."""
    comb = LogCombination()
    remaining = list(entries)
    while remaining:
        c, arg = remaining.pop()
        if arg.is_rational and c.is_rational:
            comb = comb + LogCombination.single(c.a, arg.a)
            continue
        mate = None
        for i, (c2, arg2) in enumerate(remaining):
            if c2 == c and arg2 == arg.conjugate():
                mate = i
                break
        if mate is None:
            return None
        remaining.pop(mate)
        if not c.is_rational:
            return None
        comb = comb + LogCombination.single(c.a, arg.norm())
    return comb


def voros_from_w(table_or_geom, divisor: QuantizationDivisor, label, m_max: int, shared: RecursionTable = None) -> VorosCoefficient:
    """Voros coefficients from divisor integrals of correlation differentials."""
    geom = table_or_geom.geom if isinstance(table_or_geom, RecursionTable) else table_or_geom
    if isinstance(table_or_geom, RecursionTable) and shared is None:
        shared = table_or_geom
    divisor.validate_support(geom)
    legs = DivisorLegs(geom, divisor.weights, label)
    values = voros_from_correlators(geom, legs, m_max, shared)
    return VorosCoefficient(label, values)
