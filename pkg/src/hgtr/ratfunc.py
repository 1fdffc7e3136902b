"""Univariate polynomial and rational-function algebra over FieldValue.

Provides the machinery the recursion engine sits on: reduced rational
functions, exact Laurent expansion at any point of P^1 (the chart at
infinity is w = 1/z), residues of differentials f(z) dz, antiderivatives
with logarithmic parts, and exact rational interpolation.

All values are immutable and all operations are exact.
"""

from __future__ import annotations

from .field import (
    QQ,
    FieldValue,
    ZERO,
    ONE,
    DivisionByZero,
    NotRepresentable,
    factorint,
    field_sqrt,
)


class UnsupportedRootField(ArithmeticError):
    """Denominator factor with roots outside Q(sqrt(d))."""


class InconsistentSamples(ValueError):
    """Samples not explained by a rational function of the stated degrees."""


class DivergentEndpoint(ArithmeticError):
    """Evaluation of a primitive at a point where it blows up."""


def _fv(x) -> FieldValue:
    if isinstance(x, FieldValue):
        return x
    return FieldValue(QQ(x))


# ---------------------------------------------------------------------------
# points of P^1
# ---------------------------------------------------------------------------


class Point:
    """A point of the projective line: a FieldValue or infinity."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value  # FieldValue, or None for infinity

    @staticmethod
    def finite(v) -> "Point":
        return Point(_fv(v))

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            if self.value is None:
                return NotImplemented
            return self.value == _fv(other)
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        return self.value == other.value

    def __hash__(self):
        return hash(("pt", None if self.value is None else self.value))

    def __repr__(self):
        return "oo" if self.value is None else str(self.value)


INFINITY = Point(None)


# ---------------------------------------------------------------------------
# polynomials (dense, ascending coefficients)
# ---------------------------------------------------------------------------


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_fv(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Polynomial":
        return Polynomial([_fv(c)])

    @staticmethod
    def variable() -> "Polynomial":
        return Polynomial([ZERO, ONE])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> FieldValue:
        if not self.coeffs:
            return ZERO
        return self.coeffs[-1]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, FieldValue):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial([])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                if cb.is_zero():
                    continue
                out[i + j] = out[i + j] + ca * cb
        return Polynomial(out)

    def scale(self, c) -> "Polynomial":
        c = _fv(c)
        if c.is_zero():
            return Polynomial([])
        return Polynomial([a * c for a in self.coeffs])

    def __pow__(self, n: int):
        result = Polynomial([ONE])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other):
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Polynomial([]), self
        inv_lc = other.lc().inverse()
        quo = [ZERO] * (dq + 1)
        oc = other.coeffs
        for k in range(dq, -1, -1):
            c = rem[k + len(oc) - 1] * inv_lc
            quo[k] = c
            if not c.is_zero():
                for j, b in enumerate(oc):
                    rem[k + j] = rem[k + j] - c * b
        return Polynomial(quo), Polynomial(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero() or self.lc() == ONE:
            return self
        return self.scale(self.lc().inverse())

    def gcd(self, other) -> "Polynomial":
        a, b = self, other
        while not b.is_zero():
            # monic remainders keep coefficient growth in check
            b = b.monic()
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self) -> "Polynomial":
        return Polynomial([c * FieldValue(i) for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x) -> FieldValue:
        x = _fv(x)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_poly(self, other) -> "Polynomial":
        acc = Polynomial([])
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial.const(c)
        return acc

    def taylor_shift(self, p) -> "Polynomial":
        """Coefficients of self(p + t) as a polynomial in t."""
        p = _fv(p)
        if not self.coeffs:
            return self
        work = list(self.coeffs)
        out = []
        while work:
            # synthetic division by (z - p): remainder is the next coefficient
            b = work[-1]
            quot = []
            for k in range(len(work) - 2, -1, -1):
                quot.append(b)
                b = work[k] + p * b
            out.append(b)
            work = list(reversed(quot))
        return Polynomial(out)

    def reversed_coeffs(self, upto=None) -> "Polynomial":
        """z^deg * self(1/z); pad to degree `upto` when given."""
        deg = self.degree if upto is None else upto
        cs = [ZERO] * (deg + 1)
        for i, c in enumerate(self.coeffs):
            cs[deg - i] = c
        return Polynomial(cs)

    def antiderivative(self) -> "Polynomial":
        return Polynomial([ZERO] + [c / FieldValue(i + 1) for i, c in enumerate(self.coeffs)])

    def valuation(self) -> int:
        """Order of vanishing at 0 (degree+1-safe: 0 polynomial -> big)."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return 1 << 30

    def __repr__(self):
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(str(c))
            else:
                parts.append("(%s)*z^%d" % (c, i))
        return "Poly(%s)" % " + ".join(parts)


def poly_from_roots(roots) -> Polynomial:
    p = Polynomial([ONE])
    for r in roots:
        p = p * Polynomial([-_fv(r), ONE])
    return p


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Reduced num/den with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if not isinstance(num, Polynomial):
            num = Polynomial.const(num) if not isinstance(num, (list, tuple)) else Polynomial(num)
        if den is None:
            den = Polynomial([ONE])
        elif not isinstance(den, Polynomial):
            den = Polynomial.const(den) if not isinstance(den, (list, tuple)) else Polynomial(den)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if reduce:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
        lc = den.lc()
        if lc != ONE:
            inv = lc.inverse()
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Polynomial.const(c))

    @staticmethod
    def variable() -> "RationalFunction":
        return RationalFunction(Polynomial.variable())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _rf(other)
        num = self.num * other.den + other.num * self.den
        return RationalFunction(num, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_rf(other))

    def __rsub__(self, other):
        return _rf(other) + (-self)

    def __neg__(self):
        r = RationalFunction.__new__(RationalFunction)
        r.num = -self.num
        r.den = self.den
        return r

    def __mul__(self, other):
        other = _rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rf(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _rf(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (RationalFunction(self.den, self.num)) ** (-n)
        return RationalFunction(self.num**n, self.den**n, reduce=False)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, other) -> "RationalFunction":
        """self(other(z)); other must be nonconstant."""
        other = _rf(other)
        if other.is_constant():
            raise ValueError("composition with a constant")
        d = max(self.num.degree, self.den.degree, 0)
        p, q = other.num, other.den
        qpow = [Polynomial([ONE])]
        ppow = [Polynomial([ONE])]
        for _ in range(d):
            qpow.append(qpow[-1] * q)
            ppow.append(ppow[-1] * p)
        num = Polynomial([])
        for i, c in enumerate(self.num.coeffs):
            if not c.is_zero():
                num = num + (ppow[i] * qpow[d - i]).scale(c)
        den = Polynomial([])
        for i, c in enumerate(self.den.coeffs):
            if not c.is_zero():
                den = den + (ppow[i] * qpow[d - i]).scale(c)
        return RationalFunction(num, den)

    def evaluate(self, point) -> FieldValue:
        """Exact value at a Point (or FieldValue); poles raise DivergentEndpoint."""
        if isinstance(point, Point) and point.is_infinity:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                raise DivergentEndpoint("pole at infinity")
            if dn < dd:
                return ZERO
            return self.num.lc() / self.den.lc()
        x = point.value if isinstance(point, Point) else _fv(point)
        dv = self.den.evaluate(x)
        if dv.is_zero():
            nv = self.num.evaluate(x)
            if nv.is_zero():
                return self.laurent(Point.finite(x), 0).coefficient(0)
            raise DivergentEndpoint("pole at %s" % x)
        return self.num.evaluate(x) / dv

    def order_at(self, point) -> int:
        """Valuation: order of zero (>0) or pole (<0) at the point."""
        if self.is_zero():
            return 1 << 30
        if isinstance(point, Point) and point.is_infinity:
            return self.den.degree - self.num.degree
        x = point.value if isinstance(point, Point) else _fv(point)
        return self.num.taylor_shift(x).valuation() - self.den.taylor_shift(x).valuation()

    def laurent(self, at, upto: int) -> "LaurentSeries":
        """Exact Laurent expansion at a Point, with coefficients for all
        exponents val(f) .. upto inclusive."""
        if not isinstance(at, Point):
            at = Point.finite(at)
        if self.is_zero():
            return LaurentSeries(at, 0, [], upto + 1)
        if at.is_infinity:
            # local coordinate w = 1/z
            dn, dd = self.num.degree, self.den.degree
            n = self.num.reversed_coeffs()
            d = self.den.reversed_coeffs()
            shift = dd - dn  # valuation contribution of w^(dd-dn)
            return _series_div(n, d, at, shift, upto)
        n = self.num.taylor_shift(at.value)
        d = self.den.taylor_shift(at.value)
        return _series_div(n, d, at, 0, upto)

    def residue(self, at) -> FieldValue:
        """Residue of the differential self(z) dz at a Point.

        At infinity this is the residue of -f(1/w)/w^2 dw at w = 0.
        """
        if not isinstance(at, Point):
            at = Point.finite(at)
        if self.is_zero():
            return ZERO
        if at.is_infinity:
            s = self.laurent(at, 1)
            return -s.coefficient(1)
        s = self.laurent(at, -1)
        return s.coefficient(-1)

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.const(_fv(x))


def _series_div(num: Polynomial, den: Polynomial, center, shift: int, upto: int) -> "LaurentSeries":
    """Laurent series of t^shift * num(t)/den(t) with coefficients through t^upto."""
    vn, vd = num.valuation(), den.valuation()
    val = vn - vd + shift
    n_terms = upto - val + 1
    if n_terms <= 0:
        return LaurentSeries(center, val, [], upto + 1)
    a = list(num.coeffs[vn:])
    b = list(den.coeffs[vd:])
    inv_b0 = b[0].inverse()
    out = []
    for k in range(n_terms):
        acc = a[k] if k < len(a) else ZERO
        for j in range(1, min(k, len(b) - 1) + 1):
            acc = acc - b[j] * out[k - j]
        out.append(acc * inv_b0)
    return LaurentSeries(center, val, out, upto + 1)


# ---------------------------------------------------------------------------
# Laurent series with an explicit knowledge window
# ---------------------------------------------------------------------------


class SeriesWindow(ArithmeticError):
    """A coefficient outside the known truncation window was requested."""


class LaurentSeries:
    """Finite window of a Laurent expansion: coefficients for exponents
    offset .. prec-1 are known exactly; everything >= prec is unknown."""

    __slots__ = ("center", "offset", "coeffs", "prec")

    def __init__(self, center, offset, coeffs, prec):
        coeffs = list(coeffs)
        while coeffs and coeffs[0].is_zero():
            coeffs.pop(0)
            offset += 1
        while coeffs and len(coeffs) > prec - offset:
            coeffs.pop()
        self.center = center
        self.offset = offset
        self.coeffs = coeffs
        self.prec = prec

    def is_zero_window(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int:
        return self.offset if self.coeffs else self.prec

    def coefficient(self, k: int) -> FieldValue:
        if k >= self.prec:
            raise SeriesWindow("coefficient %d beyond truncation %d" % (k, self.prec))
        if k < self.offset or k - self.offset >= len(self.coeffs):
            return ZERO
        return self.coeffs[k - self.offset]

    def truncate(self, prec: int) -> "LaurentSeries":
        if prec >= self.prec:
            return self
        return LaurentSeries(self.center, self.offset, self.coeffs[: max(0, prec - self.offset)], prec)

    def __add__(self, other):
        prec = min(self.prec, other.prec)
        off = min(self.offset if self.coeffs else prec, other.offset if other.coeffs else prec)
        out = [ZERO] * max(0, prec - off)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.offset + i
                if k < prec:
                    out[k - off] = out[k - off] + c
        return LaurentSeries(self.center, off, out, prec)

    def __neg__(self):
        return LaurentSeries(self.center, self.offset, [-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        c = _fv(c)
        if c.is_zero():
            return LaurentSeries(self.center, 0, [], self.prec)
        return LaurentSeries(self.center, self.offset, [a * c for a in self.coeffs], self.prec)

    def __mul__(self, other):
        if isinstance(other, FieldValue):
            return self.scale(other)
        if self.is_zero_window() or other.is_zero_window():
            # zero with the correct window bookkeeping
            prec = min(self.prec + other.valuation, other.prec + self.valuation)
            return LaurentSeries(self.center, 0, [], prec)
        prec = min(self.prec + other.offset, other.prec + self.offset)
        off = self.offset + other.offset
        out = [ZERO] * max(0, prec - off)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            ka = self.offset + i
            for j, b in enumerate(other.coeffs):
                k = ka + other.offset + j
                if k >= prec:
                    break
                if not b.is_zero():
                    out[k - off] = out[k - off] + a * b
        return LaurentSeries(self.center, off, out, prec)

    def shift(self, k: int) -> "LaurentSeries":
        return LaurentSeries(self.center, self.offset + k, self.coeffs, self.prec + k)

    def inverse(self) -> "LaurentSeries":
        if not self.coeffs:
            raise DivisionByZero("inverse of a zero series window")
        n_terms = self.prec - self.offset
        a = self.coeffs
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, n_terms):
            acc = ZERO
            for j in range(1, min(k, len(a) - 1) + 1):
                acc = acc + a[j] * out[k - j]
            out.append(-acc * inv0)
        # (t^v * u)^-1 = t^-v * u^-1 ; window: prec-offset terms from -offset
        return LaurentSeries(self.center, -self.offset, out, self.prec - 2 * self.offset)

    def power(self, n: int) -> "LaurentSeries":
        if n == 0:
            return LaurentSeries(self.center, 0, [ONE], max(1, self.prec))
        result = self
        for _ in range(n - 1):
            result = result * self
        return result

    def residue_coefficient(self) -> FieldValue:
        return self.coefficient(-1)

    def __repr__(self):
        parts = ["(%s)*t^%d" % (c, self.offset + i) for i, c in enumerate(self.coeffs) if not c.is_zero()]
        return "Series@%r[%s + O(t^%d)]" % (self.center, " + ".join(parts) or "0", self.prec)


# ---------------------------------------------------------------------------
# root finding over Q(sqrt(d))
# ---------------------------------------------------------------------------


def _divisors(n: int):
    n = abs(int(n))
    if n == 0:
        return [1]
    fac = factorint(n)
    out = [1]
    for p, e in fac.items():
        out = [d * p**k for d in out for k in range(e + 1)]
        if len(out) > 4096:
            raise UnsupportedRootField("constant term has too many divisors")
    return out


def _rational_roots(p: Polynomial):
    """All rational roots (no multiplicity) of a rational-coefficient polynomial."""
    import math

    if any(c.d != 0 for c in p.coeffs):
        return []
    roots = []
    if p.coeffs and p.coeffs[0].is_zero():
        roots.append(ZERO)
    den_lcm = 1
    for c in p.coeffs:
        den_lcm = den_lcm * int(c.a.denominator) // math.gcd(den_lcm, int(c.a.denominator))
    ints = [int(c.a * den_lcm) for c in p.coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)
    if not ints or len(ints) == 1:
        return roots
    a0, an = ints[0], ints[-1]
    for pnum in _divisors(a0):
        for pden in _divisors(an):
            for sign in (1, -1):
                cand = FieldValue(QQ(sign * pnum, pden))
                if p.evaluate(cand).is_zero() and all(cand != r for r in roots):
                    roots.append(cand)
    return roots


def _squarefree_roots(p: Polynomial, radicand):
    from .field import sqrt_in_field

    deg = p.degree
    if deg == 0:
        return []
    if deg == 1:
        return [-p.coeffs[0] / p.coeffs[1]]
    if deg == 2:
        a, b, c = p.coeffs[2], p.coeffs[1], p.coeffs[0]
        disc = b * b - FieldValue(4) * a * c
        root = field_sqrt(disc)
        if root is None and disc.is_rational and radicand is not None:
            try:
                root = sqrt_in_field(disc.a, radicand)
            except NotRepresentable:
                root = None
        if root is None:
            raise UnsupportedRootField("quadratic with discriminant %s not solvable in the field" % disc)
        two_a = (a + a).inverse()
        return [(-b + root) * two_a, (-b - root) * two_a]
    # degree >= 3: peel off rational roots, then retry on the quotient
    found = _rational_roots(p)
    if found:
        rest = p
        for r in found:
            rest = rest.divmod(Polynomial([-r, ONE]))[0]
        return found + (_squarefree_roots(rest, radicand) if rest.degree > 0 else [])
    raise UnsupportedRootField("cannot factor degree-%d polynomial over the field" % deg)


def squarefree_decomposition(p: Polynomial):
    """Yun's algorithm: [(factor, multiplicity)] with factors square-free."""
    d = p.derivative()
    a = p.gcd(d)
    b = p.divmod(a)[0]
    c = d.divmod(a)[0]
    parts = []
    i = 1
    while b.degree > 0:
        t = c - b.derivative()
        g = b.gcd(t)
        if g.degree > 0:
            parts.append((g, i))
            b = b.divmod(g)[0]
            c = t.divmod(g)[0]
        else:
            c = t
        i += 1
        if i > p.degree + 1:
            raise ArithmeticError("square-free decomposition did not terminate")
    return parts


def polynomial_roots(p: Polynomial, radicand=None, hints=None):
    """Full factorization into roots: list of (root, multiplicity).

    `hints` are candidate roots tried by exact division first (curve
    geometry supplies them for the denominators it produces).  Raises
    UnsupportedRootField when a factor does not split over Q(sqrt(d)).
    """
    if p.is_zero():
        raise ValueError("roots of the zero polynomial")
    degree = p.degree
    v = p.valuation()
    counts = {}
    if v > 0:
        counts[ZERO] = v
        p = Polynomial(p.coeffs[v:])
    if hints:
        for h in hints:
            h = _fv(h)
            while p.degree > 0 and p.evaluate(h).is_zero():
                p = p.divmod(Polynomial([-h, ONE]))[0]
                counts[h] = counts.get(h, 0) + 1
    if p.degree > 0:
        for q, mult in squarefree_decomposition(p):
            for r in _squarefree_roots(q, radicand):
                counts[r] = counts.get(r, 0) + mult
    out = list(counts.items())
    if sum(m for _, m in out) != degree:
        raise UnsupportedRootField(
            "factorization incomplete (%d of %d roots)" % (sum(m for _, m in out), degree)
        )
    return out


# ---------------------------------------------------------------------------
# partial fractions, antiderivatives, primitives with logs
# ---------------------------------------------------------------------------


def partial_fractions(f: RationalFunction, radicand=None, hints=None):
    """f = poly + sum over poles p of sum_k c_{p,k}/(z-p)^k.

    Returns (poly_part, [(pole, {k: coeff})]).
    """
    poly, rem = f.num.divmod(f.den)
    out = []
    if rem.is_zero():
        return poly, out
    g = RationalFunction(rem, f.den, reduce=False)
    for root, mult in polynomial_roots(f.den, radicand, hints):
        s = g.laurent(Point.finite(root), -1)
        coeffs = {}
        for k in range(1, mult + 1):
            c = s.coefficient(-k)
            if not c.is_zero():
                coeffs[k] = c
        if coeffs:
            out.append((root, coeffs))
    return poly, out


class LogRational:
    """rational_part(z) + sum_i c_i * log(z - p_i): a primitive with logs."""

    __slots__ = ("rational_part", "log_terms")

    def __init__(self, rational_part: RationalFunction, log_terms):
        terms = [(c, p) for (c, p) in log_terms if not c.is_zero()]
        pts = [p for _, p in terms]
        if len(set(pts)) != len(pts):
            raise ValueError("duplicate log points")
        self.rational_part = rational_part
        self.log_terms = tuple(terms)

    def derivative(self) -> RationalFunction:
        out = self.rational_part.derivative()
        for c, p in self.log_terms:
            out = out + RationalFunction(Polynomial.const(c), Polynomial([-p, ONE]))
        return out

    def shift_constant(self, c) -> "LogRational":
        return LogRational(self.rational_part + _rf(c), self.log_terms)

    def evaluate_difference(self, upper, lower):
        """F(upper) - F(lower): returns (FieldValue, raw log entries).

        Log entries are (coefficient, argument) pairs meaning
        sum c*log(argument); endpoints at infinity require the total log
        coefficient to cancel there (else DivergentEndpoint).
        """
        if not isinstance(upper, Point):
            upper = Point.finite(upper)
        if not isinstance(lower, Point):
            lower = Point.finite(lower)
        val = self.rational_part.evaluate(upper) - self.rational_part.evaluate(lower)
        logs = []
        for sign, pt in ((1, upper), (-1, lower)):
            if pt.is_infinity:
                total = ZERO
                for c, _ in self.log_terms:
                    total = total + c
                if not total.is_zero():
                    raise DivergentEndpoint("log terms diverge at infinity")
                continue  # sum c*log(z-p) -> 0 relative correction at infinity
            for c, p in self.log_terms:
                arg = pt.value - p
                if arg.is_zero():
                    raise DivergentEndpoint("log endpoint hits its branch point")
                logs.append((c if sign > 0 else -c, arg))
        return val, logs


def antiderivative(f: RationalFunction, radicand=None, hints=None) -> LogRational:
    """Exact primitive of f dz as rational part plus log terms."""
    poly, parts = partial_fractions(f, radicand, hints)
    rat = RationalFunction(poly.antiderivative())
    logs = []
    for pole, coeffs in parts:
        for k, c in coeffs.items():
            if k == 1:
                logs.append((c, pole))
            else:
                den = Polynomial([-pole, ONE]) ** (k - 1)
                rat = rat + RationalFunction(
                    Polynomial.const(-c / FieldValue(k - 1)), den
                )
    return LogRational(rat, logs)


# ---------------------------------------------------------------------------
# exact linear algebra and rational interpolation
# ---------------------------------------------------------------------------


def solve_nullspace(rows, ncols):
    """One nonzero rational-kernel vector of the matrix, or None."""
    mat = [list(r) for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if not mat[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and not mat[i][c].is_zero():
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots[c] = r
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[-1]
    vec = [ZERO] * ncols
    vec[fc] = ONE
    for c, row in pivots.items():
        vec[c] = -mat[row][fc]
    return vec


def rational_interpolate(samples, num_degree: int, den_degree: int) -> RationalFunction:
    """The unique rational function of bounded degrees through the samples.

    Needs at least num_degree + den_degree + 2 samples at distinct abscissae;
    the last two are held out and checked, and every sample is re-verified
    against the reduced candidate.  Raises InconsistentSamples on failure.
    """
    samples = [(_fv(x), _fv(y)) for x, y in samples]
    need = num_degree + den_degree + 2
    if len(samples) < need:
        raise InconsistentSamples("need at least %d samples, got %d" % (need, len(samples)))
    if len({x for x, _ in samples}) != len(samples):
        raise InconsistentSamples("duplicate abscissae")
    fit = samples[:-2]
    ncols = num_degree + den_degree + 2
    rows = []
    for x, y in fit:
        xp = [ONE]
        for _ in range(max(num_degree, den_degree)):
            xp.append(xp[-1] * x)
        row = [xp[i] for i in range(num_degree + 1)]
        row += [-(y * xp[j]) for j in range(den_degree + 1)]
        rows.append(row)
    vec = solve_nullspace(rows, ncols)
    if vec is None:
        raise InconsistentSamples("no rational function of degrees (%d, %d) fits" % (num_degree, den_degree))
    num = Polynomial(vec[: num_degree + 1])
    den = Polynomial(vec[num_degree + 1 :])
    if den.is_zero():
        raise InconsistentSamples("degenerate fit (zero denominator)")
    cand = RationalFunction(num, den)
    for x, y in samples:
        dv = cand.den.evaluate(x)
        if dv.is_zero() or cand.num.evaluate(x) != y * dv:
            raise InconsistentSamples("sample (%s, %s) not matched" % (x, y))
    return cand
