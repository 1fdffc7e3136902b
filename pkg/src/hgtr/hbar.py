"""Truncated formal series in hbar whose coefficients carry formal logs.

An HbarSeries knows its coefficients for exponents min_exp .. order-1
exactly; each coefficient is a rational number plus a LogCombination,
a formal sum c_1*log(a_1) + ... with exact rational arguments.  Equality
of log parts is decided exactly through multiplicative relations:
sum c_i log(a_i) = 0  iff  prod a_i^{c_i} = 1, tested on prime-exponent
vectors (with the sign of negative arguments tracked as a factor -1).

The same class doubles as a truncated Laurent/power series in an ordinary
variable for generating-function identities.
"""

from __future__ import annotations

from math import comb, factorial

from .field import QQ, factorint


class ResidualLogSymbol(ArithmeticError):
    """A formal log part that cannot be certified zero."""


class LogCombination:
    """Formal sum of c * log(a) with nonzero rational arguments a."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        merged: dict = {}
        for c, a in terms:
            c = QQ(c)
            a = QQ(a)
            if a == 0:
                raise ZeroDivisionError("log(0)")
            if c == 0 or a == 1:
                continue
            merged[a] = merged.get(a, QQ(0)) + c
        self.terms = tuple(sorted(((a, c) for a, c in merged.items() if c != 0), key=lambda t: (t[0].numerator, t[0].denominator)))

    @staticmethod
    def single(c, a) -> "LogCombination":
        return LogCombination([(c, a)])

    def is_trivial(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, LogCombination):
            return NotImplemented
        return LogCombination([(c, a) for a, c in self.terms] + [(c, a) for a, c in other.terms])

    def __neg__(self):
        return LogCombination([(-c, a) for a, c in self.terms])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "LogCombination":
        k = QQ(k)
        return LogCombination([(c * k, a) for a, c in self.terms])

    def is_zero(self) -> bool:
        """Exact zero test: prod a^c == 1 with exponents cleared to integers."""
        if not self.terms:
            return True
        lcm = 1
        for _, c in self.terms:
            d = int(c.denominator)
            lcm = lcm * d // __import__("math").gcd(lcm, d)
        primes: dict = {}
        sign_exp = 0
        for a, c in self.terms:
            e = int(c * lcm)
            if a < 0:
                sign_exp += e
            for value, direction in ((abs(a).numerator, 1), (abs(a).denominator, -1)):
                if value == 1:
                    continue
                for p, k in factorint(value).items():
                    primes[p] = primes.get(p, 0) + direction * k * e
        if sign_exp % 2:
            return False
        return all(v == 0 for v in primes.values())

    def __eq__(self, other):
        if not isinstance(other, LogCombination):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("LogCombination is unhashable")

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*log(%s)" % (c, a) for a, c in self.terms)


_NO_LOG = LogCombination()


class HbarSeries:
    """Exact truncated series sum_k (c_k + L_k) hbar^k, k in [min_exp, order)."""

    __slots__ = ("coeffs", "logs", "order")

    def __init__(self, coeffs=None, logs=None, order=8):
        self.coeffs = {k: QQ(v) for k, v in (coeffs or {}).items() if QQ(v) != 0}
        self.logs = {k: v for k, v in (logs or {}).items() if not v.is_trivial()}
        self.order = order

    @staticmethod
    def zero(order) -> "HbarSeries":
        return HbarSeries({}, {}, order)

    @staticmethod
    def constant(c, order) -> "HbarSeries":
        return HbarSeries({0: QQ(c)}, {}, order)

    @staticmethod
    def monomial(c, k, order) -> "HbarSeries":
        return HbarSeries({k: QQ(c)}, {}, order)

    @staticmethod
    def log_constant(comb: LogCombination, order, exponent=0) -> "HbarSeries":
        return HbarSeries({}, {exponent: comb}, order)

    def coefficient(self, k: int):
        """(rational, LogCombination) at hbar^k; k must be below the order."""
        if k >= self.order:
            raise ArithmeticError("coefficient %d beyond truncation order %d" % (k, self.order))
        return self.coeffs.get(k, QQ(0)), self.logs.get(k, _NO_LOG)

    def exponents(self):
        return sorted(set(self.coeffs) | set(self.logs))

    def has_logs(self) -> bool:
        return bool(self.logs)

    def __add__(self, other):
        if not isinstance(other, HbarSeries):
            other = HbarSeries.constant(other, self.order)
        order = min(self.order, other.order)
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs.get(k, QQ(0)) + v
        logs = dict(self.logs)
        for k, v in other.logs.items():
            logs[k] = logs.get(k, _NO_LOG) + v
        return HbarSeries({k: v for k, v in coeffs.items() if k < order}, {k: v for k, v in logs.items() if k < order}, order)

    __radd__ = __add__

    def __neg__(self):
        return HbarSeries({k: -v for k, v in self.coeffs.items()}, {k: -v for k, v in self.logs.items()}, self.order)

    def __sub__(self, other):
        if not isinstance(other, HbarSeries):
            other = HbarSeries.constant(other, self.order)
        return self + (-other)

    def scale(self, c) -> "HbarSeries":
        c = QQ(c)
        if c == 0:
            return HbarSeries.zero(self.order)
        return HbarSeries(
            {k: v * c for k, v in self.coeffs.items()},
            {k: v.scale(c) for k, v in self.logs.items()},
            self.order,
        )

    def shift_exponent(self, j: int) -> "HbarSeries":
        return HbarSeries(
            {k + j: v for k, v in self.coeffs.items()},
            {k + j: v for k, v in self.logs.items()},
            self.order + j,
        )

    def __mul__(self, other):
        """Product; at most one factor may carry formal logs."""
        if not isinstance(other, HbarSeries):
            return self.scale(other)
        if self.logs and other.logs:
            raise ResidualLogSymbol("product of two log-carrying series")
        if other.logs:
            return other * self
        # other is log-free
        min_self = min(self.exponents(), default=0)
        min_other = min(other.exponents(), default=0)
        order = min(self.order + min_other, other.order + min_self)
        coeffs: dict = {}
        logs: dict = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                if k < order:
                    coeffs[k] = coeffs.get(k, QQ(0)) + v1 * v2
        for k1, L in self.logs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                if k < order:
                    logs[k] = logs.get(k, _NO_LOG) + L.scale(v2)
        return HbarSeries(coeffs, logs, order)

    __rmul__ = __mul__

    def inverse(self) -> "HbarSeries":
        if self.logs:
            raise ResidualLogSymbol("inverse of a log-carrying series")
        if not self.coeffs:
            raise ZeroDivisionError("inverse of the zero series")
        v = min(self.coeffs)
        lead = self.coeffs[v]
        n_terms = self.order - v
        a = [self.coeffs.get(v + i, QQ(0)) for i in range(n_terms)]
        out = [1 / lead]
        for k in range(1, n_terms):
            acc = QQ(0)
            for j in range(1, k + 1):
                acc += a[j] * out[k - j] if j < len(a) else QQ(0)
            out.append(-acc / lead)
        return HbarSeries({-v + i: c for i, c in enumerate(out)}, {}, self.order - 2 * v)

    def __truediv__(self, other):
        if not isinstance(other, HbarSeries):
            return self.scale(1 / QQ(other))
        return self * other.inverse()

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs.values()) and all(L.is_zero() for L in self.logs.values())

    def __eq__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        parts = []
        for k in self.exponents():
            c = self.coeffs.get(k, QQ(0))
            L = self.logs.get(k)
            txt = str(c)
            if L is not None and not L.is_trivial():
                txt += " + " + repr(L)
            parts.append("(%s)*h^%d" % (txt, k))
        return "HbarSeries[%s + O(h^%d)]" % (" + ".join(parts) or "0", self.order)


# ---------------------------------------------------------------------------
# expansion helpers
# ---------------------------------------------------------------------------


def expand_power(base, slope, exponent: int, order: int) -> HbarSeries:
    """(base + slope*h)^exponent as an exact series, any integer exponent."""
    base = QQ(base)
    slope = QQ(slope)
    if exponent >= 0:
        coeffs = {}
        for k in range(0, min(exponent, order - 1) + 1):
            coeffs[k] = comb(exponent, k) * base ** (exponent - k) * slope**k
        return HbarSeries(coeffs, {}, order)
    if base == 0:
        if slope == 0:
            raise ZeroDivisionError("0^negative")
        return HbarSeries({exponent: slope**exponent}, {}, order + exponent + 1 + (order - 1))
    # (base + s h)^e = base^e (1 + (s/base) h)^e, e < 0
    r = slope / base
    lead = base**exponent
    coeffs = {}
    for k in range(order):
        coeffs[k] = _neg_binom(exponent, k) * lead * r**k
    return HbarSeries(coeffs, {}, order)


def _neg_binom(e: int, k: int) -> QQ:
    """Generalized binomial C(e, k) for integer e (possibly negative)."""
    acc = QQ(1)
    for i in range(k):
        acc = acc * (e - i) / (i + 1)
    return acc


def expand_log(base, slope, order: int) -> HbarSeries:
    """log(base + slope*h) = log(base) + log(1 + (slope/base) h), exactly.

    The constant part is the formal symbol log(base); the rest is a plain
    rational series.
    """
    base = QQ(base)
    if base == 0:
        raise ZeroDivisionError("log of a series with zero constant term")
    slope = QQ(slope)
    coeffs = {}
    r = slope / base
    if r != 0:
        for k in range(1, order):
            coeffs[k] = -((-r) ** k) / k
    logs = {}
    if base != 1:
        logs[0] = LogCombination.single(QQ(1), base)
    return HbarSeries(coeffs, logs, order)


def log_of_series(s: HbarSeries) -> HbarSeries:
    """log of a log-free series with nonzero constant term.

    Returns log(c_0) as a formal symbol plus the expansion of
    log(1 + (s/c_0 - 1)).
    """
    if s.has_logs():
        raise ResidualLogSymbol("log of a log-carrying series")
    c0 = s.coeffs.get(0, QQ(0))
    if c0 == 0 or min(s.exponents(), default=0) < 0:
        raise ZeroDivisionError("log needs a unit series (nonzero constant term)")
    u = s.scale(1 / c0) - HbarSeries.constant(1, s.order)
    order = s.order
    acc = HbarSeries.zero(order)
    term = HbarSeries.constant(1, order)
    # log(1+u) = sum (-1)^(k+1) u^k / k, u has positive valuation
    vu = min(u.exponents(), default=order)
    if vu <= 0 and not u.is_zero():
        raise ZeroDivisionError("log expansion needs positive valuation")
    k = 1
    while (k * vu) < order and not u.is_zero():
        term = term * u
        acc = acc + term.scale(QQ((-1) ** (k + 1), k))
        k += 1
    if c0 != 1:
        acc = acc + HbarSeries.log_constant(LogCombination.single(QQ(1), c0), order)
    return acc


def exp_series(slope, order: int) -> HbarSeries:
    """exp(slope * h) truncated at the given order."""
    slope = QQ(slope)
    return HbarSeries({k: slope**k / factorial(k) for k in range(order)}, {}, order)
