"""Exact scalar arithmetic in Q and in quadratic extensions Q(sqrt(d)).

Every number in the package is a ``FieldValue``: an exact element
``a + b*sqrt(d)`` with ``a``, ``b`` rational and ``d`` a square-free
integer radicand.  ``d == 0`` marks a plain rational.  Radicands are
normalized on construction (square parts are absorbed into ``b``, perfect
squares are demoted to rationals), so equal values always have identical
representations and compare equal bit for bit.

A single computation works inside one fixed extension: combining two
values with distinct nonzero radicands raises ``MixedRadicands``.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

QQ = mpq


class FieldError(ArithmeticError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class MixedRadicands(FieldError):
    """Two distinct irrational radicands met in one operation."""


class NotRepresentable(FieldError):
    """A square root that does not live in the designated field."""


def _factor(n):
    """Prime factorization of a positive integer as {prime: exponent}."""
    n = mpz(n)
    out = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 17
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 2
    if n > 1:
        out[int(n)] = out.get(int(n), 0) + 1
    return out


_FACTOR_CACHE: dict = {}


def factorint(n) -> dict:
    n = int(n)
    if n not in _FACTOR_CACHE:
        _FACTOR_CACHE[n] = _factor(n)
    return _FACTOR_CACHE[n]


def _squarefree_split(n):
    """n = s**2 * d with d square-free; returns (s, d) for positive n."""
    s = mpz(1)
    d = mpz(1)
    for p, e in factorint(n).items():
        s *= mpz(p) ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def normalize_radicand(v: QQ):
    """Write a nonzero rational v as c**2 * d with d a square-free integer.

    Returns (c, d) with c a positive rational.  sqrt(v) = c*sqrt(d).
    """
    v = QQ(v)
    if v == 0:
        return QQ(0), 0
    sign = 1 if v > 0 else -1
    num, den = abs(v.numerator), v.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    s, d = _squarefree_split(num * den)
    return QQ(s, den), int(sign * d)


class FieldValue:
    """a + b*sqrt(d) with rational a, b and square-free integer d."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d=0):
        a = QQ(a)
        b = QQ(b)
        if b == 0 or d == 0:
            b = QQ(0)
            d = 0
        else:
            c, d0 = normalize_radicand(QQ(d))
            if d0 == 1:
                a = a + b * c
                b = QQ(0)
                d = 0
            else:
                b = b * c
                d = d0
        self.a = a
        self.b = b
        self.d = d

    # -- helpers -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def rational(self) -> QQ:
        """The value as an exact rational; raises unless b == 0."""
        if self.d != 0:
            raise NotRepresentable("value %s is irrational" % self)
        return self.a

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def _join(self, other) -> int:
        """Common radicand of self and other, or raise MixedRadicands."""
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise MixedRadicands("cannot combine sqrt(%d) with sqrt(%d)" % (self.d, other.d))

    @staticmethod
    def _coerce(x):
        if isinstance(x, FieldValue):
            return x
        if isinstance(x, (int, type(mpz(0)), type(QQ(0)))):
            return FieldValue(QQ(x))
        return NotImplemented

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return FieldValue(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        return FieldValue(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        v = FieldValue.__new__(FieldValue)
        v.a = -self.a
        v.b = -self.b
        v.d = self.d
        return v

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join(other)
        if self.b == 0:
            if other.b == 0:
                return FieldValue(self.a * other.a)
            return FieldValue(self.a * other.a, self.a * other.b, d)
        if other.b == 0:
            return FieldValue(self.a * other.a, self.b * other.a, d)
        return FieldValue(
            self.a * other.a + QQ(d) * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "FieldValue":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.b == 0:
            return FieldValue(1 / self.a)
        n = self.a * self.a - QQ(self.d) * self.b * self.b
        # n == 0 would mean sqrt(d) is rational, excluded by normalization
        return FieldValue(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "FieldValue":
        """Conjugation over Q: a + b*sqrt(d) -> a - b*sqrt(d)."""
        v = FieldValue.__new__(FieldValue)
        v.a = self.a
        v.b = -self.b
        v.d = self.d
        return v

    def norm(self) -> QQ:
        """Field norm a**2 - d*b**2 (a rational)."""
        return self.a * self.a - QQ(self.d) * self.b * self.b

    # -- comparison ----------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    # -- text form -----------------------------------------------------

    def __repr__(self):
        return "FieldValue(%s)" % format_value(self)

    def __str__(self):
        return format_value(self)


ZERO = FieldValue(0)
ONE = FieldValue(1)


def sqrt_in_field(v, radicand) -> FieldValue:
    """Square root of the rational v inside Q(sqrt(radicand)).

    v must be a perfect rational square or have the same square-free part
    as the designated radicand; anything else raises NotRepresentable.
    The sign choice is deterministic: positive rational part, and positive
    irrational part when the rational part vanishes.
    """
    v = QQ(v)
    if v == 0:
        return ZERO
    c, d = normalize_radicand(v)
    if d == 1:
        return FieldValue(c)
    cr, dr = normalize_radicand(QQ(radicand))
    if dr != d:
        raise NotRepresentable("sqrt(%s) is not in Q(sqrt(%s))" % (v, radicand))
    return FieldValue(0, c, d)


def field_sqrt(v: FieldValue):
    """Square root of a FieldValue inside its own field, or None.

    Solves (x + y*sqrt(d))**2 = a + b*sqrt(d) exactly; used for quadratic
    root extraction where the discriminant is a perfect square of a field
    element (nested radicals are rejected by returning None).
    """
    if v.is_zero():
        return ZERO
    if v.d == 0:
        c, d0 = normalize_radicand(v.a)
        if d0 == 1:
            return FieldValue(c)
        return None  # irrational sqrt of a rational: caller decides the field
    # norm of the root must be rational: x^2 - d y^2 = +-sqrt(norm(v))
    n = v.norm()
    cn, dn = normalize_radicand(n)
    if dn != 1:
        return None
    for s in (cn, -cn):
        x2 = (v.a + s) / 2
        if x2 == 0:
            continue
        cx, dx = normalize_radicand(x2)
        if dx != 1:
            continue
        x = cx
        y = v.b / (2 * x)
        cand = FieldValue(x, y, v.d)
        if cand * cand == v:
            if cand.a < 0 or (cand.a == 0 and cand.b < 0):
                cand = -cand
            return cand
    return None


def sqrt_any(v, preferred_radicand=None) -> FieldValue:
    """Square root of a rational, fixing the field from v itself.

    Like sqrt_in_field but, when no radicand is designated, the value's own
    square-free part becomes the radicand.
    """
    v = QQ(v)
    if preferred_radicand is not None:
        return sqrt_in_field(v, preferred_radicand)
    if v == 0:
        return ZERO
    c, d = normalize_radicand(v)
    if d == 1:
        return FieldValue(c)
    return FieldValue(0, c, d)


# ---------------------------------------------------------------------------
# textual form "p/q" and "p/q + r/s*sqrt(t/u)"
# ---------------------------------------------------------------------------


def _fmt_q(q: QQ) -> str:
    q = QQ(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def format_value(v: FieldValue) -> str:
    if v.b == 0:
        return _fmt_q(v.a)
    root = "sqrt(%s)" % _fmt_q(QQ(v.d))
    babs = abs(v.b)
    bpart = root if babs == 1 else "%s*%s" % (_fmt_q(babs), root)
    if v.a == 0:
        return bpart if v.b > 0 else "-" + bpart
    sign = "+" if v.b > 0 else "-"
    return "%s %s %s" % (_fmt_q(v.a), sign, bpart)


def parse_value(text: str) -> FieldValue:
    """Parse "p/q" or "p/q + r/s*sqrt(t/u)" (whitespace optional)."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty field value")
    idx = s.find("sqrt(")
    if idx < 0:
        return FieldValue(_parse_q(s))
    close = s.find(")", idx)
    if close < 0:
        raise ValueError("unbalanced sqrt() in %r" % text)
    rad = _parse_q(s[idx + 5 : close])
    if s[close + 1 :]:
        raise ValueError("trailing characters in %r" % text)
    head = s[:idx]
    # split off the coefficient of sqrt: ...[+-]coef* | ...[+-]
    if head.endswith("*"):
        head = head[:-1]
    cut = max(head.rfind("+"), head.rfind("-", 1))
    if cut <= 0:
        apart = "0"
        bpart = head if head else "1"
    else:
        apart = head[:cut]
        bpart = head[cut:]
    if bpart in ("", "+"):
        b = QQ(1)
    elif bpart == "-":
        b = QQ(-1)
    else:
        b = _parse_q(bpart)
    return FieldValue(_parse_q(apart) if apart not in ("", "+") else QQ(0), b, rad)


def _parse_q(s: str) -> QQ:
    if s.startswith("+"):
        s = s[1:]
    if not s:
        raise ValueError("empty rational")
    try:
        return QQ(s)
    except ValueError as exc:
        raise ValueError("bad rational %r" % s) from exc
