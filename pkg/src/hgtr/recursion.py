"""The residue recursion for correlation differentials, in exact arithmetic.

A correlation differential W_{g,n} is stored as a sum of tensor products of
one-variable pole-basis forms,

    dz/(z - p)^k   (k >= 2, p an effective ramification point),
    z^m dz         (m >= 0, used when infinity is effective),

with FieldValue coefficients; the representation is residue-free by
construction and symmetric under slot permutations (checked, then relied
on).  The recursion computes the residue at each effective ramification
point of the kernel

    K_r(z0, z) = [ 1/(z0-z) - 1/(z0-sigma(z)) ] / (2 (y - y o sigma) dx)

against the usual bracket of lower differentials, working with exact
Laurent expansions in the local coordinate (w = 1/z at infinity).

Beyond plain W_{g,n} the engine computes "partially integrated" objects:
U(g, f, k) carries f free slots while k further slots have been integrated
against a fixed endpoint divisor (the building blocks of Voros
coefficients).  Full differentials are U(g, n, 0).
"""

from __future__ import annotations

import threading
from math import comb, factorial

from .field import QQ, FieldValue, ZERO, ONE
from .ratfunc import (
    INFINITY,
    DivergentEndpoint,
    LaurentSeries,
    Point,
    Polynomial,
    RationalFunction,
    SeriesWindow,
)

# pole-basis forms as plain tuples: ("f", pole, power) / ("i", power)


def finite_form(pole: FieldValue, power: int):
    if power < 1:
        raise ValueError("finite form needs power >= 1")
    return ("f", pole, power)


def infinity_form(power: int):
    if power < 0:
        raise ValueError("infinity form needs power >= 0")
    return ("i", power)


def form_sort_key(form):
    if form[0] == "f":
        p = form[1]
        return (0, p.d, p.a.numerator, p.a.denominator, p.b.numerator, p.b.denominator, form[2])
    return (1, form[1])


def form_to_rational(form) -> RationalFunction:
    z = RationalFunction.variable()
    if form[0] == "f":
        return RationalFunction(Polynomial([ONE]), Polynomial([-form[1], ONE]) ** form[2])
    return z ** form[1]


def form_value(form, v: FieldValue) -> FieldValue:
    """Value of the coefficient function of the form at a finite point."""
    if form[0] == "f":
        return (v - form[1]) ** (-form[2])
    return v ** form[1]


def form_primitive_value(form, at: Point) -> FieldValue:
    """Value of the antiderivative of the form at a point of P^1.

    Finite forms have power >= 2, so the primitive is rational and vanishes
    at infinity; z^m dz primitives diverge there (DivergentEndpoint).
    """
    if form[0] == "f":
        _, p, k = form
        if k < 2:
            raise ValueError("residue-carrying form has no rational primitive")
        if at.is_infinity:
            return ZERO
        if at.value == p:
            raise DivergentEndpoint("primitive evaluated at its pole")
        return -((at.value - p) ** (-(k - 1))) / FieldValue(k - 1)
    m = form[1]
    if at.is_infinity:
        raise DivergentEndpoint("z^%d dz primitive diverges at infinity" % m)
    return at.value ** (m + 1) / FieldValue(m + 1)


class PoleBasisDifferential:
    """Sum of coefficient * (form_1 x ... x form_n), keyed by form tuples."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        self.terms = dict(terms or {})

    def add(self, key, coeff):
        if key in self.terms:
            c = self.terms[key] + coeff
            if c.is_zero():
                del self.terms[key]
            else:
                self.terms[key] = c
        elif not coeff.is_zero():
            self.terms[key] = coeff

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, PoleBasisDifferential):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def scaled(self, c) -> "PoleBasisDifferential":
        c = c if isinstance(c, FieldValue) else FieldValue(QQ(c))
        return PoleBasisDifferential(self.arity, {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        out = PoleBasisDifferential(self.arity, dict(self.terms))
        for k, v in other.terms.items():
            out.add(k, v)
        return out

    def check_symmetric(self) -> bool:
        for i in range(self.arity - 1):
            for key, c in self.terms.items():
                swapped = list(key)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.terms.get(tuple(swapped), ZERO) != c:
                    return False
        return True

    def pole_locations(self):
        pts = set()
        for key in self.terms:
            for form in key:
                pts.add(INFINITY if form[0] == "i" else Point.finite(form[1]))
        return pts

    def evaluate(self, values) -> FieldValue:
        """Coefficient function of dz_1 ... dz_n at finite sample points."""
        if len(values) != self.arity:
            raise ValueError("need %d sample points" % self.arity)
        acc = ZERO
        for key, c in self.terms.items():
            term = c
            for form, v in zip(key, values):
                term = term * form_value(form, v)
            acc = acc + term
        return acc

    def as_rational(self) -> RationalFunction:
        if self.arity != 1:
            raise ValueError("as_rational needs arity 1")
        acc = RationalFunction.const(ZERO)
        for (form,), c in self.terms.items():
            acc = acc + form_to_rational(form) * c
        return acc

    def slot_residue(self, slot: int, at: Point, samples=None) -> FieldValue:
        """Residue in one slot at a point, other slots at sample values."""
        acc = ZERO
        for key, c in self.terms.items():
            form = key[slot]
            r = form_to_rational(form).residue(at)
            if r.is_zero():
                continue
            term = c * r
            for i, f2 in enumerate(key):
                if i != slot:
                    term = term * form_value(f2, samples[i if i < slot else i - 1])
            acc = acc + term
        return acc

    def canonical_items(self):
        return sorted(self.terms.items(), key=lambda kv: tuple(form_sort_key(f) for f in kv[0]))

    def __repr__(self):
        return "PoleBasisDifferential(n=%d, %d terms)" % (self.arity, len(self.terms))


# ---------------------------------------------------------------------------
# Bergman kernel helpers
# ---------------------------------------------------------------------------


def bergman_on_diagonal(sigma: RationalFunction) -> RationalFunction:
    """B(z, sigma(z)) as a rational coefficient of dz^2."""
    z = RationalFunction.variable()
    return sigma.derivative() / ((z - sigma) * (z - sigma))


def bergman_integrated(z_value: FieldValue, sigma: RationalFunction) -> RationalFunction:
    """int_{sigma(z)}^{z} B(z0, .) at a fixed z, as a rational function of z0:
    1/(z0 - z) - 1/(z0 - sigma(z))."""
    z0 = RationalFunction.variable()
    zc = RationalFunction.const(z_value)
    sc = RationalFunction.const(sigma.evaluate(z_value))
    return 1 / (z0 - zc) - 1 / (z0 - sc)


# ---------------------------------------------------------------------------
# local frames: exact series data at one ramification point
# ---------------------------------------------------------------------------

PLUG_Z = 0
PLUG_SIGMA = 1


class LocalFrame:
    """Series expansions at one ramification point, to a working order."""

    def __init__(self, geom, r: Point, order: int):
        self.geom = geom
        self.r = r
        self.order = order
        self._diff_cache = {}
        self._rat_cache = {}
        self._out_cache = {}
        x, sigma = geom.curve.x, geom.sigma
        if r.is_infinity:
            w = RationalFunction.variable()
            x_w = x.compose(1 / w)
            sigma_w = 1 / sigma.compose(1 / w)  # local sigma in the w chart
            self.s = sigma_w.laurent(Point.finite(ZERO), order)
            self.sp = sigma_w.derivative().laurent(Point.finite(ZERO), order)
            den = geom.delta.compose(1 / w) * x_w.derivative()
            self.invden = _invert_series(den.laurent(Point.finite(ZERO), order)).scale(FieldValue(QQ(1, 2)))
        else:
            rv = r.value
            z = RationalFunction.variable()
            sigma_loc = sigma - RationalFunction.const(rv)
            self.s = _shifted_series(sigma_loc, rv, order)
            self.sp = _shifted_series(sigma.derivative(), rv, order)
            den = geom.delta * x.derivative()
            self.invden = _invert_series(_shifted_series(den, rv, order)).scale(FieldValue(QQ(1, 2)))
        if self.s.valuation < 1:
            raise ArithmeticError("sigma does not fix the ramification point %r" % r)
        # powers of the local sigma series, grown on demand
        self._s_pows = [None, self.s]
        # B(z, sigma z) on the diagonal: s'(t) / (t - s(t))^2
        t = LaurentSeries(r, 1, [ONE], order)
        diff = t - self.s
        self.b_diag = self.sp * _invert_series(diff) * _invert_series(diff)

    def _spow(self, k: int) -> LaurentSeries:
        while len(self._s_pows) <= k:
            self._s_pows.append(self._s_pows[-1] * self.s)
        return self._s_pows[k]

    def diff_series(self, rf: RationalFunction, plug: int, cache_key=None) -> LaurentSeries:
        """Series of the differential rf(z) dz under the given slot plug."""
        key = (cache_key, plug) if cache_key is not None else None
        if key is not None:
            got = self._rat_cache.get(key)
            if got is not None:
                return got
        geom = self.geom
        if self.r.is_infinity:
            w = RationalFunction.variable()
            if plug == PLUG_Z:
                g = rf.compose(1 / w) * (-1 / (w * w))
            else:
                sig_w = 1 / geom.sigma.compose(1 / w)
                g = rf.compose(1 / sig_w) * (1 / sig_w).derivative()
            out = g.laurent(Point.finite(ZERO), self.order)
        else:
            rv = self.r.value
            if plug == PLUG_Z:
                out = _shifted_series(rf, rv, self.order)
            else:
                g = rf.compose(geom.sigma) * geom.sigma.derivative()
                out = _shifted_series(g, rv, self.order)
        if key is not None:
            self._rat_cache[key] = out
        return out

    def form_series(self, form, plug: int) -> LaurentSeries:
        key = (form, plug)
        got = self._diff_cache.get(key)
        if got is not None:
            return got
        out = self.diff_series(form_to_rational(form), plug)
        self._diff_cache[key] = out
        return out

    # -- expansion of B(z_plug, z_s) in the spectator slot ---------------

    def b_spectator_series(self, plug: int, k: int) -> LaurentSeries:
        """Coefficient series of the two-point kernel against a spectator:
        the k-th term of the expansion whose spectator form is
        (z_s - r)^-(k+2) dz_s (resp. z_s^k dz_s at infinity)."""
        sign = FieldValue(-(k + 1)) if self.r.is_infinity else FieldValue(k + 1)
        if plug == PLUG_Z:
            return LaurentSeries(self.r, k, [sign], self.order)
        ser = (self._spow(k) if k else LaurentSeries(self.r, 0, [ONE], self.order)) * self.sp
        return ser.scale(sign)

    def b_spectator_form(self, k: int):
        if self.r.is_infinity:
            return infinity_form(k)
        return finite_form(self.r.value, k + 2)

    # -- kernel residue extraction ---------------------------------------

    def out_terms(self, integrand: LaurentSeries):
        """Residues against the kernel numerator: [(output form, coeff)].

        integrand = (lower-differential data) * 1/(2 Delta dx), as a series
        in the local coordinate; output forms live in the z0 slot.
        """
        out = []
        if integrand.is_zero_window():
            return out
        val = integrand.valuation
        if self.r.is_infinity:
            kmax = -val - 2
            for k in range(0, kmax + 1):
                q = self._spow(k + 1) - LaurentSeries(self.r, k + 1, [ONE], self.order)
                c = _series_residue_product(q, integrand)
                if not c.is_zero():
                    out.append((infinity_form(k), c))
        else:
            kmax = -val - 1
            rv = self.r.value
            for k in range(1, kmax + 1):
                tk = LaurentSeries(self.r, k, [ONE], self.order)
                q = tk - self._spow(k)
                c = _series_residue_product(q, integrand)
                if not c.is_zero():
                    out.append((finite_form(rv, k + 1), c))
        return out


def _shifted_series(rf: RationalFunction, center: FieldValue, order: int) -> LaurentSeries:
    return rf.laurent(Point.finite(center), order)


def _invert_series(s: LaurentSeries) -> LaurentSeries:
    return s.inverse()


def _series_residue_product(a: LaurentSeries, b: LaurentSeries) -> FieldValue:
    """Coefficient of t^-1 in a*b, demanding the windows cover it."""
    acc = ZERO
    # a has nonnegative-mostly exponents; iterate over a's support
    if a.is_zero_window() or b.is_zero_window():
        return acc
    need = -1 - a.offset
    if need >= b.prec:
        raise SeriesWindow("window too small for residue extraction")
    for i, ca in enumerate(a.coeffs):
        if ca.is_zero():
            continue
        k = a.offset + i
        j = -1 - k
        if j < b.valuation:
            break
        if j >= b.prec:
            raise SeriesWindow("window too small for residue extraction")
        cb = b.coefficient(j)
        if not cb.is_zero():
            acc = acc + ca * cb
    return acc


# ---------------------------------------------------------------------------
# endpoint divisor legs (integrated slots)
# ---------------------------------------------------------------------------


class DivisorLegs:
    """Slotwise integration against D(beta_{j,+-}) = sum nu_b [endpoint - b].

    L_sign(form) = F(beta_{j,sign}) - sum_b nu_b F(b) with F the primitive
    of the form; bd_sign is the same functional applied to the two-point
    kernel B(z, .) in its second slot.
    """

    def __init__(self, geom, weights: dict, label):
        self.geom = geom
        self.weights = {p: QQ(v) for p, v in weights.items() if QQ(v) != 0}
        total = sum(self.weights.values(), QQ(0))
        if total != 1:
            raise ValueError("divisor weights must sum to 1, got %s" % total)
        self.label = label
        self.beta = {1: geom.beta_plus[label], -1: geom.beta_minus[label]}
        self._bd = {}

    def apply(self, form, sign: int) -> FieldValue:
        acc = form_primitive_value(form, self.beta[sign])
        for b, nu in self.weights.items():
            acc = acc - form_primitive_value(form, b) * FieldValue(nu)
        return acc

    def bd_function(self, sign: int) -> RationalFunction:
        """The z-differential obtained by integrating B(z, .) along the divisor."""
        got = self._bd.get(sign)
        if got is not None:
            return got
        z = RationalFunction.variable()
        acc = RationalFunction.const(ZERO)
        endpoint = self.beta[sign]
        if not endpoint.is_infinity:
            acc = acc + 1 / (z - RationalFunction.const(endpoint.value))
        for b, nu in self.weights.items():
            if not b.is_infinity:
                acc = acc - FieldValue(nu) * (1 / (z - RationalFunction.const(b.value)))
        self._bd[sign] = acc
        return acc


# ---------------------------------------------------------------------------
# the recursion table
# ---------------------------------------------------------------------------


class RecursionTable:
    """Memoized recursion engine over one analyzed curve.

    compute(g, f, k, sign) returns the f-slot differential with k extra
    slots integrated along the divisor legs (k = 0 needs no legs);
    compute_w(g, n) is the plain correlation differential.
    """

    def __init__(self, geom, legs: DivisorLegs = None, base_order: int = 24, base_table: "RecursionTable" = None):
        self.geom = geom
        self.legs = legs
        self.base_order = base_order
        self.memo = {}
        self._frames = {}
        # a label-independent table can be shared for the k = 0 objects
        self.base_table = base_table
        # memoization is append-only but insertion must be synchronized
        self._lock = threading.RLock()

    # -- public entry points -------------------------------------------

    def compute_w(self, g: int, n: int) -> PoleBasisDifferential:
        if g < 0 or n < 1 or 2 * g - 2 + n < 1:
            raise ValueError("stable range requires 2g - 2 + n >= 1")
        return self.compute(g, n, 0, 1)

    def compute(self, g: int, f: int, k: int, sign: int) -> PoleBasisDifferential:
        if f < 1:
            raise ValueError("need at least one free slot")
        if k > 0 and self.legs is None:
            raise ValueError("integrated slots need divisor legs")
        if k == 0 and self.base_table is not None:
            return self.base_table.compute(g, f, 0, 1)
        chi = 2 * g - 2 + f + k
        if chi < 1:
            raise ValueError("unstable object (g=%d, f=%d, k=%d)" % (g, f, k))
        key = (g, f, k, sign if k else 1)
        got = self.memo.get(key)
        if got is None:
            with self._lock:
                got = self.memo.get(key)
                if got is None:
                    got = self._assemble(g, f, k, sign)
                    if not got.check_symmetric():
                        raise ArithmeticError("recursion output not symmetric at %r" % (key,))
                    for form_key in got.terms:
                        for form in form_key:
                            if form[0] == "f" and form[2] < 2:
                                raise ArithmeticError("residue-carrying form produced at %r" % (key,))
                    self.memo[key] = got
        return got

    def ineffective_contribution(self, g: int, f: int, k: int = 0, sign: int = 1) -> PoleBasisDifferential:
        """Same assembly restricted to the ineffective ramification points."""
        points = [r for r in self.geom.ramification if r not in self.geom.effective]
        return self._assemble(g, f, k, sign, points=points)

    # -- assembly --------------------------------------------------------

    def _frame(self, r: Point) -> LocalFrame:
        fr = self._frames.get(r)
        if fr is None:
            fr = LocalFrame(self.geom, r, self.base_order)
            self._frames[r] = fr
        return fr

    def _grow(self):
        self.base_order *= 2
        self._frames.clear()

    def _assemble(self, g, f, k, sign, points=None) -> PoleBasisDifferential:
        for _ in range(6):
            try:
                return self._assemble_once(g, f, k, sign, points)
            except SeriesWindow:
                self._grow()
        raise ArithmeticError("series order did not stabilize")

    def _head_series(self, frame, head, plug) -> LaurentSeries:
        kind = head[0]
        if kind == "F":
            return frame.form_series(head[1], plug)
        if kind == "B":
            return frame.b_spectator_series(plug, head[1])
        bd = self.legs.bd_function(head[1])
        return frame.diff_series(bd, plug, cache_key=("bd", self.legs.label, head[1]))

    def _channel_out(self, frame, head1, head2):
        """Residue extraction for one product channel, cached per frame.

        head2 is None for the diagonal two-point kernel (the bracket's
        genus-lowering base case)."""
        key = (head1, head2)
        got = frame._out_cache.get(key)
        if got is None:
            if head1 == "DIAG":
                integrand = (frame.b_diag * frame.invden).truncate(0)
            else:
                s1 = self._head_series(frame, head1, PLUG_Z)
                s2 = self._head_series(frame, head2, PLUG_SIGMA)
                integrand = ((s1 * s2) * frame.invden).truncate(0)
            got = frame.out_terms(integrand) if not integrand.is_zero_window() else []
            frame._out_cache[key] = got
        return got

    def _factor_heads(self, frame, g1, nfree, k1, sign, slots, kmax_b):
        """Grouped contributions of one product factor.

        Returns {head: [(coeff, ((slot, form), ...)), ...]} where the head
        determines the plugged-slot series and the tail lists spectator
        assignments.
        """
        chi = 2 * g1 - 2 + (nfree + 1) + k1
        heads = {}
        if chi >= 1:
            stored = self.compute(g1, nfree + 1, k1, sign)
            for key, c in stored.terms.items():
                heads.setdefault(("F", key[0]), []).append((c, tuple(zip(slots, key[1:]))))
            return heads
        if g1 == 0 and nfree == 1 and k1 == 0:
            for kb in range(kmax_b + 1):
                heads[("B", kb)] = [(ONE, ((slots[0], frame.b_spectator_form(kb)),))]
            return heads
        if g1 == 0 and nfree == 0 and k1 == 1:
            heads[("D", sign)] = [(ONE, ())]
            return heads
        return heads  # excluded: (0, 1, 0) is the unintegrated one-point function

    def _assemble_once(self, g, f, k, sign, points=None) -> PoleBasisDifferential:
        out = PoleBasisDifferential(f)
        spectator_slots = tuple(range(1, f))
        where = points if points is not None else self.geom.effective
        for r in where:
            frame = self._frame(r)
            # spectator expansion depth of the two-point kernel: anything
            # beyond the window cannot carry a residue
            kmax_b = frame.order - 2

            def emit(outs, coeff, assignment):
                if not outs:
                    return
                key = [None] * f
                for slot, form in assignment:
                    key[slot] = form
                for out_form, c in outs:
                    key[0] = out_form
                    out.add(tuple(key), c * coeff)

            # genus-lowering bracket
            if g >= 1:
                if (g - 1, f + 1, k) == (0, 2, 0):
                    emit(self._channel_out(frame, "DIAG", None), ONE, ())
                elif 2 * (g - 1) - 2 + (f + 1) + k >= 1:
                    lower = self.compute(g - 1, f + 1, k, sign)
                    grouped = {}
                    for key2, c in lower.terms.items():
                        grouped.setdefault((key2[0], key2[1]), []).append((c, key2[2:]))
                    for (f0, f1), lst in grouped.items():
                        outs = self._channel_out(frame, ("F", f0), ("F", f1))
                        if not outs:
                            continue
                        for c, tail in lst:
                            emit(outs, c, tuple(zip(spectator_slots, tail)))

            # products of lower objects
            for g1 in range(g + 1):
                g2 = g - g1
                for mask in range(1 << len(spectator_slots)):
                    s1 = tuple(s for i, s in enumerate(spectator_slots) if mask >> i & 1)
                    s2 = tuple(s for i, s in enumerate(spectator_slots) if not (mask >> i & 1))
                    for k1 in range(k + 1):
                        k2 = k - k1
                        if (g1, len(s1), k1) == (0, 0, 0) or (g2, len(s2), k2) == (0, 0, 0):
                            continue
                        heads1 = self._factor_heads(frame, g1, len(s1), k1, sign, s1, kmax_b)
                        if not heads1:
                            continue
                        heads2 = self._factor_heads(frame, g2, len(s2), k2, sign, s2, kmax_b)
                        if not heads2:
                            continue
                        mult = FieldValue(comb(k, k1))
                        for h1, lst1 in heads1.items():
                            for h2, lst2 in heads2.items():
                                outs = self._channel_out(frame, h1, h2)
                                if not outs:
                                    continue
                                for c1, t1 in lst1:
                                    for c2, t2 in lst2:
                                        emit(outs, c1 * c2 * mult, t1 + t2)
        return out


# ---------------------------------------------------------------------------
# Voros coefficients from integrated correlation differentials
# ---------------------------------------------------------------------------


def voros_from_correlators(geom, legs: DivisorLegs, m_max: int, shared: RecursionTable = None):
    """Exact Voros coefficients V_1..V_m_max for the legs' singular label.

    V_m collects, over all (g, n) with 2g - 2 + n = m, the difference of the
    n-fold divisor integrals of W_{g,n} taken at the two endpoints, with the
    1/n! symmetry factor.  `shared` optionally carries memoized plain
    correlators reused across labels and divisors.
    """
    table = RecursionTable(geom, legs, base_table=shared)
    out = []
    for m in range(1, m_max + 1):
        acc = ZERO
        g = 0
        while True:
            n = m + 2 - 2 * g
            if n < 1:
                break
            for sgn in (1, -1):
                obj = table.compute(g, 1, n - 1, sgn)
                total = ZERO
                for (form,), c in obj.terms.items():
                    total = total + c * legs.apply(form, sgn)
                acc = acc + total.__mul__(FieldValue(QQ(sgn, factorial(n))))
            g += 1
        out.append(acc)
    return out
