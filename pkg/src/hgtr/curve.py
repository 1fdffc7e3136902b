"""Spectral curves (x(z), y(z)) on P^1 and their derived geometry.

A curve here is a degree-2 branched cover x together with y, both rational.
``analyze_geometry`` computes everything the recursion and the quantization
need: ramification points, the effective subset, the deck transformation
sigma, Delta = y - y o sigma, the singular points of the underlying plane
curve with their preimages (the beta points), and the residues C_beta of
Delta dx there.

Conventions for points at infinity follow the chart w = 1/z throughout.
"""

from __future__ import annotations

from .field import QQ, FieldValue, ZERO
from .ratfunc import (
    INFINITY,
    Point,
    RationalFunction,
    polynomial_roots,
    rational_interpolate,
)


class CurveError(ValueError):
    pass


class ConstraintViolated(CurveError):
    pass


class NotDegreeTwo(CurveError):
    pass


class NonSimpleRamification(CurveError):
    pass


class ConjugationNotFound(CurveError):
    pass


class NotSigmaInvariant(CurveError):
    pass


class SpectralCurve:
    """Rational pair (x(z), y(z)) with its exact parameter values."""

    __slots__ = ("name", "x", "y", "parameters", "radicand")

    def __init__(self, name, x: RationalFunction, y: RationalFunction, parameters=None, radicand=None):
        if x.is_constant() or y.is_constant():
            raise CurveError("x and y must be nonconstant")
        self.name = name
        self.x = x
        self.y = y
        self.parameters = dict(parameters or {})
        self.radicand = radicand

    def __repr__(self):
        return "SpectralCurve(%s, %s)" % (self.name, {k: str(v) for k, v in self.parameters.items()})


def _covering_degree(x: RationalFunction) -> int:
    return max(x.num.degree, x.den.degree)


def deck_transformation(x: RationalFunction) -> RationalFunction:
    """The Moebius map sigma with x(sigma(z)) = x(z), sigma != id.

    Obtained by removing the root w = z from x(w) - x(z): the numerator
    N(w)D(z) - N(z)D(w) is quadratic in w with roots z and sigma(z), so
    sigma(z) = -c1(z)/c2(z) - z from the sum of roots.
    """
    n, d = x.num, x.den
    # coefficients of w^k in N(w)D(z) - N(z)D(w), as polynomials in z
    deg = max(n.degree, d.degree)
    c = {}
    for k in range(deg + 1):
        nk = n.coeffs[k] if k <= n.degree else ZERO
        dk = d.coeffs[k] if k <= d.degree else ZERO
        c[k] = d.scale(nk) - n.scale(dk)  # nk*D(z) - dk*N(z)
    if deg != 2:
        raise NotDegreeTwo("x has covering degree %d, need 2" % deg)
    c2 = RationalFunction(c[2])
    c1 = RationalFunction(c[1])
    if c2.is_zero():
        raise ConjugationNotFound("degenerate quadratic for the deck transformation")
    z = RationalFunction.variable()
    sigma = -c1 / c2 - z
    if sigma == z:
        raise ConjugationNotFound("deck transformation collapsed to the identity")
    if x.compose(sigma) != x:
        raise ConjugationNotFound("x o sigma != x")
    return sigma


def _dx_data(x: RationalFunction, radicand):
    """Zeros/poles of the differential dx = x'(z) dz on P^1.

    Returns (finite zeros of x' with mult, order of dx at infinity,
    finite poles of x with mult).
    """
    xp = x.derivative()
    zeros = [(r, m) for r, m in polynomial_roots(xp.num, radicand)]
    # order of dx at infinity: dx = -x'(1/w)/w^2 dw
    w_ord = xp.den.degree - xp.num.degree - 2
    poles_x = [(r, m) for r, m in polynomial_roots(x.den, radicand)]
    return zeros, w_ord, poles_x


class CurveGeometry:
    __slots__ = (
        "curve",
        "sigma",
        "delta",
        "ramification",
        "effective",
        "branch_points",
        "sing",
        "sing2",
        "b_set",
        "b1_set",
        "c_beta",
        "labels",
        "beta_plus",
        "beta_minus",
        "label_residues",
        "q0z",
        "r0z",
        "special_points",
    )

    def x_of(self, p: Point) -> Point:
        """Image of a point of P^1 under the covering x."""
        x = self.curve.x
        if p.is_infinity:
            if x.num.degree > x.den.degree:
                return INFINITY
            return Point.finite(x.evaluate(INFINITY))
        if x.den.evaluate(p.value).is_zero():
            return INFINITY
        return Point.finite(x.evaluate(p.value))

    def fiber(self, b: Point):
        """All preimages of a base point, as Points (no multiplicity)."""
        x = self.curve.x
        rad = self.curve.radicand
        if b.is_infinity:
            pts = [Point.finite(r) for r, _ in polynomial_roots(x.den, rad)] if x.den.degree > 0 else []
            if x.num.degree > x.den.degree:
                pts.append(INFINITY)
            return pts
        target = x.num - x.den.scale(b.value)
        pts = [Point.finite(r) for r, _ in polynomial_roots(target, rad)] if target.degree > 0 else []
        if target.degree < _covering_degree(x):
            pts.append(INFINITY)
        return pts


def _order_of_differential(f: RationalFunction, at: Point) -> int:
    """Order of vanishing of the differential f(z) dz at a point."""
    if f.is_zero():
        return 1 << 30
    if at.is_infinity:
        # f(1/w) * (-1/w^2) dw
        return f.num.degree * 0 + (f.den.degree - f.num.degree) - 2
    return f.order_at(at)


def analyze_geometry(curve: SpectralCurve) -> CurveGeometry:
    """Derive ramification data, sigma, Delta, singular points and betas.

    Checks the standing assumptions: degree-2 covering, simple ramification,
    distinct branch points, Delta vanishing only at ramification points, and
    the nondegeneracy of -x^2 y at ramification poles of x where it is
    holomorphic.
    """
    x, y = curve.x, curve.y
    rad = curve.radicand
    if _covering_degree(x) != 2:
        raise NotDegreeTwo("x has covering degree %d" % _covering_degree(x))
    sigma = deck_transformation(x)
    if sigma.compose(sigma) != RationalFunction.variable():
        raise ConjugationNotFound("sigma is not an involution")
    delta = y - y.compose(sigma)
    if delta.is_zero():
        raise CurveError("y is sigma-invariant; the two sheets coincide")

    zeros, dx_inf_ord, poles_x = _dx_data(x, rad)
    ram = []
    for r, m in zeros:
        if not x.den.evaluate(r).is_zero():
            if m != 1:
                raise NonSimpleRamification("dx vanishes to order %d at %s" % (m, r))
            ram.append(Point.finite(r))
    for r, m in poles_x:
        if m >= 2:
            if m != 2:
                raise NonSimpleRamification("pole of x of order %d at %s" % (m, r))
            ram.append(Point.finite(r))
    inf_pole_order = x.num.degree - x.den.degree
    if inf_pole_order >= 2:
        ram.append(INFINITY)
    elif inf_pole_order < 2 and dx_inf_ord > 0:
        if dx_inf_ord != 1:
            raise NonSimpleRamification("dx vanishes to order %d at infinity" % dx_inf_ord)
        ram.append(INFINITY)

    geom = CurveGeometry.__new__(CurveGeometry)
    geom.curve = curve
    geom.sigma = sigma
    geom.delta = delta

    # branch points must be pairwise distinct (A4)
    branch = [geom.x_of(r) for r in ram]
    if len(set(branch)) != len(branch):
        raise CurveError("branch points are not distinct")

    # effective = ramification points where Delta dx has no pole
    delta_dx = delta * x.derivative()
    effective = [r for r in ram if _order_of_differential(delta_dx, r) >= 0]

    # Delta dx vanishes only at ramification points (AQ2)
    zero_locs = [Point.finite(r) for r, _ in polynomial_roots((delta * x.derivative()).num, rad)]
    if _order_of_differential(delta_dx, INFINITY) > 0:
        zero_locs.append(INFINITY)
    for p in zero_locs:
        if p not in ram:
            raise CurveError("(y - y o sigma) dx vanishes off the ramification locus at %s" % p)

    # nondegeneracy at ramification poles of x (A2)
    for r in ram:
        if geom.x_of(r).is_infinity:
            Y = -(x * x * y)
            if Y.order_at(r) >= 0:
                ordY = (Y - RationalFunction.const(Y.evaluate(r))).order_at(r)
                if ordY != 1:
                    raise CurveError("degenerate -x^2*y at the ramification pole %s" % r)

    geom.ramification = ram
    geom.effective = effective
    geom.branch_points = branch

    # q0, r0 on the base: y satisfies y^2 + q0(x) y + r0(x) = 0
    q0z = -(y + y.compose(sigma))
    r0z = y * y.compose(sigma)
    geom.q0z = q0z
    geom.r0z = r0z

    # classical potential Q0 = q0^2/4 - r0 composed with x, singular points
    q0x = pushforward(geom, q0z)
    r0x = pushforward(geom, r0z)
    Q0 = q0x * q0x * FieldValue(QQ(1, 4)) - r0x
    sing = []
    sing2 = []
    for b, m in polynomial_roots(Q0.den, rad):
        rho = -m
        if rho <= -2:
            sing.append(Point.finite(b))
            if rho == -2:
                sing2.append(Point.finite(b))
    # rho(infinity) = ord_0 of x^-4 Q0(1/x)
    rho_inf = Q0.den.degree - Q0.num.degree - 4
    if rho_inf <= -2:
        sing.append(INFINITY)
        if rho_inf == -2:
            sing2.append(INFINITY)
    geom.sing = sing
    geom.sing2 = sing2
    geom.b_set = [p for b in sing for p in geom.fiber(b)]
    geom.b1_set = [p for b in sing2 for p in geom.fiber(b)]

    # residues of Delta dx at the B1 points (all finite for supported curves)
    c_beta = {}
    for p in geom.b1_set:
        c = delta_dx.residue(p)
        if c.is_zero():
            raise CurveError("vanishing residue of Delta dx at %s" % p)
        c_beta[p] = c
    geom.c_beta = c_beta

    # singular labels: singular points that are not branch points
    geom.labels = [b for b in sing if b not in branch]
    geom.beta_plus = {}
    geom.beta_minus = {}
    geom.label_residues = {}
    ydx = y * x.derivative()
    for b in geom.labels:
        fiber = geom.fiber(b)
        if len(fiber) != 2:
            continue  # single ramified preimage: no label pair
        res0 = ydx.residue(fiber[0])
        res1 = ydx.residue(fiber[1])
        if not (res0 + res1).is_zero():
            raise CurveError("fiber residues at %r do not come in +- pairs" % b)
        lam = curve.parameters.get(_label_param(curve.name, b))
        if lam is not None and res0 == FieldValue(lam):
            plus, minus = fiber[0], fiber[1]
        elif lam is not None and res1 == FieldValue(lam):
            plus, minus = fiber[1], fiber[0]
        else:
            # canonical fallback: positive residue (or deterministic order)
            plus, minus = (fiber[0], fiber[1])
        geom.beta_plus[b] = plus
        geom.beta_minus[b] = minus
        geom.label_residues[b] = ydx.residue(plus)

    # finite points where curve-derived denominators can vanish: root hints
    from .ratfunc import UnsupportedRootField

    special = []
    for pt in list(ram) + geom.b_set:
        if not pt.is_infinity and pt.value not in special:
            special.append(pt.value)
    for src in (x.den, y.den, x.derivative().num):
        if src.degree > 0:
            try:
                roots = polynomial_roots(src, rad, special)
            except UnsupportedRootField:
                continue
            for root, _ in roots:
                if root not in special:
                    special.append(root)
    geom.special_points = special
    return geom


def _label_param(curve_name: str, b: Point):
    """Parameter name lambda_j attached to the singular point j."""
    if b.is_infinity:
        return "lambda_inf"
    v = b.value
    if v.is_rational and v.a == 0:
        return "lambda0"
    if v.is_rational and v.a == 1:
        return "lambda1"
    return None


def pushforward(geom: CurveGeometry, g: RationalFunction, max_degree: int = 12) -> RationalFunction:
    """The rational Q(x) with Q(x(z)) = g(z), for sigma-invariant g.

    Raises CurveError when g is not sigma-invariant; degree bounds grow
    until two held-out samples validate (exact rational interpolation).
    """
    if g.compose(geom.sigma) != g:
        raise NotSigmaInvariant("pushforward input is not sigma-invariant")
    if g.is_constant():
        return g
    x = geom.curve.x
    samples = []
    k = QQ(2)
    seen = set()
    target = 2 * (max_degree + 1) + 6
    while len(samples) < target:
        zv = FieldValue(k)
        k += 1
        try:
            xv = x.evaluate(zv)
            gv = g.evaluate(zv)
        except ArithmeticError:
            continue
        if xv in seen:
            continue
        seen.add(xv)
        samples.append((xv, gv))
    from .ratfunc import InconsistentSamples

    for d in range(1, max_degree + 1):
        try:
            return rational_interpolate(samples[: 2 * d + 4], d, d)
        except InconsistentSamples:
            continue
    raise CurveError("no rational function of degree <= %d matches the pushforward" % max_degree)


def classical_potential(geom: CurveGeometry) -> RationalFunction:
    """Q0(x) = q0(x)^2/4 - r0(x): the classical potential y^2 = Q0(x)."""
    q0 = pushforward(geom, geom.q0z)
    r0 = pushforward(geom, geom.r0z)
    return q0 * q0 * FieldValue(QQ(1, 4)) - r0
