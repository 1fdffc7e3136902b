import random

import pytest

from hgtr.field import QQ, FieldValue
from hgtr.ratfunc import (
    INFINITY,
    DivergentEndpoint,
    InconsistentSamples,
    Point,
    Polynomial,
    RationalFunction,
    UnsupportedRootField,
    antiderivative,
    partial_fractions,
    polynomial_roots,
    rational_interpolate,
)

Z = RationalFunction.variable()


def fv(x):
    return FieldValue(QQ(x))


def test_derivative_example():
    assert (1 / (Z - 1)).derivative() == -1 / ((Z - 1) * (Z - 1))


def test_compose_example():
    assert (Z * Z).compose(1 / Z) == 1 / (Z * Z)


def test_add_example():
    assert 1 / (Z - 1) + 1 / (Z + 1) == 2 * Z / (Z * Z - 1)


def test_laurent_at_finite_point():
    s = (1 / (Z * Z - 1)).laurent(Point.finite(1), 2)
    assert s.coefficient(-1) == fv(QQ(1, 2))
    assert s.coefficient(0) == fv(QQ(-1, 4))
    assert s.coefficient(1) == fv(QQ(1, 8))
    assert s.valuation == -1


def test_laurent_second_example():
    s = (Z / (Z * Z - 1)).laurent(Point.finite(1), 1)
    assert s.coefficient(-1) == fv(QQ(1, 2))
    assert s.coefficient(0) == fv(QQ(1, 4))


def test_laurent_at_infinity():
    s = (Z * Z).laurent(INFINITY, 3)
    assert s.valuation == -2 and s.coefficient(-2) == fv(1)
    assert s.coefficient(0) == fv(0) and s.coefficient(3) == fv(0)


def test_laurent_matches_evaluation():
    # the resummed truncation differs from f(1 + t) by O(t^{order+1})
    f = (Z * Z * Z - 2) / ((Z - 3) * (Z + 1))
    order = 8
    s = f.laurent(Point.finite(1), order)
    shifted = f.compose(Z + 1)
    partial = RationalFunction.const(fv(0))
    for k in range(0, order + 1):
        partial = partial + RationalFunction.const(s.coefficient(k)) * Z ** k
    assert (shifted - partial).order_at(Point.finite(0)) >= order + 1


def test_residue_examples():
    assert (1 / Z).residue(Point.finite(0)) == fv(1)
    r = fv(5)
    assert (1 / ((Z - 5) * (Z - 5))).residue(Point.finite(5)) == fv(0)
    # residue at infinity of z dz is 0... but of (1/z) dz it is -1
    assert (1 / Z).residue(INFINITY) == fv(-1)


def test_residue_equals_laurent_coefficient():
    f = (Z + 3) / ((Z - 2) ** 3 * (Z + 1))
    s = f.laurent(Point.finite(2), -1)
    assert f.residue(Point.finite(2)) == s.coefficient(-1)


def test_sum_of_residues_is_zero_random():
    rng = random.Random(11)
    for _ in range(12):
        roots = rng.sample(range(-6, 7), 3)
        num = Polynomial([fv(rng.randint(-5, 5)) for _ in range(3)])
        den = Polynomial([fv(1)])
        for r in roots:
            den = den * Polynomial([fv(-r), fv(1)])
        f = RationalFunction(num, den)
        if f.is_zero():
            continue
        total = f.residue(INFINITY)
        for r, _ in polynomial_roots(f.den):
            total = total + f.residue(Point.finite(r))
        assert total.is_zero()


def test_antiderivative_examples():
    F = antiderivative(2 * Z / (Z * Z - 1))
    assert F.rational_part.is_zero()
    assert sorted(str(p) for _, p in F.log_terms) == ["-1", "1"]
    assert all(c == fv(1) for c, _ in F.log_terms)

    F2 = antiderivative(1 / ((Z - 3) * (Z - 3)))
    assert not F2.log_terms
    assert F2.rational_part == -1 / (Z - 3)


def test_antiderivative_roundtrip_random():
    rng = random.Random(5)
    for _ in range(10):
        num = Polynomial([fv(rng.randint(-4, 4)) for _ in range(4)])
        den = Polynomial([fv(1)])
        for r in rng.sample(range(-5, 6), 2):
            den = den * Polynomial([fv(-r), fv(1)])
        f = RationalFunction(num, den)
        F = antiderivative(f)
        assert F.derivative() == f


def test_evaluate_difference_examples():
    F = antiderivative(1 / ((Z - 3) * (Z - 3)))
    v, logs = F.evaluate_difference(Point.finite(4), Point.finite(2))
    assert v == fv(-2) and not logs

    F2 = antiderivative(1 / (Z * Z))
    v, logs = F2.evaluate_difference(INFINITY, Point.finite(1))
    assert v == fv(1) and not logs

    F3 = antiderivative(1 / (Z - 1))
    with pytest.raises(DivergentEndpoint):
        # the rational part is fine but the log-point collides
        F3.evaluate_difference(Point.finite(1), Point.finite(0))


def test_divergent_rational_endpoint():
    F = antiderivative(1 / ((Z - 1) * (Z - 1)))
    with pytest.raises(DivergentEndpoint):
        F.evaluate_difference(Point.finite(1), Point.finite(0))


def test_rational_interpolation_examples():
    samples = [(fv(i), fv(i * i)) for i in range(1, 6)]
    assert rational_interpolate(samples, 2, 0) == Z * Z

    samples = [(fv(i), fv(QQ(1, i))) for i in range(1, 5)]
    assert rational_interpolate(samples, 0, 1) == 1 / Z

    samples = [(fv(i), fv(i * i)) for i in range(1, 6)]
    with pytest.raises(InconsistentSamples):
        rational_interpolate(samples, 1, 0)


def test_polynomial_roots_multiplicity():
    p = Polynomial([fv(0), fv(0), fv(0), fv(1)]) * (Polynomial([fv(-1), fv(0), fv(1)]) ** 2)
    roots = dict((str(r), m) for r, m in polynomial_roots(p))
    assert roots == {"0": 3, "1": 2, "-1": 2}


def test_roots_in_quadratic_field():
    # z^2 - 2 over Q(sqrt 2)
    p = Polynomial([fv(-2), fv(0), fv(1)])
    roots = polynomial_roots(p, 2)
    assert sorted(str(r) for r, _ in roots) == ["-sqrt(2)", "sqrt(2)"]
    with pytest.raises(UnsupportedRootField):
        polynomial_roots(Polynomial([fv(-3), fv(0), fv(1)]), 2)


def test_roots_with_hints():
    s5 = FieldValue(0, 1, 5)
    p = Polynomial([fv(1)])
    for r in (s5, -s5, FieldValue(1, 1, 5), FieldValue(1, -1, 5)):
        p = p * Polynomial([-r, fv(1)])
    roots = polynomial_roots(p, 5, hints=[s5, -s5, FieldValue(1, 1, 5), FieldValue(1, -1, 5)])
    assert sum(m for _, m in roots) == 4


def test_partial_fractions_reassemble():
    f = (Z ** 4 + 2) / ((Z - 1) ** 2 * (Z + 2))
    poly, parts = partial_fractions(f)
    acc = RationalFunction(poly)
    for pole, coeffs in parts:
        for k, c in coeffs.items():
            acc = acc + RationalFunction(Polynomial.const(c), Polynomial([-pole, fv(1)]) ** k)
    assert acc == f


def test_taylor_shift():
    p = Polynomial([fv(1), fv(0), fv(1)])  # 1 + z^2
    q = p.taylor_shift(fv(1))
    assert q == Polynomial([fv(2), fv(2), fv(1)])
