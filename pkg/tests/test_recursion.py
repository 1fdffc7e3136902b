import pytest

from hgtr.field import QQ, FieldValue
from hgtr.ratfunc import INFINITY, Point, RationalFunction
from hgtr.recursion import (
    DivisorLegs,
    PoleBasisDifferential,
    RecursionTable,
    bergman_integrated,
    bergman_on_diagonal,
    finite_form,
    infinity_form,
    form_primitive_value,
)

from conftest import PARAM_POINTS, geometry_for
from golden_data import golden_correlators

Z = RationalFunction.variable()


def fv(x):
    return FieldValue(QQ(x))


SAMPLE_GRIDS = {
    1: [(fv(QQ(2, 7)),), (fv(QQ(5, 3)),), (fv(-4),)],
    2: [(fv(QQ(2, 7)), fv(QQ(3, 5))), (fv(QQ(5, 2)), fv(QQ(-7, 3))), (fv(4), fv(QQ(1, 6)))],
    3: [
        (fv(QQ(2, 7)), fv(QQ(3, 5)), fv(QQ(5, 11))),
        (fv(QQ(7, 2)), fv(QQ(-5, 3)), fv(QQ(9, 4))),
        (fv(-3), fv(QQ(1, 5)), fv(QQ(8, 3))),
    ],
}


def test_bergman_on_diagonal():
    assert bergman_on_diagonal(-Z) == -1 / (4 * Z * Z)
    assert bergman_on_diagonal(1 / Z) == -1 / ((Z * Z - 1) ** 2)


def test_bergman_integrated():
    # int_{sigma z}^{z} B(z0, .) = 1/(z0 - z) - 1/(z0 - sigma z)
    sigma = 1 / Z
    f = bergman_integrated(fv(2), sigma)
    assert f == 1 / (Z - 2) - 1 / (Z - RationalFunction.const(fv(QQ(1, 2))))


def test_zero_integrand_gives_zero():
    geom, table = geometry_for("weber", PARAM_POINTS["weber"][0])
    # the unstable range is rejected rather than silently zero
    with pytest.raises(ValueError):
        table.compute_w(0, 2)
    with pytest.raises(ValueError):
        table.compute_w(0, 1)


@pytest.mark.parametrize("name", list(PARAM_POINTS))
def test_golden_correlators_three_points(name):
    for params in PARAM_POINTS[name]:
        geom, table = geometry_for(name, params)
        for g, n, expected in golden_correlators(name, params):
            w = table.compute_w(g, n)
            if isinstance(expected, RationalFunction):
                assert w.as_rational() == expected, (name, g, n, params)
            else:
                for pts in SAMPLE_GRIDS[n]:
                    assert w.evaluate(pts) == expected(pts), (name, g, n, params)


@pytest.mark.parametrize("name", list(PARAM_POINTS))
def test_structural_invariants(name):
    params = PARAM_POINTS[name][0]
    geom, table = geometry_for(name, params)
    targets = [(0, 3), (1, 1), (1, 2), (2, 1)]
    for g, n in targets:
        w = table.compute_w(g, n)
        # symmetry under slot permutations
        assert w.check_symmetric()
        # pole confinement: all poles among effective ramification points
        assert w.pole_locations() <= set(geom.effective)
        # residue-freeness at every effective point, in every slot
        samples = SAMPLE_GRIDS.get(n, SAMPLE_GRIDS[1])[0]
        for slot in range(n):
            for r in geom.effective:
                other = tuple(s for i, s in enumerate(samples) if i != slot) or ()
                assert w.slot_residue(slot, r, other).is_zero()
        # no residue-carrying basis forms are ever stored
        for key in w.terms:
            for form in key:
                assert form[0] == "i" or form[2] >= 2


@pytest.mark.parametrize("name", ["bessel", "degenerate-bessel", "airy"])
def test_ineffective_points_contribute_nothing(name):
    geom, table = geometry_for(name, PARAM_POINTS[name][0])
    assert geom.effective != geom.ramification
    for g, n in ((1, 1), (0, 3), (1, 2)):
        assert table.ineffective_contribution(g, n).is_zero()


def test_integrated_legs_match_direct_integration():
    # U(0, 1, k) computed through the recursion equals the k-fold divisor
    # integral of the full correlation differential
    name = "weber"
    geom, table = geometry_for(name, PARAM_POINTS[name][0])
    weights = {INFINITY: QQ(1, 2), Point.finite(0): QQ(1, 2)}
    label = geom.labels[0]
    legs = DivisorLegs(geom, weights, label)
    legged = RecursionTable(geom, legs, base_table=table)
    for sign in (1, -1):
        for g, n in ((0, 3), (0, 4), (1, 2), (1, 3)):
            partial = legged.compute(g, 1, n - 1, sign)
            full = table.compute_w(g, n)
            # integrate all but the first slot of the full tensor
            acc = {}
            for key, c in full.terms.items():
                factor = c
                for form in key[1:]:
                    factor = factor * legs.apply(form, sign)
                if key[0] in acc:
                    acc[key[0]] = acc[key[0]] + factor
                else:
                    acc[key[0]] = factor
            direct = PoleBasisDifferential(1, {(f,): v for f, v in acc.items() if not v.is_zero()})
            assert partial == direct, (g, n, sign)


def test_form_primitive_values():
    f = finite_form(fv(2), 3)
    assert form_primitive_value(f, INFINITY) == fv(0)
    assert form_primitive_value(f, Point.finite(3)) == fv(QQ(-1, 2))
    g = infinity_form(1)
    assert form_primitive_value(g, Point.finite(2)) == fv(2)
    from hgtr.ratfunc import DivergentEndpoint

    with pytest.raises(DivergentEndpoint):
        form_primitive_value(g, INFINITY)
