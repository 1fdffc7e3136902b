import pytest

from hgtr.field import QQ, FieldValue
from hgtr.ratfunc import RationalFunction
from hgtr.free_energy import free_energy, one_point_integral, phi_primitive
from hgtr.oracles import LABEL_PARAM, oracle_free_energy, oracle_free_energy_expression

from conftest import PARAM_POINTS, geometry_for
from golden_data import golden_free_energies

Z = RationalFunction.variable()


def test_phi_legendre_is_log():
    geom, _ = geometry_for("legendre", {"lambda_inf": QQ(1)})
    phi = phi_primitive(geom)
    assert phi.rational_part.is_zero()
    assert [(str(c), str(p)) for c, p in phi.log_terms] == [("1", "0")]


def test_phi_airy_is_polynomial():
    geom, _ = geometry_for("airy", {})
    phi = phi_primitive(geom)
    assert not phi.log_terms
    assert phi.rational_part == Z ** 3 * FieldValue(QQ(2, 3))


def test_phi_weber():
    geom, _ = geometry_for("weber", {"lambda_inf": QQ(1)})
    phi = phi_primitive(geom)
    # y x' = (1/2)(z - 1/z)(1 - 1/z^2) = z/2 - 1/z + 1/(2 z^3)
    assert phi.derivative() == geom.curve.y * geom.curve.x.derivative()
    assert [(str(c), str(p)) for c, p in phi.log_terms] == [("-1", "0")]


def test_printed_free_energies():
    for name in PARAM_POINTS:
        for params in PARAM_POINTS[name]:
            geom, table = geometry_for(name, params)
            for g, expected in golden_free_energies(name, params).items():
                value, _ = free_energy(table, g)
                assert value == FieldValue(expected), (name, g, params)


def test_primitive_independence():
    geom, table = geometry_for("weber", {"lambda_inf": QQ(1)})
    base, _ = free_energy(table, 2)
    shifted_phi = phi_primitive(geom).shift_constant(FieldValue(QQ(17, 5)))
    shifted, _ = free_energy(table, 2, phi=shifted_phi)
    assert base == shifted

    geom2, table2 = geometry_for("bessel", {"lambda0": QQ(1)})
    base2, _ = free_energy(table2, 2)
    shifted2, _ = free_energy(table2, 2, phi=phi_primitive(geom2).shift_constant(FieldValue(-3)))
    assert base2 == shifted2


@pytest.mark.parametrize(
    "name,t",
    [("weber", QQ(2)), ("weber", QQ(1, 3)), ("bessel", QQ(2)), ("legendre", QQ(1, 3)), ("kummer", QQ(2))],
)
def test_homogeneity(name, t):
    params = PARAM_POINTS[name][0]
    scaled = {k: v * t for k, v in params.items()}
    _, table = geometry_for(name, params)
    _, table_scaled = geometry_for(name, scaled)
    for g in (2, 3):
        base, _ = free_energy(table, g)
        val, _ = free_energy(table_scaled, g)
        assert val == base * FieldValue(t ** (2 - 2 * g))


def test_gauss_permutation_symmetry():
    perms = [
        {"lambda0": QQ(3), "lambda1": QQ(1), "lambda_inf": QQ(1)},
        {"lambda0": QQ(1), "lambda1": QQ(3), "lambda_inf": QQ(1)},
        {"lambda0": QQ(1), "lambda1": QQ(1), "lambda_inf": QQ(3)},
    ]
    values = []
    for p in perms:
        _, table = geometry_for("gauss", p)
        v, _ = free_energy(table, 2)
        values.append(v)
    assert values[0] == values[1] == values[2]


def test_variation_formula_single_slot():
    # d F_g / d lambda_j equals the endpoint integral of the one-point
    # differential between the label's fiber points
    cases = [("weber", 2), ("bessel", 2), ("legendre", 2), ("kummer", 2), ("gauss", 2)]
    for name, g in cases:
        params = PARAM_POINTS[name][0]
        geom, table = geometry_for(name, params)
        expr = oracle_free_energy_expression(name, g)
        for b in geom.labels:
            key = "inf" if b.is_infinity else str(b.value)
            dval, dlogs = expr.derivative(LABEL_PARAM[name][key]).evaluate(params)
            assert dlogs.is_trivial()
            assert one_point_integral(table, g, b) == FieldValue(dval), (name, key)
