import pytest

from hgtr.field import QQ, FieldValue
from hgtr.bernoulli import bernoulli_number
from hgtr.oracles import (
    LABEL_PARAM,
    PoleOfFormula,
    UnknownCurve,
    check_appendix_toolbox,
    check_contiguity_gauss,
    check_difference_solutions,
    check_forward_solutions,
    check_gauss_solution_split,
    check_generating_functions,
    check_polynomial_identities,
    check_relation_i,
    check_three_term,
    check_uniqueness_detection,
    lf,
    oracle_free_energy,
    oracle_free_energy_expression,
    oracle_voros,
)

from conftest import PARAM_POINTS


def test_oracle_free_energy_values():
    assert oracle_free_energy("weber", 2, {"lambda_inf": 1}) == FieldValue(QQ(-1, 240))
    # B4/8 * (1/25 + 1/9 + 1/9 + 1 - 1/36 - 1/4 - 1/4) at (3,1,1)
    b4 = bernoulli_number(4)
    expected = b4 / 8 * (QQ(1, 25) + QQ(1, 9) + QQ(1, 9) + 1 - QQ(1, 36) - QQ(1, 4) - QQ(1, 4))
    assert oracle_free_energy("gauss", 2, {"lambda0": 3, "lambda1": 1, "lambda_inf": 1}) == FieldValue(expected)
    with pytest.raises(PoleOfFormula):
        oracle_free_energy("kummer", 3, {"lambda0": 2, "lambda_inf": 2})
    with pytest.raises(UnknownCurve):
        oracle_free_energy("cubic", 2, {})


def test_oracle_voros_values():
    assert oracle_voros("weber", "inf", 1, {"lambda_inf": 1}, {"inf": 0}) == FieldValue(QQ(-1, 24))
    # B3(0) = B3(1) = 0 makes the even Bessel coefficient vanish
    assert oracle_voros("bessel", "0", 2, {"lambda0": 1}, {"0": 0}) == FieldValue(0)
    assert oracle_voros("legendre", "inf", 1, {"lambda_inf": 1}, {"inf": 0}) == FieldValue(QQ(-1, 4))
    with pytest.raises(UnknownCurve):
        oracle_voros("weber", "0", 1, {"lambda_inf": 1}, {})


def test_free_energy_expression_derivative_matches_difference_quotient():
    # sanity tier: symbolic derivative vs high-order secant along one slope
    expr = oracle_free_energy_expression("gauss", 2)
    params = {"lambda0": QQ(3), "lambda1": QQ(1), "lambda_inf": QQ(1)}
    d = expr.derivative("lambda0")
    dval, dlogs = d.evaluate(params)
    assert dlogs.is_trivial()
    h = QQ(1, 10 ** 8)
    up = dict(params, lambda0=params["lambda0"] + h)
    down = dict(params, lambda0=params["lambda0"] - h)
    secant = (expr.evaluate(up)[0] - expr.evaluate(down)[0]) / (2 * h)
    assert abs(secant - dval) < QQ(1, 10 ** 12)


def test_relation_i_all_curves_two_points():
    nus = ({"0": QQ(0), "1": QQ(0), "inf": QQ(0)}, {"0": QQ(1, 6), "1": QQ(1, 6), "inf": QQ(1, 6)})
    for name in ("weber", "legendre", "bessel", "whittaker", "kummer", "degenerate-gauss", "gauss"):
        for params in PARAM_POINTS[name][:2]:
            for nu in nus:
                for label in LABEL_PARAM[name]:
                    assert check_relation_i(name, label, params, nu, 8), (name, label, params, nu)


def test_relation_i_detects_missing_term():
    params = {"lambda_inf": QQ(5, 2)}
    assert not check_relation_i("weber", "inf", params, {"inf": QQ(1, 3)}, 6, drop_mixed_term=True)


def test_relation_i_against_computed_voros():
    from conftest import geometry_for
    from hgtr.quantize import divisor_from_label_data, voros_from_w

    params = {"lambda_inf": QQ(2)}
    nu = {"inf": QQ(1, 6)}
    geom, table = geometry_for("weber", params)
    divisor = divisor_from_label_data(geom, nu)
    v = voros_from_w(geom, divisor, geom.labels[0], 5, table)
    assert check_relation_i("weber", "inf", params, nu, 6, computed_voros=v.coefficients)


def test_three_term_all_curves():
    for name in ("weber", "legendre", "bessel", "whittaker", "kummer", "degenerate-gauss", "gauss"):
        for params in PARAM_POINTS[name]:
            for label in LABEL_PARAM[name]:
                assert check_three_term(name, label, params, 8), (name, label, params)


def test_three_term_detects_wrong_lambda():
    assert not check_three_term("whittaker", "inf", {"lambda_inf": 2}, 8, wrong_lambda=[(1, lf(lambda_inf=1))])


def test_contiguity():
    assert check_contiguity_gauss({"lambda0": 3, "lambda1": 1, "lambda_inf": 1}, {}, 6)
    nu = {"0": QQ(1, 3), "1": QQ(1, 5), "inf": QQ(1, 7)}
    assert check_contiguity_gauss({"lambda0": 3, "lambda1": 1, "lambda_inf": 1}, nu, 6, with_a_diagnostic=True)
    assert check_contiguity_gauss({"lambda0": 2, "lambda1": 1, "lambda_inf": 5}, {"0": QQ(1, 6), "1": QQ(1, 6), "inf": QQ(1, 6)}, 6)
    assert not check_contiguity_gauss({"lambda0": 3, "lambda1": 1, "lambda_inf": 1}, {}, 4, flip_sign=True)


def test_appendix_toolbox():
    assert check_generating_functions(11)
    assert check_polynomial_identities(12)
    assert check_difference_solutions(8)
    assert check_forward_solutions(8)
    assert check_uniqueness_detection()
    assert check_appendix_toolbox(8)


def test_gauss_solution_split():
    assert check_gauss_solution_split({"lambda0": 3, "lambda1": 1, "lambda_inf": 1}, 8)
    assert check_gauss_solution_split({"lambda0": 2, "lambda1": 1, "lambda_inf": 5}, 6)


def test_gauss_voros_permutation_in_oracle():
    params = {"lambda0": 3, "lambda1": 1, "lambda_inf": 7}
    nu = {"0": QQ(1, 5), "1": QQ(1, 7), "inf": QQ(1, 11)}
    swapped = {"lambda0": 1, "lambda1": 3, "lambda_inf": 7}
    nu_swapped = {"0": QQ(1, 7), "1": QQ(1, 5), "inf": QQ(1, 11)}
    for m in range(1, 5):
        assert oracle_voros("gauss", "1", m, params, nu) == oracle_voros("gauss", "0", m, swapped, nu_swapped)
        perm_inf = {"lambda0": 7, "lambda1": 1, "lambda_inf": 3}
        nu_inf = {"0": QQ(1, 11), "1": QQ(1, 7), "inf": QQ(1, 5)}
        assert oracle_voros("gauss", "inf", m, params, nu) == oracle_voros("gauss", "0", m, perm_inf, nu_inf)
