"""Acceptance suite: every criterion at its stated (zero) tolerance.

Each test prints one PASS/FAIL line; everything is exact field equality,
order-by-order for the hbar-series checks.
"""

from __future__ import annotations

from hgtr.field import QQ, FieldValue
from hgtr.ratfunc import RationalFunction
from hgtr.free_energy import free_energy, phi_primitive
from hgtr.quantize import divisor_from_label_data, quantize, riccati_expand, sl_form, verify_quantization, voros_from_w, voros_riccati
from hgtr import oracles

from conftest import PARAM_POINTS, geometry_for
from golden_data import golden_correlators
from test_recursion import SAMPLE_GRIDS
from test_quantize import GENERIC_NU, expected_quantum_curve, expected_sl_potential

CURVES_WITH_FG = ("gauss", "degenerate-gauss", "kummer", "legendre", "bessel", "whittaker", "weber")

VOROS_POINTS = {
    name: [
        (PARAM_POINTS[name][0], {k: QQ(0) for k in oracles.LABEL_PARAM[name]}),
        (PARAM_POINTS[name][1], GENERIC_NU[name]),
    ]
    for name in CURVES_WITH_FG
}


def _report(criterion, ok):
    print("ACCEPTANCE %-38s %s" % (criterion, "PASS" if ok else "FAIL"))
    assert ok, criterion


def test_criterion_1_golden_correlators():
    """Every printed correlation differential, 3 parameter points each."""
    ok = True
    count = 0
    for name in PARAM_POINTS:
        for params in PARAM_POINTS[name]:
            geom, table = geometry_for(name, params)
            for g, n, expected in golden_correlators(name, params):
                count += 1
                w = table.compute_w(g, n)
                if isinstance(expected, RationalFunction):
                    ok = ok and w.as_rational() == expected
                else:
                    for pts in SAMPLE_GRIDS[n]:
                        ok = ok and w.evaluate(pts) == expected(pts)
    _report("1: golden correlators (%d checks)" % count, ok and count >= 60)


def test_criterion_2_free_energies():
    """Recursion F_g equals the Bernoulli closed form, g in {2,3,4}, and
    vanishes for the curves with trivial geometry."""
    ok = True
    for name in CURVES_WITH_FG:
        for params in PARAM_POINTS[name]:
            geom, table = geometry_for(name, params)
            for g in (2, 3, 4):
                value, _ = free_energy(table, g)
                ok = ok and value == oracles.oracle_free_energy(name, g, params)
    for name in ("airy", "degenerate-bessel"):
        geom, table = geometry_for(name, {})
        for g in (2, 3):
            value, _ = free_energy(table, g)
            ok = ok and value.is_zero()
    _report("2: free energies vs closed forms", ok)


def test_criterion_3_voros_vs_closed_forms():
    """Both Voros computations equal the closed form, m = 1..5, 2 points."""
    ok = True
    for name in CURVES_WITH_FG:
        for params, nu in VOROS_POINTS[name]:
            geom, shared = geometry_for(name, params)
            divisor = divisor_from_label_data(geom, nu)
            qc = quantize(geom, divisor)
            wkb = riccati_expand(qc, geom, 5)
            for b in geom.labels:
                key = "inf" if b.is_infinity else str(b.value)
                expected = [oracles.oracle_voros(name, key, m, params, nu) for m in range(1, 6)]
                vw = voros_from_w(geom, divisor, b, 5, shared)
                vr = voros_riccati(wkb, geom, b, 5)
                ok = ok and vw.coefficients == expected and vr.coefficients == expected
    _report("3: Voros coefficients vs closed forms", ok)


def test_criterion_4_dual_oracle_independent():
    """voros_from_w == voros_riccati checked directly (no closed forms)."""
    ok = True
    for name in CURVES_WITH_FG:
        params, nu = VOROS_POINTS[name][1]
        geom, shared = geometry_for(name, params)
        divisor = divisor_from_label_data(geom, nu)
        qc = quantize(geom, divisor)
        wkb = riccati_expand(qc, geom, 5)
        for b in geom.labels:
            vw = voros_from_w(geom, divisor, b, 5, shared)
            vr = voros_riccati(wkb, geom, b, 5)
            ok = ok and vw.coefficients == vr.coefficients
    _report("4: dual-oracle agreement", ok)


def test_criterion_5_series_relations():
    """Shift relation to hbar^8, three-term to hbar^8, contiguity to hbar^6."""
    ok = True
    for name in CURVES_WITH_FG:
        for params, nu in VOROS_POINTS[name]:
            for label in oracles.LABEL_PARAM[name]:
                ok = ok and oracles.check_relation_i(name, label, params, nu, 8)
                ok = ok and oracles.check_three_term(name, label, params, 8)
    for params, nu in (
        ({"lambda0": QQ(3), "lambda1": QQ(1), "lambda_inf": QQ(1)}, {}),
        ({"lambda0": QQ(2), "lambda1": QQ(1), "lambda_inf": QQ(5)}, {"0": QQ(1, 6), "1": QQ(1, 6), "inf": QQ(1, 6)}),
    ):
        ok = ok and oracles.check_contiguity_gauss(params, nu, 6, with_a_diagnostic=True)
    _report("5: shift/three-term/contiguity relations", ok)


def test_criterion_6_bernoulli_toolbox():
    """Generating functions to w^10+, identities to n = 12, difference
    solutions to hbar^8 at 3 samples, uniqueness detection."""
    ok = oracles.check_generating_functions(11)
    ok = ok and oracles.check_polynomial_identities(12)
    ok = ok and oracles.check_difference_solutions(8)
    ok = ok and oracles.check_forward_solutions(8)
    ok = ok and oracles.check_uniqueness_detection()
    ok = ok and oracles.check_gauss_solution_split({"lambda0": QQ(3), "lambda1": QQ(1), "lambda_inf": QQ(1)}, 8)
    _report("6: Bernoulli toolbox", ok)


def test_criterion_7_structural_invariants():
    """Symmetry, residue-freeness, pole confinement, primitive independence,
    homogeneity, permutation symmetry of the Gauss data."""
    ok = True
    for name in PARAM_POINTS:
        geom, table = geometry_for(name, PARAM_POINTS[name][0])
        for g, n in ((0, 3), (1, 1), (1, 2), (2, 1)):
            w = table.compute_w(g, n)
            ok = ok and w.check_symmetric()
            ok = ok and w.pole_locations() <= set(geom.effective)
            samples = SAMPLE_GRIDS.get(n, SAMPLE_GRIDS[1])[0]
            for slot in range(n):
                for r in geom.effective:
                    other = tuple(s for i, s in enumerate(samples) if i != slot)
                    ok = ok and w.slot_residue(slot, r, other).is_zero()
    # ineffective ramification points contribute nothing
    for name in ("bessel", "degenerate-bessel", "airy"):
        geom, table = geometry_for(name, PARAM_POINTS[name][0])
        ok = ok and table.ineffective_contribution(1, 1).is_zero()
        ok = ok and table.ineffective_contribution(0, 3).is_zero()
    # primitive independence of the free energy
    geom, table = geometry_for("weber", PARAM_POINTS["weber"][0])
    base, _ = free_energy(table, 2)
    shifted, _ = free_energy(table, 2, phi=phi_primitive(geom).shift_constant(FieldValue(QQ(9, 7))))
    ok = ok and base == shifted
    # homogeneity at t = 2 and t = 1/3
    for name in CURVES_WITH_FG:
        params = PARAM_POINTS[name][0]
        _, table = geometry_for(name, params)
        f2, _ = free_energy(table, 2)
        for t in (QQ(2), QQ(1, 3)):
            _, table_t = geometry_for(name, {k: v * t for k, v in params.items()})
            f2t, _ = free_energy(table_t, 2)
            ok = ok and f2t == f2 * FieldValue(t ** -2)
    # Gauss permutation symmetry of F_g and the Voros label permutations
    base_params = {"lambda0": QQ(3), "lambda1": QQ(1), "lambda_inf": QQ(7)}
    perms = [
        ({"lambda0": QQ(1), "lambda1": QQ(3), "lambda_inf": QQ(7)}, None),
        ({"lambda0": QQ(7), "lambda1": QQ(1), "lambda_inf": QQ(3)}, None),
    ]
    _, table0 = geometry_for("gauss", base_params)
    f2_base, _ = free_energy(table0, 2)
    for pparams, _unused in perms:
        _, tp = geometry_for("gauss", pparams)
        f2p, _ = free_energy(tp, 2)
        ok = ok and f2p == f2_base
    nu = {"0": QQ(1, 5), "1": QQ(1, 7), "inf": QQ(1, 11)}
    for m in range(1, 5):
        ok = ok and oracles.oracle_voros("gauss", "1", m, base_params, nu) == oracles.oracle_voros(
            "gauss", "0", m, {"lambda0": QQ(1), "lambda1": QQ(3), "lambda_inf": QQ(7)}, {"0": QQ(1, 7), "1": QQ(1, 5), "inf": QQ(1, 11)}
        )
    _report("7: structural invariants", ok)


def test_criterion_8_quantization():
    """verify_quantization on all displayed quantum curves; SL-forms match
    the tabulated rows; SL data depends on nu only through differences."""
    ok = True
    for name in PARAM_POINTS:
        params = PARAM_POINTS[name][0]
        geom, _ = geometry_for(name, params)
        divisor = divisor_from_label_data(geom, GENERIC_NU[name])
        qc = quantize(geom, divisor)
        display = expected_quantum_curve(name, params, geom, divisor)
        ok = ok and verify_quantization(geom, divisor, qc)
        ok = ok and verify_quantization(geom, divisor, display)
        sl = sl_form(qc)
        q0, q1, q2 = expected_sl_potential(name, params, GENERIC_NU[name])
        ok = ok and sl.q_0 == q0 and sl.q_1 == q1 and sl.q_2 == q2
    # dependence on nu only through the differences
    geom, _ = geometry_for("gauss", PARAM_POINTS["gauss"][0])
    d1 = divisor_from_label_data(geom, GENERIC_NU["gauss"])
    d2 = divisor_from_label_data(geom, GENERIC_NU["gauss"], nu_sum={"0": QQ(1, 2), "1": QQ(1, 4), "inf": QQ(1, 4)})
    ok = ok and d1.weights != d2.weights
    ok = ok and sl_form(quantize(geom, d1)) == sl_form(quantize(geom, d2))
    _report("8: quantization and SL-forms", ok)
