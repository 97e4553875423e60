"""Acceptance criteria, one test per criterion.

Published tables print 10 significant digits that carry the original
authors' own rounding (and, for the quadratic well, their integrator's
noise), so table rows are compared in units of the last printed digit
(ulp): 2 ulp for the algebraic routes, 25 ulp for the quadratic table.
All sharper comparisons (19-digit RPM values, 1e-10 oracle audits) are
asserted at their stated tolerances.
"""

import mpmath
import pytest
from mpmath import mpf

import oracles
from smallenergy.matching import (
    convergence_table,
    exact_ground_state,
    find_singularity,
)
from smallenergy.expansion import hierarchy_series, linear_series
from smallenergy.models import (
    LinearWell,
    NonSymmetricFiniteWell,
    QuadraticWell,
    Side,
    SymmetricFiniteWell,
)
from smallenergy.precision import PrecisionContext
from smallenergy.roots import refine_root_1d
from smallenergy.rpm import rpm_curves, rpm_solve

CTX60 = PrecisionContext(60)
CTX100 = PrecisionContext(100)

TABLE1 = {
    4: "0.5855444198", 8: "0.5516251660", 12: "0.5472622152", 16: "0.5464638914",
    20: "0.5462964250", 24: "0.5462586560", 28: "0.5462497386", 32: "0.5462475642",
    36: "0.5462470210", 40: "0.5462468826", 44: "0.5462468468", 48: "0.5462468375",
    52: "0.5462468350", 56: "0.5462468344", 60: "0.5462468343", 64: "0.5462468341",
}
TABLE2 = {
    4: "0.8367722372", 8: "0.6634864161", 12: "0.6487132635", 16: "0.6457463863",
    20: "0.6449609259", 24: "0.6447254502", 28: "0.6446499927", 32: "0.6446247871",
    36: "0.6446161202", 40: "0.6446130747", 44: "0.6446119860", 48: "0.6446115915",
    52: "0.6446114469", 56: "0.6446113933", 60: "0.6446113734", 64: "0.6446113658",
    68: "0.6446113630", 72: "0.6446113618", 76: "0.6446113615", 80: "0.6446113614",
    84: "0.6446113614", 88: "0.6446113612",
}
TABLE3 = {
    2: "1.387352237", 4: "1.275507151", 6: "1.256485215", 8: "1.251913598",
    10: "1.250686548", 12: "1.250343776", 14: "1.250246604", 16: "1.250218907",
    18: "1.250210997", 20: "1.250208737", 22: "1.250208091", 24: "1.250207905",
    26: "1.250207854", 28: "1.250207837", 30: "1.250207833", 32: "1.250207832",
}
TABLE4 = {
    2: "1.254541164", 4: "1.185370810", 6: "1.178091246", 8: "1.177102981",
    10: "1.176958699", 12: "1.176937027", 14: "1.176933737", 16: "1.176933265",
    18: "1.176933166",
}

# parsed lazily: mpf() at module import would round these 20-digit
# references to the ambient (default 15-digit) precision
RPM_E0_STR = "1.0590028460380260258"
RPM_G0_STR = "-0.02652946094577843397"


def ulp_of(printed: str):
    """One unit in the last printed significant digit."""
    x = mpf(printed)
    return mpf(10) ** (int(mpmath.floor(mpmath.log10(abs(x)))) - 9)


def check_table(model, printed, max_ulp):
    records = convergence_table(model, sorted(printed), CTX60)
    worst = mpf(0)
    for rec in records:
        want = mpf(printed[rec.order_n])
        dev = abs(rec.estimate_E0 - want) / ulp_of(printed[rec.order_n])
        worst = max(worst, dev)
        assert dev <= max_ulp, (
            f"row n={rec.order_n}: {mpmath.nstr(rec.estimate_E0, 12)} vs printed "
            f"{printed[rec.order_n]} ({mpmath.nstr(dev, 3)} ulp)"
        )
    return worst


def test_criterion_01_table1_symmetric_well():
    worst = check_table(SymmetricFiniteWell(1), TABLE1, 2)
    print(f"CRITERION 1 (Table 1, sym well): PASS, worst {mpmath.nstr(worst, 3)} ulp")


def test_criterion_02_table2_nonsymmetric_well():
    worst = check_table(NonSymmetricFiniteWell(2, 1), TABLE2, 2)
    print(f"CRITERION 2 (Table 2, nonsym well): PASS, worst {mpmath.nstr(worst, 3)} ulp")


def test_criterion_03_table3_linear_well_and_coefficients():
    worst = check_table(LinearWell(2, 1), TABLE3, 2)
    printed_left = ("0.9184964715", "-0.4218178838", "-0.05628088100",
                    "-0.01242379097", "-0.003082268481")
    printed_right = ("-0.7290111325", "0.5314572310", "0.1125617620",
                     "0.03944307773", "0.01553365974")
    with CTX60.workdps():
        left = linear_series(2, Side.LEFT, 6, CTX60)
        right = linear_series(1, Side.RIGHT, 6, CTX60)
        for got, want in zip(left.series.coeffs, printed_left):
            assert abs(got - mpf(want)) < mpf("1e-9")
        for got, want in zip(right.series.coeffs, printed_right):
            assert abs(got - mpf(want)) < mpf("1e-9")
    print(f"CRITERION 3 (Table 3, linear well): PASS, worst {mpmath.nstr(worst, 3)} ulp")


def test_criterion_04_table4_quadratic_well_and_coefficients():
    worst = check_table(QuadraticWell(2, 1), TABLE4, 25)
    printed_left = ("0.8038781325", "-0.4464420544", "-0.06011306588",
                    "-0.01251356963", "-0.002831976530")
    printed_right = ("-0.6759782395", "0.5309120676", "0.1010977236",
                     "0.02976245185", "0.009525595408")
    with CTX60.workdps():
        left = hierarchy_series(QuadraticWell(2, 1), Side.LEFT, 6, ctx=CTX60)
        right = hierarchy_series(QuadraticWell(2, 1), Side.RIGHT, 6, ctx=CTX60)
        for got, want in zip(left.series.coeffs, printed_left):
            assert abs(got - mpf(want)) < mpf("1e-9")
        for got, want in zip(right.series.coeffs, printed_right):
            assert abs(got - mpf(want)) < mpf("1e-9")
    print(f"CRITERION 4 (Table 4, quadratic well): PASS, worst {mpmath.nstr(worst, 3)} ulp")


def test_criterion_05_exact_references():
    cases = (
        (SymmetricFiniteWell(1), "0.5462468341"),
        (NonSymmetricFiniteWell(2, 1), "0.6446113612"),
        (LinearWell(2, 1), "1.250207832"),
        (QuadraticWell(2, 1), "1.176933152"),
    )
    with CTX60.workdps():
        for model, printed in cases:
            got = exact_ground_state(model, CTX60)
            assert abs(got - mpf(printed)) <= ulp_of(printed)
    print("CRITERION 5 (exact references): PASS")


def test_criterion_06_singularities():
    with CTX60.workdps():
        sym = find_singularity(SymmetricFiniteWell(1), Side.RIGHT, CTX60).location
        assert abs(sym.real - mpf("1.222635745")) <= ulp_of("1.222635745")
        assert abs(sym.imag - mpf("-0.5925040566")) <= ulp_of("0.5925040566")
        left = find_singularity(NonSymmetricFiniteWell(2, 1), Side.LEFT, CTX60).location
        assert abs(left.real - mpf("2.125364032")) <= ulp_of("2.125364032")
        assert abs(left.imag - mpf("-0.3468294596")) <= ulp_of("0.3468294596")
        lin_r = find_singularity(LinearWell(2, 1), Side.RIGHT, CTX60).location
        assert abs(lin_r.real - mpf("2.338107410")) <= ulp_of("2.338107410")
        lin_l = find_singularity(LinearWell(2, 1), Side.LEFT, CTX60).location
        assert abs(lin_l.real - mpf("3.711514163")) <= ulp_of("3.711514163")
    print("CRITERION 6 (singularities): PASS")


def test_criterion_07_rpm_solve_19_digits():
    with CTX100.workdps():
        v = [mpf(0), mpf(0), mpf(0), mpf("0.1"), mpf(1)] + [mpf(0)] * 60
        ladder = rpm_solve(v, d=0, D_range=(2, 15), ctx=CTX100)
        final = ladder[-1]
        assert final.converged
        dev_e = abs(final.E - mpf(RPM_E0_STR))
        dev_g = abs(final.g0 - mpf(RPM_G0_STR))
        assert dev_e <= mpf(10) ** -18  # 19 significant digits of E ~ 1.06
        assert dev_g <= mpf(10) ** -20  # 19 significant digits of g0 ~ 0.0265
        # ladder contraction for D >= 5
        errors = [abs(step.E - final.E) for step in ladder if step.D >= 5]
        assert all(a >= b for a, b in zip(errors, errors[1:]))
    print(
        f"CRITERION 7 (RPM solve): PASS, |dE| = {mpmath.nstr(dev_e, 3)}, "
        f"|dg0| = {mpmath.nstr(dev_g, 3)}"
    )


def test_criterion_08_rpm_curves_oracle_and_crossing():
    with CTX100.workdps():
        lam = mpf("0.1")
        v = [mpf(0), mpf(0), mpf(0), lam, mpf(1)] + [mpf(0)] * 80
        energies = [mpf("0.05") * i for i in range(21)]  # 0 .. 1.0
        energies += [mpf(1) + mpf("0.01") * i for i in range(1, 13)]  # 1.01 .. 1.12
        energies += [mpf("1.16"), mpf("1.2")]
        points = rpm_curves(v, energies, D=18, ctx=CTX100)

        # pointwise audit against the independent Riccati shooting oracle
        audit = {mpf("0.2"), mpf("0.5"), mpf("0.8"), mpf(1), mpf("1.2")}
        audited = 0
        worst = mpf(0)
        for p in points:
            if not any(abs(p.E - a) < mpf("1e-20") for a in audit):
                continue
            left, right = oracles.shoot_pair([0, 0, 0, lam, 1], p.E, 40)
            worst = max(worst, abs(p.L_left - left), abs(p.L_right - right))
            audited += 1
        assert audited == 5
        assert worst < mpf("1e-10")

        # crossing of the two curves via the interpolated difference
        Es = [p.E for p in points]
        diffs = [p.L_left - p.L_right for p in points]
        k = next(i for i in range(len(diffs) - 1) if diffs[i] * diffs[i + 1] < 0)
        i0 = max(0, min(k - 1, len(Es) - 4))
        xs, ys = Es[i0:i0 + 4], diffs[i0:i0 + 4]

        def interp(x):
            total = mpf(0)
            for i in range(4):
                term = ys[i]
                for j in range(4):
                    if j != i:
                        term *= (x - xs[j]) / (xs[i] - xs[j])
                total += term
            return total

        crossing = refine_root_1d(interp, (Es[k], Es[k + 1]), mpf("1e-30"), CTX100)
        dev = abs(crossing - mpf(RPM_E0_STR))
        assert dev < mpf("1e-6")
    print(
        f"CRITERION 8 (RPM curves): PASS, worst oracle dev {mpmath.nstr(worst, 3)}, "
        f"crossing dev {mpmath.nstr(dev, 3)}"
    )


def test_criterion_09_property_suites():
    import test_properties as props

    props.test_mul_div_round_trip()
    props.test_sqrt_squares_back()
    props.test_collapse_inverts_even_expansion()
    props.test_gamma_recurrence()
    props.test_pcf_contiguous_identity()
    props.test_dual_gradient_matches_finite_differences()
    props.test_harmonic_determinant_annihilation()
    props.test_hankel_dual_jacobian_matches_finite_differences()
    print("CRITERION 9 (property suites, 200 cases each): PASS")


def test_criterion_10_airy_vs_hierarchy_cross_validation():
    with CTX60.workdps():
        for a in (1, 2):
            airy = linear_series(a, Side.RIGHT, 10, CTX60)
            hier = hierarchy_series(
                LinearWell(a, a), Side.RIGHT, 10, ctx=CTX60
            )
            for k, (x, y) in enumerate(zip(airy.series.coeffs, hier.series.coeffs)):
                assert abs(x - y) < mpf("1e-9"), f"slope {a}, order {k}"
    print("CRITERION 10 (Airy vs hierarchy): PASS")
