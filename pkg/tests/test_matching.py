import mpmath
import pytest
from mpmath import mpf

from smallenergy.errors import BracketError, UsageError
from smallenergy.matching import (
    SingularityKind,
    build_model_series,
    convergence_table,
    default_bracket,
    exact_ground_state,
    find_singularity,
    label_truncation,
    leftmost_crossing,
    series_ground_state,
)
from smallenergy.models import (
    CubicQuartic,
    LinearWell,
    NonSymmetricFiniteWell,
    QuadraticWell,
    Side,
    SymmetricFiniteWell,
)
from smallenergy.series import estimate_radius


def test_label_truncation_conventions():
    assert label_truncation(SymmetricFiniteWell(1), 4) == 2
    assert label_truncation(NonSymmetricFiniteWell(2, 1), 4) == 1
    assert label_truncation(LinearWell(2, 1), 2) == 2
    assert label_truncation(QuadraticWell(2, 1), 18) == 18
    with pytest.raises(UsageError):
        label_truncation(SymmetricFiniteWell(1), 1)


def test_leftmost_crossing_picks_first_root(ctx60):
    with ctx60.workdps():
        # roots at 1 and 2; the scan must return the left one
        root = leftmost_crossing(
            lambda x: (x - 1) * (x - 2), (mpf("0.5"), mpf("2.5")), mpf(10) ** -40, ctx60
        )
        assert abs(root - 1) < mpf(10) ** -39
    with pytest.raises(BracketError):
        leftmost_crossing(lambda x: x * x + 1, (0, 1), mpf(10) ** -30, ctx60)


def test_series_ground_state_low_order_rows(ctx60):
    model = NonSymmetricFiniteWell(2, 1)
    left, right = build_model_series(model, 4, ctx60)
    bracket = default_bracket(model, ctx60)
    with ctx60.workdps():
        e = series_ground_state(left, right, 1, bracket, ctx60)
        assert abs(e - mpf("0.8367722372")) < mpf("2e-10")
        with pytest.raises(UsageError):
            series_ground_state(left, right, 9, bracket, ctx60)


def test_exact_ground_states(ctx60):
    cases = (
        (SymmetricFiniteWell(1), "0.5462468341"),
        (NonSymmetricFiniteWell(2, 1), "0.6446113612"),
        (LinearWell(2, 1), "1.250207832"),
        (QuadraticWell(2, 1), "1.176933152"),
    )
    with ctx60.workdps():
        for model, printed in cases:
            got = exact_ground_state(model, ctx60)
            assert abs(got - mpf(printed)) < mpf("1e-9")
    with pytest.raises(UsageError):
        exact_ground_state(CubicQuartic(mpf("0.1")), ctx60)


def test_convergence_table_validation(ctx60):
    with pytest.raises(UsageError):
        convergence_table(SymmetricFiniteWell(1), [], ctx60)
    with pytest.raises(UsageError):
        convergence_table(SymmetricFiniteWell(1), [8, 4], ctx60)


def test_find_singularity_kinds(ctx60):
    sym = find_singularity(SymmetricFiniteWell(1), Side.RIGHT, ctx60)
    assert sym.kind is SingularityKind.COMPLEX_PAIR
    assert sym.location.imag < 0 < sym.location.real
    lin = find_singularity(LinearWell(2, 1), Side.RIGHT, ctx60)
    assert lin.kind is SingularityKind.REAL_POLE
    assert lin.location.imag == 0
    with pytest.raises(UsageError):
        find_singularity(QuadraticWell(2, 1), Side.RIGHT, ctx60)


def test_ground_state_below_singularity(ctx60):
    """|E_0| < |E_r| justifies the series route for every catalog model."""
    with ctx60.workdps():
        for model in (SymmetricFiniteWell(1), NonSymmetricFiniteWell(2, 1), LinearWell(2, 1)):
            e0 = exact_ground_state(model, ctx60)
            for side in (Side.LEFT, Side.RIGHT):
                er = find_singularity(model, side, ctx60).location
                assert abs(e0) < abs(er)


def test_estimate_radius_reflects_true_singularity(ctx60):
    """The finite-well E-series stops converging at the branch point E = V,
    which lies closer than the complex denominator zero; the root test
    must report the branch point, not the pole."""
    with ctx60.workdps():
        left, right = build_model_series(SymmetricFiniteWell(1), 60, ctx60)
        r = estimate_radius(right.series, 15)
        # the root test approaches a branch-point radius slowly from above:
        # 1.12 at order 60, clearly selecting E = 1 over |E_r| = 1.3587
        assert abs(r - 1) < mpf("0.15")
        # linear well: Airy is entire, so the pole is the nearest singularity
        lleft, lright = build_model_series(LinearWell(2, 1), 45, ctx60)
        r_lin = estimate_radius(lright.series, 10)
        assert abs(r_lin - mpf("2.338107410")) / mpf("2.338107410") < mpf("0.1")


def test_default_bracket_shapes(ctx60):
    lo, hi = default_bracket(SymmetricFiniteWell(1), ctx60)
    assert abs(lo - mpf("1e-6")) < mpf("1e-16")
    assert hi < 1  # capped by the well height
    with pytest.raises(UsageError):
        default_bracket(CubicQuartic(mpf("0.1")), ctx60)
