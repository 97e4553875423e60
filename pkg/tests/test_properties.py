"""Randomized property suites (200 cases each).

Tolerances follow the module contracts: series algebra is checked to
relative 10^(digits-20) below unity, Gamma identities to 10^(-digits+5),
Dual gradients against central finite differences with step
10^(-digits/2) at relative 10^(-digits/4), and the harmonic-oscillator
determinant annihilation is exact.
"""

import mpmath
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mpf

from smallenergy.dual import Dual
from smallenergy.precision import PrecisionContext, format_full, parse_real
from smallenergy.rpm import even_odd_hankel, hankel_det, riccati_taylor
from smallenergy.series import Series, collapse_even_u_to_E, series_sqrt
from smallenergy.special import gamma, pcf_at_zero

CTX = PrecisionContext(30)
CASES = settings(max_examples=200, deadline=None)

small = st.integers(min_value=-900, max_value=900)
nonzero = st.integers(min_value=1, max_value=900)


def _coeffs_to_series(ints, variable="E"):
    return Series(variable, tuple(mpf(i) / 128 for i in ints))


@CASES
@given(
    st.lists(small, min_size=5, max_size=21),
    nonzero,
    st.lists(small, min_size=4, max_size=20),
)
def test_mul_div_round_trip(a_ints, b0, b_tail):
    with CTX.workdps():
        n = len(a_ints) - 1
        b_ints = ([b0] + b_tail + [0] * n)[: n + 1]
        a = _coeffs_to_series(a_ints)
        b = _coeffs_to_series(b_ints)
        back = (a * b) / b
        scale = max(abs(c) for c in a.coeffs) or mpf(1)
        for x, y in zip(back.coeffs, a.coeffs):
            assert abs(x - y) <= scale * mpf(10) ** -10


@CASES
@given(nonzero, st.lists(small, min_size=2, max_size=16))
def test_sqrt_squares_back(c0, tail):
    with CTX.workdps():
        a = _coeffs_to_series([c0 + 900] + tail)
        r = series_sqrt(a)
        sq = r * r
        scale = max(abs(c) for c in a.coeffs)
        for x, y in zip(sq.coeffs, a.coeffs):
            assert abs(x - y) <= scale * mpf(10) ** -10


@CASES
@given(st.lists(small, min_size=2, max_size=12))
def test_collapse_inverts_even_expansion(ints):
    with CTX.workdps():
        e = _coeffs_to_series(ints)
        expanded = [mpf(0)] * (2 * e.order + 1)
        expanded[0::2] = e.coeffs
        back = collapse_even_u_to_E(Series("u", tuple(expanded)), mpf("1e-15"))
        assert back.coeffs == e.coeffs


@CASES
@given(st.integers(min_value=-(10**12), max_value=10**12), st.integers(-12, 12))
def test_parse_format_round_trip(mantissa, exponent):
    with CTX.workdps():
        x = mpf(mantissa) * mpf(10) ** exponent
        back = parse_real(format_full(x, CTX), CTX)
        # round-trips to the carried precision (the print is 30 digits;
        # guard digits beyond that may differ)
        assert abs(back - x) <= abs(x) * mpf(10) ** -29


@CASES
@given(st.integers(min_value=101, max_value=9999))
def test_gamma_recurrence(thousandths):
    z = mpf(thousandths) / 1000  # (0.1, 10)
    with CTX.workdps():
        lhs = gamma(z + 1, CTX)
        rhs = z * gamma(z, CTX)
        assert abs(lhs - rhs) <= abs(lhs) * mpf(10) ** -25


@CASES
@given(st.integers(min_value=-2800, max_value=2800))
def test_pcf_contiguous_identity(thousandths):
    nu = mpf(thousandths) / 1000
    if (1 - nu) % 2 == 0 or (2 + nu) % 2 == 0:
        return  # Gamma pole in the identity itself
    with CTX.workdps():
        lhs = (
            pcf_at_zero(nu, CTX)
            * pcf_at_zero(-nu - 1, CTX)
            * gamma((1 - nu) / 2, CTX)
            * gamma((2 + nu) / 2, CTX)
        )
        assert abs(lhs - mpmath.pi / mpmath.sqrt(2)) < mpf(10) ** -24


@CASES
@given(st.integers(min_value=100, max_value=2000), st.integers(min_value=-500, max_value=500))
def test_dual_gradient_matches_finite_differences(xi, yi):
    with CTX.workdps():
        x0, y0 = mpf(xi) / 1000, mpf(yi) / 1000

        def f(x, y):
            return (x * y + 3) * x - y * y * x + x / (y + 2)

        out = f(Dual.seed_x(x0), Dual.seed_y(y0))
        h = mpf(10) ** -15
        fdx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2 * h)
        fdy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2 * h)
        tol = mpf(10) ** mpf("-7.5")
        assert abs(out.dx - fdx) <= tol * (1 + abs(fdx))
        assert abs(out.dy - fdy) <= tol * (1 + abs(fdy))


@CASES
@given(st.integers(min_value=1, max_value=5), st.integers(min_value=0, max_value=3))
def test_harmonic_determinant_annihilation(D, d):
    with CTX.workdps():
        g = riccati_taylor((0, 0, 1) + (0,) * 30, mpf(1), mpf(0), 32)
        if D >= 2:
            assert hankel_det(g, D, d) == 0
        he, ho = even_odd_hankel(g, D, d)
        assert he == 0
        assert ho == 0


@CASES
@given(
    st.integers(min_value=500, max_value=1500),
    st.integers(min_value=-400, max_value=400),
    st.integers(min_value=2, max_value=5),
)
def test_hankel_dual_jacobian_matches_finite_differences(Ei, gi, D):
    with CTX.workdps():
        E0, g00 = mpf(Ei) / 1000, mpf(gi) / 1000
        v = (0, 0, 0, mpf("0.1"), 1) + (0,) * (2 * D)
        count = 2 * D

        def H(E, g0):
            return hankel_det(riccati_taylor(v, E, g0, count), D, 0)

        out = H(Dual.seed_x(E0), Dual.seed_y(g00))
        h = mpf(10) ** -15
        fdE = (H(E0 + h, g00) - H(E0 - h, g00)) / (2 * h)
        fdg = (H(E0, g00 + h) - H(E0, g00 - h)) / (2 * h)
        tol = mpf(10) ** mpf("-7.5")
        assert abs(out.dx - fdE) <= tol * (1 + abs(fdE))
        assert abs(out.dy - fdg) <= tol * (1 + abs(fdg))
