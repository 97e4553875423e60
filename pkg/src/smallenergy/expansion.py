"""Small-energy series of the left/right logarithmic derivatives at x = 0.

Three generation methods, cross-validated where two apply:

* closed trigonometric algebra for the finite wells,
* the Airy Maclaurin ratio for linear wells,
* the generic Riccati-hierarchy ODE engine for any polynomial ray
  potential (the route that covers the quadratic well).
"""

import enum
from dataclasses import dataclass
from typing import Optional

from mpmath import mpf

from .errors import UsageError
from .hierarchy import HierarchyConfig, RayPolynomial, integrate_hierarchy
from .models import (
    LinearWell,
    PotentialModel,
    QuadraticWell,
    Side,
)
from .precision import PrecisionContext
from .series import Series, collapse_even_u_to_E, series_sqrt, sinc_series, trig_series
from .special import airy_maclaurin, suggested_airy_order


class Method(enum.Enum):
    CLOSED_ALGEBRA = "closed-algebra"
    AIRY_RATIO = "airy-ratio"
    HIERARCHY = "hierarchy"


@dataclass(frozen=True)
class LogDerivSeries:
    side: Side
    series: Series
    method: Method
    model: Optional[PotentialModel] = None

    def __post_init__(self):
        if self.series.order < 1:
            raise UsageError("a logarithmic-derivative series needs order >= 1")


def well_series(height, side: Side, order: int, ctx: PrecisionContext) -> LogDerivSeries:
    """E-series of the finite-well closed form, by u = sqrt(E) algebra.

    After cancelling one factor of u, numerator and denominator are even
    series in u, so the ratio collapses to integer powers of E.
    """
    if order < 1:
        raise UsageError("well series order must be >= 1")
    with ctx.workdps(20):
        h = mpf(height)
        if h <= 0:
            raise UsageError("well height must be positive")
        u_order = 2 * order
        v_minus_u2 = [h] + [mpf(0)] * u_order
        if u_order >= 2:
            v_minus_u2[2] = mpf(-1)
        root = series_sqrt(Series("u", tuple(v_minus_u2)))
        sin_u = trig_series("sin", u_order, ctx)
        cos_u = trig_series("cos", u_order, ctx)
        sinc_u = sinc_series(u_order, ctx)
        u_sin = Series("u", (mpf(0),) + sin_u.coeffs[:-1])  # u * sin(u)
        numerator = u_sin - root * cos_u
        denominator = cos_u + root * sinc_u
        ratio = numerator / denominator
        odd_tol = mpf(10) ** (-(ctx.decimal_digits // 2))
        e_series = collapse_even_u_to_E(ratio, odd_tol).truncate(order)
        if side is Side.LEFT:
            e_series = -e_series
        return LogDerivSeries(side=side, series=e_series, method=Method.CLOSED_ALGEBRA)


def linear_series(a, side: Side, order: int, ctx: PrecisionContext) -> LogDerivSeries:
    """E-series of the linear-well Airy ratio for slope a on the given side."""
    if order < 1:
        raise UsageError("linear series order must be >= 1")
    with ctx.workdps(20):
        am = mpf(a)
        if am <= 0:
            raise UsageError("linear slope must be positive")
        table = airy_maclaurin(max(suggested_airy_order(ctx), order + 4), ctx)
        scale = -(am ** (mpf(-2) / 3))  # z = -E / a^(2/3)
        ai = Series("E", table.ai_coeffs[: order + 1]).substituted_scale(scale)
        aip = Series("E", table.ai_prime_coeffs[: order + 1]).substituted_scale(scale)
        ratio = (aip / ai).scaled(am ** (mpf(1) / 3))
        if side is Side.LEFT:
            ratio = -ratio
        return LogDerivSeries(side=side, series=ratio, method=Method.AIRY_RATIO)


def hierarchy_series(
    potential,
    side: Side,
    order: int,
    cfg: Optional[HierarchyConfig] = None,
    ctx: Optional[PrecisionContext] = None,
) -> LogDerivSeries:
    """E-series from the Riccati-hierarchy ODE engine.

    `potential` is a RayPolynomial describing V on the decay ray of the
    requested side (for the left side, V(-x) on x >= 0), or a catalog
    model with polynomial sides, from which the ray is extracted.
    """
    if ctx is None:
        ctx = PrecisionContext(35)
    if cfg is None:
        cfg = HierarchyConfig(max_order=max(20, order))
    ray = _resolve_ray(potential, side)
    values = integrate_hierarchy(ray, order, cfg, ctx)
    coeffs = tuple(values)
    if side is Side.LEFT:
        coeffs = tuple(-c for c in coeffs)
    return LogDerivSeries(
        side=side,
        series=Series("E", coeffs),
        method=Method.HIERARCHY,
        model=potential if isinstance(potential, (LinearWell, QuadraticWell)) else None,
    )


def _resolve_ray(potential, side: Side) -> RayPolynomial:
    if isinstance(potential, RayPolynomial):
        return potential
    if isinstance(potential, LinearWell):
        a = potential.a_l if side is Side.LEFT else potential.a_r
        return RayPolynomial((mpf(0), a))
    if isinstance(potential, QuadraticWell):
        a = potential.a_l if side is Side.LEFT else potential.a_r
        return RayPolynomial((mpf(0), mpf(0), a))
    raise UsageError(
        "hierarchy engine needs a RayPolynomial or a linear/quadratic well; "
        "finite wells are not smooth and the anharmonic model has no "
        "small-energy series"
    )


def f_series(L: LogDerivSeries) -> Series:
    """f(E) = 1 - L(0,E)/L_0(0); the constant term is zero by construction."""
    l0 = L.series.coeffs[0]
    if l0 == 0:
        raise UsageError("cannot normalize: the series constant term vanishes")
    scaled = L.series.scaled(-1 / l0)
    coeffs = (mpf(0),) + scaled.coeffs[1:]
    return Series("E", coeffs)
