"""The five potential catalog: piecewise evaluation, closed-form logarithmic
derivatives at the origin where they exist, and Taylor data for the RPM.

Well transitions sit at |x| = 1; the half-width is deliberately not a
parameter.
"""

import enum
from dataclasses import dataclass
from typing import Union

import mpmath
from mpmath import mpf

from .errors import ParseError, PoleError, TaylorBlindError, UsageError
from .precision import PrecisionContext
from .special import airy_eval, airy_maclaurin, pcf_at_zero, suggested_airy_order


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def _positive(name, value):
    v = mpf(value)
    if not (v > 0):
        raise UsageError(f"{name} must be positive, got {mpmath.nstr(v, 8)}")
    return v


@dataclass(frozen=True)
class SymmetricFiniteWell:
    v_r: object

    def __post_init__(self):
        object.__setattr__(self, "v_r", _positive("vR", self.v_r))


@dataclass(frozen=True)
class NonSymmetricFiniteWell:
    v_l: object
    v_r: object

    def __post_init__(self):
        object.__setattr__(self, "v_l", _positive("vL", self.v_l))
        object.__setattr__(self, "v_r", _positive("vR", self.v_r))


@dataclass(frozen=True)
class LinearWell:
    a_l: object
    a_r: object

    def __post_init__(self):
        object.__setattr__(self, "a_l", _positive("aL", self.a_l))
        object.__setattr__(self, "a_r", _positive("aR", self.a_r))


@dataclass(frozen=True)
class QuadraticWell:
    a_l: object
    a_r: object

    def __post_init__(self):
        object.__setattr__(self, "a_l", _positive("aL", self.a_l))
        object.__setattr__(self, "a_r", _positive("aR", self.a_r))


@dataclass(frozen=True)
class CubicQuartic:
    lam: object

    def __post_init__(self):
        object.__setattr__(self, "lam", mpf(self.lam))


PotentialModel = Union[
    SymmetricFiniteWell, NonSymmetricFiniteWell, LinearWell, QuadraticWell, CubicQuartic
]


def potential_eval(m: PotentialModel, x):
    """Pointwise V(x); well discontinuities report the inner-region value."""
    xm = mpf(x)
    if isinstance(m, SymmetricFiniteWell):
        return mpf(0) if abs(xm) <= 1 else m.v_r
    if isinstance(m, NonSymmetricFiniteWell):
        if abs(xm) <= 1:
            return mpf(0)
        return m.v_l if xm < 0 else m.v_r
    if isinstance(m, LinearWell):
        return -m.a_l * xm if xm < 0 else m.a_r * xm
    if isinstance(m, QuadraticWell):
        return (m.a_l if xm < 0 else m.a_r) * xm * xm
    if isinstance(m, CubicQuartic):
        return xm**4 + m.lam * xm**3
    raise UsageError(f"unknown model {m!r}")


def _well_logderiv_right(height, E):
    """Right-side closed form for a finite step of the given height."""
    if E == 0:
        s = mpmath.sqrt(height)
        return -s / (1 + s)
    u = mpmath.sqrt(E)
    s = mpmath.sqrt(height - E)
    su, cu = mpmath.sin(u), mpmath.cos(u)
    den = u * cu + s * su
    if den == 0:
        raise PoleError(f"well logarithmic derivative pole at E = {mpmath.nstr(E, 12)}")
    return u * (u * su - s * cu) / den


def _linear_logderiv_right(a, E, ctx):
    """a^(1/3) * Ai'(-E/a^(2/3)) / Ai(-E/a^(2/3)).

    Both sides evaluate Ai on the negative axis; the singularities and the
    published series coefficients pin this argument sign down.
    """
    table = airy_maclaurin(suggested_airy_order(ctx), ctx)
    z = -E / a ** (mpf(2) / 3)
    ai, aip = airy_eval(table, z, ctx)
    if ai == 0:
        raise PoleError(f"Ai zero at z = {mpmath.nstr(z, 12)}")
    return a ** (mpf(1) / 3) * aip / ai


def _quadratic_logderiv_right(a, E, ctx):
    """-sqrt(2) a^(1/4) D_{(E+sqrt(a))/(2 sqrt(a))}(0) / D_{(E-sqrt(a))/(2 sqrt(a))}(0)."""
    r = mpmath.sqrt(a)
    nu_num = (E + r) / (2 * r)
    nu_den = (E - r) / (2 * r)
    den = pcf_at_zero(nu_den, ctx)
    if den == 0:
        raise PoleError(
            f"parabolic-cylinder denominator vanishes at E = {mpmath.nstr(E, 12)}"
        )
    return -mpmath.sqrt(mpf(2)) * a ** (mpf(1) / 4) * pcf_at_zero(nu_num, ctx) / den


def closed_logderiv(m: PotentialModel, side: Side, E, ctx: PrecisionContext):
    """Exact L(0, E) for the requested side, where a closed form exists."""
    with ctx.workdps():
        Em = mpf(E)
        if isinstance(m, (SymmetricFiniteWell, NonSymmetricFiniteWell)):
            if isinstance(m, SymmetricFiniteWell):
                heights = {Side.LEFT: m.v_r, Side.RIGHT: m.v_r}
            else:
                heights = {Side.LEFT: m.v_l, Side.RIGHT: m.v_r}
            h = heights[side]
            if not (0 <= Em < h):
                raise UsageError(
                    f"E = {mpmath.nstr(Em, 12)} outside the bound-state range [0, "
                    f"{mpmath.nstr(h, 8)}) of this side"
                )
            val = _well_logderiv_right(h, Em)
            return -val if side is Side.LEFT else val
        if isinstance(m, LinearWell):
            a = m.a_l if side is Side.LEFT else m.a_r
            val = _linear_logderiv_right(a, Em, ctx)
            return -val if side is Side.LEFT else val
        if isinstance(m, QuadraticWell):
            a = m.a_l if side is Side.LEFT else m.a_r
            val = _quadratic_logderiv_right(a, Em, ctx)
            return -val if side is Side.LEFT else val
        if isinstance(m, CubicQuartic):
            raise UsageError("the cubic-quartic oscillator has no closed-form "
                             "logarithmic derivative; use the RPM instead")
        raise UsageError(f"unknown model {m!r}")


def potential_taylor(m: PotentialModel, count: int):
    """Taylor coefficients v_0..v_{count-1} of V about 0 (RPM input)."""
    if count < 1:
        raise UsageError("need at least one Taylor coefficient")
    if isinstance(m, CubicQuartic):
        v = [mpf(0)] * count
        if count > 3:
            v[3] = m.lam
        if count > 4:
            v[4] = mpf(1)
        return v
    raise TaylorBlindError(
        f"{type(m).__name__} is piecewise: its Taylor data at the origin cannot "
        "see the walls or the kink, so the RPM would silently solve the wrong "
        "problem"
    )


_MODEL_KEYS = {
    "sym-well": (SymmetricFiniteWell, {"vR": "v_r"}),
    "nonsym-well": (NonSymmetricFiniteWell, {"vL": "v_l", "vR": "v_r"}),
    "linear": (LinearWell, {"aL": "a_l", "aR": "a_r"}),
    "quadratic": (QuadraticWell, {"aL": "a_l", "aR": "a_r"}),
    "anharmonic": (CubicQuartic, {"lambda": "lam"}),
}


def parse_model(tokens, ctx: PrecisionContext) -> PotentialModel:
    """Parse a model literal such as ['nonsym-well', 'vL=2', 'vR=1']."""
    from .precision import parse_real

    if not tokens:
        raise ParseError("empty model literal")
    name, *params = tokens
    if name not in _MODEL_KEYS:
        raise ParseError(
            f"unknown model {name!r}; expected one of {sorted(_MODEL_KEYS)}"
        )
    cls, keymap = _MODEL_KEYS[name]
    kwargs = {}
    for p in params:
        if "=" not in p:
            raise ParseError(f"model parameter {p!r} is not key=value")
        key, _, raw = p.partition("=")
        if key not in keymap:
            raise ParseError(
                f"unknown parameter {key!r} for model {name!r}; "
                f"expected {sorted(keymap)}"
            )
        if keymap[key] in kwargs:
            raise ParseError(f"duplicate parameter {key!r}")
        kwargs[keymap[key]] = parse_real(raw, ctx)
    missing = [k for k, v in keymap.items() if v not in kwargs]
    if missing:
        raise ParseError(f"model {name!r} missing parameters {missing}")
    return cls(**kwargs)


def model_literal(m: PotentialModel) -> str:
    """Inverse of parse_model, used for CSV provenance comments."""
    for name, (cls, keymap) in _MODEL_KEYS.items():
        if isinstance(m, cls):
            parts = [name]
            for key, attr in keymap.items():
                parts.append(f"{key}={mpmath.nstr(getattr(m, attr), 17)}")
            return " ".join(parts)
    raise UsageError(f"unknown model {m!r}")
