"""Truncated one-variable power series over mpmath reals.

Coefficient arithmetic happens at the ambient mpmath precision; the
expansion layer opens a PrecisionContext scope around whole builds.
Binary operations insist on matching variable names and orders, so
truncation bookkeeping stays with the caller.
"""

from dataclasses import dataclass
from typing import Sequence

import mpmath
from mpmath import mpf

from .errors import InconclusiveRadiusError, ParityError, PoleError, UsageError
from .precision import PrecisionContext, format_full


@dataclass(frozen=True)
class Series:
    variable: str
    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise UsageError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", tuple(mpf(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    # -- construction helpers -------------------------------------------------

    @staticmethod
    def constant(value, variable: str, order: int) -> "Series":
        return Series(variable, (mpf(value),) + (mpf(0),) * order)

    @staticmethod
    def identity(variable: str, order: int) -> "Series":
        if order < 1:
            raise UsageError("identity series needs order >= 1")
        return Series(variable, (mpf(0), mpf(1)) + (mpf(0),) * (order - 1))

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise UsageError(
                f"cannot extend a series of order {self.order} to order {order}"
            )
        return Series(self.variable, self.coeffs[: order + 1])

    def scaled(self, factor) -> "Series":
        f = mpf(factor)
        return Series(self.variable, tuple(c * f for c in self.coeffs))

    def substituted_scale(self, factor, variable=None) -> "Series":
        """Replace the variable v by factor*w: coefficient k picks up factor^k."""
        f = mpf(factor)
        p = mpf(1)
        out = []
        for c in self.coeffs:
            out.append(c * p)
            p *= f
        return Series(variable or self.variable, tuple(out))

    def __neg__(self) -> "Series":
        return Series(self.variable, tuple(-c for c in self.coeffs))

    def _check_compatible(self, other: "Series"):
        if self.variable != other.variable:
            raise UsageError(
                f"variable mismatch: {self.variable!r} vs {other.variable!r}"
            )
        if self.order != other.order:
            raise UsageError(
                f"order mismatch: {self.order} vs {other.order}; truncate first"
            )

    def __add__(self, other: "Series") -> "Series":
        self._check_compatible(other)
        return Series(
            self.variable, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other: "Series") -> "Series":
        self._check_compatible(other)
        return Series(
            self.variable, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "Series") -> "Series":
        self._check_compatible(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = mpf(0)
            for i in range(k + 1):
                s += a[i] * b[k - i]
            out.append(s)
        return Series(self.variable, tuple(out))

    def __truediv__(self, other: "Series") -> "Series":
        self._check_compatible(other)
        if other.coeffs[0] == 0:
            raise PoleError("series division by a series with vanishing constant term")
        n = self.order
        a, b = self.coeffs, other.coeffs
        inv0 = 1 / b[0]
        q = []
        for k in range(n + 1):
            s = a[k]
            for i in range(1, k + 1):
                s -= b[i] * q[k - i]
            q.append(s * inv0)
        return Series(self.variable, tuple(q))


def series_arith(a: Series, b: Series, op: str) -> Series:
    """Dispatch form of the four binary operations."""
    table = {
        "add": Series.__add__,
        "sub": Series.__sub__,
        "mul": Series.__mul__,
        "div": Series.__truediv__,
    }
    if op not in table:
        raise UsageError(f"unknown series operation {op!r}")
    return table[op](a, b)


def series_sqrt(a: Series) -> Series:
    """Positive-branch square root of a series with positive constant term."""
    if a.coeffs[0] <= 0:
        raise PoleError("series sqrt needs a positive constant term")
    c0 = mpmath.sqrt(a.coeffs[0])
    inv2c0 = 1 / (2 * c0)
    c = [c0]
    for k in range(1, a.order + 1):
        s = a.coeffs[k]
        for i in range(1, k):
            s -= c[i] * c[k - i]
        c.append(s * inv2c0)
    return Series(a.variable, tuple(c))


def trig_series(kind: str, order: int, ctx: PrecisionContext, variable: str = "u") -> Series:
    """Maclaurin series of sin or cos truncated at `order`."""
    if order < 0:
        raise UsageError("trig series order must be non-negative")
    with ctx.workdps():
        out = [mpf(0)] * (order + 1)
        start = 1 if kind == "sin" else 0
        if kind not in ("sin", "cos"):
            raise UsageError(f"unknown trig kind {kind!r}")
        sign = 1
        for k in range(start, order + 1, 2):
            out[k] = mpf(sign) / mpmath.factorial(k)
            sign = -sign
        return Series(variable, tuple(out))


def sinc_series(order: int, ctx: PrecisionContext, variable: str = "u") -> Series:
    """sin(u)/u truncated at `order` (even series, constant term 1)."""
    with ctx.workdps():
        out = [mpf(0)] * (order + 1)
        sign = 1
        for k in range(0, order + 1, 2):
            out[k] = mpf(sign) / mpmath.factorial(k + 1)
            sign = -sign
        return Series(variable, tuple(out))


def collapse_even_u_to_E(a: Series, odd_tol, variable: str = "E") -> Series:
    """Read an even series in u as a series in E = u^2.

    A large odd-index coefficient signals an upstream algebra bug and
    raises ParityError rather than being dropped silently.
    """
    even = a.coeffs[0::2]
    odd = a.coeffs[1::2]
    scale = max((abs(c) for c in even), default=mpf(0))
    if scale == 0:
        scale = mpf(1)
    worst_i, worst_c = None, mpf(0)
    for i, c in enumerate(odd):
        if abs(c) > abs(worst_c):
            worst_i, worst_c = 2 * i + 1, c
    if worst_i is not None and abs(worst_c) >= mpf(odd_tol) * scale:
        raise ParityError(
            f"odd coefficient u^{worst_i} = {mpmath.nstr(worst_c, 8)} breaks even parity",
            worst_index=worst_i,
            worst_coeff=worst_c,
        )
    return Series(variable, tuple(even))


def eval_truncated(a: Series, x):
    """Horner evaluation of the truncated series at x."""
    acc = mpf(0)
    for c in reversed(a.coeffs):
        acc = acc * x + c
    return acc


def estimate_radius(a: Series, window: int):
    """Root-test radius estimate from the last `window` coefficients.

    Diagnostic only: with complex-conjugate nearest singularities the
    per-coefficient estimates oscillate, so a geometric mean is taken.
    """
    if a.order < window + 2:
        raise UsageError(f"series order {a.order} too low for window {window}")
    if window < 1:
        raise UsageError("window must be positive")
    logs = []
    for k in range(a.order - window + 1, a.order + 1):
        c = a.coeffs[k]
        if c == 0:
            raise InconclusiveRadiusError(
                f"zero coefficient at index {k} makes the root test inconclusive"
            )
        logs.append(-mpmath.log(abs(c)) / k)
    return mpmath.exp(mpmath.fsum(logs) / len(logs))


def csv_rows(a: Series, ctx: PrecisionContext) -> list:
    """Serialize as 'k,coefficient' rows at full context precision."""
    return [f"{k},{format_full(c, ctx)}" for k, c in enumerate(a.coeffs)]
