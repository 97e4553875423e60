"""First-order dual numbers with a two-component gradient.

A Dual carries a value and the partial derivatives with respect to two
independent seeds, which is exactly what the 2x2 Newton solver needs.
Values may be mpf or mpc; arithmetic follows the first-order chain rule.
"""

from dataclasses import dataclass

import mpmath

_SCALARS = (int, float, mpmath.mpf, mpmath.mpc)


def _coerce(x):
    if isinstance(x, Dual):
        return x
    if isinstance(x, _SCALARS):
        return Dual.constant(x)
    return NotImplemented


@dataclass(frozen=True)
class Dual:
    value: object
    dx: object
    dy: object

    @staticmethod
    def constant(v):
        return Dual(v, 0, 0)

    @staticmethod
    def seed_x(v):
        return Dual(v, 1, 0)

    @staticmethod
    def seed_y(v):
        return Dual(v, 0, 1)

    @property
    def gradient(self):
        return (self.dx, self.dy)

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.value + o.value, self.dx + o.dx, self.dy + o.dy)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(self.value - o.value, self.dx - o.dx, self.dy - o.dy)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dual(
            self.value * o.value,
            self.value * o.dx + self.dx * o.value,
            self.value * o.dy + self.dy * o.value,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # direct quotient keeps the value bit-identical to the scalar run;
        # the reciprocal (mpf seed: int denominators must not pass through
        # a binary double) only feeds the derivative terms
        q = self.value / (mpmath.mpf(o.value) if isinstance(o.value, int) else o.value)
        inv = mpmath.mpf(1) / o.value
        return Dual(q, (self.dx - q * o.dx) * inv, (self.dy - q * o.dy) * inv)

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Dual(-self.value, -self.dx, -self.dy)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Dual.constant(1)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _lift(fn, dfn):
    def wrapped(x):
        if isinstance(x, Dual):
            v = fn(x.value)
            d = dfn(x.value, v)
            return Dual(v, d * x.dx, d * x.dy)
        return fn(x)

    return wrapped


sqrt = _lift(mpmath.sqrt, lambda x, v: 1 / (2 * v))
exp = _lift(mpmath.exp, lambda x, v: v)
log = _lift(mpmath.log, lambda x, v: 1 / x)
sin = _lift(mpmath.sin, lambda x, v: mpmath.cos(x))
cos = _lift(mpmath.cos, lambda x, v: -mpmath.sin(x))


def value_of(x):
    """Underlying scalar of a Dual, or the scalar itself."""
    return x.value if isinstance(x, Dual) else x
