"""Extended-precision special values: Airy Ai via its Maclaurin table,
the Gamma function, and the parabolic cylinder function at argument zero."""

import threading
from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .errors import PoleError, RangeError, UsageError
from .precision import PrecisionContext

AIRY_PAD_DIGITS = 15  # absorbs cancellation when summing at negative z
AIRY_MAX_ABS_Z = 6


@dataclass(frozen=True)
class AiryMaclaurin:
    order: int
    ai_coeffs: tuple
    ai_prime_coeffs: tuple


_airy_cache = {}
_airy_lock = threading.Lock()


def gamma(z, ctx: PrecisionContext):
    """Gamma function at context precision (mpmath's arbitrary-precision
    implementation behind the package contract)."""
    with ctx.workdps():
        zm = mpf(z)
        if zm <= 0 and zm == mpmath.floor(zm):
            raise PoleError(f"Gamma pole at non-positive integer {mpmath.nstr(zm, 8)}")
        return mpmath.gamma(zm)


def airy_maclaurin(order: int, ctx: PrecisionContext) -> AiryMaclaurin:
    """Maclaurin coefficients of Ai and Ai' from w'' = z*w.

    c0 = Ai(0) = 3^(-2/3)/Gamma(2/3), c1 = Ai'(0) = -3^(-1/3)/Gamma(1/3),
    c2 = 0, then c_{n+2} = c_{n-1}/((n+2)(n+1)).
    """
    if order < 2:
        raise UsageError("Airy Maclaurin table needs order >= 2")
    key = (order, ctx.decimal_digits)
    with _airy_lock:
        hit = _airy_cache.get(key)
    if hit is not None:
        return hit
    with ctx.workdps(AIRY_PAD_DIGITS):
        three = mpf(3)
        c = [mpf(0)] * (order + 2)
        c[0] = three ** mpf("-2/3") / mpmath.gamma(mpf(2) / 3)
        c[1] = -(three ** mpf("-1/3")) / mpmath.gamma(mpf(1) / 3)
        c[2] = mpf(0)
        for n in range(1, order):
            c[n + 2] = c[n - 1] / ((n + 2) * (n + 1))
        prime = tuple((k + 1) * c[k + 1] for k in range(order + 1))
        table = AiryMaclaurin(order, tuple(c[: order + 1]), prime)
    with _airy_lock:
        _airy_cache[key] = table
    return table


def suggested_airy_order(ctx: PrecisionContext) -> int:
    """Table order that makes the z = AIRY_MAX_ABS_Z tail negligible."""
    return 2 * ctx.decimal_digits + 140


def airy_eval(m: AiryMaclaurin, z, ctx: PrecisionContext):
    """(Ai(z), Ai'(z)) by Maclaurin summation; validated for |z| <= 6."""
    with ctx.workdps(AIRY_PAD_DIGITS):
        zm = mpf(z)
        if abs(zm) > AIRY_MAX_ABS_Z:
            raise RangeError(
                f"|z| = {mpmath.nstr(abs(zm), 8)} outside the validated Maclaurin range "
                f"(|z| <= {AIRY_MAX_ABS_Z})"
            )
        floor = mpf(10) ** (-(ctx.decimal_digits + 5))
        ai = _horner(m.ai_coeffs, zm)
        aip = _horner(m.ai_prime_coeffs, zm)
        # every third coefficient is exactly zero, so bound over the last three
        tail = max(
            abs(m.ai_coeffs[m.order - k]) * abs(zm) ** (m.order - k) for k in range(3)
        )
        if tail > floor:
            raise RangeError(
                f"Airy table of order {m.order} too short for z = {mpmath.nstr(zm, 8)} "
                f"at {ctx.decimal_digits} digits; rebuild with a larger order"
            )
        return ai, aip


def _horner(coeffs, x):
    acc = mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def pcf_at_zero(nu, ctx: PrecisionContext):
    """D_nu(0) = 2^(nu/2) * sqrt(pi) / Gamma((1-nu)/2)."""
    with ctx.workdps():
        num = mpf(nu)
        half = (1 - num) / 2
        if half <= 0 and half == mpmath.floor(half):
            raise PoleError(
                f"cannot evaluate D_nu(0) at nu = {mpmath.nstr(num, 8)}: "
                "Gamma((1-nu)/2) sits on a pole"
            )
        return mpf(2) ** (num / 2) * mpmath.sqrt(mpmath.pi) / mpmath.gamma(half)
