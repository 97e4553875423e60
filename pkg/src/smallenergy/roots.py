"""Bracket-certified 1D root refinement and a dual-powered 2D Newton solver."""

from typing import Callable, NamedTuple

import mpmath
from mpmath import mpf

from .dual import Dual
from .errors import BracketError, ConvergenceError, DomainError, SingularJacobianError
from .precision import PrecisionContext


def _check_finite(fx, x):
    if not mpmath.isfinite(fx):
        raise DomainError(f"non-finite function value at x={mpmath.nstr(mpf(x), 17)}", point=x)


def refine_root_1d(
    f: Callable,
    bracket,
    tol,
    ctx: PrecisionContext,
    max_iter: int = 100000,
):
    """Shrink a sign-change bracket of f below tol; secant steps accelerate,
    bisection guarantees enclosure.  Returns the bracket midpoint."""
    with ctx.workdps():
        a, b = mpf(bracket[0]), mpf(bracket[1])
        if a > b:
            a, b = b, a
        fa, fb = f(a), f(b)
        _check_finite(fa, a)
        _check_finite(fb, b)
        if fa == 0:
            return a
        if fb == 0:
            return b
        if mpmath.sign(fa) == mpmath.sign(fb):
            raise BracketError(
                f"no sign change on bracket ({mpmath.nstr(a, 17)}, {mpmath.nstr(b, 17)}): "
                f"f(a)={mpmath.nstr(fa, 8)}, f(b)={mpmath.nstr(fb, 8)}"
            )
        tol = mpf(tol)
        use_secant = True
        for _ in range(max_iter):
            width = b - a
            if width <= tol:
                return (a + b) / 2
            x = None
            if use_secant and fa != fb:
                cand = (a * fb - b * fa) / (fb - fa)
                margin = width / 16
                if a + margin < cand < b - margin:
                    x = cand
            if x is None:
                x = (a + b) / 2
            use_secant = not use_secant or x != (a + b) / 2
            fx = f(x)
            _check_finite(fx, x)
            if fx == 0:
                return x
            if mpmath.sign(fx) == mpmath.sign(fa):
                a, fa = x, fx
            else:
                b, fb = x, fx
            use_secant = not use_secant
        raise ConvergenceError(
            f"bracket width {mpmath.nstr(b - a, 8)} still above tol after {max_iter} iterations",
            last=(a + b) / 2,
        )


class Root2dResult(NamedTuple):
    x: object
    y: object
    iterations: int
    residual: object

    def __iter__(self):  # unpacks like the (x, y) pair of the contract
        return iter((self.x, self.y))


def refine_root_2d(
    F: Callable,
    seed,
    tol,
    ctx: PrecisionContext,
    max_iter: int = 60,
    step_tol=None,
) -> Root2dResult:
    """Newton iteration on F: R^2 -> R^2 with an exact Jacobian from Dual
    evaluation.  Converges when both residual components drop below tol
    (or, if step_tol is given, when the Newton step does)."""
    with ctx.workdps():
        x, y = mpf(seed[0]), mpf(seed[1])
        tol = mpf(tol)
        last_res = None
        for it in range(1, max_iter + 1):
            f1, f2 = F(Dual.seed_x(x), Dual.seed_y(y))
            r1, r2 = f1.value, f2.value
            if not (mpmath.isfinite(r1) and mpmath.isfinite(r2)):
                raise DomainError("non-finite residual in 2D Newton", point=(x, y))
            res = max(abs(r1), abs(r2))
            last_res = res
            if res < tol:
                return Root2dResult(x, y, it, res)
            j11, j12 = f1.dx, f1.dy
            j21, j22 = f2.dx, f2.dy
            det = j11 * j22 - j12 * j21
            scale = max(abs(j11) * abs(j22), abs(j12) * abs(j21), mpf(10) ** (-2 * mp_digits(ctx)))
            if abs(det) <= scale * mpf(10) ** (-mp_digits(ctx)):
                raise SingularJacobianError(
                    "numerically singular Jacobian in 2D Newton",
                    jacobian=((j11, j12), (j21, j22)),
                )
            dx = (r1 * j22 - r2 * j12) / det
            dy = (r2 * j11 - r1 * j21) / det
            x, y = x - dx, y - dy
            if step_tol is not None and max(abs(dx), abs(dy)) < step_tol:
                f1, f2 = F(Dual.seed_x(x), Dual.seed_y(y))
                return Root2dResult(x, y, it, max(abs(f1.value), abs(f2.value)))
        raise ConvergenceError(
            f"2D Newton residual {mpmath.nstr(last_res, 8)} above tol after {max_iter} iterations",
            last=(x, y),
        )


def mp_digits(ctx: PrecisionContext) -> int:
    return ctx.decimal_digits
