"""Energy-order hierarchy of the Riccati equation, integrated inward.

Writing L(x,E) = sum_j L_j(x) E^j in L' = V - E - L^2 couples the orders:

    L_0' + L_0^2 = V
    L_1' + 2 L_0 L_1 = -1
    L_j' + 2 L_0 L_j = -sum_{k=1}^{j-1} L_k L_{j-k}

The system starts at a cutoff X deep in the classically forbidden region,
where the decaying-solution asymptotics pin the initial values, and runs
to x = 0.  Integration uses a variable-step Taylor-series method: at each
point the local Taylor coefficients of every L_j follow from the same
recurrence that defines the ODE, so the order is arbitrary and the step
error is controlled directly by the highest retained term.  Inward is the
numerically safe direction: contamination by the growing solution decays.

The potential must supply local Taylor data, so the engine takes it as a
polynomial on the integration ray (every catalog case is one); the left
side is handled by reflecting the potential and negating the result.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath
from mpmath import mpf

from .errors import CutoffError, UsageError
from .precision import PrecisionContext


@dataclass(frozen=True)
class RayPolynomial:
    """V(x) = sum_k coeffs[k] x^k on the ray x >= 0."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(mpf(c) for c in self.coeffs))
        if not self.coeffs or all(c == 0 for c in self.coeffs):
            raise UsageError("ray potential must be a nonzero polynomial")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, x):
        acc = mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def deriv_eval(self, x):
        acc = mpf(0)
        for k in range(self.degree, 0, -1):
            acc = acc * x + k * self.coeffs[k]
        return acc

    def shifted(self, x0) -> list:
        """Coefficients of V(x0 + delta) in delta (repeated Horner shift)."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                c[k] += c[k + 1] * x0
        return c


@dataclass(frozen=True)
class HierarchyConfig:
    cutoff_x: Optional[object] = None  # None: auto from the decay integral
    tolerance: Optional[object] = None  # local step error; None: auto from ctx
    max_order: int = 20
    taylor_order: int = 30
    safety: float = 0.7


def auto_cutoff(v: RayPolynomial, ctx: PrecisionContext):
    """Smallest X with exp(-2 * int_0^X sqrt(V)) below the context floor,
    by doubling search plus trapezoid quadrature on sqrt(V)."""
    target = (ctx.decimal_digits + 5) * mpmath.log(10) / 2
    x = mpf(1)
    for _ in range(80):
        if _decay_integral(v, x) > target:
            break
        x *= 2
    else:
        raise CutoffError("potential decay integral never reached the target")
    lo, hi = x / 2, x
    for _ in range(30):
        mid = (lo + hi) / 2
        if _decay_integral(v, mid) > target:
            hi = mid
        else:
            lo = mid
    return hi


def _decay_integral(v: RayPolynomial, x, nodes: int = 256):
    h = x / nodes
    total = mpf(0)
    prev = mpf(0)
    for i in range(1, nodes + 1):
        xi = h * i
        vi = v.eval(xi)
        cur = mpmath.sqrt(vi) if vi > 0 else mpf(0)
        total += (prev + cur) / 2
        prev = cur
    return total * h


def integrate_hierarchy(
    v: RayPolynomial, order: int, cfg: HierarchyConfig, ctx: PrecisionContext
) -> Sequence:
    """Return [L_0(0), ..., L_order(0)] for the right-decaying solution."""
    if order < 1:
        raise UsageError("hierarchy order must be >= 1")
    if order > cfg.max_order:
        raise UsageError(f"order {order} exceeds the configured cap {cfg.max_order}")
    with ctx.workdps(10):
        X = mpf(cfg.cutoff_x) if cfg.cutoff_x is not None else auto_cutoff(v, ctx)
        vX = v.eval(X)
        if vX <= 0:
            raise CutoffError(
                f"V({mpmath.nstr(X, 8)}) <= 0: cutoff not in the forbidden region"
            )
        tol = (
            mpf(cfg.tolerance)
            if cfg.tolerance is not None
            else mpf(10) ** (-(ctx.decimal_digits + 3))
        )
        if tol > mpf(10) ** (-(ctx.decimal_digits - 10)):
            raise UsageError("hierarchy tolerance too loose for the context precision")
        # local error per step; keep the accumulated error subdominant
        step_tol = tol / 100
        y = _initial_values(v, X, vX, order)
        y = _taylor_march(v, y, X, step_tol, cfg, order)
        return y


def _initial_values(v: RayPolynomial, X, vX, order):
    l0 = -mpmath.sqrt(vX) - v.deriv_eval(X) / (4 * vX)
    y = [l0]
    if order >= 1:
        y.append(-1 / (2 * l0))
    for j in range(2, order + 1):
        s = mpf(0)
        for k in range(1, j):
            s += y[k] * y[j - k]
        y.append(-s / (2 * l0))
    return y


def _taylor_march(v: RayPolynomial, y, X, step_tol, cfg: HierarchyConfig, order: int):
    P = cfg.taylor_order
    safety = mpf(cfg.safety)
    x = X
    zero = mpf(0)
    min_step = X * mpf(10) ** (-30)
    while x > 0:
        vloc = v.shifted(x)
        vdeg = len(vloc) - 1
        a = [[y[j]] + [zero] * P for j in range(order + 1)]
        for m in range(P):
            inv = mpf(1) / (m + 1)
            for j in range(order + 1):
                # C_j[m] = sum_{k} (a_k * a_{j-k})[m], exploiting k <-> j-k symmetry
                s = zero
                half = j // 2
                for k in range(half + 1):
                    b1, b2 = a[k], a[j - k]
                    part = zero
                    for p in range(m + 1):
                        part += b1[p] * b2[m - p]
                    if 2 * k != j:
                        part *= 2
                    s += part
                rhs = -s
                if j == 0 and m <= vdeg:
                    rhs += vloc[m]
                if j == 1 and m == 0:
                    rhs -= 1
                a[j][m + 1] = rhs * inv
        h = _choose_step(a, P, step_tol, safety)
        if h < min_step:
            raise UsageError(
                f"hierarchy step size underflow near x = {mpmath.nstr(x, 8)} "
                "(stiffness or a singular logarithmic derivative)"
            )
        if h > x:
            h = x
        d = -h
        for j in range(order + 1):
            acc = zero
            for c in reversed(a[j]):
                acc = acc * d + c
            y[j] = acc
        x -= h
    return y


def _choose_step(a, P, step_tol, safety):
    """Largest h keeping the last two Taylor terms below step_tol."""
    h = None
    for coeffs in a:
        for m in (P - 1, P):
            cm = abs(coeffs[m])
            if cm == 0:
                continue
            cand = (step_tol / cm) ** (mpf(1) / m)
            if h is None or cand < h:
                h = cand
    if h is None:
        h = mpf(1)
    return h * safety
