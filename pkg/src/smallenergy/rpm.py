"""Riccati-Pade solver: Taylor coefficients of L(x,E) about the origin,
Hankel determinants, fixed-energy root sequences, and the paired
even/odd determinant solve for (E_0, g_0).

Writing L(x,E) = sum_j g_j x^j in L' = V - E - L^2 gives the recurrence

    (j+1) g_{j+1} = v_j - E*[j=0] - sum_{k=0..j} g_k g_{j-k}

with every g_j, j > 0, a polynomial in (E, g_0).  Vanishing Hankel
determinants of the tail coefficients single out the decaying solutions:
at fixed E the roots in g_0 of H_D^d converge, as the dimension D grows,
to the two logarithmic derivatives L_L(0,E) and L_R(0,E); the paired
even/odd determinants pin (E_0, g_0) jointly.

Determinants are evaluated through the recurrence at context precision
(never as expanded polynomials in E and g_0) and all kernels are generic
over Real and Dual scalars, so the 2x2 Newton solve gets exact Jacobians.
"""

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import mpmath
from mpmath import mpf

from .dual import Dual, value_of
from .errors import (
    BracketError,
    ConvergenceError,
    SingularJacobianError,
    TrackingError,
    UsageError,
)
from .precision import PrecisionContext
from .roots import refine_root_1d, refine_root_2d

DEFAULT_WINDOW = (-5, 5)
DEFAULT_GRID = 2000
RPM_MIN_DIGITS = 100
PRECISION_RAISE = 20
GUARD_PER_DIMENSION = 2
MAX_PRECISION_RETRIES = 3
CHAIN_STEP_CAP = 0.5


@dataclass(frozen=True)
class RpmSystem:
    """Potential Taylor coefficients with a Hankel dimension/displacement."""

    v: tuple
    D: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "v", tuple(mpf(c) for c in self.v))
        if self.D < 2:
            raise UsageError("Hankel dimension D must be >= 2")
        if self.d < 0:
            raise UsageError("Hankel displacement d must be >= 0")
        need = 2 * self.D + self.d - 1
        if len(self.v) < need - 1:
            raise UsageError(
                f"need {need - 1} potential coefficients for D={self.D}, d={self.d}; "
                f"got {len(self.v)}"
            )


class SideLabel(enum.Enum):
    LEFT_CANDIDATE = "left-candidate"
    RIGHT_CANDIDATE = "right-candidate"


@dataclass(frozen=True)
class GZeroSequence:
    entries: dict  # D -> tracked root
    side_label: SideLabel

    @property
    def limit(self):
        return self.entries[max(self.entries)]


def riccati_taylor(v: Sequence, E, g0, count: int):
    """[g_0, ..., g_{count-1}] of L(x,E); scalars may be Real or Dual."""
    if count < 1:
        raise UsageError("need at least one Taylor coefficient")
    if len(v) < count - 1:
        raise UsageError(
            f"potential supplies {len(v)} coefficients; {count - 1} needed"
        )
    g = [g0]
    for j in range(count - 1):
        s = 0
        for k in range(j + 1):
            s = s + g[k] * g[j - k]
        rhs = v[j] - s
        if j == 0:
            rhs = rhs - E
        g.append(rhs / (j + 1))
    return g


def hankel_det(g: Sequence, D: int, d: int):
    """|g_{i+j+d-1}| for i, j = 1..D, by pivoted elimination."""
    if D < 1:
        raise UsageError("Hankel dimension must be >= 1")
    if d < 0:
        raise UsageError("Hankel displacement must be >= 0")
    top = 2 * D + d - 1
    if len(g) <= top:
        raise UsageError(f"g supplies indices up to {len(g) - 1}; need {top}")
    rows = [[g[i + j + d - 1] for j in range(1, D + 1)] for i in range(1, D + 1)]
    return _eliminate(rows)


def even_odd_hankel(g: Sequence, D: int, d: int):
    """(|g_{2i+2j+2d-2}|, |g_{2i+2j+2d-1}|) for i, j = 1..D."""
    if D < 1:
        raise UsageError("Hankel dimension must be >= 1")
    if d < 0:
        raise UsageError("Hankel displacement must be >= 0")
    top = 4 * D + 2 * d - 1
    if len(g) <= top:
        raise UsageError(f"g supplies indices up to {len(g) - 1}; need {top}")
    even = [
        [g[2 * i + 2 * j + 2 * d - 2] for j in range(1, D + 1)]
        for i in range(1, D + 1)
    ]
    odd = [
        [g[2 * i + 2 * j + 2 * d - 1] for j in range(1, D + 1)]
        for i in range(1, D + 1)
    ]
    return _eliminate(even), _eliminate(odd)


def _eliminate(rows):
    """Determinant by Gaussian elimination with magnitude pivoting;
    generic over Real and Dual entries."""
    n = len(rows)
    det = 1
    for col in range(n):
        pivot_row = max(range(col, n), key=lambda r: abs(value_of(rows[r][col])))
        if abs(value_of(rows[pivot_row][col])) == 0:
            return rows[pivot_row][col] * det  # exactly singular column
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det = det * pivot
        for r in range(col + 1, n):
            factor = rows[r][col] / pivot
            for c in range(col + 1, n):
                rows[r][c] = rows[r][c] - factor * rows[col][c]
    return det


def _hankel_of_g0(v, E, D, d, ctx):
    count = 2 * D + d

    def f(g0):
        return hankel_det(riccati_taylor(v, E, g0, count), D, d)

    return f


def g0_roots(
    v: Sequence,
    E,
    D: int,
    d: int,
    window=DEFAULT_WINDOW,
    grid: int = DEFAULT_GRID,
    ctx: Optional[PrecisionContext] = None,
):
    """All sign-change-bracketed real roots of g0 -> H_D^d inside window."""
    if grid < 100:
        raise UsageError("g0 grid must have at least 100 nodes")
    if ctx is None:
        ctx = PrecisionContext(RPM_MIN_DIGITS)
    with ctx.workdps():
        lo, hi = mpf(window[0]), mpf(window[1])
        if not (mpmath.isfinite(lo) and mpmath.isfinite(hi) and lo < hi):
            raise UsageError("g0 window must be finite and ordered")
        f = _hankel_of_g0(v, mpf(E), D, d, ctx)
        tol = mpf(10) ** (-(ctx.decimal_digits - 10))
        h = (hi - lo) / grid
        roots = []
        prev_x, prev_f = lo, f(lo)
        for i in range(1, grid + 1):
            x = lo + h * i
            fx = f(x)
            if fx == 0:
                roots.append(x)
            elif prev_f != 0 and mpmath.sign(fx) != mpmath.sign(prev_f):
                roots.append(refine_root_1d(f, (prev_x, x), tol, ctx))
            prev_x, prev_f = x, fx
        return roots


def track_sequences(roots_by_D: dict, E=None):
    """Pair roots across D into the two converging chains.

    Continuation is nearest-neighbor in g0 from one dimension to the
    next; the two longest chains are kept.  The chain with the larger
    limit is labeled LEFT_CANDIDATE (the left logarithmic derivative
    lies above the right one below the crossing for every catalog case;
    the label is a heuristic tag, not an assertion).  A single chain --
    the two candidates coinciding within resolution -- is returned twice.
    """
    dims = sorted(roots_by_D)
    if len(dims) < 4:
        raise TrackingError("need roots for at least 4 dimensions", chains=[])
    chains = []  # each: {"entries": {D: root}, "last": value}
    for D in dims:
        used = set()
        for chain in sorted(chains, key=lambda c: -len(c["entries"])):
            best = None
            for idx, r in enumerate(roots_by_D[D]):
                if idx in used:
                    continue
                gap = abs(r - chain["last"])
                if gap < CHAIN_STEP_CAP and (best is None or gap < best[0]):
                    best = (gap, idx, r)
            if best is not None:
                used.add(best[1])
                chain["entries"][D] = best[2]
                chain["last"] = best[2]
        for idx, r in enumerate(roots_by_D[D]):
            if idx not in used:
                chains.append({"entries": {D: r}, "last": r})
    long_chains = [c for c in chains if len(c["entries"]) >= 4]
    long_chains.sort(key=lambda c: -len(c["entries"]))
    if not long_chains:
        raise TrackingError(
            "no chain of length >= 4",
            chains=[c["entries"] for c in chains],
        )
    if len(long_chains) == 1:
        only = long_chains[0]["entries"]
        return (
            GZeroSequence(dict(only), SideLabel.LEFT_CANDIDATE),
            GZeroSequence(dict(only), SideLabel.RIGHT_CANDIDATE),
        )
    a, b = long_chains[0], long_chains[1]
    if a["last"] >= b["last"]:
        hi, lo = a, b
    else:
        hi, lo = b, a
    return (
        GZeroSequence(dict(hi["entries"]), SideLabel.LEFT_CANDIDATE),
        GZeroSequence(dict(lo["entries"]), SideLabel.RIGHT_CANDIDATE),
    )


@dataclass(frozen=True)
class CurvePoint:
    E: object
    L_left: object
    L_right: object


CURVE_SCAN_DIM = 8


def rpm_curves(
    v: Sequence,
    energies: Sequence,
    D: int = 18,
    d: int = 0,
    window=DEFAULT_WINDOW,
    grid: int = DEFAULT_GRID,
    ctx: Optional[PrecisionContext] = None,
) -> list:
    """(E, L_left, L_right) samples of the two fixed-E root branches.

    The first energy is resolved by a full root scan across the small
    dimensions and chain tracking; each sample is then sharpened by a
    Newton ladder over increasing dimension up to D.  The ladder is the
    defence against spurious Hankel roots: a plain sign scan at large D
    misses the physical root whenever a nearby root pair cancels its
    crossing, while Newton warm-started from the previous dimension's
    root stays on the converging branch.  Later energies continue each
    branch from a linear extrapolation of the two neighbouring samples.
    """
    if ctx is None:
        ctx = PrecisionContext(RPM_MIN_DIGITS)
    if not energies:
        raise UsageError("need at least one energy")
    if D <= CURVE_SCAN_DIM:
        raise UsageError(f"curve dimension must exceed {CURVE_SCAN_DIM}")
    with ctx.workdps():
        # convert inside the context so string/rational inputs are parsed
        # at full precision, not the ambient default
        energies = [mpf(E) for E in energies]
        v = tuple(mpf(c) for c in v)
        scan_dims = range(3, CURVE_SCAN_DIM + 1)
        roots_by_D = {
            dim: g0_roots(v, energies[0], dim, d, window, grid, ctx)
            for dim in scan_dims
        }
        hi, lo = track_sequences(roots_by_D, energies[0])
        left = _ladder_polish(v, energies[0], D, d, hi.limit, ctx)
        right = _ladder_polish(v, energies[0], D, d, lo.limit, ctx)
        points = [CurvePoint(energies[0], left, right)]
        for E in energies[1:]:
            seed_l, seed_r = _extrapolate_seeds(points, E)
            left = _ladder_polish(v, E, D, d, seed_l, ctx)
            right = _ladder_polish(v, E, D, d, seed_r, ctx)
            points.append(CurvePoint(E, left, right))
        return points


def _extrapolate_seeds(points, E):
    last = points[-1]
    if len(points) == 1:
        return last.L_left, last.L_right
    prev = points[-2]
    t = (E - last.E) / (last.E - prev.E)
    return (
        last.L_left + t * (last.L_left - prev.L_left),
        last.L_right + t * (last.L_right - prev.L_right),
    )


def _ladder_polish(v, E, D, d, seed, ctx):
    """Newton on H_dim^d in g0 for dim = scan top .. D, warm-started.

    At isolated dimensions the physical branch can merge with a nearby
    spurious root and leave the real axis; such dimensions are skipped
    and the branch continues from the last real representative.  A jump
    far from the warm start is rejected the same way (a captured
    spurious root, not the branch).
    """
    g0 = seed
    failures = 0
    captured = False
    dims = range(CURVE_SCAN_DIM, D + 1)
    for dim in dims:
        try:
            cand = _newton_g0(v, E, dim, d, g0, ctx)
        except ConvergenceError:
            failures += 1
            continue
        # the seed may lag the branch by the full energy step, so the
        # first capture gets a wider window than the settled ladder
        cap = mpf("1e-1") if not captured else mpf("1e-2")
        if abs(cand - g0) > cap:
            failures += 1
            continue
        g0 = cand
        captured = True
    if 2 * failures > len(dims):
        raise ConvergenceError(
            f"branch near g0 = {mpmath.nstr(seed, 12)} lost at most "
            f"dimensions up to {D} for E = {mpmath.nstr(E, 12)}",
            last=g0,
        )
    return g0


def _newton_g0(v, E, D, d, seed, ctx):
    count = 2 * D + d
    tol = mpf(10) ** (-(ctx.decimal_digits - 10))

    def f(g0):
        return hankel_det(riccati_taylor(v, E, g0, count), D, d)

    g0 = seed
    for _ in range(60):
        out = f(Dual.seed_x(g0))
        if out.dx == 0:
            break
        step = out.value / out.dx
        g0 = g0 - step
        if abs(step) < tol:
            return g0
    # Newton wandered: fall back to the nearest bracketed crossing
    for radius_exp in range(8, 0, -1):
        r = mpf(10) ** (-radius_exp)
        try:
            return refine_root_1d(f, (seed - r, seed + r), tol, ctx)
        except BracketError:
            continue
    raise ConvergenceError(
        f"branch continuation lost the root near g0 = {mpmath.nstr(seed, 12)} "
        f"at E = {mpmath.nstr(E, 12)}",
        last=g0,
    )


@dataclass(frozen=True)
class LadderStep:
    D: int
    E: object
    g0: object
    converged: bool
    residual: object


def _even_odd_system(v, D, d):
    count = 4 * D + 2 * d

    def F(E, g0):
        g = riccati_taylor(v, E, g0, count)
        return even_odd_hankel(g, D, d)

    return F


def grid_seed(
    v: Sequence,
    d: int = 0,
    box=((0.5, 1.5), (-0.5, 0.5)),
    nodes: int = 21,
    D: int = 3,
    ctx: Optional[PrecisionContext] = None,
):
    """Coarse (E, g0) scan minimizing the normalized even/odd pair at a
    small dimension; the winner seeds the Newton ladder."""
    if ctx is None:
        ctx = PrecisionContext(RPM_MIN_DIGITS)
    with ctx.workdps():
        F = _even_odd_system(tuple(mpf(c) for c in v), D, d)
        (e_lo, e_hi), (g_lo, g_hi) = box
        e_lo, e_hi, g_lo, g_hi = mpf(e_lo), mpf(e_hi), mpf(g_lo), mpf(g_hi)
        samples = []
        for i in range(nodes):
            E = e_lo + (e_hi - e_lo) * i / (nodes - 1)
            for j in range(nodes):
                g0 = g_lo + (g_hi - g_lo) * j / (nodes - 1)
                he, ho = F(E, g0)
                samples.append((abs(he), abs(ho), E, g0))
        scale_e = max(s[0] for s in samples)
        scale_o = max(s[1] for s in samples)
        best = min(samples, key=lambda s: s[0] / scale_e + s[1] / scale_o)
        return best[2], best[3]


def rpm_solve(
    v: Sequence,
    d: int = 0,
    D_range=(2, 15),
    seed=None,
    ctx: Optional[PrecisionContext] = None,
):
    """The (D, E, g0) ladder from the paired even/odd Hankel conditions.

    Each dimension is solved by the dual-powered 2D Newton, warm-started
    from the previous dimension; a Newton failure at some D is recorded
    as a non-converged step and the ladder continues from the last good
    iterate.  Precision is raised and the step retried when the Jacobian
    turns numerically singular.
    """
    if ctx is None:
        ctx = PrecisionContext(RPM_MIN_DIGITS)
    if ctx.decimal_digits < RPM_MIN_DIGITS and D_range[1] > 10:
        raise UsageError(
            f"D up to {D_range[1]} needs at least {RPM_MIN_DIGITS} digits "
            "(determinant cancellation grows with the dimension)"
        )
    D_lo, D_hi = D_range
    if D_lo < 2 or D_hi < D_lo:
        raise UsageError("D range must satisfy 2 <= D_lo <= D_hi")
    with ctx.workdps():
        # convert inside the context so string/rational coefficients are
        # parsed at full precision, not the ambient default
        v = tuple(mpf(c) for c in v)
        if seed is None:
            seed = grid_seed(v, d, ctx=ctx)
        current = (mpf(seed[0]), mpf(seed[1]))
        ladder = []
        for D in range(D_lo, D_hi + 1):
            step = _solve_dimension(v, D, d, current, ctx)
            ladder.append(step)
            if step.converged:
                current = (step.E, step.g0)
        return ladder


def _solve_dimension(v, D, d, seed, ctx):
    # The even/odd determinants shrink superexponentially with D, so the
    # base precision stops resolving their true joint root around D ~ 12
    # and Newton starts converging to roundoff roots nearby.  Guard
    # digits proportional to the dimension keep the solve on the real
    # root; the caller-visible contract is still the context precision.
    work = PrecisionContext(ctx.decimal_digits + GUARD_PER_DIMENSION * D)
    for attempt in range(MAX_PRECISION_RETRIES):
        F = _even_odd_system(v, D, d)

        def F2(X, Y):
            return F(X, Y)

        with work.workdps():
            step_tol = mpf(10) ** (-(work.decimal_digits - 20))
            residual_tol = mpf(10) ** (-2 * work.decimal_digits)
        try:
            result = refine_root_2d(
                F2, seed, residual_tol, work, max_iter=80, step_tol=step_tol
            )
            return LadderStep(D, result.x, result.y, True, result.residual)
        except SingularJacobianError:
            work = PrecisionContext(work.decimal_digits + PRECISION_RAISE)
        except ConvergenceError as exc:
            last = exc.last if isinstance(exc.last, tuple) else seed
            return LadderStep(D, last[0], last[1], False, None)
    return LadderStep(D, seed[0], seed[1], False, None)
