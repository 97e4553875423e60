"""The Riccati-Pade method on V(x) = x^4 + 0.1 x^3.

This potential has no closed-form logarithmic derivative and no
small-energy series here; instead the Taylor coefficients g_j of
L(x, E) about the origin go into Hankel determinants whose roots encode
the physics:

* at fixed E, root sequences in the determinant dimension D converge to
  the two logarithmic derivatives L_L(0,E) and L_R(0,E);
* the paired even/odd determinants vanish jointly exactly at the
  eigenvalue, giving (E_0, g_0) from a 2D Newton ladder in D.

Runtime is a couple of minutes at 100 digits.
"""

import mpmath
from mpmath import mpf

from smallenergy import PrecisionContext, rpm_curves, rpm_solve

ctx = PrecisionContext(100)

with ctx.workdps():  # constants below must be parsed at full precision
    lam = mpf("0.1")
    v = [mpf(0), mpf(0), mpf(0), lam, mpf(1)] + [mpf(0)] * 80

    print("even/odd determinant ladder (D, E, g0):")
    ladder = rpm_solve(v, d=0, D_range=(2, 15), ctx=ctx)
    for step in ladder:
        print(
            f"  D = {step.D:2d}   E = {mpmath.nstr(step.E, 22)}   "
            f"g0 = {mpmath.nstr(step.g0, 20)}"
        )
    print("  (printed reference: E0 = 1.0590028460380260258,")
    print("   L(0,E0) = -0.02652946094577843397)")

    print("\nfixed-E root branches approaching the crossing:")
    # the branch continuation needs a reasonably fine march in E
    energies = [mpf("0.05") * i for i in range(22)] + [mpf("1.06")]
    wanted = {mpf(0), mpf("0.2"), mpf("0.4"), mpf("0.6"), mpf("0.8"),
              mpf(1), mpf("1.05"), mpf("1.06")}
    for point in rpm_curves(v, sorted(set(energies)), D=14, ctx=ctx):
        if not any(abs(point.E - w) < mpf("1e-20") for w in wanted):
            continue
        print(
            f"  E = {mpmath.nstr(point.E, 6):8s}  L_L = {mpmath.nstr(point.L_left, 12):18s}"
            f"  L_R = {mpmath.nstr(point.L_right, 12)}"
        )
    print("the two branches meet at the eigenvalue, as the ladder predicts")
