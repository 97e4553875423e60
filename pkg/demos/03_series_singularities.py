"""Where the small-energy series stop working.

Each logarithmic-derivative series has a finite radius of convergence in
the complex E-plane.  For the finite wells the closed-form denominator
has no complex zeros off the real axis; Newton's iteration on it instead
settles into an attracting conjugate-pair two-cycle whose location still
marks the series-limiting structure.  For linear wells the limit is the
first Airy zero, a plain real pole.  The ground state lies inside every
such radius, which is what makes the series route viable at all.
"""

import mpmath

from smallenergy import (
    LinearWell,
    NonSymmetricFiniteWell,
    PrecisionContext,
    Side,
    SymmetricFiniteWell,
    build_model_series,
    estimate_radius,
    exact_ground_state,
    find_singularity,
)

ctx = PrecisionContext(60)

print("series-limiting singularities:")
for title, model, side in (
    ("symmetric well V = 1, right", SymmetricFiniteWell(1), Side.RIGHT),
    ("non-symmetric well V_L = 2, left", NonSymmetricFiniteWell(2, 1), Side.LEFT),
    ("linear well a_R = 1, right", LinearWell(2, 1), Side.RIGHT),
    ("linear well a_L = 2, left", LinearWell(2, 1), Side.LEFT),
):
    report = find_singularity(model, side, ctx)
    loc = report.location
    print(f"  {title:34s} {mpmath.nstr(loc, 10)}  ({report.kind.value})")
    e0 = exact_ground_state(model, ctx)
    print(f"    |E0| = {mpmath.nstr(abs(e0), 10)} < |E_r| = {mpmath.nstr(abs(loc), 10)}")

print("\nroot-test radius estimates from the coefficients themselves:")
left, right = build_model_series(SymmetricFiniteWell(1), 60, ctx)
print(
    "  symmetric well:  estimate "
    f"{mpmath.nstr(estimate_radius(right.series, 15), 6)} "
    "(the branch point at E = V limits the series before the complex pair)"
)
lleft, lright = build_model_series(LinearWell(2, 1), 45, ctx)
print(
    "  linear well:     estimate "
    f"{mpmath.nstr(estimate_radius(lright.series, 10), 6)} "
    "(approaches the first Airy pole 2.338107...)"
)
