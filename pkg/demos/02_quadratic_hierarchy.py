"""The generic Riccati-hierarchy engine on the non-symmetric harmonic well.

No trigonometric or Airy closed form helps here: the series coefficients
L_j(0) are obtained by integrating the energy-order hierarchy

    L_0' + L_0^2 = V,   L_1' + 2 L_0 L_1 = -1,
    L_j' + 2 L_0 L_j = -sum_{k=1}^{j-1} L_k L_{j-k}

inward from a cutoff deep in the classically forbidden region.  The same
coefficients have an independent check: the parabolic-cylinder closed
form of L(0,E) at argument zero.
"""

import mpmath

from smallenergy import (
    PrecisionContext,
    QuadraticWell,
    Side,
    closed_logderiv,
    convergence_table,
    exact_ground_state,
    format_significant,
    hierarchy_series,
)

ctx = PrecisionContext(60)
model = QuadraticWell(2, 1)

print("series coefficients from the hierarchy engine (a_L = 2, a_R = 1):")
left = hierarchy_series(model, Side.LEFT, 6, ctx=ctx)
right = hierarchy_series(model, Side.RIGHT, 6, ctx=ctx)
for k in range(5):
    print(
        f"  E^{k}:  L_L = {format_significant(left.series.coeffs[k])}"
        f"   L_R = {format_significant(right.series.coeffs[k])}"
    )

print("\ncross-check of the constant terms against the closed form:")
for side, series in ((Side.LEFT, left), (Side.RIGHT, right)):
    exact = closed_logderiv(model, side, 0, ctx)
    dev = abs(series.series.coeffs[0] - exact)
    print(f"  {side.value:5s}: |difference| = {mpmath.nstr(dev, 3)}")

print(f"\nexact E0 = {format_significant(exact_ground_state(model, ctx))}")
print("convergence of the matching estimate:")
for record in convergence_table(model, list(range(2, 19, 2)), ctx):
    print(f"  n = {record.order_n:2d}   {format_significant(record.estimate_E0)}")
