"""Convergence of the small-energy matching estimates for the three
wells with closed-form expansions.

The left and right logarithmic derivatives L_L(0,E) and L_R(0,E) are
expanded in powers of E; a bound state sits where the truncations cross.
Raising the truncation order marches the crossing toward the exact
eigenvalue, and this script prints that march next to the closed-form
reference value for each model.
"""

from smallenergy import (
    LinearWell,
    NonSymmetricFiniteWell,
    PrecisionContext,
    SymmetricFiniteWell,
    convergence_table,
    exact_ground_state,
    format_significant,
)

ctx = PrecisionContext(60)

CASES = [
    ("symmetric finite well, V = 1", SymmetricFiniteWell(1), range(4, 65, 4)),
    ("non-symmetric finite well, V_L = 2, V_R = 1",
     NonSymmetricFiniteWell(2, 1), range(4, 89, 4)),
    ("non-symmetric linear well, a_L = 2, a_R = 1",
     LinearWell(2, 1), range(2, 33, 2)),
]

for title, model, orders in CASES:
    exact = exact_ground_state(model, ctx)
    print(f"\n{title}")
    print(f"  exact E0 = {format_significant(exact)}")
    print("  order n    estimate")
    for record in convergence_table(model, list(orders), ctx):
        print(f"  {record.order_n:7d}    {format_significant(record.estimate_E0)}")
