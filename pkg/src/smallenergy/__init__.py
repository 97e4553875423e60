"""Small-energy expansions and the Riccati-Pade method for 1D wells.

Two independent routes to ground-state eigenvalues of one-dimensional
Schrodinger problems, both at arbitrary precision (mpmath):

* small-energy power series of the left/right logarithmic derivatives
  at the origin, matched to locate the ground state, with closed-form
  builders for finite wells and linear wells and a generic Riccati
  hierarchy integrator for everything else;
* the Riccati-Pade method: vanishing Hankel determinants of the Taylor
  coefficients of the logarithmic derivative, whose root sequences in
  the determinant dimension converge to L(0, E) at fixed energy and,
  with paired even/odd determinants, to the eigenvalue itself.
"""

from .dual import Dual, value_of
from .errors import (
    BracketError,
    ConvergenceError,
    CutoffError,
    DomainError,
    InconclusiveRadiusError,
    ParityError,
    ParseError,
    PoleError,
    RangeError,
    SearchFailureError,
    SingularJacobianError,
    SmallEnergyError,
    TaylorBlindError,
    TrackingError,
    UsageError,
)
from .expansion import LogDerivSeries, Method, f_series, hierarchy_series, linear_series, well_series
from .hierarchy import HierarchyConfig, RayPolynomial, auto_cutoff, integrate_hierarchy
from .matching import (
    ConvergenceRecord,
    SingularityKind,
    SingularityReport,
    build_model_series,
    convergence_table,
    default_bracket,
    exact_ground_state,
    find_singularity,
    label_truncation,
    leftmost_crossing,
    series_ground_state,
)
from .models import (
    CubicQuartic,
    LinearWell,
    NonSymmetricFiniteWell,
    QuadraticWell,
    Side,
    SymmetricFiniteWell,
    closed_logderiv,
    model_literal,
    parse_model,
    potential_eval,
    potential_taylor,
)
from .precision import PrecisionContext, format_full, format_significant, parse_real
from .roots import Root2dResult, refine_root_1d, refine_root_2d
from .rpm import (
    CurvePoint,
    GZeroSequence,
    LadderStep,
    even_odd_hankel,
    g0_roots,
    grid_seed,
    hankel_det,
    riccati_taylor,
    rpm_curves,
    rpm_solve,
    track_sequences,
)
from .series import (
    Series,
    collapse_even_u_to_E,
    estimate_radius,
    eval_truncated,
    series_arith,
    series_sqrt,
    sinc_series,
    trig_series,
)
from .special import AiryMaclaurin, airy_eval, airy_maclaurin, gamma, pcf_at_zero

__version__ = "0.1.0"
