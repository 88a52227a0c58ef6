"""tyczlab: a numerical laboratory for Kempf distortion functions.

Executable objects for radial/Reinhardt Kähler metrics: weighted Bergman
norms and distortion functions T_m, detection of finite expansions in m by
polynomial fitting, the cscK radial family catalog and its ψ-profile
classification, projective-inducibility and balanced-metric tests, and
Szegő-series log-term probes on the dual disc bundle.
"""

from .errors import (
    DegenerateProfile,
    EmptySpace,
    IllConditioned,
    JetOrderInsufficient,
    JetOverflow,
    NoConvergence,
    NotPositiveDefinite,
    NotRepresentable,
    OrderTooLarge,
    OutOfDomain,
    OutOfInterval,
    ParamOutOfRange,
    QuadratureFailure,
    TailNotConverged,
    TyczError,
    UnknownFamily,
)
from .jets import Jet, Jet2
from .potentials import (
    Divergence,
    FamilyId,
    FamilyParams,
    RadialPotential,
    ReinhardtPotential,
    family_id,
    family_potential,
    family_registry,
    jet_radial,
    pdomain_c,
    pdomain_potential,
)
from .psi import (
    PsiProfile,
    classify_psi,
    integrate_family,
    log_coords,
    ode_residual,
    profile_of_family,
    t_interval,
    y_limit_points,
)
from .geometry import (
    CurvatureReport,
    curvature_report,
    det_g_radial,
    einstein_defect,
    metric_matrix,
)
from .bergman import (
    DistortionSeries,
    MonomialNorm,
    PolyFitResult,
    closed_distortion,
    distortion,
    distortion_series,
    fit_poly_in_m,
    monomial_norm,
    norm_an0v_closed,
    t0_flag,
    volume,
)
from .projectivity import (
    BalancedVerdict,
    InducibilityVerdict,
    IntegerRootResult,
    PkPolynomial,
    balanced_check,
    derivative_identity_residual,
    derivative_sign_scan,
    inequality_system,
    integer_root_test,
    known_inducible,
    pk_recursion,
    small_r_grid,
)
from .szego import (
    DistortionProfile,
    LogTermFit,
    PsiProbeResult,
    eulerian_q,
    fiber_series,
    logterm_fit,
    phi_series,
    polylog,
    psi_h_probe,
)

__version__ = "0.1.0"
