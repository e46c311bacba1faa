"""Exact intersection theory on normal surfaces obtained by contracting curves."""

from .contraction import (
    ContractionConfig,
    ContractionError,
    FundamentalCycle,
    InvalidCurveClass,
    NegativeCrossTerm,
    NotNegativeDefinite,
    PullbackResult,
    SingularityReport,
    cartier_index_numerical,
    discrepancies,
    fundamental_cycle,
    intersect_on_X,
    is_du_val,
    is_minimal_configuration,
    is_rational_singularity,
    mumford_pullback,
    singularity_reports,
    validate_contraction,
)
from .delpezzo import (
    BoundaryComponent,
    ExceptionalClassInList,
    PositivityReport,
    TheoremIVerdict,
    Verdict,
    anticanonical_on_X,
    k_squared_on_X,
    log_strict_nef,
    numerical_delpezzo,
    ruled_case_ksq,
    strict_nef_report,
    theorem_i_instance_check,
)
from .lattice import (
    DivisorClass,
    IntersectionLattice,
    LatticeMismatchError,
    Rational,
    as_rational,
    format_rational,
    inner,
    is_negative_definite,
    solve_symmetric,
)
from .models import (
    arithmetic_genus,
    blowup_plane,
    explicit_lattice,
    plane_curve_class,
    riemann_roch_chi,
    ruled_surface,
)

__version__ = "0.1.0"
