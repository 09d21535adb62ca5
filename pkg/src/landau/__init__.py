"""Sharp univalence and schlicht-disc radii for bounded harmonic mapping
classes, with the special functions and sharpness constructions behind them.
"""

__version__ = "0.1.0"

from .errors import BracketError, BudgetError, DomainError, LandauError
from .extremal import (
    ProfileSample,
    Witness,
    covering_profile,
    extremal_map,
    extremal_profile,
    profile_peak,
    sharpness_witness,
)
from .oracle import OracleReport, audit_identities, reference_sum, schwarz_lower_bound
from .radii import (
    RadiiResult,
    TableRow,
    closed_form_radius,
    p0h_schlicht_radius,
    p0h_univalence_radius,
    radii_table,
    schlicht_radius,
    solve_univalence_radius,
)
from .series import (
    ClassSpec,
    CoeffRule,
    coeff_bound,
    coefficient_majorant,
    majorant_at_one,
    partial_fraction_split,
    univalence_margin,
)
from .specfun import (
    DEFAULT_TOLERANCES,
    SumResult,
    ToleranceConfig,
    dilog,
    lerch_phi,
    log1m,
)

__all__ = [
    "__version__",
    "LandauError",
    "DomainError",
    "BudgetError",
    "BracketError",
    "ToleranceConfig",
    "DEFAULT_TOLERANCES",
    "SumResult",
    "lerch_phi",
    "dilog",
    "log1m",
    "ClassSpec",
    "CoeffRule",
    "coeff_bound",
    "univalence_margin",
    "coefficient_majorant",
    "majorant_at_one",
    "partial_fraction_split",
    "RadiiResult",
    "TableRow",
    "p0h_univalence_radius",
    "p0h_schlicht_radius",
    "closed_form_radius",
    "solve_univalence_radius",
    "schlicht_radius",
    "radii_table",
    "Witness",
    "ProfileSample",
    "covering_profile",
    "extremal_profile",
    "extremal_map",
    "profile_peak",
    "sharpness_witness",
    "OracleReport",
    "reference_sum",
    "schwarz_lower_bound",
    "audit_identities",
]
