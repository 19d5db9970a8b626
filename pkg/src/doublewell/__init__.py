"""Tunneling energy splitting of a symmetric quartic double well.

The ground doublet of V(x) = (m w^2 / (8 a^2)) (x - a)^2 (x + a)^2 is split
by barrier tunneling.  This package computes that splitting three ways —
direct quadrature of the semiclassical action/period integrals, the
small-eta asymptotic formula with its anharmonicity correction factor
delta(eta), and the instanton formula — and cross-checks them with an
independent perturbation-theory engine and a finite-difference eigensolver.
Everything dimensionless depends only on eta = sqrt(hbar / (m w a^2)).
"""

from .model import PotentialShape, WellParameters, eta, from_eta, potential, shape
from .perturbation import (
    AnharmonicExpansion,
    PerturbedLevel,
    epsilon_closed_form,
    epsilon_series_coefficients,
    perturbed_level,
    rs_engine,
    transition_amplitudes,
    validity_boundary,
)
from .quadrature import QuadratureError, integrate
from .semiclassics import (
    SQRT_E_OVER_PI,
    SplittingReport,
    TurningPoints,
    action_S,
    delta_factor,
    ln_splitting_asymptotic,
    ln_splitting_instanton,
    ln_splitting_wkb_exact,
    period_T,
    ratio_wkb_instanton,
    splitting_asymptotic,
    splitting_instanton,
    splitting_report,
    splitting_wkb_exact,
    turning_points,
)
from .spectral import (
    GridSpec,
    ResolutionError,
    SpectrumResult,
    doublet_parities,
    exact_splitting,
    solve_spectrum,
)

__version__ = "0.1.0"

__all__ = [
    "WellParameters",
    "PotentialShape",
    "potential",
    "eta",
    "from_eta",
    "shape",
    "AnharmonicExpansion",
    "PerturbedLevel",
    "epsilon_closed_form",
    "perturbed_level",
    "rs_engine",
    "transition_amplitudes",
    "epsilon_series_coefficients",
    "validity_boundary",
    "QuadratureError",
    "integrate",
    "SQRT_E_OVER_PI",
    "TurningPoints",
    "SplittingReport",
    "turning_points",
    "action_S",
    "period_T",
    "delta_factor",
    "ln_splitting_wkb_exact",
    "ln_splitting_asymptotic",
    "ln_splitting_instanton",
    "splitting_wkb_exact",
    "splitting_asymptotic",
    "splitting_instanton",
    "ratio_wkb_instanton",
    "splitting_report",
    "GridSpec",
    "SpectrumResult",
    "ResolutionError",
    "solve_spectrum",
    "exact_splitting",
    "doublet_parities",
    "__version__",
]
