"""Flag-bundle Lyapunov spectra of locally constant SL(d) cocycles."""

from ._core import (
    BaseSystem,
    Cocycle,
    Error,
    NoConvergence,
    PredictionViolated,
    ValidationError,
    WeightNotAdmissible,
    analytic_differential,
    attractor_section,
    finite_difference,
    flag_type,
    gap_report,
    iwasawa,
    mean_spectrum,
    oblique_differential,
    perturbed_spectrum,
    polar,
    polar_exponent,
    predicted_theta,
    repeller_section,
    spectrum_functional,
    spectrum_report_from_config,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]
