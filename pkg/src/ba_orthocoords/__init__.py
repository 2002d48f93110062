"""Orthogonal curvilinear coordinates on S^n and H^n from Baker-Akhiezer
functions on singular reducible spectral curves."""

from .chart import CoordinateChart, build_chart, chart_from_raw
from .curve import GluePair, PointOnCurve, SpectralData, sigma_image, tau_image, validate
from .errors import BAError, ConfigurationError, DomainError, SignViolation, SingularSystemError
from .omega import (
    OneFormSpec,
    ResidueData,
    check_divisor,
    check_equal_q_residues,
    check_glue_residues,
    extract_residue_data,
    normalize_form,
)
from .presets import hyperbolic_example, sphere_example
from .rational import INF, POLE, Poly, ProjectivePoint, RationalFunction
from .solver import BASolution, assemble_system, eval_psi, eval_psi_derivative, solve

__version__ = "0.1.0"

__all__ = [
    "CoordinateChart",
    "build_chart",
    "chart_from_raw",
    "GluePair",
    "PointOnCurve",
    "SpectralData",
    "sigma_image",
    "tau_image",
    "validate",
    "BAError",
    "ConfigurationError",
    "DomainError",
    "SignViolation",
    "SingularSystemError",
    "OneFormSpec",
    "ResidueData",
    "check_divisor",
    "check_equal_q_residues",
    "check_glue_residues",
    "extract_residue_data",
    "normalize_form",
    "hyperbolic_example",
    "sphere_example",
    "INF",
    "POLE",
    "Poly",
    "ProjectivePoint",
    "RationalFunction",
    "BASolution",
    "assemble_system",
    "eval_psi",
    "eval_psi_derivative",
    "solve",
]
