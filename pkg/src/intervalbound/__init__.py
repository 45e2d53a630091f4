"""Sharp interval-exclusion bounds for zero-mean unit-variance variables.

``bounds`` holds the closed forms (the three-case bound, its Chebyshev and
Cantelli special cases, extremal distributions, majorant certificates, and
reductions from general mean/variance or quadratic-event inputs);
``oracle`` verifies them numerically from both sides; ``cli`` exposes
everything as subcommands with JSON/CSV output.
"""
from .bounds import (
    BoundCase,
    BoundResult,
    DiscreteDistribution,
    DomainError,
    IntervalSpec,
    QuadraticCertificate,
    QuadraticEventResult,
    always_bound,
    bound,
    canonicalize,
    cantelli_bound,
    certificate,
    chebyshev_bound,
    classify_case,
    extremal_distribution,
    modified_chebyshev_bound,
    quadratic_event_bound,
    standardize,
)
from .oracle import (
    CertificateCheck,
    DualLpResult,
    GridSpec,
    MonteCarloResult,
    OracleError,
    OracleReport,
    PrimalSearchResult,
    default_grid,
    default_primal_grid,
    dual_lp_bound,
    full_verification,
    monte_carlo_attainment,
    primal_three_atom_bound,
    verify_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BoundCase",
    "BoundResult",
    "CertificateCheck",
    "DiscreteDistribution",
    "DomainError",
    "DualLpResult",
    "GridSpec",
    "IntervalSpec",
    "MonteCarloResult",
    "OracleError",
    "OracleReport",
    "PrimalSearchResult",
    "QuadraticCertificate",
    "QuadraticEventResult",
    "always_bound",
    "bound",
    "canonicalize",
    "cantelli_bound",
    "certificate",
    "chebyshev_bound",
    "classify_case",
    "default_grid",
    "default_primal_grid",
    "dual_lp_bound",
    "extremal_distribution",
    "full_verification",
    "modified_chebyshev_bound",
    "monte_carlo_attainment",
    "primal_three_atom_bound",
    "quadratic_event_bound",
    "standardize",
    "verify_certificate",
    "__version__",
]
