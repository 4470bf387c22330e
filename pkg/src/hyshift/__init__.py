"""Certified criteria and finite demos for hypercyclic subspaces of
weighted backward shifts on graded sequence spaces.

The package decides, with machine-checkable certificates, whether the
shift built from a weight family possesses a hypercyclic subspace on a
given space, evaluates the underlying sup/inf window criterion in the
log domain, and constructs finite witnesses for both answers.
"""
from ._backend import BACKEND, HAS_NUMBA
from .certify import InfDecision, Status, TailShape
from .criteria import (
    BlockCertificate,
    CertifiedValue,
    GrowthCertificate,
    Horizons,
    VerdictReport,
    bilateral_verdict,
    blockcert_to_growthcert,
    check_condition_B,
    check_operator_continuity,
    condN_check,
    criterion_grid,
    find_block_certificate,
    hypercyclicity_test,
    integrand_array,
    poly_hypothesis_check,
    subspace_verdict,
    tail_inf,
    theta,
    theta_details,
    window_max_inf,
)
from .dynamics import (
    PolyPower,
    TruncatedVector,
    apply_poly,
    apply_shift,
    build_divergence_witness,
    build_hypercyclic_prefix,
    log_seminorm,
    orbit_table,
    poly_power,
    predicted_bound,
    right_inverse,
    seminorm,
)
from .errors import (
    CertificateError,
    DomainError,
    HyshiftError,
    SpacingError,
    WeightSpecError,
)
from .spaces import SpaceModel, parse_space_spec
from .verify import SUITES, run_suite
from .weights import (
    BilateralWeights,
    WeightSequence,
    cumulative_sup_log,
    parse_weight_spec,
    window_log,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "BilateralWeights",
    "BlockCertificate",
    "CertificateError",
    "CertifiedValue",
    "DomainError",
    "GrowthCertificate",
    "Horizons",
    "HyshiftError",
    "InfDecision",
    "PolyPower",
    "SpaceModel",
    "SpacingError",
    "Status",
    "SUITES",
    "TailShape",
    "TruncatedVector",
    "VerdictReport",
    "WeightSequence",
    "WeightSpecError",
    "apply_poly",
    "apply_shift",
    "bilateral_verdict",
    "blockcert_to_growthcert",
    "build_divergence_witness",
    "build_hypercyclic_prefix",
    "check_condition_B",
    "check_operator_continuity",
    "condN_check",
    "criterion_grid",
    "cumulative_sup_log",
    "find_block_certificate",
    "hypercyclicity_test",
    "integrand_array",
    "log_seminorm",
    "orbit_table",
    "parse_space_spec",
    "parse_weight_spec",
    "poly_hypothesis_check",
    "poly_power",
    "predicted_bound",
    "right_inverse",
    "run_suite",
    "seminorm",
    "subspace_verdict",
    "tail_inf",
    "theta",
    "theta_details",
    "window_max_inf",
    "window_log",
    "__version__",
]
