"""Extend partial r-factorizations of lambda K_m^h to lambda K_n^h.

The engine amalgamates the n - m missing vertices into one placeholder,
greedily colors the new edge classes level by level under the target degree
caps, then detaches the new vertices one at a time, each step solved as an
exact integral transportation problem. An independent verifier and a
brute-force oracle check the results.
"""
from .combinatorics import (
    binom,
    blocked_degree_bound,
    bound_holds,
    outside_majority_holds,
    vandermonde_sum,
)
from .errors import (
    GenerationFailed,
    GreedyStuck,
    HyperfactorError,
    InadmissibleParameters,
    InfeasibleTransport,
    InternalInvariantViolation,
    InvalidInstance,
    NegativeTopLevelQuota,
    NonIntegerColorQuota,
    SchemaError,
)
from .model import (
    Certificate,
    EdgeClass,
    Instance,
    Parameters,
    is_admissible,
    parse_certificate,
    parse_instance,
    serialize_certificate,
    serialize_instance,
    validate_instance,
)
from .generate import random_instance
from .pipeline import extend_instance, single_edge_instance
from .verify import EXHAUSTED, TOO_LARGE, brute_force_extend, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "binom", "vandermonde_sum", "bound_holds", "outside_majority_holds",
    "blocked_degree_bound",
    "Parameters", "EdgeClass", "Instance", "Certificate",
    "is_admissible", "validate_instance",
    "parse_instance", "serialize_instance", "parse_certificate", "serialize_certificate",
    "random_instance", "extend_instance", "single_edge_instance",
    "verify_certificate", "brute_force_extend", "EXHAUSTED", "TOO_LARGE",
    "HyperfactorError", "SchemaError", "InadmissibleParameters", "InvalidInstance",
    "GreedyStuck", "NegativeTopLevelQuota", "NonIntegerColorQuota",
    "InfeasibleTransport", "InternalInvariantViolation", "GenerationFailed",
    "__version__",
]
