"""Exact arithmetic on the sets F(a, b) of normalised ratios a**q / b**p."""

from ._kernel import BACKEND
from .certify import gap_approx, value_approx
from .core import (
    BigRatio,
    Element,
    NotCoprime,
    OrderViolation,
    Params,
    ParamsError,
    ParamsMismatch,
    ProductClass,
    SignedElement,
    compare,
    d_of,
    phi,
    phi_signed,
    product_class,
    star,
    star_signed,
    validate_params,
)
from .density import Target, approximate, approximate_positive, membership_test, parse_rational
from .phases import (
    convergence_band,
    convergence_report,
    extract_sequences,
    lambda_closed_form,
    segment_phases,
    verify_recursive_form,
)
from .powers import PowerProduct, ResourceLimit
from .records import (
    GapBelow,
    MaxSteps,
    MinPReached,
    PairState,
    RecordEntry,
    equivalence_check,
    generate_pairs,
    next_pair,
    scan_records,
    sequence_records,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BigRatio",
    "Element",
    "GapBelow",
    "MaxSteps",
    "MinPReached",
    "NotCoprime",
    "OrderViolation",
    "PairState",
    "Params",
    "ParamsError",
    "ParamsMismatch",
    "PowerProduct",
    "ProductClass",
    "RecordEntry",
    "ResourceLimit",
    "SignedElement",
    "Target",
    "approximate",
    "approximate_positive",
    "compare",
    "convergence_band",
    "convergence_report",
    "d_of",
    "equivalence_check",
    "extract_sequences",
    "gap_approx",
    "generate_pairs",
    "lambda_closed_form",
    "membership_test",
    "next_pair",
    "parse_rational",
    "phi",
    "phi_signed",
    "product_class",
    "scan_records",
    "segment_phases",
    "sequence_records",
    "star",
    "star_signed",
    "validate_params",
    "value_approx",
    "verify_recursive_form",
]
