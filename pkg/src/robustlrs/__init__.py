"""robustlrs: exact decision procedures for robust positivity questions on
linear recurrence sequences, plus the Diophantine-approximation toolkit
(continued fractions, Ostrowski numeration, Lagrange-constant estimation)
and the order-5 hardness-instance builder.
"""

from .algebraic import (
    AlgebraicReal,
    compare,
    is_root_of_unity,
    isolate_real_roots,
    refine,
)
from .certificates import NO, UNSUPPORTED, YES, DecisionCertificate, Witness
from .neighbourhoods import Neighbourhood, derived_sequence, prefix_check, validate
from .nonuniform import classify_dominant_form, decide_nonuniform, tangency_set
from .recurrences import (
    ClosedForm,
    LinearRecurrence,
    LrsInstance,
    closed_form,
    companion,
    degenerate_decompose,
    dominant_part,
    liminf_dominant,
    lrs_product,
    lrs_sum,
)
from .scalars import (
    Fraction,
    IncompatibleSurdError,
    InvalidInputError,
    QuadraticSurd,
    RatInterval,
    UnsupportedProblemError,
    as_exact,
    format_scalar,
    parse_scalar,
)
from .uniform import (
    decide_robust_positivity,
    decide_robust_uniform_ultimate,
    simple_pipeline,
)

__all__ = [
    "AlgebraicReal",
    "ClosedForm",
    "DecisionCertificate",
    "Fraction",
    "IncompatibleSurdError",
    "InvalidInputError",
    "LinearRecurrence",
    "LrsInstance",
    "NO",
    "Neighbourhood",
    "QuadraticSurd",
    "RatInterval",
    "UNSUPPORTED",
    "UnsupportedProblemError",
    "Witness",
    "YES",
    "as_exact",
    "classify_dominant_form",
    "closed_form",
    "companion",
    "compare",
    "decide_nonuniform",
    "decide_robust_positivity",
    "decide_robust_uniform_ultimate",
    "degenerate_decompose",
    "derived_sequence",
    "dominant_part",
    "format_scalar",
    "is_root_of_unity",
    "isolate_real_roots",
    "liminf_dominant",
    "lrs_product",
    "lrs_sum",
    "parse_scalar",
    "prefix_check",
    "refine",
    "simple_pipeline",
    "tangency_set",
    "validate",
]

__version__ = "0.1.0"
