"""Exact algebra over iterated Laurent series fields F_p((t1))...((tn)).

Decomposition modulo l-th powers, isotropy of diagonal quadratic forms via
residue forms, cyclic symbol algebras, and u-invariant / Brauer dimension
bounds.
"""

from .bounds import FieldInvariants, all_case_traces, completion_case_trace, invariant_bounds
from .brauer import (
    BrauerExpr,
    Symbol,
    biquaternion_index,
    class_vector,
    exact_index,
    index_bound,
    quaternion_split,
    symbol_decompose,
)
from .decompose import DecompositionResult, decompose, verify_decomposition
from .errors import (
    AbhyankarError,
    CertificateError,
    DegenerateBasisError,
    DomainError,
    ParseError,
    PreconditionError,
    ResolutionError,
    ResourceLimitError,
    UltraformsError,
)
from .finite_field import PrimeField
from .laurent import GroupWord, LaurentElement, LeadingData, leading, parse_element
from .quadform import DiagonalForm, anisotropic_survey, is_hyperbolic, is_isotropic, is_isotropic_springer
from .valgroup import ValuationBasis

__version__ = "0.1.0"
