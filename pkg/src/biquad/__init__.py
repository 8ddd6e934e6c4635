"""Exact arithmetic, sums of squares and indecomposable integers in real biquadratic fields."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BiquadError,
    BudgetExceeded,
    Equal,
    FieldMismatch,
    FormulaMismatch,
    IdentityFailed,
    InadmissibleParameter,
    NotAnInteger,
    NotSquareFree,
    NotTotallyNonnegative,
    OutOfRange,
    ParseError,
    Refuted,
    SelfCheckFailed,
    WrongBasisType,
)
from .field import BasisType, CharPoly, EmbeddingInterval, FieldElement, FieldSpec, make_field, parse_element  # noqa: E402
from .ring import (  # noqa: E402
    CodifferentBasis,
    IntegralBasis,
    IntegralElement,
    codifferent_basis,
    discriminant,
    integral_basis,
    to_integral_coords,
)
from .sos import CertificateKind, RankCertificate, SearchBudget, certify_min_rank, sos_rank  # noqa: E402
from .families import Family, FamilyParam, make_family, min_codiff_trace, is_decomposable  # noqa: E402
