"""Abelian anyon models, their mapping class group representations on the
torus and higher-genus surfaces, and a stabilizer simulator for the induced
qudit normalizer gates."""

from .errors import (
    AnyonToolError,
    BoundExceededError,
    ConsistencyError,
    GroupMismatchError,
    InvalidFormError,
    MissingEntryError,
    NonModularModelError,
    NotNormalizerError,
    NotUnitaryError,
    ParseError,
)
from .groups import (
    DEFAULT_DENSE_BOUND,
    DEFAULT_ENUM_BOUND,
    DEFAULT_TOL,
    Character,
    GroupElement,
    GroupSpec,
    RationalPhase,
    pairing_phase,
)

__version__ = "0.1.0"
