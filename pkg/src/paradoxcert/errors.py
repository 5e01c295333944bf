"""Exception types shared across the package."""


class ParadoxError(Exception):
    """Base class for all package errors."""


class BackendMismatchError(ParadoxError):
    """Operands live over different scalar backends."""


class DimensionMismatchError(ParadoxError):
    """Matrix/vector shapes are incompatible."""


class SingularMatrixError(ParadoxError):
    """Matrix has no inverse."""


class RankDeficientError(ParadoxError):
    """A claimed basis is linearly dependent."""


class NotAntiHermitianError(ParadoxError):
    """Cayley input fails X* = -X."""


class DomainError(ParadoxError):
    """Point lies outside a map's domain (poles, removed axis, ...)."""


class GapCaseError(DomainError):
    """Slice map hit an intersection of dimension > 1.

    Distinct from DomainError so callers can count how often the
    uncovered multi-dimensional-intersection case actually occurs.
    """


class DescriptorError(ParadoxError):
    """Space descriptor is syntactically or semantically invalid."""


class SeedFixedError(ParadoxError):
    """Orbit seed is fixed by a short nonidentity word."""

    def __init__(self, word_text: str):
        self.word_text = word_text
        super().__init__(
            f"seed point is fixed by the nonidentity word '{word_text}'"
        )


class CertificateError(ParadoxError):
    """Certificate is structurally malformed."""


class VerificationError(ParadoxError):
    """An empirical check failed hard enough to abort."""
