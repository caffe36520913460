"""Exception hierarchy.

Every error raised for a mathematically invalid request derives from
:class:`DomainError`; the CLI maps those to exit code 2.
"""


class DomainError(ValueError):
    pass


class IncompatibleUniverseError(DomainError):
    """Two objects built over different universes were combined."""


class SingularMatrixError(DomainError):
    pass


class DependentBasisError(DomainError):
    pass


class EmptyStateError(DomainError):
    """Measurement, normalization or density of the zero vector."""


class NotInSpectrumError(DomainError):
    pass


class NotCSCAError(DomainError):
    pass


class EnumerationLimitError(DomainError):
    pass
