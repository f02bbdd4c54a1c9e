"""Exception hierarchy."""


class AltlieError(Exception):
    pass


class RegistryMismatchError(AltlieError, TypeError):
    """Operands were built over different variable registries."""


class DomainError(AltlieError, ValueError):
    """An operation's precondition on its input value failed."""


class TruncationError(AltlieError, ValueError):
    """A request reaches past the truncation cap of a series."""


class AlgebraMismatchError(AltlieError, TypeError):
    pass


class UnknownAlgebraError(AltlieError, KeyError):
    pass


class CocycleError(AltlieError, ValueError):
    """The two-form is not closed; carries the offending basis triple."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotASubalgebraError(AltlieError, ValueError):
    pass


class PatternError(AltlieError, ValueError):
    """A matrix is outside the chart handled by the factorization."""

    def __init__(self, message, entry=None):
        super().__init__(message)
        self.entry = entry
