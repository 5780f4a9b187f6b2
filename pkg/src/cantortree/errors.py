"""Exception types raised across the package."""


class CantorTreeError(Exception):
    pass


class LengthError(CantorTreeError, ValueError):
    """A cuff length is not finite or lies outside the supported range."""


class DomainError(CantorTreeError, ValueError):
    """A point or argument lies outside the domain of a function."""


class PreconditionError(CantorTreeError, ValueError):
    pass


class ConsistencyError(CantorTreeError, ArithmeticError):
    """Two redundant identities disagree beyond tolerance."""


class QuadratureFailure(CantorTreeError, RuntimeError):
    pass


class InfeasibleProfile(CantorTreeError, ValueError):
    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"cuff-length window is empty at level {level}")


class NonMonotone(CantorTreeError, ValueError):
    """Cuff lengths fail to decrease along some end."""


class StepTooLarge(CantorTreeError, ValueError):
    pass


class DepthTooLarge(CantorTreeError, ValueError):
    pass


class ProfileFormatError(CantorTreeError, ValueError):
    """A profile document does not parse or does not match its schema."""
