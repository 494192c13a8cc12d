"""Exception hierarchy shared by every module of the package."""


class ZetaSeriesError(Exception):
    """Base class for all errors raised by :mod:`zetaseries`."""


class DomainError(ZetaSeriesError, ValueError):
    """An argument lies outside the domain where a representation is valid."""


class PolePassed(DomainError):
    """Evaluation requested exactly at the pole s = 1."""


class NonConvergence(ZetaSeriesError, ArithmeticError):
    """A series did not reach its tolerance within the configured term caps."""


class InvalidSequence(ZetaSeriesError, ValueError):
    """Terms handed to an alternating summation do not alternate in sign."""


class CrossCheckMismatch(ZetaSeriesError, ArithmeticError):
    """Two equivalent representations disagree beyond their combined bounds."""


class IdentityViolation(ZetaSeriesError, ArithmeticError):
    """One or more functional-identity residuals exceeded their threshold."""

    def __init__(self, message, offenders=()):
        super().__init__(message)
        self.offenders = list(offenders)
