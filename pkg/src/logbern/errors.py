"""Exception hierarchy shared by the library and the CLI."""


class LogBernError(Exception):
    """Base class for all errors raised by logbern."""


class DomainError(LogBernError, ValueError):
    """An argument lies outside the domain of the operation (e.g. x not in [0, 1])."""


class ParameterError(LogBernError, ValueError):
    """A structural parameter is invalid (mu <= 0, lambda ordering, delta <= 0, ...)."""


class CapabilityError(LogBernError):
    """Derivative data was required but is unavailable."""


class PreconditionError(LogBernError):
    """A numerically checked hypothesis (e.g. a shape class) does not hold."""


class InputError(LogBernError, ValueError):
    """Data supplied by the user is malformed or violates positivity."""
