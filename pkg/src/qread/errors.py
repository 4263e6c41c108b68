"""Exception hierarchy shared across the library."""


class QReadError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(QReadError, ValueError):
    """An argument lies outside its documented domain."""


class TruncationFailure(QReadError, RuntimeError):
    """A truncated support cannot meet the requested tail tolerance within budget."""


class OverflowGuardError(QReadError, OverflowError):
    """Internal special-function arguments left the representable range."""


class RegimeViolationError(QReadError, RuntimeError):
    """A decision rule or approximation was invoked outside its validity regime."""


class ConvergenceError(QReadError, RuntimeError):
    """A special function or quadrature failed to converge."""
