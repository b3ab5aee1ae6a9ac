"""Exception taxonomy shared by every module.

The CLI maps these onto exit codes: ConfigError -> 2, NumericalError -> 3,
DivergentBathError -> 4. DomainError signals a precondition violation on a
library call and subclasses ValueError so plain callers can catch it
idiomatically.
"""


class RespkitError(Exception):
    """Base class for all package errors."""


class DomainError(RespkitError, ValueError):
    """An argument violates a documented precondition."""


class NumericalError(RespkitError, RuntimeError):
    """A numerical procedure failed to converge to its tolerance.

    ``partial`` carries the best available estimate, ``est_error`` the
    associated error estimate, when the failing routine can provide them.
    """

    def __init__(self, message, partial=None, est_error=None):
        super().__init__(message)
        self.partial = partial
        self.est_error = est_error


class ConfigError(RespkitError, ValueError):
    """A run configuration failed to parse or validate."""


class DivergentBathError(RespkitError):
    """Refusal to run a spectrum job on a bath whose response diverges.

    Raised unless the run explicitly acknowledges truncation with the
    allow-divergent flag.
    """
