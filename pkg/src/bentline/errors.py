"""Exception hierarchy shared across the package.

The three leaf categories map onto the CLI exit codes and the service's
error payloads: configuration problems, data/ingestion problems, and
numerical failures.
"""


class BentlineError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(BentlineError):
    """A setting is out of range or inconsistent (tau, trim, column map, ...)."""


class DataError(BentlineError):
    """The input data cannot be used (missing file, bad cells, degenerate sample)."""


class NumericalError(BentlineError):
    """A numerical procedure failed (singular system, unidentified threshold)."""


class SingularSystemError(NumericalError):
    """A linear system is rank deficient or too ill-conditioned to solve."""
