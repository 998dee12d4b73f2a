"""Exception hierarchy shared by all spfkit modules.

The CLI maps these onto process exit codes: DomainError and its
subclasses exit 2, file-level errors (FormatError, TruncatedFileError,
plus the builtin OSError family) exit 3, ConvergenceError exits 4.
"""


class SpfkitError(Exception):
    """Base class for all spfkit errors."""


class DomainError(SpfkitError):
    """Input violates a documented precondition or invariant."""


class DegenerateCurveError(DomainError):
    """The fitted curve is flat: the sequence has no measurable semantic change."""


class PlanningError(DomainError):
    """A regeneration plan cannot satisfy its constraints (e.g. a clip too short)."""


class FormatError(SpfkitError):
    """A file does not conform to its declared binary or JSON format."""


class TruncatedFileError(FormatError):
    """A file ended before its declared payload was fully read."""


class ConvergenceError(SpfkitError):
    """The solver failed to reach the requested tolerance.

    Carries the best relative residual achieved.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
