"""Exception types shared across the package."""


class MulticxError(Exception):
    """Base class for all domain errors."""


class FieldMismatch(MulticxError):
    """Operands live over different ground fields."""


class ShapeMismatch(MulticxError):
    """Matrix block shapes disagree with the declared supports."""


class ContainmentViolation(MulticxError):
    """A subspace that must be contained in another is not."""


class WindowTooSmall(MulticxError):
    """A windowed object was queried outside its materialized window."""

    def __init__(self, message, needed=None):
        super().__init__(message)
        self.needed = needed  # optional (pmin, pmax, qmin, qmax) hint


class NotStabilized(MulticxError):
    """A directed colimit did not stabilize within the allowed stages."""


class IllDefined(MulticxError):
    """A map that must descend to a quotient failed to do so (internal bug)."""


class InvalidWitness(MulticxError):
    """A tuple fails the staircase relations it is supposed to satisfy."""


class ParseError(MulticxError):
    """Malformed document text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(MulticxError):
    """A parsed object violates its structural relations."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)
