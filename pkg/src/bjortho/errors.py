"""Exception classes shared by all modules."""


class UnsupportedSpace(ValueError):
    """Raised when an operation has no implementation for a norm family."""


class IsometryError(ValueError):
    """Raised when an operator is not a scalar multiple of an isometry on a subspace.

    ``vector`` holds the offending unit vector of the subspace.
    """

    def __init__(self, msg, vector=None):
        super().__init__(msg)
        self.vector = vector


class DegenerateTranslation(ValueError):
    """Raised when two numerical-range points coincide and cannot span a segment."""


class StructuralViolation(RuntimeError):
    """Raised when a computation contradicts a structural theorem it relies on.

    The numbers that produced the contradiction are kept in ``samples`` so
    callers can inspect them instead of the result being silently repaired.
    """

    def __init__(self, msg, samples=None):
        super().__init__(msg)
        self.samples = samples
