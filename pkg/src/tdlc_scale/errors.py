"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 1); broken
theorem-level checks derive from :class:`VerificationError` (exit code 2).
"""


class InputError(ValueError):
    pass


class NonPrimeError(InputError):
    pass


class SingularMatrixError(InputError):
    pass


class DimensionError(InputError):
    pass


class InadmissibleCylinderError(InputError):
    pass


class NotContainedError(InputError):
    """Index requested for a pair of lattices that are not nested."""


class InfiniteIndexError(InputError):
    """Two cylinders are not commensurable."""


class EnumerationBoundError(InputError):
    pass


class IterationCapError(RuntimeError):
    """An iteration that must terminate hit its cap.

    ``trace`` holds whatever partial data was gathered before giving up.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class VerificationError(AssertionError):
    """A computed identity that must hold did not.

    ``witness`` carries the data needed to reproduce the failure.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
