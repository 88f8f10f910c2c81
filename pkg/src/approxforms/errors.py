"""Exception hierarchy.

Everything raised for bad *input* derives from :class:`ApproxError`, which is
also a :class:`ValueError`. The command line maps these to exit status 1.
"""


class ApproxError(ValueError):
    """Base class for input and validation errors."""


class DuplicateElement(ApproxError):
    pass


class UnknownElement(ApproxError, KeyError):
    def __str__(self):
        return ValueError.__str__(self)


class CycleDetected(ApproxError):
    pass


class SizeLimit(ApproxError):
    pass


class Intractable(ApproxError):
    pass


class AxiomFailure(ApproxError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class WitnessNotFound(ApproxError):
    pass


class ShrinkRequested(ApproxError):
    pass


class NoGreatestElement(ApproxError):
    pass


class NonConstantCirc(ApproxError):
    pass


class ArityMismatch(ApproxError):
    pass


class InvalidCharacteristic(ApproxError):
    pass


class RangeError(ApproxError):
    pass


class InvariantViolation(AssertionError):
    """An internal consistency check failed. Always a bug."""
