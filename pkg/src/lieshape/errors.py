"""Exception hierarchy.

Validation errors (bad input data) and numeric failures (the computation
left its domain of validity) are separated so the CLI can map them to
distinct exit codes.
"""


class LieShapeError(Exception):
    """Base class for all library errors."""


class ValidationError(LieShapeError, ValueError):
    pass


class NumericFailure(LieShapeError, ArithmeticError):
    pass


class GridNotIncreasing(ValidationError):
    pass


class NotOnManifold(ValidationError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class DegenerateSegment(ValidationError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class AntipodalSegment(ValidationError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OutOfRange(ValidationError):
    pass


class GridMismatch(ValidationError):
    pass


class SpaceMismatch(ValidationError):
    pass


class EmptySlopeSet(ValidationError):
    pass


class FrameMismatch(ValidationError):
    pass


class ParseError(ValidationError):
    """Malformed curve file; ``location`` names the line or field."""

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{location}: {message}"
        super().__init__(message)
        self.location = location


class AngleNearPi(NumericFailure):
    """Rotation angle too close to pi for a well-conditioned logarithm.

    Usually means the curve is sampled too coarsely.
    """


class ZeroSignalSegment(NumericFailure):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NoConvergence(NumericFailure):
    """Iteration budget exhausted; ``report`` holds the best iterate."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
