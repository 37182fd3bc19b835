"""Exception hierarchy shared by all shiftlab modules."""


class ShiftlabError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class EmptyInput(ShiftlabError):
    pass


class NotAnEdge(ShiftlabError):
    pass


class SurfaceViolated(ShiftlabError):
    pass


class NotASurface(ShiftlabError):
    pass


class NotATriangle(ShiftlabError):
    pass


class DegenerateArc(ShiftlabError):
    pass


class DimensionTooHigh(ShiftlabError):
    pass


class NotASubdivision(ShiftlabError):
    pass


class TooLarge(ShiftlabError):
    pass


class LengthMismatch(ShiftlabError):
    pass


class MTooLarge(ShiftlabError):
    pass


class InvalidBound(ShiftlabError):
    pass


class NTooSmall(ShiftlabError):
    pass


class NotShiftedInput(ShiftlabError):
    pass


class GenericityFailure(ShiftlabError):
    pass


class CapExceeded(ShiftlabError):
    pass


class Degenerate(ShiftlabError):
    pass


class NotDenseEnough(ShiftlabError):
    pass


class NotSimple(ShiftlabError):
    pass


class BaseVerificationFailed(ShiftlabError):
    pass
