"""Exception hierarchy shared by all modules."""


class HankelBoundError(ValueError):
    """Base class for every error raised by this package."""


class DivisionBySmallLeadingTerm(HankelBoundError, ZeroDivisionError):
    pass


class NotNormalized(HankelBoundError):
    """Series does not have the form z + a2 z^2 + ..."""


class InvalidMeasure(HankelBoundError):
    pass


class DegenerateC1(HankelBoundError):
    """c1 = 2, so x (and z) cannot be recovered."""


class DegenerateX(HankelBoundError):
    """|x| = 1, so z cannot be recovered."""


class NotRepresentable(HankelBoundError):
    pass


class InsufficientCoefficients(HankelBoundError):
    pass


class InsufficientOrder(HankelBoundError):
    pass


class OutOfBox(HankelBoundError):
    """Surrogate argument outside [0, 2] x [0, 1]."""
