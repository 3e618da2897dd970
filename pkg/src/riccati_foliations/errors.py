"""Exception hierarchy shared by all modules."""


class RiccatiError(Exception):
    """Base class for every error raised by this package."""


class DegenerateMatrix(RiccatiError):
    """The matrix is singular at the requested tolerance (not in GL(3))."""


class IllConditioned(RiccatiError):
    """A Jordan conjugator was built but its condition number is too large.

    The decomposition is still attached so callers can inspect it.
    """

    def __init__(self, message, decomposition=None, condition=None):
        super().__init__(message)
        self.decomposition = decomposition
        self.condition = condition


class ZeroArgument(RiccatiError, ValueError):
    pass


class ZeroVector(RiccatiError, ValueError):
    pass


class DegenerateConfiguration(RiccatiError):
    """Point correspondences do not determine a unique projective map."""


class ArityMismatch(RiccatiError, ValueError):
    pass


class NotRiccati(RiccatiError, ValueError):
    """A field that must be in Riccati normal form is not."""


class BranchCutHit(RiccatiError, ValueError):
    pass


class IntegrationFailure(RiccatiError):
    pass


class PoleOnPath(IntegrationFailure):
    """The loop passes through (or too close to) an invariant fiber."""


class RoutingFailure(RiccatiError):
    pass


class UnclassifiableGenerator(RiccatiError):
    pass


class ParseError(RiccatiError, ValueError):
    pass
