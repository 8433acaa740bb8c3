"""Exception hierarchy shared by every module of the package."""


class BinpolyError(Exception):
    """Base class for all errors raised by binpoly."""


class MixedRadicand(BinpolyError, ValueError):
    """Two irrational scalars from different quadratic fields were combined."""


class DivisionByZero(BinpolyError, ZeroDivisionError):
    pass


class BoundExceeded(BinpolyError):
    """Group closure grew past the requested bound."""


class NotUnitNorm(BinpolyError, ValueError):
    pass


class ElementNotInGroup(BinpolyError, KeyError):
    pass


class UnboundSymbol(BinpolyError, KeyError):
    pass


class NotAHomomorphism(BinpolyError):
    pass


class GroupMismatch(BinpolyError, ValueError):
    pass


class DimensionMismatch(BinpolyError, ValueError):
    pass


class SideMismatch(BinpolyError, ValueError):
    pass


class InvalidSeedNormal(BinpolyError):
    pass


class NonTriangleTwoFace(BinpolyError):
    pass


class NotAFacet(BinpolyError, KeyError):
    pass


class CriterionFailed(BinpolyError):
    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class CompositionNonZero(BinpolyError):
    pass


class PushforwardMismatch(BinpolyError):
    pass


class RelationFailed(BinpolyError):
    pass


class HomotopyIdentityFailed(BinpolyError):
    pass


class GeneratorNotCycle(BinpolyError):
    pass


class ActionMismatch(BinpolyError):
    pass


class SizeLimitExceeded(BinpolyError):
    pass
