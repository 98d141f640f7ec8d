"""Exception hierarchy for shiftlab."""


class ShiftLabError(Exception):
    """Base class for all errors raised by shiftlab."""


class DomainError(ShiftLabError, ValueError):
    """A point or parameter lies outside the open unit disk (or the admissible set)."""


class RootMismatch(ShiftLabError, ValueError):
    """Synthetic division was requested at a point that is not a root."""


class ZeroPolynomial(ShiftLabError, ValueError):
    pass


class RootFindingFailure(ShiftLabError, ArithmeticError):
    """Root finder failed, or a root sits too close to the unit circle to classify."""


class UnsupportedSelector(ShiftLabError, ValueError):
    pass


class TruncationOverflow(ShiftLabError, ValueError):
    """The requested computation does not fit in the truncation order."""


class ThetaVanishesAtAbBar(ShiftLabError, ValueError):
    """theta(alpha * conj(beta)) = 0, so no invariant subspace of the requested form exists."""


class ZeroVector(ShiftLabError, ValueError):
    pass


class InternalInconsistency(ShiftLabError, AssertionError):
    """Two computations that must agree did not. Indicates a bug."""


class InconclusiveTruncation(ShiftLabError):
    """A finite-truncation oracle could not certify its answer."""


class UnknownSuite(ShiftLabError, KeyError):
    pass
