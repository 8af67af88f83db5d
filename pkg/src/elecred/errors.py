"""Exception hierarchy. The CLI reports ``type(err).__name__`` on failure."""


class ElecredError(Exception):
    """Base class for domain errors."""


class InvalidMap(ElecredError, ValueError):
    pass


class NotInvolution(InvalidMap):
    pass


class NotPermutation(InvalidMap):
    pass


class Disconnected(InvalidMap):
    pass


class NonSphericalGenus(InvalidMap):
    pass


class ParseError(ElecredError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotApplicable(ElecredError):
    pass


class BoundaryForbidden(NotApplicable):
    pass


class NonPlanarMoveRejected(NotApplicable):
    pass


class TerminalViolation(NotApplicable):
    pass


class EmptyGraph(ElecredError):
    pass


class ContractLoop(ElecredError):
    pass


class ResultDisconnected(ElecredError):
    pass


class NotASplitPair(ElecredError):
    pass


class EmptyInterior(ElecredError):
    pass


class NotACutVertex(ElecredError):
    pass


class InvalidWedge(ElecredError):
    pass


class UnrealizableCode(ElecredError):
    pass


class MultiComponent(ElecredError):
    pass


class NoBoundary(ElecredError):
    pass


class BadCircle(ElecredError):
    pass


class BadBoundaryCount(BadCircle):
    pass


class NotSimpleRegion(BadCircle):
    pass


class TooManyStrands(ElecredError):
    pass


class BudgetExceeded(ElecredError):
    pass


class TooLarge(ElecredError):
    pass


class NoUnicursalSmoothing(ElecredError):
    pass


class BadParam(ElecredError, ValueError):
    pass
