"""Exception hierarchy shared by all curveword modules."""


class CurvewordError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class WordSyntaxError(CurvewordError, SyntaxError):
    pass


class LetterCountError(CurvewordError):
    pass


class SignConflictError(CurvewordError):
    pass


class UnknownLetter(CurvewordError, KeyError):
    pass


class LimitExceeded(CurvewordError):
    pass


class SingularUnsupported(CurvewordError):
    pass


class NotSpherical(CurvewordError):
    pass


class MissingSymbol(CurvewordError, KeyError):
    pass


class InvalidSite(CurvewordError):
    pass


class Inconsistent(CurvewordError):
    """Raised when an affine system has no solution.

    ``witness`` holds a small subset of constraint labels that is already
    contradictory.
    """

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = list(witness)


class Underdetermined(CurvewordError):
    """Raised when a completion is not unique.

    ``particular`` is one solution and ``free_directions`` a basis of the
    homogeneous solution space, both as ``{label: Fraction}`` maps.
    """

    def __init__(self, message, particular=None, free_directions=()):
        super().__init__(message)
        self.particular = particular
        self.free_directions = list(free_directions)
