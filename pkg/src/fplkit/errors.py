"""Exception hierarchy shared by every fplkit module."""

from __future__ import annotations


class FplError(ValueError):
    """Base class for all domain errors raised by fplkit."""


class NotSquare(FplError):
    pass


class EntryOutOfRange(FplError):
    pass


class AlternationViolated(FplError):
    """Raised when a row or column breaks the alternating-sign rule.

    ``kind`` is ``"row"`` or ``"column"`` and ``index`` the 0-based line.
    """

    def __init__(self, kind: str, index: int, detail: str = ""):
        self.kind = kind
        self.index = index
        msg = f"{kind} {index} violates the alternating-sign condition"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InvalidFpl(FplError):
    pass


class IncompatibleSize(FplError):
    pass


class MalformedDyck(FplError):
    pass


class MalformedWord(FplError):
    pass


class NotHalfTurnSymmetric(FplError):
    pass


class NotSquareWord(FplError):
    pass


class BadFactorization(FplError):
    pass


class NotIrreducible(FplError):
    pass


class HoledRequiresOdd(FplError):
    pass


class NotSymmetric(FplError):
    pass


class NotReflective(FplError):
    pass


class UnsupportedPattern(FplError):
    pass


class PatternMismatch(FplError):
    pass


class PropagationConflict(FplError):
    pass


class UnknownIdentity(FplError):
    pass
