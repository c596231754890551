"""Exception hierarchy.

Every domain error derives from :class:`VirtlinkError`; the CLI reports the
class name of the exception on stderr and exits with status 1.
"""


class VirtlinkError(Exception):
    """Base class for all domain errors raised by the library."""


class ParseError(VirtlinkError, ValueError):
    """Malformed textual input (Gauss code, braid word, polynomial, ...)."""


# poly
class NegativeExponentAtZero(VirtlinkError, ValueError):
    pass


class NonIntegralSubstitution(VirtlinkError, ValueError):
    pass


class NotDivisible(VirtlinkError, ArithmeticError):
    pass


class WordTooLong(VirtlinkError, ValueError):
    pass


# gauss
class ChordMismatch(VirtlinkError, ValueError):
    pass


class UnknownChord(VirtlinkError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class MoveNotApplicable(VirtlinkError, ValueError):
    pass


# seifert
class NonSquare(VirtlinkError, ValueError):
    pass


class OddDimension(VirtlinkError, ValueError):
    pass


class DimensionMismatch(VirtlinkError, ValueError):
    pass


class NotUnimodular(VirtlinkError, ValueError):
    pass


# milnor
class BadComponentCount(VirtlinkError, ValueError):
    pass


class NotFramed(VirtlinkError, ValueError):
    pass


class LetterClash(VirtlinkError, ValueError):
    pass


class NotPure(VirtlinkError, ValueError):
    pass


# braid
class IndexOutOfRange(VirtlinkError, ValueError):
    pass


class NotHomogeneous(VirtlinkError, ValueError):
    pass


class NonIntegralGenus(VirtlinkError, ArithmeticError):
    pass


class NotParted(VirtlinkError, ValueError):
    pass


class MovingPartNotKnot(VirtlinkError, ValueError):
    pass
