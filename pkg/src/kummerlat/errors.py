"""Exception types raised by kummerlat.

Every validation failure derives from :class:`LatticeError` (itself a
``ValueError``), so callers can catch one class.  :class:`Overflow` is kept
separate because the CLI maps it to a different exit code.
"""


class LatticeError(ValueError):
    """Base class for input validation errors."""

    code = "LatticeError"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__


class Overflow(ArithmeticError):
    """Intermediate integer growth exceeded the working bound."""

    code = "Overflow"


class ZeroInput(LatticeError):
    pass


class InputTooLarge(LatticeError):
    pass


class EvenModulus(LatticeError):
    pass


class Singular(LatticeError):
    pass


class Degenerate(LatticeError):
    pass


class NotSymmetric(LatticeError):
    pass


class NotEven(LatticeError):
    pass


class NotInDual(LatticeError):
    pass


class ZeroVector(LatticeError):
    pass


class IsotropicVector(LatticeError):
    pass


class NotIsometry(LatticeError):
    pass


class NotDefinite(LatticeError):
    pass


class RankTooLarge(LatticeError):
    pass


class WrongRank(LatticeError):
    pass


class VectorNotInLattice(LatticeError):
    pass


class OutOfRange(LatticeError):
    pass


class NotPrimitive(LatticeError):
    pass


class NotNegative(LatticeError):
    pass


class WrongSignature(LatticeError):
    pass


class NotOrthogonal(LatticeError):
    pass


class WrongSigns(LatticeError):
    pass


class NotSO(LatticeError):
    pass


class InfiniteOrder(LatticeError):
    pass


class SquareTooSmall(LatticeError):
    pass


class NotHyperbolic(LatticeError):
    pass


class VNotPrimitive(LatticeError):
    pass


class InvalidMukai(LatticeError):
    pass


class InvalidCase(LatticeError):
    pass
