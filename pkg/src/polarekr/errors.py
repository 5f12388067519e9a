"""Exception types shared by all modules."""


class PolarError(ValueError):
    """Base class for invalid parameters and violated preconditions."""


class NotPrime(PolarError):
    pass


class OrderTooLarge(PolarError):
    pass


class ZeroInverse(PolarError, ZeroDivisionError):
    pass


class LengthMismatch(PolarError):
    pass


class AmbientMismatch(PolarError):
    pass


class BadDimension(PolarError):
    pass


class NonCanonical(PolarError):
    """A serialized subspace is not in reduced row-echelon form."""


class NonIsotropicSeed(PolarError):
    pass


class ZeroSubspace(PolarError):
    pass


class SeedShape(PolarError):
    pass


class EmptyFamily(PolarError):
    pass


class WrongTau(PolarError):
    pass


class PreconditionViolated(PolarError):
    pass


class TooLarge(PolarError):
    pass
