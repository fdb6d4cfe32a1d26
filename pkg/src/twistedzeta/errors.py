"""Exception hierarchy shared by all modules."""


class TwistedZetaError(Exception):
    """Base class for all errors raised by this package."""


# -- group construction ------------------------------------------------------

class NotAPermutation(TwistedZetaError):
    pass


class ClosureTooLarge(TwistedZetaError):
    pass


class NotAHomomorphism(TwistedZetaError):
    pass


class DoesNotGenerate(TwistedZetaError):
    pass


# -- integer linear algebra --------------------------------------------------

class NotSquare(TwistedZetaError):
    pass


class BadIndex(TwistedZetaError):
    pass


class EigenvalueOnBoundary(TwistedZetaError):
    """An eigenvalue of the lattice matrix equals +1 or -1.

    Some iterate then has infinitely many twisted conjugacy classes, so the
    quantities built downstream (zeta function, sign constants) do not exist.
    """


# -- Reidemeister engines ----------------------------------------------------

class InfiniteReidemeister(TwistedZetaError):
    """det(I - M^n) = 0 for some relevant n: the class count is infinite."""

    def __init__(self, message, n=None):
        super().__init__(message)
        self.n = n


# -- zeta / torsion ----------------------------------------------------------

class NotConstant(TwistedZetaError):
    pass


class ZeroDeterminant(TwistedZetaError):
    pass


class PoleAtEvaluation(TwistedZetaError):
    pass


class NonInvertible(TwistedZetaError):
    pass


# -- problem documents -------------------------------------------------------

class SchemaError(TwistedZetaError):
    pass


class ValidationError(TwistedZetaError):
    pass
