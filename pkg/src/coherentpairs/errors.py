"""Exception types shared across the package.

Every math-domain error carries the failing index (where one exists) and
the name of the violated precondition, so batch front-ends can emit a
structured error record.
"""


class CoherentPairsError(Exception):
    """Base class for all package errors."""


class InvalidParameter(CoherentPairsError):
    """A classical-family parameter is outside its admissible set."""


class NotStronglyClassical(CoherentPairsError):
    """The functional has no classical antiderivative companion."""


class IndexedError(CoherentPairsError):
    """Math-domain error pinned to a sequence index."""

    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = f"{message} (index n={index})"
        super().__init__(message)


class QuasiDefiniteViolation(IndexedError):
    """A Gram-Schmidt pivot <u, P_n^2> vanished: the Hankel minor is zero."""


class SobolevDegeneracy(IndexedError):
    """A Sobolev pivot phi_lambda(S_n, S_n) vanished."""


class DegenerateNorm(IndexedError):
    """A norm appearing in a denominator is zero."""


class DivisionByZeroCoefficient(IndexedError):
    """A solver recursion hit a zero pivot (tau, e, c, gamma or an initial)."""


class InconsistentStructure(IndexedError):
    """Structure coefficients violate an identity that valid data must satisfy."""


class UnderdeterminedInitials(CoherentPairsError):
    """The supplied initial values do not close the requested recursion."""

    def __init__(self, message, missing=()):
        self.missing = tuple(missing)
        if self.missing:
            message = f"{message}; required: {', '.join(self.missing)}"
        super().__init__(message)


class SingularMkSystem(CoherentPairsError):
    """The 2x2 system for the point-mass constants M0, M1 is singular."""


class ZeroM2(CoherentPairsError):
    """<A v, R_2> = 0: the degree-2 multiplier collapses against v."""


class ConfigError(CoherentPairsError):
    """A run configuration failed to parse or validate."""
