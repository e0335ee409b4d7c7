"""Exception types shared across the package."""


class CvschwingerError(Exception):
    """Base class for all package errors."""


class DomainError(CvschwingerError):
    """Input lies outside the domain of an operation."""


class ShapeError(CvschwingerError):
    """Matrix shape or block structure does not match what was expected."""


class NumericalError(CvschwingerError):
    """A numerical consistency check failed beyond tolerance."""


class TruncationError(CvschwingerError):
    """Fock-space truncation discards too much weight to trust the result."""


class SweepError(CvschwingerError):
    """One or more sweep points failed.

    Carries ``failures``, a list of ``(index, x, message)`` tuples, so a long
    run can report every bad grid point instead of dying on the first one.
    """

    def __init__(self, failures):
        self.failures = list(failures)
        indices = [i for i, _, _ in self.failures]
        super().__init__(
            "%d sweep point(s) failed at indices %s" % (len(self.failures), indices)
        )


class BranchConditionWarning(UserWarning):
    """Emitted when a piecewise formula is evaluated near its branch boundary
    and the two branches disagree beyond tolerance."""
