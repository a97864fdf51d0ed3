"""Exception types shared across the package."""


class DmentError(Exception):
    """Base class for all errors raised by this package."""


class NotHermitianError(DmentError):
    """Input matrix deviates from its conjugate transpose beyond tolerance."""


class NoConvergenceError(DmentError):
    """The eigensolver failed to converge; input is numerically pathological."""


class NormalizationError(DmentError):
    """State amplitudes do not satisfy the unit-norm constraint."""


class LabelCollisionError(DmentError):
    """Two registers being composed share a qubit label."""


class DimensionMismatchError(DmentError):
    """Matrix or state has the wrong dimension for the requested operation."""


class UnknownLabelError(DmentError):
    """A qubit label is not present in the state's register."""


class EmptyGridError(DmentError):
    """A sweep grid contains no admissible points."""


class UnknownMeasureError(DmentError):
    """Requested measure name is not a known report field."""


class UnknownTargetError(DmentError):
    """Requested reproduction target does not exist."""


class NoPeriodError(DmentError):
    """No period was found within the scanned range."""
