"""Exception hierarchy shared by all smallenergy modules."""


class SmallEnergyError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(SmallEnergyError):
    """Malformed numeric or model text; carries the offending position."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class UsageError(SmallEnergyError):
    """An operation was called with arguments outside its contract."""


class BracketError(SmallEnergyError):
    """A 1D root search was given an interval without a sign change."""


class DomainError(SmallEnergyError):
    """A function evaluation returned a non-finite value."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class PoleError(SmallEnergyError):
    """Evaluation requested at (or numerically on top of) a pole."""


class RangeError(SmallEnergyError):
    """Argument outside the validated range of an approximation."""


class ParityError(SmallEnergyError):
    """A series expected to be even in its variable has a large odd term."""

    def __init__(self, message, worst_index=None, worst_coeff=None):
        super().__init__(message)
        self.worst_index = worst_index
        self.worst_coeff = worst_coeff


class InconclusiveRadiusError(SmallEnergyError):
    """Radius estimation hit zero trailing coefficients."""


class SingularJacobianError(SmallEnergyError):
    """The 2x2 Newton Jacobian is numerically rank deficient."""

    def __init__(self, message, jacobian=None):
        super().__init__(message)
        self.jacobian = jacobian


class ConvergenceError(SmallEnergyError):
    """An iteration exhausted its budget; carries the last iterate."""

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class TaylorBlindError(SmallEnergyError):
    """Taylor data about the origin cannot represent this potential."""


class CutoffError(SmallEnergyError):
    """Hierarchy integration cutoff does not sit in the classically forbidden region."""


class TrackingError(SmallEnergyError):
    """Root-sequence tracking could not build two usable chains."""

    def __init__(self, message, chains=None):
        super().__init__(message)
        self.chains = chains


class SearchFailureError(SmallEnergyError):
    """A seeded search (grid scan + refinement) found no acceptable root."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics
