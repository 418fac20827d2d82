"""Exception hierarchy shared by every module in the package."""


class LinkEquivError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LinkEquivError, ValueError):
    """A numeric argument lies outside the mathematical domain."""


class ArgumentError(LinkEquivError, ValueError):
    """Arguments violate a structural contract (shapes, sizes, ranges)."""


class DegenerateSampleError(LinkEquivError, ValueError):
    """The sample carries no usable signal (all-zero x, zero variance)."""


class SeparationError(LinkEquivError, RuntimeError):
    """The response is perfectly separable, so the MLE diverges."""


class NumericalError(LinkEquivError, ArithmeticError):
    """A matrix operation failed beyond what ridge damping can repair."""


class ExperimentError(LinkEquivError, RuntimeError):
    """A replication experiment produced no usable replicates."""
