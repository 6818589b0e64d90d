"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Matrix dimensions are incompatible with the requested operation."""


class SingularMatrixError(ValueError):
    """A matrix required to be invertible has zero determinant."""


class PreconditionError(ValueError):
    """An operation's documented precondition does not hold for the input."""


class SamplingError(RuntimeError):
    """A randomized search exhausted its retry budget."""


class FormatError(ValueError):
    """Text or JSON input does not conform to the documented format."""


class InternalError(RuntimeError):
    """An internal invariant failed; indicates a bug, not bad input."""
