"""Exception types shared across the package."""


class EntpowerError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(EntpowerError):
    """Operands have incompatible or unexpected dimensions."""


class NotHermitian(EntpowerError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotPSD(EntpowerError):
    """A matrix required to be positive semidefinite has a genuinely negative eigenvalue."""


class NotUnitary(EntpowerError):
    """A matrix required to be unitary is not, beyond tolerance."""


class OutOfRange(EntpowerError):
    """A scalar argument lies outside its documented domain."""


class BinOverflow(EntpowerError):
    """A sample fell outside the histogram range by more than the allowed slack."""


class EmptyReference(EntpowerError):
    """The histogram bin used as the width reference holds no samples."""


class NonPositiveWidth(EntpowerError):
    """A power-law fit received a non-positive width."""


class InvariantViolation(EntpowerError):
    """A per-sample numerical invariant failed during an experiment."""
