"""Exception types shared across the package."""


class ImpactPowerError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(ImpactPowerError):
    """Operands have incompatible shapes or subsystem dimensions."""


class NotHermitian(ImpactPowerError):
    """A matrix required to be Hermitian deviates beyond tolerance."""


class NoConvergence(ImpactPowerError):
    """An iterative routine failed to reach its stopping criterion."""


class NotNormalized(ImpactPowerError):
    """A vector or basis fails its normalization/orthonormality check."""


class OutOfRange(ImpactPowerError):
    """A scalar parameter lies outside its admissible interval."""


class InvalidDensityMatrix(ImpactPowerError):
    """A matrix violates the density-operator invariants."""


class InvalidHamiltonian(ImpactPowerError):
    """A projector decomposition violates the Hamiltonian invariants."""


class DegenerateHamiltonian(ImpactPowerError):
    """The operation requires a (fully) nondegenerate local Hamiltonian."""
