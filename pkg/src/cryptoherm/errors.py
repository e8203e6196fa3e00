"""Exception types shared across the library.

Numerical failures and configuration failures form two separate trees so the
command-line front end can map them to distinct exit codes.
"""


class CryptohermError(Exception):
    """Base class for every error raised by this package."""


class NumericalError(CryptohermError):
    """A computation failed on numerical grounds (CLI exit code 1)."""


class ConfigError(CryptohermError):
    """A run configuration could not be parsed or validated (CLI exit code 2)."""


class DefectiveMatrix(NumericalError):
    """Eigenvector basis is numerically singular; the matrix is treated as
    non-diagonalizable and is reported rather than regularized."""


class SingularMatrix(NumericalError):
    """Matrix inversion requested for a numerically singular matrix."""


class NotPositiveDefinite(NumericalError):
    """Principal square root requested for a matrix that is not Hermitian
    positive definite."""


class DimensionMismatch(NumericalError):
    """Operands have incompatible shapes."""


class InvalidWeights(NumericalError):
    """Spectral metric weights must be real and strictly positive."""


class PositivityFailure(NumericalError):
    """Assembled metric candidate failed its Hermiticity/positivity checks."""


class DegenerateOverlap(NumericalError):
    """Left/right state overlap is numerically zero."""


class NotHermitian(NumericalError):
    """A sampled generator violated its Hermiticity precondition."""


class NonFiniteState(NumericalError):
    """Propagated state left the finite range supported by the integrator."""


class ExpectsRealSpectrum(NumericalError):
    """An operation requiring a real spectrum received complex eigenvalues."""


class ResampleExhausted(NumericalError):
    """Random sampler failed to satisfy its conditioning cap."""


class ParseError(ConfigError):
    """Configuration document is not well-formed."""


class ValidationError(ConfigError):
    """Configuration document is well-formed but violates the schema."""


class IllConditionedWarning(UserWarning):
    """Residual guarantees degrade beyond the documented condition-number cap."""
