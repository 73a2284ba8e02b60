"""Exception taxonomy shared by all modules.

The CLI maps these onto its stable exit codes: parse problems exit 2,
degenerate/invalid mathematical input exits 3, a request for an
eigenvalue that was never computed exits 4, and I/O failures exit 5.
A failed verdict is not an exception; it exits 1.
"""


class HodgespecError(Exception):
    """Base class for all library errors."""


class ParseError(HodgespecError):
    """Malformed rational / Gaussian-rational string or input document."""


class DimensionMismatchError(HodgespecError):
    """Operands whose shapes or ambient dimensions do not conform."""


class ShapeMismatchError(DimensionMismatchError):
    """A package block whose shape contradicts the declared dims table."""


class NotHermitianError(HodgespecError):
    """Gram input that is not conjugate-symmetric."""


class NotPositiveDefiniteError(HodgespecError):
    """Gram input with a nonpositive LDL* pivot."""


class SingularMatrixError(HodgespecError):
    """Exact solve/inverse requested for a singular matrix."""


class SingularBasisError(HodgespecError):
    """Lattice basis that is not invertible over the rationals."""


class NotInDualLatticeError(HodgespecError):
    """A mode vector that does not belong to the torus's dual lattice."""


class ZeroEigenvalueLineError(HodgespecError):
    """A positive-eigenvalue-only computation requested on the zero line."""


class UnknownEigenvalueError(HodgespecError):
    """An eigenvalue key absent from the computed lines."""


class IncompleteSpectrumError(HodgespecError):
    """Candidate eigenvalues fail to exhaust the package dimensions."""


class IncompleteRangeError(HodgespecError):
    """Spectral lines do not cover the requested comparison window."""
