"""Exception types shared across the package."""


class SimplexInterpError(Exception):
    """Base class for all errors raised by this package."""


class OutOfLatticeError(SimplexInterpError, ValueError):
    """A shifted lattice index left the admissible index set."""


class SingularGeometryError(SimplexInterpError, ValueError):
    """A simplex is degenerate (or too close to degenerate) for the operation."""


class IllConditionedElementError(SimplexInterpError, RuntimeError):
    """The nodal Vandermonde system of an element is numerically singular."""


class InsufficientProbeSpaceError(SimplexInterpError, ValueError):
    """The constrained probe space is trivial; no lower bound can be formed."""


class NumericalFailureError(SimplexInterpError, RuntimeError):
    """A numerical routine failed after its built-in retry."""
