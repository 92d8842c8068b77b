"""Exception and warning types raised across the package."""


class BHWalkError(Exception):
    """Base class for all package errors."""


class InvalidLatticeError(BHWalkError, ValueError):
    pass


class SymmetryUndefinedError(BHWalkError, ValueError):
    """The requested symmetry does not exist on this lattice (e.g. boost on an odd ring)."""


class NumericalFailureError(BHWalkError, RuntimeError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class BasisMismatchError(BHWalkError, ValueError):
    pass


class DegenerateStateError(BHWalkError, ValueError):
    """A state or map has no weight where some is required (zero vector, all-zero map)."""


class EmptySectorError(BHWalkError, ValueError):
    pass


class UnsupportedError(BHWalkError, ValueError):
    pass


class DegeneracyWarning(UserWarning):
    """Degenerate eigenspaces could not be cleanly resolved by translation."""


class BoundaryWarning(UserWarning):
    """The walkers have reached the periodic seam of the ring."""
