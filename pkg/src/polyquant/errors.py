"""Exception types raised by polyquant."""


class PolyquantError(Exception):
    """Base class for all library errors."""


class InvalidArgument(PolyquantError, ValueError):
    pass


class InvalidInterval(InvalidArgument):
    pass


class TooFewPoints(InvalidArgument):
    """Requested fewer points than the conditional set already holds."""


class UnsupportedConstraint(InvalidArgument):
    """Constraint not available for this polygon (diagonals need k = 6)."""


class DegenerateBisector(InvalidArgument):
    """Two coincident sites have no perpendicular bisector."""


class InstanceTooLarge(InvalidArgument):
    pass


class SolverFailure(PolyquantError, RuntimeError):
    """A numerical solve did not reach its stationarity target.

    ``diagnostics`` carries whatever the solver knew when it gave up.
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
