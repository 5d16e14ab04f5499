"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """A parameter value violates a documented precondition."""


class StructuralError(ValueError):
    """Input data has inconsistent shape or missing required blocks."""


class DegenerateDataError(ValueError):
    """Data carries no usable signal (e.g. identically zero snapshots)."""


class NumericalError(RuntimeError):
    """A numerical routine (eigensolver, sweep) failed to produce a result."""


class BlowUpError(RuntimeError):
    """The field became non-finite during time stepping.

    Attributes
    ----------
    time : float
        Simulation time at which non-finite values were first detected.
    """

    def __init__(self, time: float):
        self.time = time
        super().__init__(f"field blew up (non-finite values) at t = {time:.6g}")
