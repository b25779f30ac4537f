"""Exception types raised across the package."""


class InvalidInputError(ValueError):
    """An argument violates a documented precondition."""


class UnnormalizedProfileError(InvalidInputError):
    """A momentum profile was evaluated before its norm was fixed."""


class ConvergenceError(ArithmeticError):
    """A quadrature did not converge under grid refinement."""


class SingularFrameError(ArithmeticError):
    """The dual-frame linear system has no finite solution."""

    def __init__(self, message, condition=float("inf")):
        super().__init__(message)
        self.condition = condition


class SolverError(ArithmeticError):
    """The discrimination SDP failed to certify its optimum."""

    def __init__(self, message, gap=float("nan")):
        super().__init__(message)
        self.gap = gap
