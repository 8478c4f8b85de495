"""Shared exception types for the numerical kernels."""


class NonConvergenceError(RuntimeError):
    """A quadrature or series evaluation failed to reach its tolerance."""


class QuadratureNonConvergence(NonConvergenceError):
    def __init__(self, message, worst_panel=None, err_estimate=None):
        super().__init__(message)
        self.worst_panel = worst_panel
        self.err_estimate = err_estimate


class SeriesNonConvergence(NonConvergenceError):
    def __init__(self, message, n_reached=None, tail_magnitude=None):
        super().__init__(message)
        self.n_reached = n_reached
        self.tail_magnitude = tail_magnitude
