"""Exception hierarchy shared by all modules."""


class ScatteringError(Exception):
    """Base class for every error raised by scatter1d."""


class NonpositiveWavenumberError(ScatteringError, ValueError):
    pass


class StepTooLargeError(ScatteringError, ValueError):
    pass


class SingularMatrixError(ScatteringError, ArithmeticError):
    pass


class WavenumberMismatchError(ScatteringError, ValueError):
    pass


class DeltaEvaluationError(ScatteringError, TypeError):
    """Raised when a pointwise value of a delta potential is requested."""


class SpectralSingularityError(ScatteringError, ArithmeticError):
    """M22 vanishes (to within the guard), so the amplitudes diverge.

    ``m22_abs`` carries the offending magnitude so callers can tell an exact
    singularity from a near miss.
    """

    def __init__(self, k, m22_abs, eps):
        self.k = k
        self.m22_abs = m22_abs
        self.eps = eps
        super().__init__(f"|M22({k:g})| = {m22_abs:.3e} <= {eps:.1e}: spectral singularity")


class ZeroTransmissionError(ScatteringError, ArithmeticError):
    pass


class DegenerateDError(ScatteringError, ArithmeticError):
    """|D(k)| is below the guard; the point is (numerically) a CPA wavenumber."""

    def __init__(self, d_abs, eps):
        self.d_abs = d_abs
        self.eps = eps
        super().__init__(f"|D| = {d_abs:.3e} <= {eps:.1e}: transform undefined at a CPA point")


class NonsingularMatrixError(ScatteringError, ValueError):
    pass


class BracketError(ScatteringError, ValueError):
    pass


class NotConvergedError(ScatteringError, RuntimeError):
    """Optimizer failed; ``best`` holds the best potential found and ``value`` its |D|."""

    def __init__(self, message, best=None, value=None):
        self.best = best
        self.value = value
        super().__init__(message)
