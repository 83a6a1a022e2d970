"""Exception types shared across the toolkit."""


class SdreError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrix(SdreError):
    """A pivot collapsed during elimination; the system has no reliable solution."""


class RankDeficient(SdreError):
    """Least-squares regressor lost column rank (insufficient excitation)."""


class NotControllable(SdreError):
    """Controllability matrix is numerically singular; poles cannot be placed."""


class NotStabilizing(SdreError):
    """Supplied initial gain does not stabilize the linearized plant."""


class NotPositiveDefinite(SdreError):
    """A matrix required to be positive definite failed Sylvester's criterion."""


class NoConvergence(SdreError):
    """Iteration limit reached before the convergence tolerance was met."""

    def __init__(self, message, last_result=None):
        super().__init__(message)
        self.last_result = last_result


class NonFiniteState(SdreError):
    """Integration produced NaN/Inf entries."""


class SolverFailed(SdreError):
    """Gain computation failed irrecoverably during a closed-loop run."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class ConfigError(SdreError):
    """Malformed experiment configuration (bad key, value, or flag)."""
