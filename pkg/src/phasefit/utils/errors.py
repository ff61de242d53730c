"""Custom exception hierarchy for phasefit."""


class PhaseFitError(Exception):
    """Base exception for phasefit errors."""

    pass


class StateSpecError(PhaseFitError):
    """State specification violates its class invariants."""

    pass


class ParityError(StateSpecError):
    """Sub-state requested with an odd j_max (j_max/2 must be an integer)."""

    pass


class AperiodicStateError(PhaseFitError):
    """State has a single m component, so its phase PDF has no period."""

    pass


class UnsupportedStateError(PhaseFitError):
    """State outside the class an operation is defined for."""

    pass


class AngularMomentumError(PhaseFitError):
    """Angular momentum quantum number is negative or not a half-integer."""

    pass


class QuadratureError(PhaseFitError):
    """Integration over a bin produced no usable mass."""

    pass


class EstimationError(PhaseFitError):
    """Phase estimation failed at a specific trial point."""

    def __init__(self, x: float, message: str):
        """
        Initialize estimation error.

        Args:
            x: Dummy-variable value where the objective broke down
            message: Error message
        """
        self.x = x
        self.message = message
        super().__init__(f"Estimation failed at x={x!r}: {message}")


class TrialFailedError(PhaseFitError):
    """A Monte-Carlo trial aborted the noise study."""

    def __init__(self, trial: int, cause: Exception):
        """
        Initialize trial failure.

        Args:
            trial: Index of the failing trial
            cause: Underlying exception
        """
        self.trial = trial
        self.cause = cause
        super().__init__(f"Trial {trial} failed: {cause}")


class ValidationFailure(PhaseFitError):
    """An invariant check of the validation suite did not hold."""

    def __init__(self, check: str, detail: str = ""):
        self.check = check
        self.detail = detail
        super().__init__(f"Invariant '{check}' failed{': ' + detail if detail else ''}")
