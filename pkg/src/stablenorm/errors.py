"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input fails a documented precondition (bad norm parameters,
    non-primitive class where a primitive one is required, malformed
    scenario file, ...)."""


class SearchBudgetError(RuntimeError):
    """An enumeration exceeded its node budget before proving its result.

    Carries enough context to retry with a larger budget.
    """

    def __init__(self, message: str, *, nodes_expanded: int, budget: int):
        super().__init__(message)
        self.nodes_expanded = nodes_expanded
        self.budget = budget


class WindowTooSmallError(ValueError):
    """A shortest-cycle search window was too small to certify the
    minimum; the caller should widen it."""

    def __init__(self, message: str, *, window: int):
        super().__init__(message)
        self.window = window


class ConstructionError(RuntimeError):
    """A geometric construction (arc-polygon rounding, sharpness witness)
    could not be completed within its documented parameter range."""
