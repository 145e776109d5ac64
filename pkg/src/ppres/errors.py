"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """An exact search was refused because it exceeds a configured guard."""


class GeneratorError(ValueError):
    """A hardness-instance generator rejected its input."""
