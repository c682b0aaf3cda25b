"""Exception types shared across the package."""
from __future__ import annotations


class FairsliceError(Exception):
    """Base class for package-specific errors."""


class InputFormatError(FairsliceError):
    """Malformed input document; the message carries the field or line."""


class BudgetExceededError(FairsliceError):
    """A refinement was refused because it would exceed the simplex budget."""

    def __init__(self, message: str, *, requested: int, budget: int):
        super().__init__(message)
        self.requested = requested
        self.budget = budget


class AssumptionViolationError(FairsliceError):
    """A preference oracle violated the full-division assumption."""

    def __init__(self, message: str, *, player: int | None = None, point=None):
        super().__init__(message)
        self.player = player
        self.point = point


class InvariantViolationError(FairsliceError):
    """An internal invariant that callers rely on failed to hold."""


class PreconditionError(FairsliceError):
    """A named precondition of an operation was not satisfied."""

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name


class WitnessNotFoundError(FairsliceError):
    """No fully-labeled simplex exists; carries the instance for inspection."""

    def __init__(self, message: str, *, instance: dict):
        super().__init__(message)
        self.instance = instance
