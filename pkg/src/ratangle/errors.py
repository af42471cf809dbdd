"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """Inputs lie outside the geometric or analytic domain of an operation."""


class StructuralError(RuntimeError):
    """An internal structural assertion failed (signals a construction bug)."""


class DerivationError(StructuralError):
    """A named step of a symbolic derivation replay failed."""

    def __init__(self, step: str, message: str):
        super().__init__(f"[{step}] {message}")
        self.step = step
