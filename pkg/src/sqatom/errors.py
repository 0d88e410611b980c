"""Exception types shared across the simulation modules."""

from __future__ import annotations


class DegenerateConfigurationError(ValueError):
    """Raised when Omega = Delta = 0 leaves the dressed-frame fractions undefined."""


class SingularDenominatorError(ArithmeticError):
    """Raised when the steady-state denominator is zero or numerically negligible."""


class StiffnessError(RuntimeError):
    """Raised when the adaptive integrator underflows its step size."""


class QuadratureError(RuntimeError):
    """Raised when adaptive quadrature reports an error estimate above tolerance."""


class ConfigError(ValueError):
    """Raised on malformed or inconsistent run configuration text.

    Carries the one-based line number of the offending entry when one
    can be attributed.
    """

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
