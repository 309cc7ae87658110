"""Exception types raised by chaoskit."""


class ChaosKitError(Exception):
    """Base class for all chaoskit errors."""


class DomainError(ChaosKitError, ValueError):
    """Parameter outside the mathematical domain of an operation."""


class DegreeCapError(DomainError):
    """Polynomial degree exceeds the configured cap."""

    def __init__(self, degree: int, cap: int):
        super().__init__(f"degree {degree} exceeds cap {cap}")
        self.degree = degree
        self.cap = cap


class ShapeError(ChaosKitError, ValueError):
    """Dimension, rank or array-shape mismatch."""


class SymmetryError(ShapeError):
    """Kernel is not symmetric within its holomorphic/antiholomorphic slots."""


class ConditioningError(ChaosKitError, ArithmeticError):
    """Matrix is numerically singular."""


class EstimatorError(ChaosKitError, ArithmeticError):
    """Degenerate input to an estimator."""
