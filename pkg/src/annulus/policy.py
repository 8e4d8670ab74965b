"""Truncation policy and the exception hierarchy shared by every module."""

from __future__ import annotations

from dataclasses import dataclass


class AnnulusError(Exception):
    """Base class for all library errors."""


class DomainError(AnnulusError, ValueError):
    """Input outside the domain of definition."""


class PrecisionError(AnnulusError, ArithmeticError):
    """The requested evaluation cannot be carried out in binary64."""


class PoleError(AnnulusError, ZeroDivisionError):
    """Evaluation at (or numerically at) a pole."""

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class SingularityError(AnnulusError, ValueError):
    """Kernel evaluated on its diagonal singularity."""


class SolverError(AnnulusError, RuntimeError):
    """A root finder or quadrature did not converge. ``trace`` holds iterates."""

    def __init__(self, message: str, trace: list | None = None):
        super().__init__(message)
        self.trace = trace or []


class BranchError(AnnulusError, ValueError):
    """A fractional power or inverse would need an undefined branch."""


class ConstraintError(AnnulusError, ValueError):
    """Parameters violate a stated constraint."""


@dataclass(frozen=True)
class TruncationPolicy:
    series_terms: int = 64
    rel_tol: float = 1e-12
    quad_nodes: int = 256

    def __post_init__(self):
        if not (isinstance(self.series_terms, int) and self.series_terms >= 8):
            raise ValueError("series_terms must be an integer >= 8")
        if not (0.0 < self.rel_tol <= 1e-4):
            raise ValueError("rel_tol must lie in (0, 1e-4]")
        if not (isinstance(self.quad_nodes, int) and self.quad_nodes > 0):
            raise ValueError("quad_nodes must be a positive integer")


DEFAULT_POLICY = TruncationPolicy()
