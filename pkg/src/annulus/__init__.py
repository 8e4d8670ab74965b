"""Explicit function theory of the annulus and the unit disk.

Elliptic and theta functions, the annulus Green's function in four closed
forms, its kernels and critical points, potential geometry on the disk and
annulus, Bol operators on weighted Bergman spaces and the prepotential of a
second-order linear ODE.
"""

__version__ = "0.1.0"

from .policy import (  # noqa: E402
    AnnulusError,
    BranchError,
    ConstraintError,
    DomainError,
    PoleError,
    PrecisionError,
    SingularityError,
    SolverError,
    TruncationPolicy,
)
from .greens import AnnulusDomain, G, annulus  # noqa: E402

__all__ = [
    "__version__", "AnnulusDomain", "G", "annulus", "TruncationPolicy",
    "AnnulusError", "BranchError", "ConstraintError", "DomainError", "PoleError",
    "PrecisionError", "SingularityError", "SolverError",
]
