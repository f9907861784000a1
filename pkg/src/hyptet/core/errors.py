"""
Exception hierarchy for hyptet.

Every error carries a short ``code`` that reports and metrics use as a label.
"""

from typing import Sequence, Tuple


class HyptetError(Exception):
    code = "hyptet_error"


class DomainError(HyptetError, ValueError):
    code = "domain"


class DegenerateTetrahedronError(HyptetError, ValueError):
    code = "degenerate"


class BranchCutError(HyptetError, ValueError):
    code = "branch_cut"


class ConstraintViolationError(HyptetError, ValueError):
    code = "constraint"


class NonHyperbolicError(HyptetError):
    code = "non_hyperbolic"

    def __init__(self, delta: float, euclidean: bool = False):
        self.delta = float(delta)
        self.euclidean = euclidean
        if euclidean:
            message = "Euclidean: δ = 0"
        else:
            message = f"non-hyperbolic: δ = {self.delta:.6g} < 0"
        super().__init__(message)


class NonGenericError(HyptetError):
    code = "non_generic"

    def __init__(self, violated: Sequence[str], ideal_vertex: bool = False):
        self.violated: Tuple[str, ...] = tuple(violated)
        self.ideal_vertex = ideal_vertex
        reason = "ideal vertices" if ideal_vertex else "degenerate monomials"
        listed = ", ".join(self.violated[:6])
        super().__init__(f"non-generic: {reason} ({listed})")


class HolonomyViolationError(HyptetError):
    code = "holonomy"


class SingularConfigurationError(HyptetError):
    code = "singular"


class NeedsLogCorrectionError(HyptetError):
    """The z-list satisfies the product constraints but not the positivity ones."""

    code = "needs_log_correction"


class RealizationError(HyptetError):
    code = "realization"


class ConvergenceError(HyptetError):
    code = "convergence"


__all__ = [
    "HyptetError",
    "DomainError",
    "DegenerateTetrahedronError",
    "BranchCutError",
    "ConstraintViolationError",
    "NonHyperbolicError",
    "NonGenericError",
    "HolonomyViolationError",
    "SingularConfigurationError",
    "NeedsLogCorrectionError",
    "RealizationError",
    "ConvergenceError",
]
