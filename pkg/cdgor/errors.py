"""
errors.py - Exception Hierarchy

Every failure a caller can act on is a subclass of CdgorError. The CLI
catches CdgorError at the top level and maps it to exit status 2; anything
else escaping the library is a bug.

CdgorError derives from ValueError so plain ``except ValueError`` call
sites keep working.
"""

from typing import Optional


class CdgorError(ValueError):
    """Base class for all domain errors raised by cdgor."""


# =============================================================================
# POSETS
# =============================================================================

class NotGraded(CdgorError):
    """A cover relation skips a rank, or 0̂ does not have rank 0."""


class NoUniqueBottomTop(CdgorError):
    """The poset lacks a unique minimal or unique maximal element."""


class Cyclic(CdgorError):
    """The cover relations contain a directed cycle."""


class NotComparable(CdgorError):
    """An interval [x, y] was requested with x not below y."""


class ZipPreconditionViolated(CdgorError):
    """
    Zipping was requested on a triple that does not qualify.

    Attributes:
        condition: Which condition failed: "i", "ii", "iii" or "thin"
    """

    def __init__(self, condition: str, message: str):
        super().__init__(f"condition ({condition}) failed: {message}")
        self.condition = condition


class ResultNotGraded(CdgorError):
    """A zip produced a relation set that is not a graded poset."""


class NotACover(CdgorError):
    """Unzipping was requested on a pair that is not an interior cover."""


class TooLarge(CdgorError):
    """An isomorphism test exceeded the element budget."""


# =============================================================================
# SIMPLICIAL COMPLEXES
# =============================================================================

class NotAFace(CdgorError):
    """The given vertex set is not a face of the complex."""


class NotAnEdge(CdgorError):
    """The given vertex pair is not an edge of the complex."""


class VertexCollision(CdgorError):
    """A 'fresh' vertex id is already in use."""


class HNotSymmetric(CdgorError):
    """The h-vector is not palindromic, so the γ-vector is undefined."""


class NotPure(CdgorError):
    """Facets of different dimensions where a pure complex is required."""


class BudgetExceeded(CdgorError):
    """The complex has more faces than the configured homology budget."""

    def __init__(self, faces: int, budget: int):
        super().__init__(f"{faces} faces exceeds budget of {budget}")
        self.faces = faces
        self.budget = budget


# =============================================================================
# FLAG VECTORS AND cd-POLYNOMIALS
# =============================================================================

class NotCdExpressible(CdgorError):
    """The ab-polynomial is not in the image of c = a+b, d = ab+ba."""


class WrongDegree(CdgorError):
    """A cd-polynomial or d-vector has the wrong degree for the request."""


class LeadingCoeffNotOne(CdgorError):
    """The coefficient of c^n is not 1."""


# =============================================================================
# CONSTRUCTIONS
# =============================================================================

class KTooSmall(CdgorError):
    """A cycle poset was requested with fewer than 3 sides."""


class InfeasibleTarget(CdgorError):
    """No construction exists for the requested invariant vector."""

    def __init__(self, target: object, reason: Optional[str] = None):
        message = f"target {target} is infeasible"
        if reason:
            message += f": {reason}"
        super().__init__(message)
        self.target = target


class DegenerateCycle(CdgorError):
    """A construction step needs a cycle of length below 3."""


# =============================================================================
# FILES
# =============================================================================

class MalformedFile(CdgorError):
    """A poset, complex or cd-polynomial description cannot be parsed."""
