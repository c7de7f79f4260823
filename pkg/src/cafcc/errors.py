"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CafccError(Exception):
    """Base class for all errors raised by this package."""


# Division by zero is the native exception; both scalar backends raise it.
DivisionByZero = ZeroDivisionError


class ZeroSeed(CafccError):
    """Surd parameter constructed from a zero seed."""


class MissingSurd(CafccError):
    """A surd-bearing slot received a plain scalar."""


class DomainViolation(CafccError):
    """Input outside an equation's domain (zero face value, zero parameter,
    vanishing denominator)."""


class InadmissibleDeltas(CafccError):
    """Delta tuple not in the family's admissible set."""


class InadmissibleConfig(CafccError):
    """Equation-system configuration not among the admissible systems."""


class DegenerateSlot(CafccError):
    """The linear coefficient of the requested corner slot vanishes."""


class DegenerateSolve(CafccError):
    """A solve inside the consistency run degenerated.

    Carries enough context (step, equation index) to let the caller resample.
    """

    def __init__(self, step: int, index: int, message: str = ""):
        self.step = step
        self.index = index
        super().__init__(message or f"degenerate solve at step {step}, equation {index}")


class TypeBNotAllowed(CafccError):
    """Type-B equations cannot be fed to the corner-to-corner transition builder."""


class NotTypeC(CafccError):
    """The face-to-face transition builder accepts type-C equations only."""


class SingularMatrix(CafccError):
    """2x2 matrix with zero determinant cannot be inverted."""


class NoCatalogueEntry(CafccError):
    """No hard-coded coefficient matrix / determinant for this equation."""


class RegimeMismatch(CafccError):
    """Normalization rule applied outside its admissible parameter regime."""


class RetriesExhausted(CafccError):
    """Sampler could not produce a non-degenerate point within the retry budget."""


class EmptyScope(CafccError):
    """Suite scope filtered down to nothing."""
