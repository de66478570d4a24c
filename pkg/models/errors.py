"""
Exception hierarchy shared by every layer.

Axiom failures are not exceptions; they come back as AxiomReport values.
"""

from __future__ import annotations

from typing import Any


class AffgebraError(Exception):
    """Base class for all toolkit errors."""


class ScalarParseError(AffgebraError, ValueError):
    """A scalar literal does not match the scalar grammar."""


class MatrixParseError(AffgebraError, ValueError):
    """Matrix text or JSON is malformed (ragged rows, bad scalars, ...)."""


class ZeroDenominatorError(AffgebraError, ZeroDivisionError):
    pass


class DivisionByZeroError(AffgebraError, ZeroDivisionError):
    pass


class DimensionMismatchError(AffgebraError, ValueError):
    pass


class FieldMismatchError(AffgebraError, ValueError):
    pass


class UnknownGeneratorError(AffgebraError, KeyError):
    pass


class MembershipError(AffgebraError, ValueError):
    """A matrix is not in the carrier; `constraint` names the first violated condition."""

    def __init__(self, message: str, constraint: str | None = None):
        super().__init__(message)
        self.constraint = constraint


class AffinityError(AffgebraError):
    """A map passed where an affine map is required fails affinity on a witness."""

    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report


class IdempotencyError(AffgebraError):
    """[a, a] != a for a sampled point, so the vector-valued bracket is undefined."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class CompletionError(AffgebraError, AssertionError):
    """The dependent constraint failed after completion; indicates a bug, not bad input."""


class VerificationError(AffgebraError, AssertionError):
    """A built-in exact verification failed; indicates a bug, not bad input."""
