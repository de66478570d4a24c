"""
Report and payload models. Everything here is JSON-ready (scalars and matrices as strings).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, Field

from models.exactmatrix import ExactMatrix, matrix_to_json
from models.exactfield import EisensteinScalar, scalar_format


def render(value: Any) -> Any:
    """Scalars -> literal strings, matrices -> arrays of literal strings."""
    if isinstance(value, ExactMatrix):
        return matrix_to_json(value)
    if isinstance(value, (Fraction, EisensteinScalar, int)) and not isinstance(value, bool):
        return scalar_format(value)
    if isinstance(value, (list, tuple)):
        return [render(v) for v in value]
    if isinstance(value, dict):
        return {k: render(v) for k, v in value.items()}
    return value


class AxiomReport(BaseModel):
    """Outcome of an axiom suite: pass, or the first counterexample in sample order."""

    suite: str
    passed: bool
    checked: int = 0
    identity: Optional[str] = None
    inputs: dict[str, Any] = Field(default_factory=dict)
    left: Any = None
    right: Any = None

    @classmethod
    def ok(cls, suite: str, checked: int) -> "AxiomReport":
        return cls(suite=suite, passed=True, checked=checked)

    @classmethod
    def counterexample(cls, suite: str, identity: str, inputs: dict[str, Any], left: Any, right: Any,
                       checked: int = 0) -> "AxiomReport":
        return cls(
            suite=suite,
            passed=False,
            checked=checked,
            identity=identity,
            inputs=render(inputs),
            left=render(left),
            right=render(right),
        )

    def __bool__(self) -> bool:
        return self.passed


def combine_reports(suite: str, reports: list[AxiomReport]) -> AxiomReport:
    """First failing report wins; otherwise a pass counting every checked instance."""
    checked = sum(r.checked for r in reports)
    for report in reports:
        if not report.passed:
            return report.model_copy(update={"checked": checked})
    return AxiomReport.ok(suite, checked)


class MembershipReport(BaseModel):
    member: bool
    n: int
    violated: Optional[str] = None


class CompletionReport(BaseModel):
    n: int
    pattern: list[str]
    matrix: list[list[str]]


class BracketReport(BaseModel):
    n: int
    bracket: list[list[str]]
    coefficients: Optional[list[str]] = None


class TableRow(BaseModel):
    left: str
    right: str
    coefficients: list[str]


class TableReport(BaseModel):
    generators: list[str]
    rows: list[TableRow]


class RelationCheck(BaseModel):
    relation: str
    left: list[list[str]]
    right: list[list[str]]
    holds: bool


class ChevalleyReport(BaseModel):
    basepoint: str
    e: list[list[str]]
    f: list[list[str]]
    h: list[list[str]]
    relations: list[RelationCheck]
    passed: bool


class ReductionReport(BaseModel):
    n: int
    reduced: list[list[str]]
    vector: list[list[str]]
    commutator: list[list[str]]
    intertwines: bool
    in_sl0: bool


class LineIsoReport(BaseModel):
    zeta1: str
    zeta2: str
    lam: str
    mu: str
    preserved: bool
    factored: bool
    onto: bool


class AxiomsRunReport(BaseModel):
    n: int
    field: str
    seed: int
    samples: int
    mutated: bool
    passed: bool
    suites: list[AxiomReport]
