"""
Dense matrices over Q or Q(w) with the exact linear algebra the rest of the toolkit needs.

Matrices are immutable values; every operation returns a new ExactMatrix.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from models.errors import (
    DimensionMismatchError,
    FieldMismatchError,
    MatrixParseError,
    ScalarParseError,
)
from models.exactfield import (
    EISENSTEIN,
    RATIONALS,
    EisensteinScalar,
    Field,
    FieldScalar,
    as_scalar,
    field_inv,
    scalar_format,
)


@dataclass(frozen=True)
class ExactMatrix:
    """rows x cols matrix, row-major entries, all coerced into `field`."""

    rows: int
    cols: int
    entries: tuple
    field: Field = RATIONALS

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionMismatchError(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(self.field.coerce(x) for x in self.entries))

    @classmethod
    def _unchecked(cls, rows: int, cols: int, entries: tuple, field: Field) -> "ExactMatrix":
        """Build from entries that are already values of `field` (results of field arithmetic)."""
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "entries", entries)
        object.__setattr__(m, "field", field)
        return m

    # ------------------------------------------------------------------
    # Construction / access
    # ------------------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]], field: Field | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise DimensionMismatchError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionMismatchError("ragged rows")
        flat = [as_scalar(x) for r in rows for x in r]
        if field is None:
            field = EISENSTEIN if any(isinstance(x, EisensteinScalar) for x in flat) else RATIONALS
        return cls(len(rows), width, tuple(flat), field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> FieldScalar:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[FieldScalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def to_field(self, field: Field) -> "ExactMatrix":
        if field == self.field:
            return self
        return ExactMatrix(self.rows, self.cols, self.entries, field)

    # ------------------------------------------------------------------
    # Operators
    # ------------------------------------------------------------------
    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_add(self, other)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_sub(self, other)

    def __neg__(self) -> "ExactMatrix":
        return mat_scale(-1, self)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def __rmul__(self, scalar) -> "ExactMatrix":
        return mat_scale(scalar, self)

    def __str__(self) -> str:
        return matrix_format(self)


def _check_same_shape(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape {a.shape} does not match {b.shape}")
    _check_same_field(a, b)


def _check_same_field(a: ExactMatrix, b: ExactMatrix) -> None:
    if a.field != b.field:
        raise FieldMismatchError(f"matrices over {a.field.label} and {b.field.label}")


def identity(n: int, field: Field = RATIONALS) -> ExactMatrix:
    return ExactMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)), field)


def zeros(rows: int, cols: int | None = None, field: Field = RATIONALS) -> ExactMatrix:
    cols = rows if cols is None else cols
    return ExactMatrix(rows, cols, (0,) * (rows * cols), field)


def is_zero(m: ExactMatrix) -> bool:
    return not any(m.entries)


def mat_add(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_same_shape(a, b)
    return ExactMatrix._unchecked(a.rows, a.cols, tuple(x + y for x, y in zip(a.entries, b.entries)), a.field)


def mat_sub(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_same_shape(a, b)
    return ExactMatrix._unchecked(a.rows, a.cols, tuple(x - y for x, y in zip(a.entries, b.entries)), a.field)


def mat_scale(scalar, m: ExactMatrix) -> ExactMatrix:
    lam = m.field.coerce(scalar)
    return ExactMatrix._unchecked(m.rows, m.cols, tuple(lam * x for x in m.entries), m.field)


def _dot(row: tuple, column: tuple, zero: FieldScalar) -> FieldScalar:
    acc = zero
    for x, y in zip(row, column):
        if x and y:
            acc = acc + x * y
    return acc


def _dot_rational(row: tuple, column: tuple, zero: FieldScalar) -> Fraction:
    """Integer numerator/denominator accumulation, normalised once."""
    num, den = 0, 1
    for x, y in zip(row, column):
        if x and y:
            d = x.denominator * y.denominator
            num, den = num * d + x.numerator * y.numerator * den, den * d
    return Fraction(num, den)


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.cols != b.rows:
        raise DimensionMismatchError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    _check_same_field(a, b)
    dot = _dot if a.field.is_eisenstein else _dot_rational
    zero = a.field.zero
    columns = [b.col(j) for j in range(b.cols)]
    rows = [a.row(i) for i in range(a.rows)]
    out = tuple(dot(row, column, zero) for row in rows for column in columns)
    return ExactMatrix._unchecked(a.rows, b.cols, out, a.field)


def commutator(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def transpose(m: ExactMatrix) -> ExactMatrix:
    return ExactMatrix._unchecked(m.cols, m.rows, tuple(x for j in range(m.cols) for x in m.col(j)), m.field)


def trace(m: ExactMatrix) -> FieldScalar:
    if not m.is_square:
        raise DimensionMismatchError(f"trace of non-square {m.rows}x{m.cols} matrix")
    return sum((m[i, i] for i in range(m.rows)), m.field.zero)


def row_sums(m: ExactMatrix) -> list[FieldScalar]:
    return [sum(m.row(i), m.field.zero) for i in range(m.rows)]


def col_sums(m: ExactMatrix) -> list[FieldScalar]:
    return [sum(m.col(j), m.field.zero) for j in range(m.cols)]


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def _rref(rows: list[list[FieldScalar]], pivot_cols: int) -> tuple[list[list[FieldScalar]], list[int]]:
    """Reduced row echelon form; pivots are searched only in the first `pivot_cols` columns.

    The pivot is the first nonzero entry in the column.
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(pivot_cols):
        if r == len(rows):
            break
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = field_inv(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


@dataclass(frozen=True)
class LinearSolution:
    """Solution set of A x = b: particular + span(nullspace), or inconsistent (particular is None)."""

    particular: tuple | None
    nullspace: tuple = ()

    @property
    def consistent(self) -> bool:
        return self.particular is not None

    @property
    def unique(self) -> bool:
        return self.consistent and not self.nullspace


def solve_linear(a: ExactMatrix, b: ExactMatrix | Sequence[Any]) -> LinearSolution:
    if isinstance(b, ExactMatrix):
        if b.cols != 1:
            raise DimensionMismatchError(f"right-hand side must be a column, got {b.rows}x{b.cols}")
        _check_same_field(a, b)
        rhs = list(b.entries)
    else:
        rhs = [a.field.coerce(x) for x in b]
    if len(rhs) != a.rows:
        raise DimensionMismatchError(f"{a.rows} equations but {len(rhs)} right-hand values")

    reduced, pivots = _rref([list(a.row(i)) + [rhs[i]] for i in range(a.rows)], a.cols)
    for row in reduced[len(pivots):]:
        if row[-1]:
            return LinearSolution(None, ())

    zero, one = a.field.zero, a.field.one
    particular = [zero] * a.cols
    for r, c in enumerate(pivots):
        particular[c] = reduced[r][-1]

    basis = []
    for free in (c for c in range(a.cols) if c not in pivots):
        v = [zero] * a.cols
        v[free] = one
        for r, c in enumerate(pivots):
            v[c] = -reduced[r][free]
        basis.append(tuple(v))
    return LinearSolution(tuple(particular), tuple(basis))


def rank(m: ExactMatrix) -> int:
    _, pivots = _rref(m.to_rows(), m.cols)
    return len(pivots)


# ---------------------------------------------------------------------------
# Text and JSON formats
# ---------------------------------------------------------------------------

def matrix_parse(text: str, field: Field | None = None) -> ExactMatrix:
    """`0,0,1;1,0,0;0,1,0` or a JSON array of arrays of scalar strings."""
    if not isinstance(text, str) or not text.strip():
        raise MatrixParseError("empty matrix text")
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            payload = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(f"invalid matrix JSON: {exc}") from exc
        return matrix_from_json(payload, field)
    rows = [[cell.strip() for cell in row.split(",")] for row in stripped.split(";")]
    return _build(rows, field)


def matrix_from_json(payload: Any, field: Field | None = None) -> ExactMatrix:
    if not isinstance(payload, list) or not all(isinstance(r, list) for r in payload):
        raise MatrixParseError("matrix JSON must be an array of arrays")
    return _build([[str(x) for x in r] for r in payload], field)


def _build(rows: list[list[str]], field: Field | None) -> ExactMatrix:
    if not rows or any(not r for r in rows):
        raise MatrixParseError("matrix has an empty row")
    try:
        matrix = ExactMatrix.from_rows([[as_scalar(cell) for cell in r] for r in rows])
        return matrix if field is None or matrix.field == field else matrix.to_field(field)
    except (ScalarParseError, FieldMismatchError) as exc:
        raise MatrixParseError(str(exc)) from exc
    except DimensionMismatchError as exc:
        raise MatrixParseError(f"ragged matrix: {exc}") from exc


def matrix_format(m: ExactMatrix) -> str:
    return ";".join(",".join(scalar_format(x) for x in m.row(i)) for i in range(m.rows))


def matrix_to_json(m: ExactMatrix) -> list[list[str]]:
    return [[scalar_format(x) for x in m.row(i)] for i in range(m.rows)]


def stack_columns(columns: Iterable[ExactMatrix]) -> ExactMatrix:
    """Matrix whose j-th column is the flattened j-th input (row-major)."""
    columns = list(columns)
    if not columns:
        raise DimensionMismatchError("no columns to stack")
    height = len(columns[0].entries)
    if any(len(c.entries) != height for c in columns):
        raise DimensionMismatchError("columns of different sizes")
    field = columns[0].field
    for c in columns[1:]:
        _check_same_field(columns[0], c)
    return ExactMatrix(height, len(columns), tuple(c.entries[i] for i in range(height) for c in columns), field)
