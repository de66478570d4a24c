"""
SNA(n): traceless (n+1)x(n+1) matrices whose every row and column sums to 1.

Row and column sums run over all n+1 entries; the n=1 singleton [[0,1],[1,0]] and the
displayed 3x3 generators only satisfy that reading.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from models.errors import CompletionError, DimensionMismatchError, UnknownGeneratorError, VerificationError
from models.exactfield import EISENSTEIN, OMEGA, OMEGA_SQUARED, RATIONALS, SQRT3_I, Field, FieldScalar
from models.exactmatrix import (
    ExactMatrix,
    col_sums,
    commutator,
    mat_add,
    mat_sub,
    rank,
    row_sums,
    solve_linear,
    stack_columns,
    trace,
)
from models.reports import AxiomReport, RelationCheck, combine_reports, render
from services.affine_core import (
    AffineCarrier,
    check_basepoint_shift_linear,
    basepoint_shift,
    retract_add,
    run_identities,
    vspace_scale,
)
from services.lie_affgebra import SNA_BRACKET, AffineLine, ReducedBracket, reduce_bracket, vector_valued_bracket

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SnaSpec:
    n: int
    field: Field = RATIONALS

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def size(self) -> int:
        return self.n + 1

    @property
    def free_count(self) -> int:
        return self.n * self.n - 1


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def _sum_violation(m: ExactMatrix, target: int) -> Optional[str]:
    if trace(m) != 0:
        return f"trace is {trace(m)}, not 0"
    for i, s in enumerate(row_sums(m), start=1):
        if s != target:
            return f"row {i} sums to {s}, not {target}"
    for j, s in enumerate(col_sums(m), start=1):
        if s != target:
            return f"column {j} sums to {s}, not {target}"
    return None


def membership_violation(m: ExactMatrix, spec: SnaSpec) -> Optional[str]:
    """The first violated SNA(n) condition, or None for members."""
    if m.shape != (spec.size, spec.size):
        return f"shape {m.rows}x{m.cols}, expected {spec.size}x{spec.size}"
    if m.field.is_eisenstein and not spec.field.is_eisenstein:
        return f"entries in {m.field.label}, expected {spec.field.label}"
    return _sum_violation(m, 1)


def is_member(m: ExactMatrix, spec: SnaSpec) -> bool:
    return membership_violation(m, spec) is None


def sna_carrier(spec: SnaSpec) -> AffineCarrier:
    return AffineCarrier(f"SNA({spec.n})", spec.field, lambda m: membership_violation(m, spec))


def sl0_violation(m: ExactMatrix, n: int) -> Optional[str]:
    if m.shape != (n + 1, n + 1):
        return f"shape {m.rows}x{m.cols}, expected {n + 1}x{n + 1}"
    return _sum_violation(m, 0)


def sl0_membership(m: ExactMatrix, n: int) -> bool:
    """Traceless with every row and column summing to 0."""
    return sl0_violation(m, n) is None


def bracket(a: ExactMatrix, b: ExactMatrix, spec: SnaSpec) -> ExactMatrix:
    """[a, b] = ab - ba + b with both inputs checked for membership."""
    return SNA_BRACKET.fn(a, b, sna_carrier(spec))


# ---------------------------------------------------------------------------
# Free entries, completion and dimension
# ---------------------------------------------------------------------------

def pattern_positions(spec: SnaSpec) -> list[tuple[int, int]]:
    """0-based positions of the n^2 - 1 free entries, in pattern order."""
    n = spec.n
    positions = [(i, j) for i in range(n - 1) for j in range(n)]
    positions += [(n - 1, j) for j in range(1, n)]
    return positions


def extract_pattern(m: ExactMatrix, spec: SnaSpec) -> list[FieldScalar]:
    return [m[i, j] for i, j in pattern_positions(spec)]


def complete(pattern: Sequence, spec: SnaSpec) -> ExactMatrix:
    """The unique member of SNA(n) extending the free-entry pattern."""
    if len(pattern) != spec.free_count:
        raise DimensionMismatchError(f"SNA({spec.n}) needs {spec.free_count} free entries, got {len(pattern)}")
    F = spec.field
    n, size = spec.n, spec.size
    if n == 1:
        return ExactMatrix(2, 2, (0, 1, 1, 0), F)

    one = F.one
    grid: list[list] = [[None] * size for _ in range(size)]
    for (i, j), value in zip(pattern_positions(spec), pattern):
        grid[i][j] = F.coerce(value)

    for i in range(n - 1):
        grid[i][n] = one - sum(grid[i][:n], F.zero)
    for j in range(1, n):
        grid[n][j] = one - sum((grid[i][j] for i in range(n)), F.zero)
    grid[n][n] = -sum((grid[i][i] for i in range(n)), F.zero)
    grid[n - 1][n] = one - sum((grid[i][n] for i in range(n - 1)), F.zero) - grid[n][n]
    grid[n - 1][0] = one - sum(grid[n - 1][1:], F.zero)
    grid[n][0] = one - sum(grid[n][1:], F.zero)

    if sum((grid[i][0] for i in range(size)), F.zero) != one:
        raise CompletionError("first column does not sum to 1 after completion")
    m = ExactMatrix.from_rows(grid, F)
    reason = membership_violation(m, spec)
    if reason is not None:
        raise CompletionError(f"completed matrix is not a member: {reason}")
    return m


def constraint_matrix(spec: SnaSpec) -> ExactMatrix:
    """Trace, row-sum and column-sum equations over the (n+1)^2 entries (row-major unknowns)."""
    size = spec.size
    rows = [[1 if i == j else 0 for i in range(size) for j in range(size)]]
    for r in range(size):
        rows.append([1 if i == r else 0 for i in range(size) for j in range(size)])
    for c in range(size):
        rows.append([1 if j == c else 0 for i in range(size) for j in range(size)])
    return ExactMatrix.from_rows(rows, spec.field)


def constraint_rhs(spec: SnaSpec) -> list[int]:
    return [0] + [1] * (2 * spec.size)


def dimension_by_rank(spec: SnaSpec) -> int:
    return spec.size ** 2 - rank(constraint_matrix(spec))


def dimension(spec: SnaSpec) -> int:
    """n^2 - 1, cross-checked against the rank of the constraint system."""
    expected = spec.free_count
    by_rank = dimension_by_rank(spec)
    if by_rank != expected:
        raise VerificationError(f"rank oracle gives dimension {by_rank}, expected {expected}")
    return expected


def random_element(spec: SnaSpec, seed: int | str = 0, bound: int = 10) -> ExactMatrix:
    """Deterministic member from a pseudorandom pattern with heights <= bound."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    rng = random.Random(seed)
    return complete([spec.field.random_scalar(rng, bound) for _ in range(spec.free_count)], spec)


def random_elements(spec: SnaSpec, count: int, seed: int = 0, bound: int = 10) -> list[ExactMatrix]:
    return [random_element(spec, f"{seed}:{k}", bound) for k in range(count)]


# ---------------------------------------------------------------------------
# n = 2: generators, barycentric coordinates, bracket table
# ---------------------------------------------------------------------------

GENERATOR_NAMES = ("A00_0", "A01_0", "A00_1", "A10_0")
# (a, b, c) of the parametrisation A^{ab}_c: entries (1,1), (1,2), (2,2)
_GENERATOR_PATTERNS = {
    "A00_0": (0, 0, 0),
    "A01_0": (0, 1, 0),
    "A00_1": (0, 0, 1),
    "A10_0": (1, 0, 0),
}
# the six brackets of the n = 2 table, in display order
TABLE_PAIRS = (
    ("A01_0", "A00_1"),
    ("A00_0", "A00_1"),
    ("A00_0", "A10_0"),
    ("A01_0", "A10_0"),
    ("A00_0", "A01_0"),
    ("A00_1", "A10_0"),
)
DEFAULT_BASEPOINT = "A01_0"


def generator(name: str, field: Field = RATIONALS) -> ExactMatrix:
    try:
        pattern = _GENERATOR_PATTERNS[name]
    except KeyError:
        raise UnknownGeneratorError(f"unknown generator {name!r}; expected one of {', '.join(GENERATOR_NAMES)}") from None
    return complete(pattern, SnaSpec(2, field))


def generators(field: Field = RATIONALS) -> list[ExactMatrix]:
    return [generator(name, field) for name in GENERATOR_NAMES]


@dataclass(frozen=True)
class BarycentricCombo:
    """Coefficients over (A00_0, A01_0, A00_1, A10_0), summing to 1."""

    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != len(GENERATOR_NAMES):
            raise DimensionMismatchError("a barycentric combination needs four coefficients")
        if sum(self.coefficients, Fraction(0)) != 1:
            raise ValueError("barycentric coefficients must sum to 1")

    def combine(self, field: Field = RATIONALS) -> ExactMatrix:
        total = None
        for c, g in zip(self.coefficients, generators(field)):
            term = c * g
            total = term if total is None else mat_add(total, term)
        return total

    def to_payload(self) -> list[str]:
        return render(list(self.coefficients))

    def describe(self) -> str:
        terms = []
        for c, name in zip(self.coefficients, GENERATOR_NAMES):
            if c == 0:
                continue
            text = render(c)
            terms.append(name if text == "1" else f"-{name}" if text == "-1" else f"{text}*{name}")
        return " + ".join(terms).replace("+ -", "- ")


def barycentric_coords(m: ExactMatrix) -> BarycentricCombo:
    spec = SnaSpec(2, m.field)
    reason = membership_violation(m, spec)
    if reason is not None:
        raise DimensionMismatchError(f"barycentric coordinates need a member of SNA(2): {reason}")
    gens = generators(m.field)
    columns = stack_columns(gens)
    system = ExactMatrix.from_rows(columns.to_rows() + [[1] * len(gens)], m.field)
    solution = solve_linear(system, list(m.entries) + [1])
    if not solution.unique:
        raise VerificationError("generators failed to give unique barycentric coordinates")
    return BarycentricCombo(solution.particular)


def bracket_table(field: Field = RATIONALS) -> dict[tuple[str, str], BarycentricCombo]:
    """Barycentric coordinates of [G, H] for every ordered pair of generators."""
    gens = dict(zip(GENERATOR_NAMES, generators(field)))
    return {
        (left, right): barycentric_coords(SNA_BRACKET(gens[left], gens[right]))
        for left in GENERATOR_NAMES
        for right in GENERATOR_NAMES
    }


def standard_line(field: Field = RATIONALS) -> AffineLine:
    """The affine line through A00_0 and A01_0."""
    return AffineLine(generator("A00_0", field), generator("A01_0", field))


# ---------------------------------------------------------------------------
# Reduction to sl(n+1)_0
# ---------------------------------------------------------------------------

def reduction_iso(o: ExactMatrix, a: ExactMatrix, spec: SnaSpec | None = None) -> ExactMatrix:
    """a -> a - o, from L(SNA(n); o) onto sl(n+1)_0."""
    if spec is not None:
        sna_carrier(spec).require(o, a)
    return mat_sub(a, o)


def reduction_iso_inverse(o: ExactMatrix, v: ExactMatrix) -> ExactMatrix:
    return mat_add(v, o)


def comm_formula(o: ExactMatrix, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """(a-o)(b-o) - (b-o)(a-o) + o."""
    return mat_add(commutator(mat_sub(a, o), mat_sub(b, o)), o)


def check_reduction(o: ExactMatrix, samples: Sequence[ExactMatrix], spec: SnaSpec) -> AxiomReport:
    """[a,b]_o matches the commutator formula; a -> a - o lands in sl(n+1)_0 and intertwines."""
    iso = lambda a: reduction_iso(o, a)  # noqa: E731
    identities = [
        ("[a,b]_o = (a-o)(b-o) - (b-o)(a-o) + o", 2, 0,
         lambda a, b: (reduce_bracket(SNA_BRACKET, o, a, b), comm_formula(o, a, b))),
        ("iso([a,b]_o) = [iso a, iso b]", 2, 0,
         lambda a, b: (iso(reduce_bracket(SNA_BRACKET, o, a, b)), commutator(iso(a), iso(b)))),
        ("a - o in sl0", 1, 0, lambda a: (sl0_membership(iso(a), spec.n), True)),
        ("(a - o) + o = a", 1, 0, lambda a: (reduction_iso_inverse(o, iso(a)), a)),
        ("[a,b]_v - o = ab - ba", 2, 0,
         lambda a, b: (mat_sub(vector_valued_bracket(SNA_BRACKET, o, a, b), o), commutator(a, b))),
    ]
    return run_identities("reduction", identities, samples)


def basepoint_shift_is_lie_iso(o: ExactMatrix, o_new: ExactMatrix, samples: Sequence[ExactMatrix]) -> AxiomReport:
    """a -> <a, o, o'> is a Lie algebra isomorphism L(SNA; o) -> L(SNA; o')."""
    source, target = ReducedBracket(o, SNA_BRACKET), ReducedBracket(o_new, SNA_BRACKET)
    shift = lambda a: basepoint_shift(o, o_new, a)  # noqa: E731
    identities = [
        ("shift[a,b]_o = [shift a, shift b]_o'", 2, 0, lambda a, b: (shift(source(a, b)), target(shift(a), shift(b)))),
        ("shift^-1 shift a = a", 1, 0, lambda a: (basepoint_shift(o_new, o, shift(a)), a)),
    ]
    linear = check_basepoint_shift_linear(o, o_new, samples)
    return combine_reports("basepoint shift", [linear, run_identities("basepoint shift", identities, samples)])


# ---------------------------------------------------------------------------
# Chevalley basis of L(SNA(2); A01_0) over Q(w)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChevalleyTriple:
    """e, f, h as vectors of V(SNA(2)_o) (points, with o the zero vector)."""

    o: ExactMatrix
    e: ExactMatrix
    f: ExactMatrix
    h: ExactMatrix

    def relations(self) -> list[RelationCheck]:
        br = ReducedBracket(self.o, SNA_BRACKET)
        o = self.o
        checks = [
            ("[h,e]_o = 2e", br(self.h, self.e), vspace_scale(o, 2, self.e)),
            ("[h,f]_o = -2f", br(self.h, self.f), vspace_scale(o, -2, self.f)),
            ("[e,f]_o = h", br(self.e, self.f), self.h),
        ]
        return [RelationCheck(relation=name, left=render(l), right=render(r), holds=(l == r)) for name, l, r in checks]


def chevalley_triple() -> ChevalleyTriple:
    """e = (A10_0 + w A00_1)/3, f = (A10_0 + w^2 A00_1)/3, h = -(2w+1)/3 A00_0 in V(SNA(2)_o).

    h's coefficient is -(sqrt(3)/3) i rewritten via sqrt(3) i = 2w + 1.
    """
    o = generator(DEFAULT_BASEPOINT, EISENSTEIN)
    a10, a001, a000 = (generator(name, EISENSTEIN) for name in ("A10_0", "A00_1", "A00_0"))
    third = Fraction(1, 3)
    e = vspace_scale(o, third, retract_add(o, a10, vspace_scale(o, OMEGA, a001)))
    f = vspace_scale(o, third, retract_add(o, a10, vspace_scale(o, OMEGA_SQUARED, a001)))
    h = vspace_scale(o, -SQRT3_I * third, a000)
    triple = ChevalleyTriple(o, e, f, h)
    failed = [r.relation for r in triple.relations() if not r.holds]
    if failed:
        raise VerificationError(f"Chevalley relations failed: {', '.join(failed)}")
    logger.info("Chevalley relations verified at o = %s", DEFAULT_BASEPOINT)
    return triple
