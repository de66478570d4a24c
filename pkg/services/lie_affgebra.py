"""
Lie brackets on affine carriers.

A bracket here is any bi-affine map A x A -> A. The heap forms of antisymmetry and
Jacobi replace the usual ones; choosing a basepoint o reduces a bracket to an honest
Lie bracket on V(A_o). Everything in V(A_o) is represented by points of A
(o is the zero vector).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

from config import settings
from models.errors import IdempotencyError, MembershipError
from models.exactfield import FieldScalar, as_scalar, field_of, join_fields, scalar_format
from models.exactmatrix import ExactMatrix, mat_add, mat_mul, mat_sub, solve_linear
from models.reports import AxiomReport, combine_reports, render
from services.affine_core import (
    AffineCarrier,
    action,
    heap_op,
    is_affine_map,
    retract_add,
    retract_neg,
    run_identities,
    vspace_scale,
)

logger = logging.getLogger(__name__)

BI_AFFINE_MIN_WINDOW = 4


@dataclass(frozen=True)
class AffineBracket:
    """A binary operation on carrier members, tagged for reports ("sna", "zeta(1/2)", ...)."""

    tag: str
    fn: Callable[[ExactMatrix, ExactMatrix], ExactMatrix]

    def __call__(self, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
        return self.fn(a, b)


def heap5(x1, x2, x3, x4, x5) -> ExactMatrix:
    """<x1, x2, x3, x4, x5>; bracket placement does not matter."""
    return heap_op(heap_op(x1, x2, x3), x4, x5)


# ---------------------------------------------------------------------------
# Brackets
# ---------------------------------------------------------------------------

def sna_bracket(a: ExactMatrix, b: ExactMatrix, carrier: AffineCarrier | None = None) -> ExactMatrix:
    """[a, b] = ab - ba + b."""
    if carrier is not None:
        carrier.require(a, b)
    return mat_add(mat_sub(mat_mul(a, b), mat_mul(b, a)), b)


def zeta_bracket(zeta, x: ExactMatrix, y: ExactMatrix) -> ExactMatrix:
    """[x, y] = zeta |>_x y."""
    return action(zeta, x, y)


SNA_BRACKET = AffineBracket("sna", sna_bracket)


def make_zeta_bracket(zeta) -> AffineBracket:
    zeta = as_scalar(zeta)
    return AffineBracket(f"zeta({scalar_format(zeta)})", lambda x, y: zeta_bracket(zeta, x, y))


# Mutations used to show each checker can fail.
ANTI_MUTATION = AffineBracket("ab+ba-b", lambda a, b: mat_sub(mat_add(mat_mul(a, b), mat_mul(b, a)), b))
JACOBI_MUTATION = AffineBracket("ab-ba+a", lambda a, b: mat_add(mat_sub(mat_mul(a, b), mat_mul(b, a)), a))
BI_AFFINE_MUTATION = AffineBracket(
    "ab-ba+b^2", lambda a, b: mat_add(mat_sub(mat_mul(a, b), mat_mul(b, a)), mat_mul(b, b))
)


# ---------------------------------------------------------------------------
# Axiom checks
# ---------------------------------------------------------------------------

def check_anti_axiom(bracket: AffineBracket, samples: Sequence[ExactMatrix],
                     carrier: AffineCarrier | None = None) -> AxiomReport:
    br = bracket
    identities = [
        ("<[a,b],[a,a],[b,a]> = [b,b]", 2, 0, lambda a, b: (heap_op(br(a, b), br(a, a), br(b, a)), br(b, b))),
    ]
    return run_identities(f"anti[{br.tag}]", identities, samples, carrier=carrier)


def check_jacobi_axiom(bracket: AffineBracket, samples: Sequence[ExactMatrix],
                       carrier: AffineCarrier | None = None) -> AxiomReport:
    br = bracket

    def jacobi(a, b, c):
        left = heap5(br(a, br(b, c)), br(a, a), br(b, br(c, a)), br(b, b), br(c, br(a, b)))
        return left, br(c, c)

    identities = [("<[a,[b,c]],[a,a],[b,[c,a]],[b,b],[c,[a,b]]> = [c,c]", 3, 0, jacobi)]
    return run_identities(f"jacobi[{br.tag}]", identities, samples, carrier=carrier)


def check_bi_affine(bracket: AffineBracket, samples: Sequence[ExactMatrix],
                    scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS, fixed: int = 3,
                    window: int | None = None) -> AxiomReport:
    """For each of the first `fixed` samples a, both [a, -] and [-, a] are affine maps.

    Fixed point k is checked on the k-th consecutive window of the samples, so the
    windows together cover every sample. `window` defaults to len(samples) / fixed,
    and is never below BI_AFFINE_MIN_WINDOW.
    """
    suite = f"bi-affine[{bracket.tag}]"
    total = len(samples)
    if window is None:
        window = max(BI_AFFINE_MIN_WINDOW, -(-total // max(1, fixed)))
    window = min(window, total)
    reports = []
    for k, a in enumerate(samples[:fixed]):
        part = [samples[(k * window + i) % total] for i in range(window)]
        for slot, f in (("[a,-]", lambda x, a=a: bracket(a, x)), ("[-,a]", lambda x, a=a: bracket(x, a))):
            report = is_affine_map(f, part, scalars)
            if not report.passed:
                report = report.model_copy(update={
                    "suite": suite,
                    "identity": f"{slot}: {report.identity}",
                    "inputs": {**report.inputs, "fixed": render(a)},
                })
                reports.append(report)
                return combine_reports(suite, reports)
            reports.append(report)
    return combine_reports(suite, reports)


def check_idempotent(bracket: AffineBracket, samples: Sequence[ExactMatrix]) -> AxiomReport:
    identities = [("[a,a] = a", 1, 0, lambda a: (bracket(a, a), a))]
    return run_identities(f"idempotent[{bracket.tag}]", identities, samples)


# ---------------------------------------------------------------------------
# Vector-valued bracket and basepoint reduction
# ---------------------------------------------------------------------------

def vector_valued_bracket(bracket: AffineBracket, o: ExactMatrix, a: ExactMatrix, b: ExactMatrix,
                          samples: Sequence[ExactMatrix] = ()) -> ExactMatrix:
    """[a, b]_v = [a, b] - b, as a point of V(A_o).

    Requires [x, x] = x on the samples and on a, b; IdempotencyError otherwise.
    """
    for x in (*samples, a, b):
        if bracket(x, x) != x:
            raise IdempotencyError(f"[x,x] != x for bracket {bracket.tag}", witness=x)
    return heap_op(bracket(a, b), b, o)


def reduce_bracket(bracket: AffineBracket, o: ExactMatrix, a: ExactMatrix, b: ExactMatrix,
                   carrier: AffineCarrier | None = None) -> ExactMatrix:
    """[a, b]_o = <[a,b], [a,o], [o,o], [o,b], o>, i.e. [a,b] - [a,o] + [o,o] - [o,b] in A_o."""
    if carrier is not None:
        carrier.require(o, a, b)
    return heap5(bracket(a, b), bracket(a, o), bracket(o, o), bracket(o, b), o)


@dataclass(frozen=True)
class ReducedBracket:
    """The Lie bracket [-,-]_o on V(A_o) induced by an affine bracket."""

    o: ExactMatrix
    bracket: AffineBracket

    def __call__(self, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
        return reduce_bracket(self.bracket, self.o, a, b)


def check_reduced_lie_algebra(bracket: AffineBracket, o: ExactMatrix, samples: Sequence[ExactMatrix],
                              scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS,
                              bilinear: bool = True) -> AxiomReport:
    """Antisymmetry, Jacobi and (unless `bilinear` is False) bilinearity of [-,-]_o in V(A_o)."""
    br = ReducedBracket(o, bracket)
    add = lambda x, y: retract_add(o, x, y)  # noqa: E731
    scale = lambda lam, x: vspace_scale(o, lam, x)  # noqa: E731
    identities = [
        ("[a,b]_o = -[b,a]_o", 2, 0, lambda a, b: (br(a, b), retract_neg(o, br(b, a)))),
        ("[a,[b,c]_o]_o + [b,[c,a]_o]_o + [c,[a,b]_o]_o = 0", 3, 0,
         lambda a, b, c: (add(add(br(a, br(b, c)), br(b, br(c, a))), br(c, br(a, b))), o)),
    ]
    if bilinear:
        identities += [
            ("[a+b,c]_o = [a,c]_o + [b,c]_o", 3, 0, lambda a, b, c: (br(add(a, b), c), add(br(a, c), br(b, c)))),
            ("[a,b+c]_o = [a,b]_o + [a,c]_o", 3, 0, lambda a, b, c: (br(a, add(b, c)), add(br(a, b), br(a, c)))),
            ("[l a,b]_o = l [a,b]_o", 2, 1, lambda l, a, b: (br(scale(l, a), b), scale(l, br(a, b)))),
            ("[a,l b]_o = l [a,b]_o", 2, 1, lambda l, a, b: (br(a, scale(l, b)), scale(l, br(a, b)))),
        ]
    return run_identities(f"reduced[{bracket.tag}]", identities, samples, scalars)


def check_reduced_zero(bracket: AffineBracket, o: ExactMatrix, samples: Sequence[ExactMatrix]) -> AxiomReport:
    """Whether [-,-]_o is the zero bracket (every value equals o) on the samples."""
    identities = [("[a,b]_o = 0", 2, 0, lambda a, b: (reduce_bracket(bracket, o, a, b), o))]
    return run_identities(f"reduced-zero[{bracket.tag}]", identities, samples)


def is_lie_affgebra_map(f: Callable[[ExactMatrix], ExactMatrix], source: AffineBracket, target: AffineBracket,
                        samples: Sequence[ExactMatrix],
                        scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS) -> AxiomReport:
    """Affine map with f[a,b]_source = [fa, fb]_target."""
    affine = is_affine_map(f, samples, scalars)
    if not affine.passed:
        return affine
    identities = [("f[a,b] = [fa,fb]", 2, 0, lambda a, b: (f(source(a, b)), target(f(a), f(b))))]
    return combine_reports("lie affgebra map", [affine, run_identities("lie affgebra map", identities, samples)])


# ---------------------------------------------------------------------------
# The affine line and the zeta family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AffineLine:
    """{lam |>_a b} for two distinct points a, b; lam is the coordinate of a point."""

    a: ExactMatrix
    b: ExactMatrix

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("an affine line needs two distinct points")

    def point(self, lam) -> ExactMatrix:
        lam = as_scalar(lam)
        field = join_fields(self.a.field, field_of(lam))
        return action(lam, self.a.to_field(field), self.b.to_field(field))

    def coordinate(self, m: ExactMatrix) -> FieldScalar:
        """Solve m = lam |>_a b for lam; MembershipError when m is off the line."""
        field = join_fields(self.a.field, m.field)
        a, b, m = self.a.to_field(field), self.b.to_field(field), m.to_field(field)
        direction = mat_sub(b, a)
        column = ExactMatrix(len(direction.entries), 1, direction.entries, field)
        solution = solve_linear(column, list(mat_sub(m, a).entries))
        if not solution.consistent:
            raise MembershipError("point is not on the line", "line")
        return solution.particular[0]


@dataclass(frozen=True)
class LineMap:
    """The affine map of the line with f(a) = lam |>_a b and f(b) = mu |>_a b, in coordinates."""

    lam: FieldScalar
    mu: FieldScalar

    def apply(self, kappa) -> FieldScalar:
        # f(kappa |>_a b) = kappa |>_{f a} f b
        return self.lam + as_scalar(kappa) * (self.mu - self.lam)

    @property
    def onto(self) -> bool:
        return self.lam != self.mu


def line_iso_obstruction(zeta1, zeta2, lam, mu) -> bool:
    """Whether f intertwines the zeta1- and zeta2-brackets on the generating pair (a, b)."""
    zeta1, zeta2, lam, mu = (as_scalar(x) for x in (zeta1, zeta2, lam, mu))
    return (mu * zeta2 - lam * zeta2 + lam) == (mu * zeta1 - lam * zeta1 + lam)


def line_map_preserves(zeta1, zeta2, lam, mu, line: AffineLine | None = None) -> bool:
    """Evaluate f([a,b]_1) and [fa, fb]_2 directly, on the line's matrices when one is given."""
    zeta1, zeta2 = as_scalar(zeta1), as_scalar(zeta2)
    f = LineMap(as_scalar(lam), as_scalar(mu))
    if line is None:
        # [a,b]_1 has coordinate zeta1; [fa, fb]_2 = zeta2 |>_{fa} fb
        return f.apply(zeta1) == f.lam + zeta2 * (f.mu - f.lam)
    field = join_fields(line.a.field, *(field_of(x) for x in (zeta1, zeta2, f.lam, f.mu)))
    lifted = AffineLine(line.a.to_field(field), line.b.to_field(field))
    left = lifted.point(f.apply(zeta1))
    right = zeta_bracket(zeta2, lifted.point(f.lam), lifted.point(f.mu))
    return left == right
