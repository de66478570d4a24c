"""
Intrinsic affine-space structure on matrix carriers.

The heap operation <a, b, c> and the action lam |>_a b are the only primitives; the
group A_o, the vector space V(A_o) and linearisations are all derived from them.
Axiom checkers evaluate identities exactly on finite samples and return AxiomReport.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from config import settings
from models.errors import AffinityError, MembershipError
from models.exactfield import Field, FieldScalar, as_scalar
from models.exactmatrix import ExactMatrix, mat_add, mat_scale, mat_sub, rank, stack_columns
from models.reports import AxiomReport, combine_reports

logger = logging.getLogger(__name__)

HeapOp = Callable[[ExactMatrix, ExactMatrix, ExactMatrix], ExactMatrix]
ActionOp = Callable[[FieldScalar, ExactMatrix, ExactMatrix], ExactMatrix]
MatrixMap = Callable[[ExactMatrix], ExactMatrix]

_POINT_NAMES = ("a", "b", "c", "d", "e")


@dataclass(frozen=True)
class AffineCarrier:
    """A set of matrices given by a membership predicate, over a scalar field."""

    name: str
    field: Field
    violation: Callable[[ExactMatrix], Optional[str]]

    def contains(self, m: ExactMatrix) -> bool:
        return self.violation(m) is None

    def require(self, *points: ExactMatrix) -> None:
        for p in points:
            reason = self.violation(p)
            if reason is not None:
                raise MembershipError(f"matrix is not in {self.name}: {reason}", reason)


def all_matrices(rows: int, cols: int, field: Field) -> AffineCarrier:
    """Every rows x cols matrix over `field`: the abelian group case."""

    def violation(m: ExactMatrix) -> Optional[str]:
        if m.shape != (rows, cols):
            return f"shape {m.shape} != {(rows, cols)}"
        if m.field != field:
            return f"field {m.field.label} != {field.label}"
        return None

    return AffineCarrier(f"M{rows}x{cols}({field.label})", field, violation)


# ---------------------------------------------------------------------------
# Primitive operations
# ---------------------------------------------------------------------------

def heap_op(a: ExactMatrix, b: ExactMatrix, c: ExactMatrix, carrier: AffineCarrier | None = None) -> ExactMatrix:
    """<a, b, c> = a - b + c."""
    if carrier is not None:
        carrier.require(a, b, c)
    return mat_add(mat_sub(a, b), c)


def action(lam, a: ExactMatrix, b: ExactMatrix, carrier: AffineCarrier | None = None) -> ExactMatrix:
    """lam |>_a b = lam*b + (1 - lam)*a."""
    if carrier is not None:
        carrier.require(a, b)
    lam = a.field.coerce(lam)
    return mat_add(mat_scale(lam, b), mat_scale(1 - lam, a))


def retract_add(o: ExactMatrix, a: ExactMatrix, b: ExactMatrix, carrier: AffineCarrier | None = None) -> ExactMatrix:
    """a + b in the group A_o, i.e. <a, o, b>."""
    if carrier is not None:
        carrier.require(o)
    return heap_op(a, o, b, carrier)


def retract_neg(o: ExactMatrix, a: ExactMatrix, carrier: AffineCarrier | None = None) -> ExactMatrix:
    """-a in A_o, i.e. <o, a, o>."""
    return heap_op(o, a, o, carrier)


def vspace_scale(o: ExactMatrix, lam, a: ExactMatrix, carrier: AffineCarrier | None = None) -> ExactMatrix:
    """lam * a in V(A_o), i.e. lam |>_o a."""
    return action(lam, o, a, carrier)


def basepoint_shift(o: ExactMatrix, o_new: ExactMatrix, a: ExactMatrix) -> ExactMatrix:
    """The isomorphism V(A_o) -> V(A_o') given by a -> <a, o, o'>."""
    return heap_op(a, o, o_new)


def affine_dimension(points: Sequence[ExactMatrix]) -> int:
    """Dimension of the affine span of `points`: rank of the differences p - p0."""
    if len(points) < 2:
        return 0
    base = points[0]
    return rank(stack_columns(mat_sub(p, base) for p in points[1:]))


# ---------------------------------------------------------------------------
# Built-in mutations, used to show that the checkers can fail
# ---------------------------------------------------------------------------

def broken_heap_op(a: ExactMatrix, b: ExactMatrix, c: ExactMatrix) -> ExactMatrix:
    """a - b + 2c."""
    return mat_add(mat_sub(a, b), mat_scale(2, c))


def broken_action(lam, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """lam*b + (1 + lam)*a."""
    lam = a.field.coerce(lam)
    return mat_add(mat_scale(lam, b), mat_scale(1 + lam, a))


# ---------------------------------------------------------------------------
# Sample plumbing
# ---------------------------------------------------------------------------

def sample_tuples(samples: Sequence, arity: int) -> list[tuple]:
    """Deterministic tuples drawn from `samples`.

    Cyclic windows with strides 1 and 2 cover every sample in every slot; the
    repeated-argument tuples (a, a, ..., b) pin the degenerate cases.
    """
    n = len(samples)
    if n == 0:
        return []
    out: list[tuple] = []
    for stride in (1, 2):
        for i in range(n):
            out.append(tuple(samples[(i + stride * k) % n] for k in range(arity)))
    for i in range(n):
        nxt = samples[(i + 1) % n]
        out.append(tuple(samples[i] if k < arity - 1 else nxt for k in range(arity)))
        out.append(tuple(samples[i] for _ in range(arity)))
    return out


def scalar_tuples(scalars: Sequence, arity: int) -> list[tuple]:
    """All ordered tuples of sample scalars (the scalar sets are small)."""
    return list(itertools.product(scalars, repeat=arity))


def _named(points: tuple, scalars: tuple = ()) -> dict:
    named = dict(zip(_POINT_NAMES, points))
    named.update(zip(("lambda", "mu", "nu"), scalars))
    return named


Identity = Callable[..., tuple]


def _evaluate(check: Callable[[tuple], Optional[AxiomReport]], instances: list[tuple], workers: int) -> Optional[AxiomReport]:
    """First failing report in instance order, evaluated on `workers` threads."""
    if workers <= 1:
        for inst in instances:
            failure = check(inst)
            if failure is not None:
                return failure
        return None
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for failure in pool.map(check, instances):
            if failure is not None:
                return failure
    return None


def run_identities(
    suite: str,
    identities: Sequence[tuple[str, int, int, Identity]],
    samples: Sequence[ExactMatrix],
    scalars: Sequence = (),
    carrier: AffineCarrier | None = None,
    workers: int | None = None,
) -> AxiomReport:
    """Check each (name, point arity, scalar arity, fn) identity; fn returns (left, right).

    With a carrier, both sides must also be carrier members.
    """
    workers = settings.WORKERS if workers is None else workers
    values = [as_scalar(s) for s in scalars]
    reports = []
    for name, arity, scalar_arity, fn in identities:
        points = sample_tuples(samples, arity)
        lams = scalar_tuples(values, scalar_arity) if scalar_arity else [()]
        count = max(len(points), len(lams))
        instances = [(points[k % len(points)], lams[k % len(lams)]) for k in range(count)] if points else []

        def check(inst, name=name, fn=fn):
            pts, sc = inst
            left, right = fn(*sc, *pts)
            if left != right:
                return AxiomReport.counterexample(suite, name, _named(pts, sc), left, right)
            if carrier is not None:
                for side in (left, right):
                    if isinstance(side, ExactMatrix) and not carrier.contains(side):
                        return AxiomReport.counterexample(suite, f"closure ({name})", _named(pts, sc),
                                                          side, carrier.violation(side))
            return None

        logger.debug("%s: checking %s on %d instances", suite, name, len(instances))
        failure = _evaluate(check, instances, workers)
        if failure is not None:
            logger.warning("%s: counterexample to %s", suite, name)
            reports.append(failure.model_copy(update={"checked": len(instances)}))
            break
        reports.append(AxiomReport.ok(suite, len(instances)))
    result = combine_reports(suite, reports)
    logger.info("%s: %s after %d instances", suite, "pass" if result.passed else "FAIL", result.checked)
    return result


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------

def check_heap_axioms(samples: Sequence[ExactMatrix], heap: HeapOp = heap_op,
                      carrier: AffineCarrier | None = None) -> AxiomReport:
    identities = [
        ("para-associativity", 5, 0, lambda a, b, c, d, e: (heap(heap(a, b, c), d, e), heap(a, b, heap(c, d, e)))),
        ("<a,a,b> = b", 2, 0, lambda a, b: (heap(a, a, b), b)),
        ("<a,b,c> = <c,b,a>", 3, 0, lambda a, b, c: (heap(a, b, c), heap(c, b, a))),
    ]
    return run_identities("heap", identities, samples, carrier=carrier)


def check_para_associativity(samples: Sequence[ExactMatrix], heap: HeapOp = heap_op) -> AxiomReport:
    """Bracket redistribution: <a,b,<c,d,e>> = <<a,b,c>,d,e> = <a,<d,c,b>,e>."""
    identities = [
        ("<a,b,<c,d,e>> = <a,<d,c,b>,e>", 5, 0,
         lambda a, b, c, d, e: (heap(a, b, heap(c, d, e)), heap(a, heap(d, c, b), e))),
        ("<<a,b,c>,d,e> = <a,<d,c,b>,e>", 5, 0,
         lambda a, b, c, d, e: (heap(heap(a, b, c), d, e), heap(a, heap(d, c, b), e))),
    ]
    return run_identities("para-associativity", identities, samples)


def check_action_axioms(samples: Sequence[ExactMatrix], scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS,
                        act: ActionOp = action, heap: HeapOp = heap_op,
                        carrier: AffineCarrier | None = None) -> AxiomReport:
    identities = [
        ("(l-m+n)|>_a b = <l|>_a b, m|>_a b, n|>_a b>", 2, 3,
         lambda l, m, n, a, b: (act(l - m + n, a, b), heap(act(l, a, b), act(m, a, b), act(n, a, b)))),
        ("l|>_a <b,c,d> = <l|>_a b, l|>_a c, l|>_a d>", 4, 1,
         lambda l, a, b, c, d: (act(l, a, heap(b, c, d)), heap(act(l, a, b), act(l, a, c), act(l, a, d)))),
        ("(lm)|>_a b = l|>_a (m|>_a b)", 2, 2,
         lambda l, m, a, b: (act(l * m, a, b), act(l, a, act(m, a, b)))),
        ("1|>_a b = b", 2, 0, lambda a, b: (act(1, a, b), b)),
        ("0|>_a b = a", 2, 0, lambda a, b: (act(0, a, b), a)),
        ("l|>_a b = <l|>_c b, l|>_c a, a>", 3, 1,
         lambda l, a, b, c: (act(l, a, b), heap(act(l, c, b), act(l, c, a), a))),
    ]
    return run_identities("action", identities, samples, scalars, carrier=carrier)


def check_retract_group(o: ExactMatrix, samples: Sequence[ExactMatrix]) -> AxiomReport:
    """Abelian group axioms of A_o."""
    add = lambda a, b: retract_add(o, a, b)  # noqa: E731
    identities = [
        ("associativity", 3, 0, lambda a, b, c: (add(add(a, b), c), add(a, add(b, c)))),
        ("commutativity", 2, 0, lambda a, b: (add(a, b), add(b, a))),
        ("neutral o", 1, 0, lambda a: (add(o, a), a)),
        ("inverse", 1, 0, lambda a: (add(a, retract_neg(o, a)), o)),
    ]
    return run_identities("retract", identities, samples)


def is_affine_map(f: MatrixMap, samples: Sequence[ExactMatrix], scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS,
                  heap: HeapOp = heap_op, act: ActionOp = action) -> AxiomReport:
    identities = [
        ("f<a,b,c> = <fa,fb,fc>", 3, 0, lambda a, b, c: (f(heap(a, b, c)), heap(f(a), f(b), f(c)))),
        ("f(l|>_a b) = l|>_fa fb", 2, 1, lambda l, a, b: (f(act(l, a, b)), act(l, f(a), f(b)))),
    ]
    return run_identities("affine map", identities, samples, scalars)


def check_action_maps_affine(samples: Sequence[ExactMatrix],
                             scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS) -> AxiomReport:
    """For fixed lam and a, the map b -> lam |>_a b is affine."""
    reports = []
    for lam, a in zip(itertools.cycle(scalars), samples[: max(1, len(scalars))]):
        reports.append(is_affine_map(lambda b, lam=lam, a=a: action(lam, a, b), samples, scalars))
        if not reports[-1].passed:
            break
    return combine_reports("action maps affine", reports)


@dataclass(frozen=True)
class LinearMap:
    """The linearisation a -> f(a) - f(o) of an affine map at basepoint o.

    Calling it gives the displacement matrix f(a) - f(o); `as_point` gives the same
    vector as a point of V(B_target), target defaulting to f(o).
    """

    f: MatrixMap
    o: ExactMatrix
    image_base: ExactMatrix = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "image_base", self.f(self.o))

    def __call__(self, a: ExactMatrix) -> ExactMatrix:
        return mat_sub(self.f(a), self.image_base)

    def as_point(self, a: ExactMatrix, target: ExactMatrix | None = None) -> ExactMatrix:
        return mat_add(self(a), self.image_base if target is None else target)


def linearise(f: MatrixMap, o: ExactMatrix, samples: Sequence[ExactMatrix] | None = None,
              scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS) -> LinearMap:
    """Linearisation of f at o; with samples, affinity is checked first and AffinityError raised on failure."""
    if samples:
        report = is_affine_map(f, samples, scalars)
        if not report.passed:
            raise AffinityError(f"map is not affine: {report.identity}", report)
    return LinearMap(f, o)


def check_linearisation(lin: LinearMap, samples: Sequence[ExactMatrix],
                        scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS) -> AxiomReport:
    """Additivity and homogeneity of `lin` for the V(A_o) operations."""
    o = lin.o
    identities = [
        ("additive", 2, 0, lambda a, b: (lin(retract_add(o, a, b)), mat_add(lin(a), lin(b)))),
        ("homogeneous", 1, 1, lambda l, a: (lin(vspace_scale(o, l, a)), mat_scale(l, lin(a)))),
    ]
    return run_identities("linearisation", identities, samples, scalars)


def check_basepoint_shift_linear(o: ExactMatrix, o_new: ExactMatrix, samples: Sequence[ExactMatrix],
                                 scalars: Sequence = settings.DEFAULT_SAMPLE_SCALARS) -> AxiomReport:
    shift = lambda a: basepoint_shift(o, o_new, a)  # noqa: E731
    identities = [
        ("shift(a +_o b) = shift a +_o' shift b", 2, 0,
         lambda a, b: (shift(retract_add(o, a, b)), retract_add(o_new, shift(a), shift(b)))),
        ("shift(l ._o a) = l ._o' shift a", 1, 1,
         lambda l, a: (shift(vspace_scale(o, l, a)), vspace_scale(o_new, l, shift(a)))),
        ("shift o = o'", 1, 0, lambda a: (shift(o), o_new)),
    ]
    return run_identities("basepoint shift", identities, samples, scalars)
