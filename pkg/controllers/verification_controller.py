"""
Verification controller: one method per command, shared by the CLI and the HTTP server.
"""

import logging
import time
from typing import Sequence

from config import settings
from models.errors import VerificationError
from models.exactfield import EISENSTEIN, OMEGA, RATIONALS, Field, as_scalar, field_by_name
from models.exactmatrix import ExactMatrix, commutator, mat_sub
from models.reports import (
    AxiomReport,
    AxiomsRunReport,
    BracketReport,
    ChevalleyReport,
    CompletionReport,
    LineIsoReport,
    MembershipReport,
    ReductionReport,
    TableReport,
    TableRow,
    combine_reports,
    render,
)
from services.affine_core import (
    broken_action,
    broken_heap_op,
    check_action_axioms,
    check_heap_axioms,
    check_para_associativity,
    check_retract_group,
)
from services.lie_affgebra import (
    ANTI_MUTATION,
    BI_AFFINE_MUTATION,
    JACOBI_MUTATION,
    SNA_BRACKET,
    check_anti_axiom,
    check_bi_affine,
    check_jacobi_axiom,
    check_reduced_lie_algebra,
    check_reduced_zero,
    line_iso_obstruction,
    line_map_preserves,
    make_zeta_bracket,
    reduce_bracket,
)
from services.sna import (
    DEFAULT_BASEPOINT,
    GENERATOR_NAMES,
    TABLE_PAIRS,
    SnaSpec,
    barycentric_coords,
    bracket,
    bracket_table,
    chevalley_triple,
    check_reduction,
    complete,
    membership_violation,
    random_elements,
    sl0_membership,
    sna_carrier,
    standard_line,
)

logger = logging.getLogger(__name__)

SUITES = ("heap", "action", "bracket", "bi-affine", "reduced", "zeta")
# the zeta family has no built-in mutation
MUTABLE_SUITES = ("heap", "action", "bracket", "bi-affine", "reduced")
ZETA_VALUES = ("0", "1", "-1", "1/2", "2/3", "w")
# basepoints used by the reduced suite
REDUCTION_BASEPOINTS = 3


class VerificationController:
    """Runs the SNA(n) operations and axiom suites and packages the results as reports."""

    def __init__(self, n: int = 2, field: str = settings.FIELD, seed: int = settings.SEED,
                 samples: int = settings.SAMPLES, bound: int = settings.BOUND):
        self.field: Field = field_by_name(field)
        self.spec = SnaSpec(n, self.field)
        self.seed = seed
        self.samples = samples
        self.bound = bound

    @property
    def n(self) -> int:
        return self.spec.n

    def _lift(self, m: ExactMatrix) -> ExactMatrix:
        """Rational input is lifted into Q(w) runs; w-entries in a Q run are left for membership to reject."""
        if m.field.is_eisenstein and not self.field.is_eisenstein:
            return m
        return m.to_field(self.field)

    # ------------------------------------------------------------------
    # Single-shot commands
    # ------------------------------------------------------------------

    def member(self, m: ExactMatrix) -> MembershipReport:
        reason = membership_violation(self._lift(m), self.spec)
        return MembershipReport(member=reason is None, n=self.n, violated=reason)

    def complete(self, pattern: Sequence) -> tuple[ExactMatrix, CompletionReport]:
        m = complete(pattern, self.spec)
        return m, CompletionReport(n=self.n, pattern=render(list(pattern)), matrix=render(m))

    def bracket(self, a: ExactMatrix, b: ExactMatrix) -> tuple[ExactMatrix, BracketReport]:
        """[a, b] of two members; MembershipError names the first violated condition."""
        result = bracket(self._lift(a), self._lift(b), self.spec)
        coefficients = None
        if self.n == 2:
            coefficients = barycentric_coords(result).to_payload()
        return result, BracketReport(n=self.n, bracket=render(result), coefficients=coefficients)

    def table(self) -> TableReport:
        table = bracket_table(self.field)
        rows = [
            TableRow(left=left, right=right, coefficients=table[(left, right)].to_payload())
            for left, right in TABLE_PAIRS
        ]
        return TableReport(generators=list(GENERATOR_NAMES), rows=rows)

    def describe_table_row(self, row: TableRow) -> str:
        combo = bracket_table(self.field)[(row.left, row.right)]
        return f"[{row.left},{row.right}] = {combo.describe()}"

    def reduce(self, o: ExactMatrix, a: ExactMatrix, b: ExactMatrix) -> ReductionReport:
        o, a, b = (self._lift(m) for m in (o, a, b))
        reduced = reduce_bracket(SNA_BRACKET, o, a, b, sna_carrier(self.spec))
        vector = mat_sub(reduced, o)
        comm = commutator(mat_sub(a, o), mat_sub(b, o))
        return ReductionReport(
            n=self.n,
            reduced=render(reduced),
            vector=render(vector),
            commutator=render(comm),
            intertwines=vector == comm,
            in_sl0=sl0_membership(vector, self.n),
        )

    def chevalley(self) -> ChevalleyReport:
        triple = chevalley_triple()
        relations = triple.relations()
        return ChevalleyReport(
            basepoint=DEFAULT_BASEPOINT,
            e=render(triple.e),
            f=render(triple.f),
            h=render(triple.h),
            relations=relations,
            passed=all(r.holds for r in relations),
        )

    def line_iso(self, zeta1, zeta2, lam, mu) -> LineIsoReport:
        zeta1, zeta2, lam, mu = (as_scalar(x) for x in (zeta1, zeta2, lam, mu))
        preserved = line_iso_obstruction(zeta1, zeta2, lam, mu)
        # cross-check on the matrices of the standard SNA(2) line
        on_matrices = line_map_preserves(zeta1, zeta2, lam, mu, standard_line(RATIONALS))
        if on_matrices != preserved:
            raise VerificationError(
                f"line map ({render(lam)}, {render(mu)}) is {'' if preserved else 'not '}preserved in coordinates"
                f" but {'' if on_matrices else 'not '}on the matrices of the standard line"
            )
        return LineIsoReport(
            zeta1=render(zeta1),
            zeta2=render(zeta2),
            lam=render(lam),
            mu=render(mu),
            preserved=preserved,
            factored=(zeta1 - zeta2) * (mu - lam) == 0,
            onto=lam != mu,
        )

    # ------------------------------------------------------------------
    # Axiom suites
    # ------------------------------------------------------------------

    def sample_points(self) -> list[ExactMatrix]:
        return random_elements(self.spec, self.samples, self.seed, self.bound)

    def sample_scalars(self) -> tuple:
        scalars = settings.DEFAULT_SAMPLE_SCALARS
        return scalars + ("w",) if self.field.is_eisenstein else scalars

    def _suite(self, suite: str, points: list[ExactMatrix], mutate: bool) -> AxiomReport:
        carrier = sna_carrier(self.spec)
        scalars = self.sample_scalars()
        if suite == "heap":
            if mutate:
                return check_heap_axioms(points, heap=broken_heap_op)
            reports = [
                check_heap_axioms(points, carrier=carrier),
                check_para_associativity(points),
                check_retract_group(points[0], points),
            ]
            return combine_reports("heap", reports)
        if suite == "action":
            if mutate:
                return check_action_axioms(points, scalars, act=broken_action)
            return check_action_axioms(points, scalars, carrier=carrier)
        if suite == "bracket":
            if mutate:
                return combine_reports("bracket", [
                    check_anti_axiom(ANTI_MUTATION, points),
                    check_jacobi_axiom(JACOBI_MUTATION, points),
                ])
            return combine_reports("bracket", [
                check_anti_axiom(SNA_BRACKET, points, carrier),
                check_jacobi_axiom(SNA_BRACKET, points, carrier),
            ])
        if suite == "bi-affine":
            return check_bi_affine(BI_AFFINE_MUTATION if mutate else SNA_BRACKET, points, scalars)
        if suite == "reduced":
            bases = points[:REDUCTION_BASEPOINTS]
            if mutate:
                return check_reduced_lie_algebra(ANTI_MUTATION, bases[0], points, scalars)
            reports = []
            for o in bases:
                reports.append(check_reduced_lie_algebra(SNA_BRACKET, o, points, scalars))
                reports.append(check_reduction(o, points, self.spec))
            return combine_reports("reduced", reports)
        if suite == "zeta":
            return self._zeta_suite(points)
        raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)} or all")

    def _zeta_suite(self, points: list[ExactMatrix]) -> AxiomReport:
        """Every zeta-bracket is a Lie affgebra whose reduced bracket is zero."""
        lifted = [p.to_field(EISENSTEIN) for p in points]
        reports = []
        for literal in ZETA_VALUES:
            zeta = as_scalar(literal)
            pts = lifted if zeta == OMEGA else points
            br = make_zeta_bracket(zeta)
            reports += [
                check_anti_axiom(br, pts),
                check_jacobi_axiom(br, pts),
                check_bi_affine(br, pts, fixed=1),
                check_reduced_zero(br, pts[0], pts),
            ]
        return combine_reports("zeta", reports)

    def axioms(self, suite: str = "all", mutate: bool = False) -> AxiomsRunReport:
        """Run one suite or all of them on `samples` seeded members of SNA(n)."""
        if suite == "all":
            names = MUTABLE_SUITES if mutate else SUITES
        elif suite in SUITES:
            if mutate and suite not in MUTABLE_SUITES:
                raise ValueError(f"suite {suite!r} has no mutated operation")
            names = (suite,)
        else:
            raise ValueError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)} or all")

        points = self.sample_points()
        logger.info("axioms: n=%d field=%s seed=%d samples=%d", self.n, self.field.name, self.seed, len(points))
        results = []
        for name in names:
            start = time.time()
            results.append(self._suite(name, points, mutate))
            logger.info("[PERF] suite %s took %.3fs", name, time.time() - start)
        return AxiomsRunReport(
            n=self.n,
            field=self.field.name,
            seed=self.seed,
            samples=len(points),
            mutated=mutate,
            passed=all(r.passed for r in results),
            suites=results,
        )

