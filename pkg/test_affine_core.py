from fractions import Fraction

import pytest

from models.errors import AffinityError, MembershipError
from models.exactfield import RATIONALS
from models.exactmatrix import identity, mat_mul, mat_scale, matrix_parse, transpose, zeros
from services.affine_core import (
    action,
    affine_dimension,
    all_matrices,
    basepoint_shift,
    broken_action,
    broken_heap_op,
    check_action_axioms,
    check_action_maps_affine,
    check_basepoint_shift_linear,
    check_heap_axioms,
    check_linearisation,
    check_para_associativity,
    check_retract_group,
    heap_op,
    is_affine_map,
    linearise,
    retract_add,
    retract_neg,
    run_identities,
    sample_tuples,
    vspace_scale,
)
from services.sna import random_elements, sna_carrier


def test_heap_and_action_primitives(gens):
    a, b, c = gens["A00_0"], gens["A01_0"], gens["A00_1"]
    assert heap_op(a, a, b) == b
    assert heap_op(a, b, b) == a
    assert action(0, a, b) == a
    assert action(1, a, b) == b
    assert action(Fraction(1, 2), a, b) == mat_scale(Fraction(1, 2), a + b)
    assert retract_add(a, a, c) == c
    assert retract_add(a, c, retract_neg(a, c)) == a
    assert vspace_scale(a, 0, c) == a


def test_carrier_rejects_non_members(sna2, gens):
    carrier = sna_carrier(sna2)
    with pytest.raises(MembershipError) as info:
        heap_op(identity(3), gens["A00_0"], gens["A01_0"], carrier)
    assert "trace" in info.value.constraint


def test_sample_tuples_cover_repeats():
    tuples = sample_tuples(["x", "y", "z"], 3)
    assert ("x", "y", "z") in tuples
    assert ("x", "x", "y") in tuples
    assert ("z", "z", "z") in tuples
    assert sample_tuples([], 2) == []


# ---------------------------------------------------------
# Heap and action axioms
# ---------------------------------------------------------
def test_heap_axioms_on_sna(sna2, sna2_samples):
    report = check_heap_axioms(sna2_samples, carrier=sna_carrier(sna2))
    assert report.passed
    assert report.checked > 0
    assert check_para_associativity(sna2_samples)


def test_heap_axioms_on_abelian_group():
    samples = [matrix_parse("1,2;3,4"), zeros(2), identity(2), matrix_parse("-1/2,0;5,7")]
    assert check_heap_axioms(samples, carrier=all_matrices(2, 2, RATIONALS))


def test_broken_heap_has_counterexample(sna2_samples):
    report = check_heap_axioms(sna2_samples, heap=broken_heap_op)
    assert not report.passed
    assert report.identity == "para-associativity"
    assert set(report.inputs) == {"a", "b", "c", "d", "e"}
    assert report.left != report.right


def test_action_axioms_on_sna(sna3, sna3_samples):
    report = check_action_axioms(sna3_samples, carrier=sna_carrier(sna3))
    assert report.passed, report


def test_broken_action_has_counterexample(sna2_samples):
    report = check_action_axioms(sna2_samples, act=broken_action)
    assert not report.passed
    assert "lambda" in report.inputs


def test_closure_failure_is_reported(sna2, sna2_samples):
    doubling = [("2a = 2a", 1, 0, lambda a: (mat_scale(2, a), mat_scale(2, a)))]
    report = run_identities("doubling", doubling, sna2_samples, carrier=sna_carrier(sna2))
    assert not report.passed
    assert report.identity.startswith("closure")


def test_threaded_evaluation_matches_serial(sna2_samples):
    serial = check_heap_axioms(sna2_samples, heap=broken_heap_op)
    identities = [
        ("para-associativity", 5, 0,
         lambda a, b, c, d, e: (broken_heap_op(broken_heap_op(a, b, c), d, e),
                                broken_heap_op(a, b, broken_heap_op(c, d, e)))),
    ]
    threaded = run_identities("heap", identities, sna2_samples, workers=4)
    assert threaded.inputs == serial.inputs


# ---------------------------------------------------------
# Retracts, vector spaces and affine maps
# ---------------------------------------------------------
def test_retract_group(sna2_samples):
    for o in sna2_samples[:3]:
        assert check_retract_group(o, sna2_samples)


def test_action_maps_are_affine(sna2_samples):
    assert check_action_maps_affine(sna2_samples[:6])


def test_basepoint_shift_is_linear(sna2_samples):
    o, o_new = sna2_samples[0], sna2_samples[1]
    assert check_basepoint_shift_linear(o, o_new, sna2_samples)
    assert basepoint_shift(o, o_new, o) == o_new


def test_transpose_linearises(sna2_samples):
    o = sna2_samples[0]
    lin = linearise(transpose, o, sna2_samples)
    assert lin(o) == zeros(3)
    assert lin.as_point(o) == transpose(o)
    assert check_linearisation(lin, sna2_samples)


def test_non_affine_map_refused(sna2_samples):
    square = lambda a: mat_mul(a, a)  # noqa: E731
    assert not is_affine_map(square, sna2_samples)
    with pytest.raises(AffinityError) as info:
        linearise(square, sna2_samples[0], sna2_samples)
    assert not info.value.report.passed


def test_affine_dimension(gens, sna3):
    assert affine_dimension(list(gens.values())) == 3
    assert affine_dimension(random_elements(sna3, 20, seed=3)) == sna3.free_count
    assert affine_dimension([identity(2)]) == 0
