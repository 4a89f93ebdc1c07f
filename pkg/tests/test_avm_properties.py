from itertools import permutations

from hypothesis import given, settings

from src.core.avm import FeatureStructure, equivalent, structure, subsumes, unify
from src.core.notation import read_avm, write_avm

from tests.strategies import feature_structures

TOP = structure({})


def _same(x, y) -> bool:
    if x is None or y is None:
        return x is None and y is None
    return equivalent(x, y)


def _unify3(a, b, c, left_first: bool):
    if left_first:
        ab = unify(a, b)
        return None if ab is None else unify(ab, c)
    bc = unify(b, c)
    return None if bc is None else unify(a, bc)


@given(feature_structures(), feature_structures(), feature_structures())
@settings(max_examples=1000, deadline=None)
def test_unification_algebra(a: FeatureStructure, b: FeatureStructure, c: FeatureStructure):
    # identity and idempotence
    assert _same(unify(a, TOP), a)
    assert _same(unify(TOP, a), a)
    assert _same(unify(a, a), a)
    # commutativity
    assert _same(unify(a, b), unify(b, a))
    # associativity; failure absorbs
    assert _same(_unify3(a, b, c, True), _unify3(a, b, c, False))

    ab = unify(a, b)
    if ab is None:
        return
    # upper bound
    assert subsumes(a, ab)
    assert subsumes(b, ab)
    # antisymmetry against an upper bound: a is below ab, so ab is below a only when they are equivalent
    assert subsumes(ab, a) == equivalent(ab, a)


@given(feature_structures(), feature_structures(), feature_structures(), feature_structures())
@settings(max_examples=500, deadline=None)
def test_unification_is_the_least_upper_bound(a, b, d1, d2):
    # a common extension built without looking at unify(a, b)
    above_a = unify(a, d1)
    above_b = unify(b, d2)
    if above_a is None or above_b is None:
        return
    common = unify(above_a, above_b)
    if common is None:
        return
    assert subsumes(a, common) and subsumes(b, common)
    ab = unify(a, b)
    assert ab is not None
    assert subsumes(ab, common)


@given(feature_structures(), feature_structures(), feature_structures())
@settings(max_examples=300, deadline=None)
def test_subsumption_is_a_partial_order(a, b, c):
    candidates = [a, b, c, read_avm(write_avm(a))]
    for x, y in ((a, b), (b, c)):
        xy = unify(x, y)
        if xy is not None:
            candidates.append(xy)
    for x, y in permutations(candidates, 2):
        if subsumes(x, y) and subsumes(y, x):
            assert equivalent(x, y)
    for x, y, z in permutations(candidates, 3):
        if subsumes(x, y) and subsumes(y, z):
            assert subsumes(x, z)


@given(feature_structures())
@settings(max_examples=200, deadline=None)
def test_subsumption_is_reflexive_and_top_subsumes_all(a):
    assert subsumes(a, a)
    assert subsumes(TOP, a)


@given(feature_structures(), feature_structures())
@settings(max_examples=300, deadline=None)
def test_equivalence_matches_canonical_print(a, b):
    assert equivalent(a, b) == (a.canonical() == b.canonical())
