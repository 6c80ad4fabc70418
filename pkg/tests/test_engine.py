from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from seqvote.axioms import _anonymous_profiles
from seqvote.catalog import make, sav_table, thiele_table
from seqvote.counting import (
    WeightTable,
    committee_score,
    step_scoring_valuation,
    thiele_valuation,
    weight_from_counting,
)
from seqvote.engine import (
    BranchCapError,
    NoCandidatesError,
    derive_generator,
    generator_step,
    run_sequential,
    sequential_trace,
    weighted_approval_step,
)
from seqvote.oracle import all_committees
from seqvote.profiles import Profile

from util import fam, naive_best_extensions, naive_sequential, thiele_value

P1_BALLOTS = [{0, 1}, {0, 1}, {0, 1}, {2}]
P1 = Profile.from_ballots(3, P1_BALLOTS)

AV = thiele_valuation(thiele_table("seqav", 3), "seqav")
PAV = thiele_valuation(thiele_table("seqpav", 3), "seqpav")
CCAV = thiele_valuation(thiele_table("seqccav", 3), "seqccav")


def test_generator_step_av_from_empty():
    # Oracle: approval scores 3, 3, 1.
    assert naive_best_extensions(thiele_value([0, 1, 2, 3]), 3, P1_BALLOTS, set()) == {0, 1}
    assert generator_step(AV, P1, frozenset()) == {0, 1}


def test_generator_step_everyone_approves_everything():
    p = Profile.from_ballots(3, [{0, 1, 2}, {0, 1, 2}])
    for valuation in (AV, PAV, CCAV):
        assert generator_step(valuation, p, frozenset()) == {0, 1, 2}
        assert generator_step(valuation, p, frozenset({1})) == {0, 2}


def test_generator_step_pav_marginals():
    # Adding 1 gains 3 * (3/2 - 1) = 3/2, adding 2 gains 1.
    assert committee_score(PAV, P1, {0, 1}) - committee_score(PAV, P1, {0}) == Fraction(3, 2)
    assert committee_score(PAV, P1, {0, 2}) - committee_score(PAV, P1, {0}) == 1
    assert generator_step(PAV, P1, frozenset({0})) == {1}


def test_generator_step_requires_room():
    with pytest.raises(NoCandidatesError):
        generator_step(AV, P1, frozenset({0, 1, 2}))


def test_run_sequential_size_zero():
    for valuation in (AV, PAV, CCAV):
        assert run_sequential(valuation, P1, 0) == fam(set())


def test_run_sequential_examples():
    assert committee_score(PAV, P1, {0, 1}) == Fraction(9, 2)
    assert committee_score(PAV, P1, {0, 2}) == 4
    assert run_sequential(PAV, P1, 2) == fam({0, 1})
    assert run_sequential(CCAV, P1, 2) == fam({0, 2}, {1, 2})
    assert run_sequential(AV, P1, 2) == fam({0, 1})


def test_run_sequential_rejects_bad_size():
    with pytest.raises(ValueError):
        run_sequential(AV, P1, 4)


def test_sequential_trace_matches_naive_recursion_exhaustively():
    tables = {
        "seqav": thiele_value([0, 1, 2, 3]),
        "seqpav": thiele_value([0, 1, Fraction(3, 2), Fraction(11, 6)]),
        "seqccav": thiele_value([0, 1, 1, 1]),
    }
    for name, naive_value in tables.items():
        valuation = thiele_valuation(thiele_table(name, 3))
        for profile in _anonymous_profiles(3, 2):
            expected = naive_sequential(naive_value, 3, profile.ballots(), 3)
            assert list(sequential_trace(valuation, profile, 3)) == expected


_ballots4 = st.sets(st.integers(0, 3), min_size=1, max_size=4).map(frozenset)


@settings(max_examples=80, deadline=None)
@given(ballots=st.lists(_ballots4, min_size=1, max_size=4))
def test_trace_matches_naive_recursion_on_random_instances(ballots):
    # Random electorates on four candidates against the literal recursion.
    profile = Profile.from_ballots(4, ballots)
    pav4 = thiele_table("seqpav", 4)
    expected = naive_sequential(
        thiele_value(list(pav4.values)), 4, profile.ballots(), 4
    )
    valuation = thiele_valuation(pav4)
    assert list(sequential_trace(valuation, profile, 4)) == expected


def test_branch_cap_enforced():
    p = Profile.from_ballots(3, [{0, 1, 2}])
    with pytest.raises(BranchCapError):
        run_sequential(AV, p, 2, branch_cap=2)


def test_weighted_approval_step_plain():
    ones = WeightTable.from_function(3, lambda x, z: 1)
    assert weighted_approval_step(ones, P1, frozenset()) == {0, 1}


def test_weighted_approval_step_single_ballot():
    p = Profile.from_ballots(3, [{2}])
    positive = WeightTable.from_function(3, lambda x, z: Fraction(1, z + x + 1))
    assert weighted_approval_step(positive, p, frozenset()) == {2}


def test_weighted_approval_step_pav_weights():
    reciprocal = WeightTable.from_function(3, lambda x, z: Fraction(1, x + 1))
    # 1 collects 3 * 1/2 = 3/2, 2 collects 1.
    assert weighted_approval_step(reciprocal, P1, frozenset({0})) == {1}
    assert weighted_approval_step(reciprocal, P1, frozenset()) == {0, 1}


def test_counting_weight_bridge_on_small_universe():
    # generator_step through the counting table equals one weighted approval
    # step through its forward differences (acceptance widens the bounds).
    h = sav_table(3)
    valuation = step_scoring_valuation(h)
    weights = weight_from_counting(h)
    for profile in _anonymous_profiles(3, 2):
        for committee in all_committees(3, 2):
            assert generator_step(valuation, profile, committee) == weighted_approval_step(
                weights[len(committee)], profile, committee
            )


def test_derive_generator_examples():
    seqav = make("seqav", 3)
    assert derive_generator(seqav, P1, frozenset({0})) == {1}
    # a committee that is not winning at its size yields the empty set
    assert derive_generator(seqav, P1, frozenset({2})) == frozenset()
    trivial = make("trivial", 3)
    for committee in all_committees(3, 2):
        expected = frozenset(range(3)) - committee
        assert derive_generator(trivial, P1, committee) == expected


def test_derive_generator_agrees_with_step_on_small_instances():
    # Exhaustive at m=3, up to three voters, on winning committees.  (On
    # larger electorates the extraction can pick up extensions inherited
    # from tied sibling committees; see the next test.)
    for name in ("seqav", "seqpav", "seqccav", "seqsav", "av-cc-alternating"):
        rule = make(name, 3)
        for profile in _anonymous_profiles(3, 3):
            for k in range(3):
                for committee in rule.apply(profile, k):
                    assert derive_generator(rule, profile, committee) == rule.step(
                        profile, committee
                    ), (name, profile, committee)


def test_derive_generator_can_exceed_step_via_tied_siblings():
    # Four voters suffice for the coverage rule: {0,1} enters the winners at
    # size two through the tied parent {1}, so the extraction at {0} also
    # contains 1 even though the step at {0} picks only 2.
    rule = make("seqccav", 3)
    profile = Profile.from_ballots(3, [{0, 1}, {0}, {1, 2}, {2}])
    committee = frozenset({0})
    assert committee in rule.apply(profile, 1)
    assert rule.step(profile, committee) == {2}
    assert derive_generator(rule, profile, committee) == {1, 2}


def test_generator_step_completeness_and_purity():
    valuation = step_scoring_valuation(sav_table(3))
    for profile in _anonymous_profiles(3, 2):
        for committee in all_committees(3, 2):
            out = generator_step(valuation, profile, committee)
            assert out and out.isdisjoint(committee)
            assert out == generator_step(valuation, profile, committee)


def test_rule_validates_inputs():
    rule = make("seqav", 3)
    with pytest.raises(ValueError):
        rule.apply(P1, 5)
    with pytest.raises(ValueError):
        rule.apply(Profile.from_ballots(2, [{0}]), 1)
