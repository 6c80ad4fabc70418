"""Independent brute-force oracles for the tests.

These recompute expected values with the most literal code possible and no
engine machinery, so the tests check the library against a second path
rather than against itself.
"""

from fractions import Fraction
import itertools


def fam(*committees):
    """Readable committee-family literal: fam({0,1}, {0,2})."""
    return frozenset(frozenset(c) for c in committees)


def naive_score(value_of_ballot, ballots, committee):
    committee = frozenset(committee)
    return sum(value_of_ballot(frozenset(b), committee) for b in ballots)


def thiele_value(values):
    """Literal Thiele valuation from a plain list of numbers."""
    return lambda ballot, committee: Fraction(values[len(ballot & committee)])


def sav_value(ballot, committee):
    return Fraction(len(ballot & committee), len(ballot))


def naive_best_extensions(value_of_ballot, m, ballots, committee):
    committee = frozenset(committee)
    outside = [c for c in range(m) if c not in committee]
    scores = {c: naive_score(value_of_ballot, ballots, committee | {c}) for c in outside}
    best = max(scores.values())
    return frozenset(c for c in outside if scores[c] == best)


def naive_sequential(value_of_ballot, m, ballots, k):
    """Literal transcription of the tie-branching recursion."""
    families = [frozenset({frozenset()})]
    for _ in range(k):
        nxt = set()
        for committee in families[-1]:
            nxt.update(
                committee | {c}
                for c in naive_best_extensions(value_of_ballot, m, ballots, committee)
            )
        families.append(frozenset(nxt))
    return families


def naive_optimal(value_of_ballot, m, ballots, k):
    """Argmax over every size-k committee, scored literally."""
    best = None
    winners = []
    for members in itertools.combinations(range(m), k):
        committee = frozenset(members)
        score = naive_score(value_of_ballot, ballots, committee)
        if best is None or score > best:
            best, winners = score, [committee]
        elif score == best:
            winners.append(committee)
    return frozenset(winners)


def av_top_k(m, ballots, k):
    """Committees consisting of k approval maximizers, ties expanded.

    A committee is a valid top-k selection iff every non-member has an
    approval count less than or equal to every member's, with strictly
    smaller count for any swap that would change the committee.
    """
    counts = {c: sum(1 for b in ballots if c in b) for c in range(m)}
    out = []
    for members in itertools.combinations(range(m), k):
        inside = set(members)
        if not inside:
            out.append(frozenset())
            continue
        lowest_in = min(counts[c] for c in inside)
        highest_out = max((counts[c] for c in range(m) if c not in inside), default=None)
        if highest_out is None or lowest_in >= highest_out:
            out.append(frozenset(members))
    return frozenset(out)


def all_ballots_naive(m):
    out = []
    for size in range(1, m + 1):
        out.extend(frozenset(c) for c in itertools.combinations(range(m), size))
    return out
