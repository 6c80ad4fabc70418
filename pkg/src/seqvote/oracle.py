"""Brute-force ground truth: profile enumeration and optimizing rules.

Everything here enumerates in a fixed canonical order (ballots by size then
members, profiles by multiset-lexicographic order), so "first witness" style
answers are stable across runs and platforms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .counting import Valuation, committee_score
from .engine import Family, Rule
from .profiles import Profile, ballot_sort_key

DEFAULT_COMMITTEE_CAP = 10**6
DEFAULT_UNIVERSE_CAP = 10**6


class EnumerationCapError(RuntimeError):
    """An enumeration would exceed its configured cap."""


def all_ballots(m: int) -> tuple[frozenset[int], ...]:
    """All non-empty ballots over ``0..m-1`` in canonical order."""
    ballots = []
    for size in range(1, m + 1):
        for members in itertools.combinations(range(m), size):
            ballots.append(frozenset(members))
    return tuple(sorted(ballots, key=ballot_sort_key))


def committees_of_size(m: int, k: int, cap: int = DEFAULT_COMMITTEE_CAP):
    if math.comb(m, k) > cap:
        raise EnumerationCapError(f"{math.comb(m, k)} committees exceed cap {cap}")
    return tuple(frozenset(c) for c in itertools.combinations(range(m), k))


def all_committees(m: int, max_size: int | None = None) -> tuple[frozenset[int], ...]:
    """Committees of every size up to ``max_size`` (default m), canonical order."""
    top = m if max_size is None else max_size
    out = [frozenset()]
    for k in range(1, top + 1):
        out.extend(committees_of_size(m, k))
    return tuple(out)


@dataclass(frozen=True)
class ProfileUniverse:
    """All anonymous profiles with up to ``max_voters`` voters over m candidates.

    Iteration yields canonical profiles (voter ids 1..n, ballots sorted) by
    increasing voter count, multiset-lexicographically within each count.
    """

    m: int
    max_voters: int
    cap: int = DEFAULT_UNIVERSE_CAP

    def count(self, n: int) -> int:
        """Closed form: multisets of size n over the 2^m - 1 ballots."""
        return math.comb(2**self.m - 1 + n - 1, n)

    def total(self) -> int:
        return sum(self.count(n) for n in range(1, self.max_voters + 1))

    def __iter__(self) -> Iterator[Profile]:
        if self.total() > self.cap:
            raise EnumerationCapError(
                f"universe holds {self.total()} profiles, cap is {self.cap}"
            )
        ballots = all_ballots(self.m)
        for n in range(1, self.max_voters + 1):
            for combo in itertools.combinations_with_replacement(ballots, n):
                yield Profile.from_ballots(self.m, combo)


def enumerate_profiles(universe: ProfileUniverse) -> Iterator[Profile]:
    return iter(universe)


def brute_force_optimal(
    valuation: Valuation, profile: Profile, k: int, cap: int = DEFAULT_COMMITTEE_CAP
) -> Family:
    """All size-``k`` committees with maximal total score, by full enumeration."""
    if not 0 <= k <= profile.m:
        raise ValueError(f"committee size {k} outside 0..{profile.m}")
    best = None
    winners = []
    for committee in committees_of_size(profile.m, k, cap):
        score = committee_score(valuation, profile, committee)
        if best is None or score > best:
            best, winners = score, [committee]
        elif score == best:
            winners.append(committee)
    return frozenset(winners)


def optimizing_rule(valuation: Valuation, m: int, name: str) -> Rule:
    """The rule that directly maximizes the total score at every size."""
    return Rule(
        name,
        m,
        "oracle",
        apply_direct=lambda a, k: brute_force_optimal(valuation, a, k),
        valuation=valuation,
        violates="consistent committee monotonicity",
    )


def compare_rules(
    r1: Rule,
    r2: Rule,
    universe: ProfileUniverse,
    sizes: Sequence[int] | None = None,
):
    """First ``(profile, k)`` where the rules disagree, or None if none exists.

    "First" is with respect to the canonical enumeration order, with sizes
    checked in increasing order per profile.
    """
    if r1.m != r2.m or r1.m != universe.m:
        raise ValueError("rules and universe must share m")
    if sizes is None:
        sizes = range(universe.m + 1)
    for profile in universe:
        for k in sizes:
            fam1, fam2 = r1.apply(profile, k), r2.apply(profile, k)
            if fam1 != fam2:
                return profile, k, fam1, fam2
    return None
