"""Sequential rule execution: generator steps, tie-branching runs, rules.

A committee family is a frozenset of frozensets of candidates, all of one
size; ties are always kept, never broken.  ``run_sequential`` materializes
every tied branch and raises :class:`BranchCapError` instead of pruning when
the frontier would exceed the cap, since silent pruning would corrupt the
axiom checkers downstream.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from dataclasses import dataclass

from .counting import Valuation, WeightTable, committee_score
from .profiles import Profile

Family = frozenset  # of frozenset[int]

DEFAULT_BRANCH_CAP = 100_000


class BranchCapError(RuntimeError):
    """Tie branching exceeded the configured committee cap."""


class NoCandidatesError(ValueError):
    """A generator step was asked to extend the full candidate set."""


def _argmax(scores: dict[int, Fraction]) -> frozenset[int]:
    best = max(scores.values())
    return frozenset(c for c, s in scores.items() if s == best)


def extension_scores(
    valuation: Valuation, profile: Profile, committee: frozenset[int]
) -> dict[int, Fraction]:
    """Scores of ``W + {c}`` for every candidate ``c`` outside ``W``."""
    committee = frozenset(committee)
    outside = [c for c in range(profile.m) if c not in committee]
    if not outside:
        raise NoCandidatesError("committee already contains every candidate")
    return {c: committee_score(valuation, profile, committee | {c}) for c in outside}


def generator_step(
    valuation: Valuation, profile: Profile, committee: frozenset[int]
) -> frozenset[int]:
    """All candidates whose addition maximizes the committee score.

    This is the generator function of the sequential rule induced by
    ``valuation``; it is complete (never empty for a proper committee) and,
    because scores add over disjoint electorates, consistent.
    """
    return _argmax(extension_scores(valuation, profile, committee))


def weighted_approval_step(
    weights: WeightTable, profile: Profile, committee: frozenset[int]
) -> frozenset[int]:
    """Single-winner weighted approval voting among the remaining candidates.

    Each voter contributes ``weights(x, z)`` to every remaining candidate she
    approves, where ``x`` counts her approved committee members and ``z`` her
    ballot size; the argmax set is returned.
    """
    committee = frozenset(committee)
    outside = [c for c in range(profile.m) if c not in committee]
    if not outside:
        raise NoCandidatesError("committee already contains every candidate")
    totals = {c: Fraction(0) for c in outside}
    for ballot, count in profile.ballot_counts:
        w = count * weights(len(committee & ballot), len(ballot))
        for c in ballot:
            if c in totals:
                totals[c] += w
    return _argmax(totals)


StepFn = Callable[[Profile, frozenset], frozenset]


def step_trace(
    step: StepFn, profile: Profile, k: int, branch_cap: int = DEFAULT_BRANCH_CAP
) -> tuple[Family, ...]:
    """Run a generator step for ``k`` rounds, keeping all tied branches.

    Returns the tuple ``(f(A,0), ..., f(A,k))``; duplicate committees reached
    through different parents are merged.
    """
    if not 0 <= k <= profile.m:
        raise ValueError(f"committee size {k} outside 0..{profile.m}")
    families = [frozenset({frozenset()})]
    for _ in range(k):
        frontier = set()
        for committee in families[-1]:
            extension = step(profile, committee)
            if not extension:
                raise ValueError("generator step returned no candidates mid-run")
            frontier.update(committee | {c} for c in extension)
            if len(frontier) > branch_cap:
                raise BranchCapError(f"more than {branch_cap} tied committees")
        families.append(frozenset(frontier))
    return tuple(families)


def sequential_trace(
    valuation: Valuation, profile: Profile, k: int, branch_cap: int = DEFAULT_BRANCH_CAP
) -> tuple[Family, ...]:
    """Trace of the sequential valuation rule for ``valuation``."""
    return step_trace(
        lambda a, w: generator_step(valuation, a, w), profile, k, branch_cap
    )


def run_sequential(
    valuation: Valuation, profile: Profile, k: int, branch_cap: int = DEFAULT_BRANCH_CAP
) -> Family:
    """The committee family ``f(A, k)`` of the sequential valuation rule."""
    return sequential_trace(valuation, profile, k, branch_cap)[k]


class Rule:
    """An executable committee voting rule ``(profile, k) -> family``.

    Exactly one of ``step`` (a generator function run sequentially) or
    ``apply_direct`` (an arbitrary per-size computation) drives the rule.
    Traces are memoized per profile; anonymous rules share cache entries
    across voter relabelings.
    """

    def __init__(
        self,
        name: str,
        m: int,
        kind: str,
        *,
        step: Optional[StepFn] = None,
        apply_direct=None,
        valuation: Optional[Valuation] = None,
        table=None,
        id_sensitive: bool = False,
        violates: Optional[str] = None,
        branch_cap: int = DEFAULT_BRANCH_CAP,
    ):
        if (step is None) == (apply_direct is None):
            raise ValueError("provide exactly one of step/apply_direct")
        self.name = name
        self.m = m
        self.kind = kind  # seq-thiele | step-thiele | step-scoring | zoo | oracle
        self.step = step
        self.apply_direct = apply_direct
        self.valuation = valuation
        self.table = table
        self.id_sensitive = id_sensitive
        self.violates = violates
        self.branch_cap = branch_cap
        self._traces: dict[Profile, tuple[Family, ...]] = {}

    def __repr__(self):
        return f"Rule({self.name!r}, m={self.m})"

    def _check(self, profile: Profile, k: int):
        if profile.m != self.m:
            raise ValueError(f"profile has m={profile.m}, rule expects m={self.m}")
        if not 0 <= k <= self.m:
            raise ValueError(f"committee size {k} outside 0..{self.m}")

    def trace(self, profile: Profile, k: Optional[int] = None) -> tuple[Family, ...]:
        """``(f(A,0), ..., f(A,k))``, computed once per profile and cached."""
        if k is None:
            k = self.m
        self._check(profile, k)
        key = profile if self.id_sensitive else profile.canonical()
        cached = self._traces.get(key)
        if cached is None:
            if self.step is not None:
                cached = step_trace(self.step, key, self.m, self.branch_cap)
            else:
                cached = tuple(self.apply_direct(key, j) for j in range(self.m + 1))
            self._traces[key] = cached
        return cached[: k + 1]

    def apply(self, profile: Profile, k: int) -> Family:
        """The winning committees ``f(A, k)``."""
        return self.trace(profile, k)[k]


def derive_generator(rule: Rule, profile: Profile, committee: frozenset[int]) -> frozenset[int]:
    """Extract a generator function from a black-box rule.

    For ``W`` winning at its own size this returns every candidate whose
    addition stays winning one size up, and the empty set otherwise.  For
    committee monotone rules the extraction generates the rule; whether it
    does is for the axiom checkers to decide, not assumed here.
    """
    committee = frozenset(committee)
    k = len(committee)
    if k >= rule.m:
        raise NoCandidatesError("committee already contains every candidate")
    if committee not in rule.apply(profile, k):
        return frozenset()
    winners_up = rule.apply(profile, k + 1)
    return frozenset(
        c for c in range(rule.m) if c not in committee and committee | {c} in winners_up
    )


@dataclass(frozen=True)
class GeneratorFunction:
    """A named generator step over m candidates, tagged complete or partial."""

    name: str
    m: int
    fn: StepFn
    complete: bool


def valuation_generator(
    valuation: Valuation, m: int, name: str | None = None
) -> GeneratorFunction:
    return GeneratorFunction(
        name or f"step({valuation.name})",
        m,
        lambda a, w: generator_step(valuation, a, w),
        complete=True,
    )


def step_generator(rule: Rule) -> GeneratorFunction:
    """The rule's own generator step (the function that defines it)."""
    if rule.step is None:
        raise ValueError(f"{rule.name} is not defined by a generator step")
    return GeneratorFunction(f"step({rule.name})", rule.m, rule.step, complete=True)


def derived_generator(rule: Rule) -> GeneratorFunction:
    """The generator extracted from the rule as a black box (may be partial)."""
    return GeneratorFunction(
        f"derived({rule.name})",
        rule.m,
        lambda a, w: derive_generator(rule, a, w),
        complete=False,
    )
