"""Deterministic counterexample constructors for the clone axioms.

Each constructor takes a Thiele counting table, normalizes it to
``h(0)=0, h(1)=1`` (the induced rule is unchanged), locates the first index
where the table deviates from the target rule's table, and builds the
smallest two- or three-bloc profile on which the deviation flips an
election.  Construction families carry the opaque ids ``T2``,
``T3-distrust``, ``T3-acceptance``, and ``T4`` (these are also the CLI
names).

Every witness self-verifies: the constructor replays the profile through the
engine under both the normalized and the original table and checks the
violated predicate exactly; a witness object you can hold therefore already
carries a machine-checked violation.

Candidate labeling is fixed so witnesses are byte-stable: the clone bloc
takes indices ``0..x-1`` and auxiliary candidates take the next indices;
candidates beyond the construction's needs are approved by nobody.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .catalog import harmonic, make_seq_thiele
from .counting import ThieleTable, validate_thiele
from .engine import Family, Rule
from .profiles import Profile


class WitnessNotApplicable(ValueError):
    """The table induces the rule the axiom characterizes; no witness exists."""


class WitnessVerificationError(AssertionError):
    """Engine replay contradicted the construction (indicates a bug)."""


CONSTRUCTIONS = ("T2", "T3-distrust", "T3-acceptance", "T4")

_AXIOM_OF = {
    "T2": "clone-rejection",
    "T3-distrust": "distrust",
    "T3-acceptance": "clone-acceptance",
    "T4": "clone-proportionality",
}


@dataclass(frozen=True)
class Witness:
    """A verified violation instance for one clone axiom."""

    construction: str
    axiom: str
    profile: Profile
    k: int
    expected: Family
    expected_trace: tuple[tuple[int, Family], ...]
    params: dict
    note: str = ""


def _family(committees) -> Family:
    return frozenset(frozenset(c) for c in committees)


def _min_ell(*lower_bounds: Fraction) -> int:
    """Smallest integer strictly above every bound."""
    ell = 1
    for bound in lower_bounds:
        ell = max(ell, int(bound) + 1)
    return ell


def _normalized(h: ThieleTable) -> ThieleTable:
    ok, why = validate_thiele(h)
    if not ok:
        raise ValueError(f"invalid Thiele counting function: {why}")
    return h.normalized()


def _verify(h: ThieleTable, witness: Witness) -> None:
    """Replay under the original and the normalized table; both must agree."""
    for table in (h, _normalized(h)):
        rule = make_seq_thiele(table, "witness-replay")
        trace = rule.trace(witness.profile, witness.k)
        for level, family in witness.expected_trace:
            if trace[level] != family:
                raise WitnessVerificationError(
                    f"{witness.construction}: expected {sorted(map(sorted, family))} "
                    f"at size {level}, engine found {sorted(map(sorted, trace[level]))}"
                )
        if not _predicate_holds(witness, rule):
            raise WitnessVerificationError(
                f"{witness.construction}: violated predicate does not hold on replay"
            )


def _predicate_holds(w: Witness, rule: Rule) -> bool:
    profile, k = w.profile, w.k
    fam = rule.apply(profile, k)
    p = w.params
    if w.construction == "T2":
        if len(fam) != 1:
            return False
        winner = next(iter(fam))
        return {0, 1} <= winner and len(winner) < profile.m
    if w.construction == "T3-distrust":
        if len(fam) != 1:
            return False
        winner = next(iter(fam))
        c, d = p["c"], p["d"]
        reports_d = sum(
            count for ballot, count in profile.ballot_counts if ballot == frozenset({d})
        )
        approves_c = sum(count for ballot, count in profile.ballot_counts if c in ballot)
        return c in winner and d not in winner and reports_d > approves_c
    if w.construction == "T3-acceptance":
        c, d = p["c"], p["d"]
        base = frozenset(p["base"])
        return (
            base | {c} in rule.apply(profile, k - 1)
            and base | {c, d} not in fam
        )
    if w.construction == "T4":
        share, n2, c = Fraction(p["n1"], k), p["n2"], p["c"]
        if share < n2:
            return any(c not in W for W in fam)
        if share > n2:
            return any(c in W for W in fam)
        return False
    raise ValueError(w.construction)


def predicate_holds(witness: Witness, rule: Rule) -> bool:
    """Does the witness's violated predicate hold when ``rule`` replays it?"""
    return _predicate_holds(witness, rule)


# ---------------------------------------------------------------------------
# Constructors


def witness_clone_rejection(h: ThieleTable, ell: int | None = None) -> Witness:
    """A profile where a unique winning committee contains a clone pair.

    Applies to every sequential Thiele table except the coverage table: let
    ``x`` be the first index whose normalized value exceeds 1.  The clone
    bloc ``0..x-1`` plus decreasing singleton support pushes the second clone
    into the unique size-``x`` winner.
    """
    hn = _normalized(h)
    m = hn.m
    x = next((i for i in range(2, m + 1) if hn(i) > 1), None)
    if x is None:
        raise WitnessNotApplicable(
            "table is the coverage rule's on this domain; it rejects clones"
        )
    if x > m - 1:
        raise WitnessNotApplicable(
            f"first deviation at {x} needs at least {x + 1} candidates, table has {m}"
        )
    delta = hn(x) - 1
    min_ell = _min_ell(1 / delta)
    if ell is None:
        ell = min_ell
    elif ell < min_ell:
        raise ValueError(f"replication {ell} too small; need at least {min_ell}")
    clones = list(range(x))
    ballots = [frozenset(clones)] * ell + [frozenset({0, 1})] * x
    for i in range(3, x + 2):  # bloc sizes x-1, x-2, ..., 1 on candidates 2..x
        ballots += [frozenset({i - 1})] * (x + 2 - i)
    profile = Profile.from_ballots(m, ballots)
    runner_up = [_family([{0} | set(range(2, x)), {1} | set(range(2, x))])]
    expected = _family([set(range(x))])
    witness = Witness(
        "T2",
        _AXIOM_OF["T2"],
        profile,
        x,
        expected,
        ((x - 1, runner_up[0]), (x, expected)),
        {"x": x, "delta": delta, "ell": ell, "clones": (0, 1)},
        note="clones 0 and 1 both enter the unique winning committee",
    )
    _verify(h, witness)
    return witness


def witness_distrust(h: ThieleTable, ell: int | None = None) -> Witness:
    """A profile electing a trusted recommendation over a stronger singleton bloc.

    Applies when the first normalized deviation from the linear table lies
    above it.  A committee of ``x-1`` candidates is fixed by two loyal voters;
    the table's surplus at ``x`` drags in candidate ``c`` even though more
    voters uniquely report ``d``.
    """
    hn = _normalized(h)
    m = hn.m
    x = next((i for i in range(2, m + 1) if hn(i) != i), None)
    if x is None or hn(x) < x:
        raise WitnessNotApplicable(
            "first deviation is not above the linear table; distrust holds there"
        )
    if x > m - 1:
        raise WitnessNotApplicable(
            f"first deviation at {x} needs at least {x + 1} candidates, table has {m}"
        )
    delta = hn(x) - x
    min_ell = _min_ell(1 / delta)
    if ell is None:
        ell = min_ell
    elif ell < min_ell:
        raise ValueError(f"replication {ell} too small; need at least {min_ell}")
    base = set(range(x - 1))
    c, d = x - 1, x
    ballots = (
        [frozenset(base | {c})] * ell
        + [frozenset({d})] * (ell + 1)
        + [frozenset(base)] * 2  # the two loyal voters are kept literal
    )
    profile = Profile.from_ballots(m, ballots)
    expected = _family([base | {c}])
    witness = Witness(
        "T3-distrust",
        _AXIOM_OF["T3-distrust"],
        profile,
        x,
        expected,
        ((x - 1, _family([base])), (x, expected)),
        {"x": x, "delta": delta, "ell": ell, "c": c, "d": d, "base": tuple(sorted(base))},
        note=f"candidate {c} is chosen although {ell + 1} voters report only {{{d}}}",
    )
    _verify(h, witness)
    return witness


def witness_clone_acceptance(h: ThieleTable, ell: int | None = None) -> Witness:
    """A profile where one clone wins but adding its twin falls out.

    Applies when the first normalized deviation from the linear table lies
    below it: the deficit at ``x`` makes the second clone worth less than an
    unrelated singleton candidate.
    """
    hn = _normalized(h)
    m = hn.m
    x = next((i for i in range(2, m + 1) if hn(i) != i), None)
    if x is None or hn(x) > x:
        raise WitnessNotApplicable(
            "first deviation is not below the linear table; clone-acceptance holds there"
        )
    if x > m - 1:
        raise WitnessNotApplicable(
            f"first deviation at {x} needs at least {x + 1} candidates, table has {m}"
        )
    delta = x - hn(x)
    min_ell = _min_ell(1 / delta)
    if ell is None:
        ell = min_ell
    elif ell < min_ell:
        raise ValueError(f"replication {ell} too small; need at least {min_ell}")
    base = set(range(x - 2))
    c, d, b = x - 2, x - 1, x
    ballots = [frozenset(base | {c, d})] * ell + [frozenset({b})] * (ell - 1)
    profile = Profile.from_ballots(m, ballots)
    cloneside = sorted(base | {c, d})
    level_prev = _family(set(sub) for sub in itertools.combinations(cloneside, x - 1))
    expected = _family(
        {b} | set(sub) for sub in itertools.combinations(cloneside, x - 1)
    )
    witness = Witness(
        "T3-acceptance",
        _AXIOM_OF["T3-acceptance"],
        profile,
        x,
        expected,
        ((x - 1, level_prev), (x, expected)),
        {"x": x, "delta": delta, "ell": ell, "c": c, "d": d, "b": b,
         "base": tuple(sorted(base))},
        note=f"{{{c}}} extends a winner at size {x - 1} but the clone pair is shut out at {x}",
    )
    _verify(h, witness)
    return witness


def witness_clone_proportionality(h: ThieleTable, ell: int | None = None) -> Witness:
    """A two-bloc profile breaking proportional treatment of a clone bloc.

    Applies to every sequential Thiele table except the proportional one: let
    ``x`` be the first index where the normalized table departs from the
    harmonic numbers.  Above them the clone bloc crowds out a singleton
    candidate it should yield to; below them the singleton candidate displaces
    a clone it should lose against.
    """
    hn = _normalized(h)
    m = hn.m
    x = next((i for i in range(2, m + 1) if hn(i) != harmonic(i)), None)
    if x is None:
        raise WitnessNotApplicable(
            "table is the proportional rule's on this domain; it treats clones proportionally"
        )
    if x > m - 1:
        raise WitnessNotApplicable(
            f"first deviation at {x} needs at least {x + 1} candidates, table has {m}"
        )
    delta = abs(hn(x) - harmonic(x))
    min_ell = max(_min_ell(1 / (x * delta)), x)  # also strictly above x-1
    if ell is None:
        ell = min_ell
    elif ell < min_ell:
        raise ValueError(f"replication {ell} too small; need at least {min_ell}")
    clones = frozenset(range(x))
    c = x
    if hn(x) > harmonic(x):
        n1, n2 = ell * x, ell + 1
        expected = _family([clones])
        requires = "include"
    else:
        n1, n2 = ell * x + 1, ell
        expected = _family(
            {c} | set(sub) for sub in itertools.combinations(sorted(clones), x - 1)
        )
        requires = "exclude"
    profile = Profile.from_ballots(m, [clones] * n1 + [frozenset({c})] * n2)
    witness = Witness(
        "T4",
        _AXIOM_OF["T4"],
        profile,
        x,
        expected,
        ((x, expected),),
        {"x": x, "delta": delta, "ell": ell, "c": c, "n1": n1, "n2": n2,
         "requires": requires},
        note=f"average representation demands to {requires} candidate {c}, the rule does the opposite",
    )
    _verify(h, witness)
    return witness


BUILDERS = {
    "T2": witness_clone_rejection,
    "T3-distrust": witness_distrust,
    "T3-acceptance": witness_clone_acceptance,
    "T4": witness_clone_proportionality,
}


def build_witness(construction: str, h: ThieleTable, ell: int | None = None) -> Witness:
    if construction not in BUILDERS:
        raise KeyError(f"unknown construction {construction!r}; pick from {CONSTRUCTIONS}")
    return BUILDERS[construction](h, ell)
