"""Built-in rules: the named sequential rules and the axiom-violating zoo.

Every rule is constructed for a fixed number of candidates ``m``; tables are
finite, so the same name yields a different (but consistent) rule per m.
"""

from __future__ import annotations

from fractions import Fraction

from . import oracle
from .counting import (
    StepCountingTable,
    StepThieleTable,
    ThieleTable,
    Valuation,
    step_scoring_valuation,
    step_thiele_valuation,
    thiele_as_step_counting,
    step_thiele_as_step_counting,
    thiele_valuation,
    validate_step_counting,
    validate_step_thiele,
    validate_thiele,
)
from .engine import Rule, generator_step
from .profiles import Profile


def harmonic(x: int) -> Fraction:
    return sum((Fraction(1, i) for i in range(1, x + 1)), Fraction(0))


THIELE_NAMES = ("seqav", "seqpav", "seqccav")

ZOO_IDS = (
    "voter1-doubled-seqav",
    "candidate-a-doubled-seqav",
    "trivial",
    "cc-tiebreak-seqav",
    "optimizing-thiele",
    "reverse-seq-thiele",
    "clone-trusting",
)


def thiele_table(name: str, m: int) -> ThieleTable:
    """The counting table behind a named sequential Thiele rule."""
    if name == "seqav":
        return ThieleTable.from_function(m, lambda x: x)
    if name == "seqpav":
        return ThieleTable.from_function(m, harmonic)
    if name == "seqccav":
        return ThieleTable.from_function(m, lambda x: min(x, 1))
    if name == "clone-trusting":
        # Rewards candidates backed by already-satisfied voters; accepts
        # clones but trusts recommendations, so it fails distrust.
        return ThieleTable.from_function(m, lambda x: x if x <= 1 else 2 * x + 1)
    raise KeyError(f"unknown Thiele table {name!r}")


def sav_table(m: int) -> StepCountingTable:
    """Satisfaction approval: each voter splits one point over her ballot."""
    return StepCountingTable.from_function(m, lambda x, y, z: Fraction(x, z))


def alternating_table(m: int) -> StepThieleTable:
    """Approval voting at odd committee sizes, coverage at even ones."""
    return StepThieleTable.from_function(
        m, lambda x, y: x if y % 2 == 1 else min(x, 1)
    )


def step_counting_table(name: str, m: int) -> StepCountingTable:
    """Any catalog rule's counting function in three-argument form."""
    if name in THIELE_NAMES or name == "clone-trusting":
        return thiele_as_step_counting(thiele_table(name, m))
    if name == "seqsav":
        return sav_table(m)
    if name in ("av-cc-alternating", "alternating"):
        return step_thiele_as_step_counting(alternating_table(m))
    raise KeyError(f"unknown counting table {name!r}")


# ---------------------------------------------------------------------------
# Constructors


def make_seq_thiele(h: ThieleTable, name: str | None = None) -> Rule:
    ok, why = validate_thiele(h)
    if not ok:
        raise ValueError(f"invalid Thiele counting function: {why}")
    valuation = thiele_valuation(h, name or "seq-thiele")
    return Rule(
        name or "seq-thiele",
        h.m,
        "seq-thiele",
        step=lambda a, w: generator_step(valuation, a, w),
        valuation=valuation,
        table=h,
    )


def make_step_thiele(h: StepThieleTable, name: str | None = None) -> Rule:
    ok, why = validate_step_thiele(h)
    if not ok:
        raise ValueError(f"invalid step-dependent Thiele counting function: {why}")
    valuation = step_thiele_valuation(h, name or "step-thiele")
    return Rule(
        name or "step-thiele",
        h.m,
        "step-thiele",
        step=lambda a, w: generator_step(valuation, a, w),
        valuation=valuation,
        table=h,
    )


def make_step_scoring(h: StepCountingTable, name: str | None = None) -> Rule:
    ok, why = validate_step_counting(h)
    if not ok:
        raise ValueError(f"invalid step-dependent counting function: {why}")
    valuation = step_scoring_valuation(h, name or "step-scoring")
    return Rule(
        name or "step-scoring",
        h.m,
        "step-scoring",
        step=lambda a, w: generator_step(valuation, a, w),
        valuation=valuation,
        table=h,
    )


# ---------------------------------------------------------------------------
# The zoo


def _voter1_doubled_step(profile: Profile, committee: frozenset) -> frozenset:
    outside = [c for c in range(profile.m) if c not in committee]
    totals = {c: 0 for c in outside}
    for voter, ballot in profile.votes:
        weight = 2 if voter == 1 else 1
        for c in ballot:
            if c in totals:
                totals[c] += weight
    best = max(totals.values())
    return frozenset(c for c, t in totals.items() if t == best)


def _cc_tiebreak_step(profile: Profile, committee: frozenset) -> frozenset:
    outside = [c for c in range(profile.m) if c not in committee]
    approvals = {c: 0 for c in outside}
    covers = {c: 0 for c in outside}
    for ballot, count in profile.ballot_counts:
        uncovered = not (ballot & committee)
        for c in ballot:
            if c in approvals:
                approvals[c] += count
                if uncovered:
                    covers[c] += count
    top = max(approvals.values())
    tied = [c for c in outside if approvals[c] == top]
    if len(tied) == 1:
        return frozenset(tied)
    best_cover = max(covers[c] for c in tied)
    return frozenset(c for c in tied if covers[c] == best_cover)


def make_zoo_rule(
    zoo_id: str, m: int, table: ThieleTable | None = None, name: str | None = None
) -> Rule:
    """Rules that each break one axiom while keeping the rest.

    ``optimizing-thiele`` and ``reverse-seq-thiele`` take an optional Thiele
    table (defaults: the proportional table for the optimizer, the coverage
    table for the reversal, whose extracted generator is inconsistent on
    three-voter electorates).
    """
    if zoo_id == "voter1-doubled-seqav":
        return Rule(
            "voter1-doubled-seqav",
            m,
            "zoo",
            step=_voter1_doubled_step,
            id_sensitive=True,
            violates="anonymity",
        )
    if zoo_id == "candidate-a-doubled-seqav":
        valuation = Valuation(
            "candidate-a-doubled",
            "custom",
            lambda ballot, committee: Fraction(
                len(ballot & committee) + (1 if 0 in (ballot & committee) else 0)
            ),
        )
        return Rule(
            "candidate-a-doubled-seqav",
            m,
            "zoo",
            step=lambda a, w: generator_step(valuation, a, w),
            valuation=valuation,
            violates="neutrality",
        )
    if zoo_id == "trivial":
        return Rule(
            "trivial",
            m,
            "zoo",
            apply_direct=lambda a, k: frozenset(oracle.committees_of_size(m, k)),
            violates="non-imposition",
        )
    if zoo_id == "cc-tiebreak-seqav":
        return Rule(
            "cc-tiebreak-seqav",
            m,
            "zoo",
            step=_cc_tiebreak_step,
            violates="continuity",
        )
    if zoo_id == "optimizing-thiele":
        h = table if table is not None else thiele_table("seqpav", m)
        ok, why = validate_thiele(h)
        if not ok:
            raise ValueError(f"invalid Thiele counting function: {why}")
        return oracle.optimizing_rule(
            thiele_valuation(h, "optimizing"), m, name or "optimizing-thiele"
        )
    if zoo_id == "reverse-seq-thiele":
        h = table if table is not None else thiele_table("seqccav", m)
        ok, why = validate_thiele(h)
        if not ok:
            raise ValueError(f"invalid Thiele counting function: {why}")
        negated = Valuation(
            "reverse-thiele",
            "custom",
            lambda ballot, committee: -h(len(ballot & committee)),
        )
        return Rule(
            name or "reverse-seq-thiele",
            m,
            "zoo",
            step=lambda a, w: generator_step(negated, a, w),
            valuation=negated,
            violates="consistent committee monotonicity",
        )
    if zoo_id == "clone-trusting":
        rule = make_seq_thiele(thiele_table("clone-trusting", m), "clone-trusting")
        rule.violates = "distrust"
        return rule
    raise KeyError(f"unknown zoo rule {zoo_id!r}")


# ---------------------------------------------------------------------------
# Flat registry for the CLI


def make(name: str, m: int) -> Rule:
    """Look up any catalog rule by its flat name."""
    name = name.lower()
    if name in THIELE_NAMES:
        return make_seq_thiele(thiele_table(name, m), name)
    if name == "seqsav":
        return make_step_scoring(sav_table(m), "seqsav")
    if name in ("av-cc-alternating", "alternating"):
        return make_step_thiele(alternating_table(m), "av-cc-alternating")
    if name in ("voter1-doubled-seqav", "candidate-a-doubled-seqav", "trivial",
                "cc-tiebreak-seqav", "clone-trusting"):
        return make_zoo_rule(name, m)
    if name.startswith("optimizing-"):
        base = name.removeprefix("optimizing-")
        alias = {"av": "seqav", "pav": "seqpav", "ccav": "seqccav"}.get(base, base)
        return make_zoo_rule("optimizing-thiele", m, thiele_table(alias, m), name)
    if name.startswith("reverse-"):
        base = name.removeprefix("reverse-")
        return make_zoo_rule("reverse-seq-thiele", m, thiele_table(base, m), name)
    raise KeyError(f"unknown rule {name!r}")


RULE_NAMES = THIELE_NAMES + (
    "seqsav",
    "av-cc-alternating",
    "voter1-doubled-seqav",
    "candidate-a-doubled-seqav",
    "trivial",
    "cc-tiebreak-seqav",
    "clone-trusting",
    "optimizing-av",
    "optimizing-pav",
    "optimizing-ccav",
    "reverse-seqav",
    "reverse-seqpav",
    "reverse-seqccav",
)


def continuity_gap_instance(m: int = 3) -> tuple[Profile, Profile, int]:
    """An instance where the coverage tie-break ignores replication.

    In the base profile the two trailing candidates tie on approvals and the
    tie-break elects candidate 2; the extra voter tips the approval tie toward
    candidate 1 no matter how often the base profile is replicated, so no
    number of copies restores the base outcome at size 2.  Requires m >= 3.
    """
    if m < 3:
        raise ValueError("needs at least three candidates")
    base = Profile.from_ballots(m, [{0}, {0, 1}, {2}])
    extra = Profile.from_ballots(m, [{1}])
    return base, extra, 2
