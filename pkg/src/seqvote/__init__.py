"""Sequential committee voting with exact rational arithmetic.

The package splits into:

- :mod:`seqvote.profiles` -- ballots, profiles, and the profile algebra;
- :mod:`seqvote.counting` -- counting-function tables, valuations, scores;
- :mod:`seqvote.engine` -- generator steps, tie-branching sequential runs;
- :mod:`seqvote.catalog` -- the named rules and the axiom-violating zoo;
- :mod:`seqvote.axioms` -- bounded axiom checkers returning replayable reports;
- :mod:`seqvote.witnesses` -- constructive counterexamples for the clone axioms;
- :mod:`seqvote.oracle` -- brute-force enumeration and optimizing baselines;
- :mod:`seqvote.cli` -- the ``seqvote`` command-line tool.
"""

from .axioms import AxiomReport, Bounds, compute_n_stats
from .catalog import make, make_seq_thiele, make_step_scoring, make_step_thiele, make_zoo_rule
from .counting import (
    StepCountingTable,
    StepThieleTable,
    ThieleTable,
    Valuation,
    WeightTable,
    committee_score,
    counting_from_weight,
    weight_from_counting,
)
from .engine import (
    Rule,
    derive_generator,
    generator_step,
    run_sequential,
    sequential_trace,
    weighted_approval_step,
)
from .oracle import ProfileUniverse, brute_force_optimal, compare_rules
from .profiles import (
    Profile,
    apply_candidate_permutation,
    profile_scale,
    profile_sum,
    symmetrize_profile,
)
from .witnesses import (
    Witness,
    witness_clone_acceptance,
    witness_clone_proportionality,
    witness_clone_rejection,
    witness_distrust,
)

__all__ = [
    "AxiomReport",
    "Bounds",
    "Profile",
    "ProfileUniverse",
    "Rule",
    "StepCountingTable",
    "StepThieleTable",
    "ThieleTable",
    "Valuation",
    "WeightTable",
    "Witness",
    "apply_candidate_permutation",
    "brute_force_optimal",
    "committee_score",
    "compare_rules",
    "compute_n_stats",
    "counting_from_weight",
    "derive_generator",
    "generator_step",
    "make",
    "make_seq_thiele",
    "make_step_scoring",
    "make_step_thiele",
    "make_zoo_rule",
    "profile_scale",
    "profile_sum",
    "run_sequential",
    "sequential_trace",
    "symmetrize_profile",
    "weight_from_counting",
    "weighted_approval_step",
    "witness_clone_acceptance",
    "witness_clone_proportionality",
    "witness_clone_rejection",
    "witness_distrust",
]

__version__ = "0.1.0"
