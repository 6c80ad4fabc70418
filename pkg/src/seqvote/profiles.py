"""Approval profiles and the profile algebra.

Candidates are the integers ``0..m-1``, a ballot is a non-empty frozenset of
candidates, and a profile maps positive voter ids to ballots.  Everything is
immutable and hashable, so profiles can be shared between threads and used as
cache keys.  Two profiles with different ``m`` never mix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class ProfileError(ValueError):
    """Invalid profile construction or misuse of the profile algebra."""


class SymmetrizationCapError(ProfileError):
    """Symmetrizing this profile would exceed the configured size cap."""


#: Guard against the factorial blowup of symmetrization.
DEFAULT_SYMMETRIZATION_CAP = 10_000


def ballot_sort_key(ballot: frozenset[int]) -> tuple[int, tuple[int, ...]]:
    """Canonical ballot order: by size, then lexicographically by members."""
    return (len(ballot), tuple(sorted(ballot)))


def validate_ballot(m: int, approved: Iterable[int]) -> frozenset[int]:
    """Return ``approved`` as a frozenset, rejecting empty or out-of-range ballots."""
    ballot = frozenset(approved)
    if not ballot:
        raise ProfileError("ballots must be non-empty")
    for c in ballot:
        if not isinstance(c, int) or isinstance(c, bool) or not 0 <= c < m:
            raise ProfileError(f"candidate {c!r} outside 0..{m - 1}")
    return ballot


@dataclass(frozen=True)
class Profile:
    """A finite, non-empty map from voter ids to approval ballots.

    ``votes`` is stored as a tuple of ``(voter_id, ballot)`` pairs sorted by
    voter id.  Use :meth:`from_dict` or :meth:`from_ballots` instead of the
    raw constructor.
    """

    m: int
    votes: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self):
        if self.m < 1:
            raise ProfileError("need at least one candidate")
        if not self.votes:
            raise ProfileError("profiles must contain at least one voter")
        ids = [v for v, _ in self.votes]
        if any(not isinstance(v, int) or v < 1 for v in ids):
            raise ProfileError("voter ids must be positive integers")
        if len(set(ids)) != len(ids):
            raise ProfileError("duplicate voter ids")
        if ids != sorted(ids):
            raise ProfileError("votes must be sorted by voter id")
        for _, ballot in self.votes:
            validate_ballot(self.m, ballot)

    @classmethod
    def from_dict(cls, m: int, mapping: Mapping[int, Iterable[int]]) -> "Profile":
        votes = tuple(
            (voter, validate_ballot(m, ballot)) for voter, ballot in sorted(mapping.items())
        )
        return cls(m, votes)

    @classmethod
    def from_ballots(cls, m: int, ballots: Sequence[Iterable[int]]) -> "Profile":
        """Build a profile assigning voter ids 1..n to ``ballots`` in order."""
        votes = tuple(
            (i + 1, validate_ballot(m, ballot)) for i, ballot in enumerate(ballots)
        )
        return cls(m, votes)

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.votes)

    @property
    def voter_ids(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.votes)

    def ballot(self, voter: int) -> frozenset[int]:
        for v, b in self.votes:
            if v == voter:
                return b
        raise KeyError(voter)

    def ballots(self) -> tuple[frozenset[int], ...]:
        return tuple(b for _, b in self.votes)

    @cached_property
    def ballot_multiset(self) -> tuple[frozenset[int], ...]:
        """The anonymous content of the profile: ballots in canonical order."""
        return tuple(sorted(self.ballots(), key=ballot_sort_key))

    @cached_property
    def ballot_counts(self) -> tuple[tuple[frozenset[int], int], ...]:
        """Distinct ballots with multiplicities, in canonical ballot order."""
        return tuple(
            (ballot, len(list(group)))
            for ballot, group in itertools.groupby(self.ballot_multiset)
        )

    @cached_property
    def support(self) -> frozenset[int]:
        """All candidates approved by at least one voter."""
        return frozenset().union(*self.ballots())

    def same_ballots(self, other: "Profile") -> bool:
        """Anonymous equality: same candidate set and same ballot multiset."""
        return self.m == other.m and self.ballot_multiset == other.ballot_multiset

    def canonical(self) -> "Profile":
        """The anonymous normal form: ids 1..n, ballots in canonical order."""
        return Profile.from_ballots(self.m, self.ballot_multiset)

    def relabeled(self, first_id: int = 1) -> "Profile":
        """Same ballots in voter-id order, with fresh consecutive ids."""
        return Profile(
            self.m,
            tuple((first_id + i, b) for i, (_, b) in enumerate(self.votes)),
        )

    def __add__(self, other: "Profile") -> "Profile":
        return profile_sum(self, other)

    def __str__(self):
        parts = ", ".join(
            f"{v}->{{{','.join(map(str, sorted(b)))}}}" for v, b in self.votes
        )
        return f"Profile(m={self.m}; {parts})"


def profile_sum(a: Profile, b: Profile) -> Profile:
    """Union of two profiles over disjoint electorates.

    Raises :class:`ProfileError` if the voter-id sets overlap; callers that
    want fresh ids must relabel first (see :meth:`Profile.relabeled`).
    """
    if a.m != b.m:
        raise ProfileError(f"mixed candidate sets: m={a.m} vs m={b.m}")
    if set(a.voter_ids) & set(b.voter_ids):
        raise ProfileError("profiles share voter ids; relabel before summing")
    return Profile(a.m, tuple(sorted(a.votes + b.votes)))


def profile_scale(j: int, a: Profile) -> Profile:
    """``j`` disjoint copies of ``a``.

    The first copy keeps the original voter ids; later copies are shifted by
    multiples of the largest id, so ids stay disjoint and the original voters
    (in particular voter 1) remain present.
    """
    if not isinstance(j, int) or j < 1:
        raise ProfileError("the number of copies must be a positive integer")
    top = max(a.voter_ids)
    votes = []
    for t in range(j):
        votes.extend((v + t * top, b) for v, b in a.votes)
    return Profile(a.m, tuple(sorted(votes)))


def _permutation_map(m: int, tau) -> dict[int, int]:
    if isinstance(tau, Mapping):
        mapping = dict(tau)
    else:
        mapping = {i: image for i, image in enumerate(tau)}
    if sorted(mapping) != list(range(m)) or sorted(mapping.values()) != list(range(m)):
        raise ProfileError(f"not a permutation of 0..{m - 1}: {tau!r}")
    return mapping


def apply_candidate_permutation(tau, a: Profile) -> Profile:
    """Rename candidates pointwise by the permutation ``tau`` (sequence or map)."""
    mapping = _permutation_map(a.m, tau)
    return Profile(
        a.m,
        tuple((v, frozenset(mapping[c] for c in b)) for v, b in a.votes),
    )


def apply_voter_permutation(pi: Mapping[int, int], a: Profile) -> Profile:
    """Rename voters by ``pi`` (ids not mentioned map to themselves)."""
    new_ids = [pi.get(v, v) for v in a.voter_ids]
    if len(set(new_ids)) != len(new_ids) or any(v < 1 for v in new_ids):
        raise ProfileError(f"not injective on voter ids: {pi!r}")
    return Profile(a.m, tuple(sorted((pi.get(v, v), b) for v, b in a.votes)))


def symmetrize_profile(
    a: Profile,
    fixed: frozenset[int] | set[int],
    cap: int = DEFAULT_SYMMETRIZATION_CAP,
) -> Profile:
    """Disjoint sum of ``tau(a)`` over all permutations fixing ``fixed`` pointwise.

    In the result all candidates outside ``fixed`` are fully interchangeable:
    they have identical n-statistics with respect to any committee contained
    in ``fixed``.  The output size is ``(m - |fixed|)! * n`` voters; the call
    fails if that exceeds ``cap``.
    """
    fixed = frozenset(fixed)
    if not fixed <= set(range(a.m)):
        raise ProfileError("fixed candidates outside 0..m-1")
    movable = sorted(set(range(a.m)) - fixed)
    total = math.factorial(len(movable)) * a.n
    if total > cap:
        raise SymmetrizationCapError(
            f"symmetrization needs {total} voters, cap is {cap}"
        )
    ballots = []
    for images in itertools.permutations(movable):
        tau = {c: c for c in fixed}
        tau.update(dict(zip(movable, images)))
        ballots.extend(apply_candidate_permutation(tau, a).ballots())
    return Profile.from_ballots(a.m, ballots)
