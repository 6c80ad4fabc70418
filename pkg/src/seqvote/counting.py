"""Counting-function tables, valuations, and exact committee scores.

Counting functions are finite grids of rationals over ``0..m`` rather than
closures; that keeps validation decidable and serialization exact.  Scores
are :class:`fractions.Fraction` values and are never rounded, so ties are
decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

from .profiles import Profile


def frac(value) -> Fraction:
    """Coerce ints, ``"p/q"`` strings, and Fractions to an exact Fraction."""
    return value if isinstance(value, Fraction) else Fraction(value)


class ValidationResult(NamedTuple):
    ok: bool
    detail: object  # human-readable reason, or a witness structure


# ---------------------------------------------------------------------------
# Tables


@dataclass(frozen=True)
class ThieleTable:
    """A table ``h(x)`` for ``x in 0..m``."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(frac(v) for v in self.values))
        if len(self.values) < 2:
            raise ValueError("need entries for at least x=0 and x=1")

    @property
    def m(self) -> int:
        return len(self.values) - 1

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    @classmethod
    def from_function(cls, m: int, fn: Callable[[int], object]) -> "ThieleTable":
        return cls(tuple(frac(fn(x)) for x in range(m + 1)))

    def normalized(self) -> "ThieleTable":
        """Rescale to ``h(0)=0`` and ``h(1)=1``; the induced rule is unchanged."""
        base, unit = self.values[0], self.values[1]
        if unit == base:
            raise ValueError("cannot normalize a table with h(1)=h(0)")
        return ThieleTable(tuple((v - base) / (unit - base) for v in self.values))


@dataclass(frozen=True)
class StepThieleTable:
    """A table ``h(x, y)`` for ``x in 0..m``, ``y in 1..m`` (y = committee size)."""

    values: tuple[tuple[Fraction, ...], ...]  # indexed [y-1][x]

    def __post_init__(self):
        rows = tuple(tuple(frac(v) for v in row) for row in self.values)
        object.__setattr__(self, "values", rows)
        m = len(rows)
        if m < 1 or any(len(row) != m + 1 for row in rows):
            raise ValueError("expected m rows of m+1 entries")

    @property
    def m(self) -> int:
        return len(self.values)

    def __call__(self, x: int, y: int) -> Fraction:
        return self.values[y - 1][x]

    @classmethod
    def from_function(cls, m: int, fn) -> "StepThieleTable":
        return cls(
            tuple(tuple(frac(fn(x, y)) for x in range(m + 1)) for y in range(1, m + 1))
        )


@dataclass(frozen=True)
class StepCountingTable:
    """A table ``h(x, y, z)``: x committee members approved, committee size y,
    ballot size z."""

    values: tuple[tuple[tuple[Fraction, ...], ...], ...]  # indexed [x][y-1][z-1]

    def __post_init__(self):
        try:
            grid = tuple(
                tuple(tuple(frac(v) for v in zrow) for zrow in yrow)
                for yrow in self.values
            )
        except TypeError as exc:
            raise ValueError(f"expected a 3-level grid of rationals: {exc}") from None
        object.__setattr__(self, "values", grid)
        m = len(grid) - 1
        if m < 1 or any(
            len(yrow) != m or any(len(zrow) != m for zrow in yrow) for yrow in grid
        ):
            raise ValueError("expected (m+1) x m x m entries")

    @property
    def m(self) -> int:
        return len(self.values) - 1

    def __call__(self, x: int, y: int, z: int) -> Fraction:
        return self.values[x][y - 1][z - 1]

    @classmethod
    def from_function(cls, m: int, fn) -> "StepCountingTable":
        return cls(
            tuple(
                tuple(
                    tuple(frac(fn(x, y, z)) for z in range(1, m + 1))
                    for y in range(1, m + 1)
                )
                for x in range(m + 1)
            )
        )


@dataclass(frozen=True)
class WeightTable:
    """Per-voter weights ``v(x, z)`` for one step of weighted approval voting.

    ``x`` is the number of committee members the ballot already approves
    (``0..m-1``) and ``z`` is the ballot size (``1..m``).
    """

    values: tuple[tuple[Fraction, ...], ...]  # indexed [x][z-1]

    def __post_init__(self):
        grid = tuple(tuple(frac(v) for v in row) for row in self.values)
        object.__setattr__(self, "values", grid)
        m = len(grid)
        if m < 1 or any(len(row) != m for row in grid):
            raise ValueError("expected m rows of m entries")

    @property
    def m(self) -> int:
        return len(self.values)

    def __call__(self, x: int, z: int) -> Fraction:
        return self.values[x][z - 1]

    @classmethod
    def from_function(cls, m: int, fn) -> "WeightTable":
        return cls(
            tuple(tuple(frac(fn(x, z)) for z in range(1, m + 1)) for x in range(m))
        )


# ---------------------------------------------------------------------------
# Validation


def validate_thiele(h: ThieleTable) -> ValidationResult:
    """Non-negative, non-decreasing, and ``h(1) > h(0)``."""
    for x, v in enumerate(h.values):
        if v < 0:
            return ValidationResult(False, f"h({x}) = {v} is negative")
    for x in range(1, h.m + 1):
        if h(x) < h(x - 1):
            return ValidationResult(False, f"h decreases at x={x}")
    if not h(1) > h(0):
        return ValidationResult(False, "h(1) > h(0) fails")
    return ValidationResult(True, None)


def validate_step_thiele(h: StepThieleTable) -> ValidationResult:
    """Non-negative, non-decreasing in x, and strictly increasing somewhere in
    ``x <= y`` for every committee size ``y < m``."""
    m = h.m
    for y in range(1, m + 1):
        for x in range(m + 1):
            if h(x, y) < 0:
                return ValidationResult(False, f"h({x},{y}) negative")
            if x >= 1 and h(x, y) < h(x - 1, y):
                return ValidationResult(False, f"h decreases in x at ({x},{y})")
    for y in range(1, m):
        if not any(h(x, y) > h(x - 1, y) for x in range(1, y + 1)):
            return ValidationResult(False, f"no strict increase with x <= y for y={y}")
    return ValidationResult(True, None)


def validate_step_counting(h: StepCountingTable) -> ValidationResult:
    """For every ``y < m`` some ``x <= y`` and feasible ``z`` must distinguish
    ``h(x,y,z)`` from ``h(x-1,y,z)``.

    On success the detail maps each ``y`` to a witnessing ``(x, z)`` pair; on
    failure it names the first ``y`` without one.
    """
    m = h.m
    witnesses = {}
    for y in range(1, m):
        found = None
        for x in range(1, y + 1):
            for z in range(x, m - (y - x)):
                if h(x, y, z) != h(x - 1, y, z):
                    found = (x, z)
                    break
            if found:
                break
        if found is None:
            return ValidationResult(False, f"no distinguishing pair for y={y}")
        witnesses[y] = found
    return ValidationResult(True, witnesses)


# ---------------------------------------------------------------------------
# Valuations and scores


@dataclass(frozen=True, eq=False)
class Valuation:
    """A pure score function on (ballot, committee) pairs.

    ``kind`` records the provenance: ``thiele``, ``step-thiele``,
    ``step-scoring``, or ``custom``.  Evaluations are memoized; the function
    must depend only on the pair itself.
    """

    name: str
    kind: str
    fn: Callable[[frozenset[int], frozenset[int]], Fraction]
    table: object = None
    _cache: dict = field(default_factory=dict, repr=False)

    def value(self, ballot: frozenset[int], committee: frozenset[int]) -> Fraction:
        key = (ballot, committee)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = frac(self.fn(ballot, committee))
        return hit


def thiele_valuation(table: ThieleTable, name: str | None = None) -> Valuation:
    return Valuation(
        name or "thiele",
        "thiele",
        lambda ballot, committee: table(len(ballot & committee)),
        table,
    )


def step_thiele_valuation(table: StepThieleTable, name: str | None = None) -> Valuation:
    def fn(ballot, committee):
        if not committee:
            return Fraction(0)
        return table(len(ballot & committee), len(committee))

    return Valuation(name or "step-thiele", "step-thiele", fn, table)


def step_scoring_valuation(table: StepCountingTable, name: str | None = None) -> Valuation:
    def fn(ballot, committee):
        if not committee:
            return Fraction(0)
        return table(len(ballot & committee), len(committee), len(ballot))

    return Valuation(name or "step-scoring", "step-scoring", fn, table)


def committee_score(valuation: Valuation, profile: Profile, committee) -> Fraction:
    """The exact total score ``sum_i v(A_i, W)`` over all voters."""
    committee = frozenset(committee)
    total = Fraction(0)
    for ballot, count in profile.ballot_counts:
        total += count * valuation.value(ballot, committee)
    return total


# ---------------------------------------------------------------------------
# Conversions between counting tables and per-step weight tables


def weight_from_counting(h: StepCountingTable) -> tuple[WeightTable, ...]:
    """Forward differences of ``h``: one weight table per current committee size.

    The table at index ``y`` carries the weight a ballot of size ``z`` that
    already approves ``x`` committee members contributes to a candidate it
    approves when a size-``y`` committee is extended to size ``y+1``.
    """
    m = h.m
    return tuple(
        WeightTable.from_function(m, lambda x, z, y=y: h(x + 1, y + 1, z) - h(x, y + 1, z))
        for y in range(m)
    )


def counting_from_weight(weights: Sequence[WeightTable]) -> StepCountingTable:
    """Telescope per-step weight tables back into a counting table.

    Inverse of :func:`weight_from_counting`: the round trip
    ``weight_from_counting(counting_from_weight(ws)) == ws`` is exact, and the
    resulting table has ``h(0, y, z) = 0`` everywhere.
    """
    m = len(weights)
    if m < 1 or any(w.m != m for w in weights):
        raise ValueError("expected m weight tables of matching size m")

    def fn(x, y, z):
        total = Fraction(0)
        for i in range(x):
            total += weights[y - 1](i, z)
        return total

    return StepCountingTable.from_function(m, fn)


def thiele_as_step_counting(h: ThieleTable) -> StepCountingTable:
    """Embed ``h(x)`` as the step-dependent table ``h(x, y, z) = h(x)``."""
    return StepCountingTable.from_function(h.m, lambda x, y, z: h(x))


def step_thiele_as_step_counting(h: StepThieleTable) -> StepCountingTable:
    """Embed ``h(x, y)`` as the step-dependent table ``h(x, y, z) = h(x, y)``."""
    return StepCountingTable.from_function(h.m, lambda x, y, z: h(x, y))
