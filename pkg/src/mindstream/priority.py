"""Recency/repetition priority scoring for stored collocations.

Three functions rank a collocation's occurrence history against the
current sentence number ``c``:

* geometric decay summed over every occurrence (repetition-aware),
* a repetition-boosted coefficient raised to the gap since the last
  occurrence (repetition-aware, order of repetitions irrelevant),
* pure decay of the gap since the last occurrence (repetition-blind).

All three are strictly decreasing in ``c`` for a fixed history, which
is what lets old entries fade while the data itself is never deleted:
values below a small display floor merely render as "0.0".
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Sequence

from .model import CollocationKey
from .store import MindMapBlock

DEFAULT_BASE = 0.5
DEFAULT_DELTA = 0.05
DEFAULT_MIN_ENTRIES = 5
DISPLAY_FLOOR = 5e-4


class EmptyOccurrencesError(ValueError):
    """Scoring needs at least one occurrence."""


class FutureOccurrenceError(ValueError):
    """An occurrence lies after the queried sentence number."""


class ThresholdError(ValueError):
    """The selection threshold must be non-negative."""


def _last_occurrence(c: int, occurrences: Sequence[int]) -> int:
    if not occurrences:
        raise EmptyOccurrencesError("occurrence vector is empty")
    last = max(occurrences)
    if last > c:
        raise FutureOccurrenceError(f"occurrence {last} lies after current sentence {c}")
    return last


def decay_sum(c: int, occurrences: Sequence[int], base: float = DEFAULT_BASE) -> float:
    """Geometric decay summed over every occurrence.

    Each occurrence at sentence x contributes base**(c - x), so recent
    occurrences dominate and repetitions accumulate. With the default
    base the value stays strictly below 2.
    """
    if not 0.0 < base < 1.0:
        raise ValueError(f"decay base must lie in (0, 1), got {base!r}")
    _last_occurrence(c, occurrences)
    # Oldest occurrences first: the smallest terms accumulate before the
    # large ones, keeping the floating-point sum tight.
    return sum(base ** (c - x) for x in sorted(occurrences))


def boost_coefficient(d: int) -> float:
    """Partial geometric sum 0.5^1 + ... + 0.5^d, in closed form 1 - 0.5^d.

    Grows with the repetition count d, starting at 0.5 and approaching
    (never reaching) 1.
    """
    if d < 1:
        raise ValueError(f"repetition count must be >= 1, got {d!r}")
    return 1.0 - 0.5 ** d


def repetition_boosted_decay(c: int, occurrences: Sequence[int]) -> float:
    """Repetition-grown coefficient raised to the gap since the last occurrence.

    Every repetition permanently raises the coefficient; when the
    repetitions happened no longer matters, only how many there were
    and how recent the last one is. Result in (0, 1].
    """
    last = _last_occurrence(c, occurrences)
    return boost_coefficient(len(occurrences)) ** (c - last)


def last_occurrence_decay(c: int, occurrences: Sequence[int]) -> float:
    """Pure recency: 0.5 to the power of the gap since the last occurrence.

    Repetitions are irrelevant. Result in (0, 1].
    """
    last = _last_occurrence(c, occurrences)
    return 0.5 ** (c - last)


class PriorityFunction(str, Enum):
    """The selectable priority functions, by their user-facing names."""

    F1 = "f1"
    F2 = "f2"
    F3 = "f3"

    def evaluate(self, c: int, occurrences: Sequence[int], base: float = DEFAULT_BASE) -> float:
        if self is PriorityFunction.F1:
            return decay_sum(c, occurrences, base)
        if self is PriorityFunction.F2:
            return repetition_boosted_decay(c, occurrences)
        return last_occurrence_decay(c, occurrences)


def render_priority(value: float) -> str:
    """Three-decimal display string; tiny values read "0.0".

    Values below the display floor have been forgotten for presentation
    purposes (the underlying entry is never deleted). Rounding is
    half-up so that e.g. 0.5625 renders as 0.563.
    """
    if value < DISPLAY_FLOOR:
        return "0.0"
    return str(Decimal(repr(value)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class ScoredCollocation:
    """One collocation identity with its evaluated priority."""

    key: CollocationKey
    priority: float
    occurrences: tuple[int, ...]

    @property
    def display(self) -> str:
        return render_priority(self.priority)


@dataclass(frozen=True)
class PrioritySnapshot:
    """Ordered, threshold-filtered priority list for one actor at time c."""

    actor: str
    function: PriorityFunction
    c: int
    entries: tuple[ScoredCollocation, ...]
    delta: float


def score_actor(
    block: MindMapBlock,
    function: PriorityFunction,
    c: int,
    base: float = DEFAULT_BASE,
) -> list[ScoredCollocation]:
    """Evaluate every collocation in an actor's block at sentence c.

    Sorted by priority descending; ties break by most recent occurrence
    descending, then by (verb, object) lexicographically.
    """
    scored = []
    for verb, entries in block.verbs.items():
        for entry in entries:
            priority = function.evaluate(c, entry.occurrences, base)
            key = CollocationKey(block.actor, verb, entry.object)
            scored.append(ScoredCollocation(key, priority, entry.occurrences))
    scored.sort(
        key=lambda s: (-s.priority, -s.occurrences[-1], s.key.verb, s.key.object or "")
    )
    return scored


def select_output(
    scored: Sequence[ScoredCollocation],
    delta: float = DEFAULT_DELTA,
    min_entries: int = DEFAULT_MIN_ENTRIES,
) -> list[ScoredCollocation]:
    """Apply the threshold with a minimum-entries floor.

    Everything at or above `delta` is shown; if that leaves fewer than
    `min_entries`, the top `min_entries` are shown instead (or the whole
    block when it is smaller than that).
    """
    if delta < 0:
        raise ThresholdError(f"threshold must be non-negative, got {delta!r}")
    qualifying = [s for s in scored if s.priority >= delta]
    if len(qualifying) >= min_entries:
        return qualifying
    return list(scored[:min_entries])
