"""Per-actor mind-map blocks with verb-keyed object entries.

Each actor discovered in the stream owns one block. Inside a block the
verb of a collocation is the key; under each verb sits the list of
objects it appeared with, each carrying the vector of sentence numbers
where that exact collocation occurred. An append-only event log of all
inserts allows batch re-derivation and time-travel queries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .model import Collocation, CollocationKey, parse_wire, to_wire

logger = logging.getLogger(__name__)


class OutOfOrderError(ValueError):
    """Inserts must follow stream order (equal positions are allowed)."""


class UnknownKeyError(LookupError):
    """No occurrence vector is stored for this collocation key."""


class UnknownActorError(LookupError):
    """No mind-map block exists for this actor."""


class MalformedDocumentError(ValueError):
    """A persisted document is structurally broken or self-inconsistent."""


@dataclass(frozen=True)
class InsertReport:
    """What an insert did: allocated a new block and/or extended a key."""

    is_new_actor: bool
    is_reoccurrence: bool
    is_duplicate: bool = False


@dataclass(frozen=True)
class ObjectEntry:
    """One object under a verb, with the sentence numbers it occurred at."""

    object: Optional[str]
    occurrences: tuple[int, ...]


@dataclass(frozen=True)
class MindMapBlock:
    """Read-only snapshot of one actor's memory.

    Verbs iterate in first-appearance order; object entries within a
    verb likewise.
    """

    actor: str
    verbs: Mapping[str, tuple[ObjectEntry, ...]]


@dataclass
class _Entry:
    object: Optional[str]
    positions: list[int] = field(default_factory=list)


class MindMapStore:
    """Dynamic actor list plus one mind-map block per actor."""

    def __init__(self) -> None:
        self._actor_order: list[str] = []
        self._blocks: dict[str, dict[str, list[_Entry]]] = {}
        self._by_key: dict[CollocationKey, _Entry] = {}
        self._last_seen: dict[str, int] = {}
        self._log: list[Collocation] = []
        self._position_counter = 0

    @property
    def position_counter(self) -> int:
        """Highest sentence position inserted so far (0 when empty)."""
        return self._position_counter

    def insert(self, collocation: Collocation) -> InsertReport:
        """Store one collocation, extending its occurrence vector.

        Positions must arrive in stream order; equal positions are fine
        (adjective-derived facts share their host sentence's position),
        but a repeat of the same key at the same position is a no-op.
        """
        if collocation.position < self._position_counter:
            raise OutOfOrderError(
                f"position {collocation.position} precedes current position "
                f"{self._position_counter}"
            )
        key = collocation.key
        entry = self._by_key.get(key)
        if entry is not None and entry.positions[-1] == collocation.position:
            logger.warning("duplicate insert ignored: %s", to_wire(collocation))
            return InsertReport(is_new_actor=False, is_reoccurrence=False, is_duplicate=True)

        actor = collocation.actor.lemma
        is_new_actor = actor not in self._blocks
        if is_new_actor:
            self._blocks[actor] = {}
            self._actor_order.append(actor)
        is_reoccurrence = entry is not None
        if entry is None:
            entry = _Entry(object=key.object)
            self._by_key[key] = entry
            self._blocks[actor].setdefault(collocation.verb.lemma, []).append(entry)
        entry.positions.append(collocation.position)
        self._last_seen[actor] = collocation.position
        self._log.append(collocation)
        self._position_counter = collocation.position
        return InsertReport(is_new_actor=is_new_actor, is_reoccurrence=is_reoccurrence)

    def occurrences_of(self, key: CollocationKey) -> tuple[int, ...]:
        """Full sorted vector of sentence numbers for one collocation key."""
        entry = self._by_key.get(key)
        if entry is None:
            raise UnknownKeyError(str(key))
        return tuple(entry.positions)

    def block_of(self, actor: str) -> MindMapBlock:
        """Read-only view of one actor's block."""
        try:
            verbs = self._blocks[actor]
        except KeyError:
            raise UnknownActorError(actor) from None
        return MindMapBlock(
            actor=actor,
            verbs={
                verb: tuple(ObjectEntry(e.object, tuple(e.positions)) for e in entries)
                for verb, entries in verbs.items()
            },
        )

    def actors(self) -> list[str]:
        """Actor lemmas in first-appearance order."""
        return list(self._actor_order)

    def actors_by_recency(self) -> list[str]:
        """Actor lemmas ordered by most recent occurrence first."""
        first_index = {a: i for i, a in enumerate(self._actor_order)}
        return sorted(
            self._actor_order, key=lambda a: (-self._last_seen[a], -first_index[a])
        )

    def event_log(self) -> list[Collocation]:
        """Every stored collocation in insertion order."""
        return list(self._log)

    @classmethod
    def replay(cls, log: Iterable[Collocation]) -> "MindMapStore":
        """Rebuild a store from an event log; replaying a store's own log
        reproduces it exactly."""
        store = cls()
        for collocation in log:
            store.insert(collocation)
        return store

    def to_document(self) -> dict:
        """JSON-shaped snapshot: actors, blocks, event log, position counter."""
        return {
            "actors": list(self._actor_order),
            "blocks": {
                actor: {
                    verb: [
                        {"object": e.object, "positions": list(e.positions)}
                        for e in entries
                    ]
                    for verb, entries in verbs.items()
                }
                for actor, verbs in self._blocks.items()
            },
            "event_log": [to_wire(c) for c in self._log],
            "position_counter": self._position_counter,
        }

    @classmethod
    def from_document(cls, document: dict) -> "MindMapStore":
        """Rebuild from a snapshot document, verifying self-consistency."""
        if not isinstance(document, dict):
            raise MalformedDocumentError("store document must be an object")
        for field_name in ("actors", "blocks", "event_log", "position_counter"):
            if field_name not in document:
                raise MalformedDocumentError(f"store document missing field {field_name!r}")
        store = cls()
        for i, line in enumerate(document["event_log"]):
            try:
                store.insert(parse_wire(line))
            except ValueError as exc:
                raise MalformedDocumentError(f"store.event_log[{i}]: {exc}") from None
        rebuilt = store.to_document()
        for field_name in ("actors", "blocks", "position_counter"):
            if rebuilt[field_name] != document[field_name]:
                raise MalformedDocumentError(
                    f"store.{field_name} is inconsistent with the event log"
                )
        return store
