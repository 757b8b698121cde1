"""Canonical collocation model: categorized tokens, keys, and the wire format.

A collocation is one actor-verb-object unit anchored at a sentence
position. Identity is lemma-based: two collocations whose actor, verb,
and object lemmas agree denote the same piece of knowledge no matter
where in the stream they occurred (and no matter how their tokens were
categorized, since the wire format carries lemmas only).
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Optional

WIRE_SEPARATOR = "|"
ABSENT_OBJECT_MARK = "-"
LINKING_VERB = "sein"


class Category(str, Enum):
    """Word category assigned by the lexicon during annotation."""

    N = "N"
    V = "V"
    ADJ = "ADJ"
    PRON = "PRON"
    OTHER = "OTHER"


class CategoryMismatchError(ValueError):
    """A collocation slot received a token of the wrong category."""


class PositionError(ValueError):
    """Sentence positions are counters starting at 1."""


class WireFormatError(ValueError):
    """A line does not parse as ``actor|verb|object|position``."""


# Lemmas travel through pipe-separated single-line formats, so they may
# not contain the separator or any whitespace.
_FORBIDDEN_CHARS = frozenset(WIRE_SEPARATOR + " \t\n\r")


@dataclass(frozen=True)
class Token:
    """A word in basic form: lemma plus category.

    Lemmas are normalized to Unicode NFC on construction so that
    umlauts and other composed characters compare bytewise.
    """

    lemma: str
    category: Category

    def __post_init__(self) -> None:
        if not isinstance(self.category, Category):
            object.__setattr__(self, "category", Category(self.category))
        lemma = unicodedata.normalize("NFC", self.lemma)
        object.__setattr__(self, "lemma", lemma)
        if not lemma or lemma == ABSENT_OBJECT_MARK:
            raise ValueError(f"invalid token lemma: {self.lemma!r}")
        if any(ch in _FORBIDDEN_CHARS for ch in lemma):
            raise ValueError(
                f"token lemma {lemma!r} may not contain whitespace or {WIRE_SEPARATOR!r}"
            )


@dataclass(frozen=True)
class CollocationKey:
    """Lemma-level identity of a collocation; position is excluded."""

    actor: str
    verb: str
    object: Optional[str]

    def __str__(self) -> str:
        obj = self.object if self.object is not None else ABSENT_OBJECT_MARK
        return WIRE_SEPARATOR.join((self.actor, self.verb, obj))


@dataclass(frozen=True, eq=False)
class Collocation:
    """One actor-verb-object unit with the position of its source sentence.

    The actor is a noun, the verb relates actor and object, and the
    object (optional; some verbs need none) is a noun or adjective.
    Equality and hashing compare the lemma key plus position.
    """

    actor: Token
    verb: Token
    object: Optional[Token]
    position: int

    def __post_init__(self) -> None:
        if self.actor.category is not Category.N:
            raise CategoryMismatchError(
                f"actor slot requires N, got {self.actor.category.value} ({self.actor.lemma!r})"
            )
        if self.verb.category is not Category.V:
            raise CategoryMismatchError(
                f"verb slot requires V, got {self.verb.category.value} ({self.verb.lemma!r})"
            )
        if self.object is not None and self.object.category not in (Category.N, Category.ADJ):
            raise CategoryMismatchError(
                f"object slot requires N or ADJ, got {self.object.category.value}"
                f" ({self.object.lemma!r})"
            )
        if not isinstance(self.position, int) or isinstance(self.position, bool) or self.position < 1:
            raise PositionError(f"position must be a positive integer, got {self.position!r}")

    @property
    def key(self) -> CollocationKey:
        return CollocationKey(
            self.actor.lemma,
            self.verb.lemma,
            self.object.lemma if self.object is not None else None,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Collocation):
            return NotImplemented
        return self.key == other.key and self.position == other.position

    def __hash__(self) -> int:
        return hash((self.key, self.position))

    def __repr__(self) -> str:
        return f"Collocation({to_wire(self)!r})"


def rewrite_adjective_fact(noun: Token, adjective: Token, source_position: int) -> Collocation:
    """Turn an attributive adjective+noun pair into a stored fact.

    The noun becomes the actor and the adjective the object, linked by
    the verb "sein"; the fact inherits the position of the sentence it
    was part of, preserving the time flow.
    """
    if noun.category is not Category.N:
        raise CategoryMismatchError(f"fact noun must be N, got {noun.category.value}")
    if adjective.category is not Category.ADJ:
        raise CategoryMismatchError(f"fact adjective must be ADJ, got {adjective.category.value}")
    return Collocation(
        actor=noun,
        verb=Token(LINKING_VERB, Category.V),
        object=adjective,
        position=source_position,
    )


def to_wire(collocation: Collocation) -> str:
    """Render ``actor|verb|object|position`` with ``-`` for an absent object."""
    obj = collocation.object.lemma if collocation.object is not None else ABSENT_OBJECT_MARK
    return WIRE_SEPARATOR.join(
        (collocation.actor.lemma, collocation.verb.lemma, obj, str(collocation.position))
    )


def parse_wire(line: str, fallback_position: Optional[int] = None) -> Collocation:
    """Parse a wire-format line back into a collocation.

    Stream files may omit the position (three fields, or ``-`` in the
    fourth); in that case `fallback_position` is used, which lets the
    ingesting session assign the next counter value.
    """
    raw = unicodedata.normalize("NFC", line.strip())
    if not raw:
        raise WireFormatError("empty line")
    parts = [p.strip() for p in raw.split(WIRE_SEPARATOR)]
    if len(parts) == 3:
        parts.append(ABSENT_OBJECT_MARK)
    if len(parts) != 4:
        raise WireFormatError(f"expected 3 or 4 fields, got {len(parts)}: {line!r}")
    actor_s, verb_s, object_s, position_s = parts
    if position_s in ("", ABSENT_OBJECT_MARK):
        position = fallback_position
        if position is None:
            raise WireFormatError(f"line has no position and no fallback was given: {line!r}")
    else:
        try:
            position = int(position_s)
        except ValueError:
            raise WireFormatError(f"position field is not an integer: {line!r}") from None
    try:
        return Collocation(
            actor=Token(actor_s, Category.N),
            verb=Token(verb_s, Category.V),
            object=None if object_s == ABSENT_OBJECT_MARK else Token(object_s, Category.N),
            position=position,
        )
    except ValueError as exc:
        raise WireFormatError(f"{exc}: {line!r}") from None
