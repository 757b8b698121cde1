"""Incremental engine session: step, resolve, snapshot, persist.

A session consumes one sentence (raw mode) or one wire-format line
(annotated mode) at a time, inserts the resulting collocations into the
mind-map store, and can reconstruct any actor's priority list at any
past sentence position by filtering the append-only event log.

Sentences whose subject needs the human supervisor are held in a FIFO
queue; everything behind them waits, so positions are only ever
assigned in strict temporal order, at emission time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Optional, Sequence

from .lexicon import Lexicon, LexiconEntry
from .model import (
    Category,
    Collocation,
    Token,
    parse_wire,
    rewrite_adjective_fact,
    to_wire,
)
from .preprocess import (
    DEFAULT_CONJUNCTIONS,
    DEFAULT_VERBA_DICENDI,
    ClauseAnnotation,
    DroppedFragment,
    DropReason,
    NoVerbError,
    RawSentence,
    RequestKind,
    ResolutionRequest,
    annotate,
    filter_interrogative,
    segment_hosted,
    strip_speech,
)
from .priority import (
    DEFAULT_BASE,
    DEFAULT_DELTA,
    DEFAULT_MIN_ENTRIES,
    PriorityFunction,
    PrioritySnapshot,
    score_actor,
    select_output,
)
from .store import MalformedDocumentError, MindMapStore, UnknownActorError

FORMAT_VERSION = 1


class Mode(str, Enum):
    RAW = "raw"
    ANNOTATED = "annotated"


class ConfigError(ValueError):
    """The session configuration is unusable (e.g. raw mode without lexicon)."""


class UnknownRequestError(LookupError):
    """No pending resolution request has this id."""


class StaleRequestError(ValueError):
    """The request was already resolved or discarded."""


class FutureQueryError(ValueError):
    """The queried sentence position lies beyond the current stream."""


@dataclass
class SessionConfig:
    mode: Mode = Mode.ANNOTATED
    delta: float = DEFAULT_DELTA
    min_entries: int = DEFAULT_MIN_ENTRIES
    decay_base: float = DEFAULT_BASE
    conjunctions: tuple[str, ...] = DEFAULT_CONJUNCTIONS
    verba_dicendi: tuple[str, ...] = DEFAULT_VERBA_DICENDI


@dataclass
class SessionDelta:
    """What one step (or resolution) changed."""

    emitted: list[Collocation] = field(default_factory=list)
    new_actors: list[str] = field(default_factory=list)
    pending: list[ResolutionRequest] = field(default_factory=list)
    dropped: list[DroppedFragment] = field(default_factory=list)


@dataclass
class _QueuedUnit:
    """One preprocessed clause waiting for its position (or its subject)."""

    annotation: ClauseAnnotation
    request: Optional[ResolutionRequest] = None

    @property
    def is_ready(self) -> bool:
        return self.annotation.is_resolved


class Session:
    """One incremental run over a text stream."""

    def __init__(
        self,
        config: Optional[SessionConfig] = None,
        lexicon: Optional[Lexicon] = None,
    ) -> None:
        self.config = config or SessionConfig()
        if not isinstance(self.config.mode, Mode):
            self.config.mode = Mode(self.config.mode)
        if self.config.mode is Mode.RAW and lexicon is None:
            raise ConfigError("raw mode requires a lexicon")
        self.lexicon = lexicon
        self.store = MindMapStore()
        self.dropped: list[DroppedFragment] = []
        self._queue: list[_QueuedUnit] = []
        self._pending_by_id: dict[str, _QueuedUnit] = {}
        self._resolved_ids: set[str] = set()
        self._stream_index = 0
        self._request_seq = 0

    # ------------------------------------------------------------------
    # introspection

    @property
    def position_counter(self) -> int:
        """Highest emitted sentence position (0 when nothing was emitted)."""
        return self.store.position_counter

    def actors(self) -> list[str]:
        return self.store.actors()

    def pending_requests(self) -> list[ResolutionRequest]:
        """Open supervisor requests in stream order."""
        return [u.request for u in self._queue if u.request is not None and not u.is_ready]

    # ------------------------------------------------------------------
    # stepping

    def step(self, text: str) -> SessionDelta:
        """Feed one raw sentence block or one annotated wire line."""
        if self.config.mode is Mode.ANNOTATED:
            return self._step_annotated(text)
        return self._step_raw(text)

    def _step_annotated(self, line: str) -> SessionDelta:
        delta = SessionDelta()
        stripped = line.strip()
        if not stripped:
            return delta
        if "\n" in stripped:
            raise ValueError("annotated mode takes one wire line per step")
        collocation = parse_wire(stripped, fallback_position=self.position_counter + 1)
        self._insert(collocation, delta)
        return delta

    def _step_raw(self, text: str) -> SessionDelta:
        delta = SessionDelta()
        hosts = segment_hosted(
            text, self.lexicon, self.config.conjunctions, self._stream_index + 1
        )
        for host in hosts:
            carry: Optional[str] = None
            for raw in host:
                self._stream_index = raw.stream_index
                carry = self._process_clause(raw, carry, delta)
        self._flush(delta)
        return delta

    def _process_clause(
        self, raw: RawSentence, carry: Optional[str], delta: SessionDelta
    ) -> Optional[str]:
        """Run one clause through the chain; returns the carry-over subject."""
        sentence, removed_speaker = strip_speech(
            raw, self.lexicon, self.config.verba_dicendi
        )
        if removed_speaker:
            self._drop(delta, raw.stream_index, DropReason.SPEAKER_CLAUSE, removed_speaker)
        kept = filter_interrogative(sentence)
        if kept is None:
            self._drop(delta, raw.stream_index, DropReason.INTERROGATIVE, sentence.text)
            return carry
        try:
            annotation = annotate(kept, self.lexicon)
        except NoVerbError:
            self._drop(delta, raw.stream_index, DropReason.NO_VERB, kept.text)
            return carry
        if annotation.is_resolved:
            self._queue.append(_QueuedUnit(annotation))
            self._flush(delta)
            return annotation.actor.lemma
        # Unresolved subject: emit everything already ready so the
        # candidate list reflects the stream up to this clause.
        self._flush(delta)
        request = self._make_request(annotation, carry)
        unit = _QueuedUnit(annotation, request)
        self._queue.append(unit)
        self._pending_by_id[request.request_id] = unit
        delta.pending.append(request)
        return None

    def _make_request(
        self, annotation: ClauseAnnotation, carry: Optional[str]
    ) -> ResolutionRequest:
        self._request_seq += 1
        request_id = f"r{self._request_seq}"
        recency = self._actors_recent_first()
        if annotation.pronoun is not None and recency:
            kind = RequestKind.PRONOUN_BINDING
            candidates = tuple(recency)
            proposed: Optional[str] = recency[0]
        elif annotation.pronoun is None and carry is not None:
            kind = RequestKind.SPLIT_CONFIRM
            candidates = (carry, *(a for a in recency if a != carry))
            proposed = carry
        else:
            # Nothing to propose: ask whether to discard outright (the
            # supervisor may still supply an actor instead).
            kind = RequestKind.DISCARD_CONFIRM
            candidates = tuple(recency)
            proposed = None
        return ResolutionRequest(
            request_id=request_id,
            kind=kind,
            sentence=annotation.sentence,
            candidates=candidates,
            proposed=proposed,
        )

    def _actors_recent_first(self) -> list[str]:
        """Known actors, most recent first, including queued-but-unemitted ones."""
        seen: list[str] = []
        for unit in reversed(self._queue):
            if unit.is_ready and unit.annotation.actor.lemma not in seen:
                seen.append(unit.annotation.actor.lemma)
        for lemma in self.store.actors_by_recency():
            if lemma not in seen:
                seen.append(lemma)
        return seen

    def _flush(self, delta: SessionDelta) -> None:
        while self._queue and self._queue[0].is_ready:
            unit = self._queue.pop(0)
            self._emit(unit.annotation, delta)

    def _emit(self, annotation: ClauseAnnotation, delta: SessionDelta) -> None:
        position = self.position_counter + 1
        main = Collocation(annotation.actor, annotation.verb, annotation.object, position)
        self._insert(main, delta)
        for noun, adjective in annotation.facts:
            self._insert(rewrite_adjective_fact(noun, adjective, position), delta)

    def _insert(self, collocation: Collocation, delta: SessionDelta) -> None:
        report = self.store.insert(collocation)
        if report.is_duplicate:
            return
        delta.emitted.append(collocation)
        if report.is_new_actor:
            delta.new_actors.append(collocation.actor.lemma)

    def _drop(
        self, delta: SessionDelta, stream_index: int, reason: DropReason, text: str
    ) -> None:
        fragment = DroppedFragment(f"s{stream_index}", reason, text)
        self.dropped.append(fragment)
        delta.dropped.append(fragment)

    # ------------------------------------------------------------------
    # supervisor actions

    def _take_pending(self, request_id: str) -> _QueuedUnit:
        unit = self._pending_by_id.get(request_id)
        if unit is None:
            if request_id in self._resolved_ids:
                raise StaleRequestError(f"request {request_id} was already settled")
            raise UnknownRequestError(request_id)
        return unit

    def resolve(self, request_id: str, actor_lemma: str) -> SessionDelta:
        """Bind the held-back sentence to an actor chosen by the supervisor."""
        unit = self._take_pending(request_id)
        actor = Token(actor_lemma, Category.N)
        unit.annotation = replace(unit.annotation, actor=actor)
        del self._pending_by_id[request_id]
        self._resolved_ids.add(request_id)
        delta = SessionDelta()
        self._flush(delta)
        return delta

    def discard(self, request_id: str) -> SessionDelta:
        """Drop the held-back sentence on the supervisor's say-so."""
        unit = self._take_pending(request_id)
        del self._pending_by_id[request_id]
        self._resolved_ids.add(request_id)
        self._queue.remove(unit)
        delta = SessionDelta()
        self._drop(
            delta,
            unit.annotation.sentence.stream_index,
            DropReason.SUPERVISOR_DISCARD,
            unit.annotation.sentence.text,
        )
        self._flush(delta)
        return delta

    # ------------------------------------------------------------------
    # queries

    def snapshot(
        self,
        actor: str,
        function: PriorityFunction,
        c: Optional[int] = None,
        delta: Optional[float] = None,
    ) -> PrioritySnapshot:
        """Priority list of one actor as of sentence position c.

        The block is reconstructed from the event log using only
        occurrences at positions <= c, so querying the past after the
        stream moved on gives exactly the answer of that moment.
        """
        if c is None:
            c = self.position_counter
        elif c < 1:
            raise ValueError(f"sentence position must be >= 1, got {c}")
        elif c > self.position_counter:
            raise FutureQueryError(
                f"position {c} is beyond the current stream ({self.position_counter})"
            )
        if c == self.store.position_counter:
            if actor not in self.store.actors():
                raise UnknownActorError(actor)
            block = self.store.block_of(actor)
        else:
            # A block depends only on its own actor's entries, so the
            # replay can skip everything else.
            relevant = [
                e
                for e in self.store.event_log()
                if e.position <= c and e.actor.lemma == actor
            ]
            if not relevant:
                raise UnknownActorError(actor)
            block = MindMapStore.replay(relevant).block_of(actor)
        threshold = self.config.delta if delta is None else delta
        scored = score_actor(block, function, c, self.config.decay_base)
        entries = select_output(scored, threshold, self.config.min_entries)
        return PrioritySnapshot(
            actor=actor,
            function=function,
            c=c,
            entries=tuple(entries),
            delta=threshold,
        )

    def story_line(
        self,
        actors: Sequence[str],
        function: PriorityFunction,
        c: Optional[int] = None,
        delta: Optional[float] = None,
    ) -> list[PrioritySnapshot]:
        """One snapshot per requested actor, in the requested order."""
        return [self.snapshot(actor, function, c, delta) for actor in actors]

    # ------------------------------------------------------------------
    # persistence

    def to_document(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "config": {
                "mode": self.config.mode.value,
                "delta": self.config.delta,
                "min_entries": self.config.min_entries,
                "decay_base": self.config.decay_base,
                "conjunctions": list(self.config.conjunctions),
                "verba_dicendi": list(self.config.verba_dicendi),
            },
            "lexicon": (
                None
                if self.lexicon is None
                else [[e.surface, e.lemma, e.category.value] for e in self.lexicon.entries()]
            ),
            "store": self.store.to_document(),
            "queue": [_unit_to_document(u) for u in self._queue],
            "resolved_requests": sorted(self._resolved_ids),
            "dropped": [
                {"context": d.context, "reason": d.reason.value, "text": d.text}
                for d in self.dropped
            ],
            "stream_index": self._stream_index,
            "request_seq": self._request_seq,
        }

    @classmethod
    def from_document(cls, document: dict) -> "Session":
        if not isinstance(document, dict):
            raise MalformedDocumentError("session document must be an object")
        version = document.get("format_version")
        if version != FORMAT_VERSION:
            raise MalformedDocumentError(f"unsupported format_version: {version!r}")
        try:
            config_doc = document["config"]
            config = SessionConfig(
                mode=Mode(config_doc["mode"]),
                delta=config_doc["delta"],
                min_entries=config_doc["min_entries"],
                decay_base=config_doc["decay_base"],
                conjunctions=tuple(config_doc["conjunctions"]),
                verba_dicendi=tuple(config_doc["verba_dicendi"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDocumentError(f"session.config: {exc}") from None
        lexicon_doc = document.get("lexicon")
        lexicon = None
        if lexicon_doc is not None:
            try:
                lexicon = Lexicon(
                    LexiconEntry(surface, lemma, Category(category))
                    for surface, lemma, category in lexicon_doc
                )
            except (TypeError, ValueError) as exc:
                raise MalformedDocumentError(f"session.lexicon: {exc}") from None
        session = cls(config=config, lexicon=lexicon)
        try:
            session.store = MindMapStore.from_document(document["store"])
            for unit_doc in document.get("queue", []):
                unit = _unit_from_document(unit_doc)
                session._queue.append(unit)
                if unit.request is not None and not unit.is_ready:
                    session._pending_by_id[unit.request.request_id] = unit
            session._resolved_ids = set(document.get("resolved_requests", []))
            session.dropped = [
                DroppedFragment(d["context"], DropReason(d["reason"]), d["text"])
                for d in document.get("dropped", [])
            ]
            session._stream_index = document.get("stream_index", 0)
            session._request_seq = document.get("request_seq", 0)
        except MalformedDocumentError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedDocumentError(f"session document: {exc}") from None
        return session

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.to_document(), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )

    @classmethod
    def load(cls, path: str | Path) -> "Session":
        raw = Path(path).read_text(encoding="utf-8")
        try:
            document = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedDocumentError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_document(document)


# ----------------------------------------------------------------------
# document shapes shared by the HTTP service and the CLI


def _token_to_document(token: Optional[Token]) -> Optional[list[str]]:
    if token is None:
        return None
    return [token.lemma, token.category.value]


def _token_from_document(doc, fallback_category: Category) -> Optional[Token]:
    if doc is None:
        return None
    if isinstance(doc, str):
        return Token(doc, fallback_category)
    lemma, category = doc
    return Token(lemma, Category(category))


def _unit_to_document(unit: _QueuedUnit) -> dict:
    annotation = unit.annotation
    return {
        "sentence": {
            "text": annotation.sentence.text,
            "stream_index": annotation.sentence.stream_index,
        },
        "actor": _token_to_document(annotation.actor),
        "pronoun": _token_to_document(annotation.pronoun),
        "verb": _token_to_document(annotation.verb),
        "object": _token_to_document(annotation.object),
        "facts": [[noun.lemma, adjective.lemma] for noun, adjective in annotation.facts],
        "request": None if unit.request is None else request_to_document(unit.request),
    }


def _unit_from_document(doc: dict) -> _QueuedUnit:
    try:
        sentence = RawSentence(doc["sentence"]["text"], doc["sentence"]["stream_index"])
        annotation = ClauseAnnotation(
            sentence=sentence,
            tokens=(),
            actor=_token_from_document(doc["actor"], Category.N),
            pronoun=_token_from_document(doc["pronoun"], Category.PRON),
            verb=_token_from_document(doc["verb"], Category.V),
            object=_token_from_document(doc["object"], Category.N),
            facts=tuple(
                (Token(noun, Category.N), Token(adjective, Category.ADJ))
                for noun, adjective in doc.get("facts", [])
            ),
        )
        request_doc = doc.get("request")
        request = None
        if request_doc is not None:
            request = ResolutionRequest(
                request_id=request_doc["request_id"],
                kind=RequestKind(request_doc["kind"]),
                sentence=RawSentence(
                    request_doc["sentence"]["text"],
                    request_doc["sentence"]["stream_index"],
                ),
                candidates=tuple(request_doc["candidates"]),
                proposed=request_doc.get("proposed"),
            )
        return _QueuedUnit(annotation, request)
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocumentError(f"session.queue: {exc}") from None


def request_to_document(request: ResolutionRequest) -> dict:
    return {
        "request_id": request.request_id,
        "kind": request.kind.value,
        "sentence": {
            "text": request.sentence.text,
            "stream_index": request.sentence.stream_index,
        },
        "candidates": list(request.candidates),
        "proposed": request.proposed,
    }


def dropped_to_document(fragment: DroppedFragment) -> dict:
    return {
        "context": fragment.context,
        "reason": fragment.reason.value,
        "text": fragment.text,
    }


def delta_to_document(delta: SessionDelta) -> dict:
    return {
        "emitted": [to_wire(c) for c in delta.emitted],
        "new_actors": list(delta.new_actors),
        "pending": [request_to_document(r) for r in delta.pending],
        "dropped": [dropped_to_document(d) for d in delta.dropped],
    }


def snapshot_to_document(snapshot: PrioritySnapshot) -> dict:
    return {
        "actor": snapshot.actor,
        "function": snapshot.function.value,
        "c": snapshot.c,
        "delta": snapshot.delta,
        "entries": [
            {
                "verb": e.key.verb,
                "object": e.key.object,
                "priority": e.priority,
                "display": e.display,
                "occurrences": list(e.occurrences),
            }
            for e in snapshot.entries
        ],
    }
