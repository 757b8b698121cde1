"""Sentence-level preprocessing for the raw input mode.

Turns incoming text into annotated clauses ready to become
collocations: compound sentences are dissolved at conjunctions, quoted
speech is embedded in place of the speaker notation, interrogatives are
filtered out, and the remaining words are lemmatized and categorized
via the lexicon. Whatever the rules cannot decide (pronoun references,
subject-less split clauses) is routed to the human supervisor as a
resolution request instead of being guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .lexicon import Lexicon
from .model import Category, Token, rewrite_adjective_fact

DEFAULT_CONJUNCTIONS = ("und", "aber", "denn", "oder")
DEFAULT_VERBA_DICENDI = (
    "sagen",
    "denken",
    "rufen",
    "fragen",
    "antworten",
    "sprechen",
    "meinen",
)

_TERMINATORS = ".!?"
_QUOTE_CHARS = "\"„“”«»"
_EDGE_PUNCT = ".,;:!?()[]…'’‘-" + _QUOTE_CHARS


class NoVerbError(ValueError):
    """The fragment contains no verb and cannot form a collocation."""


class DropReason(str, Enum):
    """Why a fragment was excluded from the collocation stream."""

    INTERROGATIVE = "INTERROGATIVE"
    NO_VERB = "NO_VERB"
    SPEAKER_CLAUSE = "SPEAKER_CLAUSE"
    SUPERVISOR_DISCARD = "SUPERVISOR_DISCARD"


class RequestKind(str, Enum):
    """What the supervisor is being asked to decide."""

    PRONOUN_BINDING = "PRONOUN_BINDING"
    SPLIT_CONFIRM = "SPLIT_CONFIRM"
    DISCARD_CONFIRM = "DISCARD_CONFIRM"


@dataclass(frozen=True)
class RawSentence:
    """One sentence as it arrived, with its arrival index."""

    text: str
    stream_index: int

    def __post_init__(self) -> None:
        if not self.text.strip():
            raise ValueError("sentence text is empty")
        if self.stream_index < 1:
            raise ValueError(f"stream index must be positive, got {self.stream_index}")


@dataclass(frozen=True)
class DroppedFragment:
    """Log record for a fragment that never became a collocation."""

    context: str
    reason: DropReason
    text: str

    def to_tsv(self) -> str:
        return f"{self.context}\t{self.reason.value}\t{self.text}"


@dataclass(frozen=True)
class ResolutionRequest:
    """A pending supervisor decision for one held-back sentence."""

    request_id: str
    kind: RequestKind
    sentence: RawSentence
    candidates: tuple[str, ...]
    proposed: Optional[str]


@dataclass(frozen=True)
class ClauseAnnotation:
    """Slot selection over the annotated token sequence of one clause.

    ``actor`` is None while the subject is unresolved: either the
    subject slot held a pronoun (kept in ``pronoun``) or the clause has
    no subject at all (a dissolved compound's second half).
    Adjective+noun pairs found anywhere in the clause are kept as
    ``facts`` for the rewrite rule.
    """

    sentence: RawSentence
    tokens: tuple[Token, ...]
    actor: Optional[Token]
    pronoun: Optional[Token]
    verb: Token
    object: Optional[Token]
    facts: tuple[tuple[Token, Token], ...]

    @property
    def is_resolved(self) -> bool:
        return self.actor is not None


def _words_with_quote_state(text: str) -> list[tuple[str, bool]]:
    """Whitespace-split words, each flagged if it starts inside a quotation."""
    words: list[tuple[str, bool]] = []
    in_quote = False
    for chunk in text.split():
        words.append((chunk, in_quote))
        for ch in chunk:
            if ch in _QUOTE_CHARS:
                in_quote = not in_quote
    return words


def _strip_edges(word: str) -> str:
    return word.strip(_EDGE_PUNCT)


def tokenize(text: str, lexicon: Lexicon) -> tuple[Token, ...]:
    """Lemmatize and categorize every word of a clause.

    Words missing from the lexicon pass through as their own lemma with
    category OTHER.
    """
    tokens = []
    for chunk in text.split():
        word = _strip_edges(chunk)
        if not word:
            continue
        entry = lexicon.lookup(word)
        if entry is None:
            tokens.append(Token(word, Category.OTHER))
        else:
            tokens.append(Token(entry.lemma, entry.category))
    return tuple(tokens)


def _split_terminators(text: str) -> list[str]:
    """Split on sentence terminators that sit outside quotation marks.

    A terminator directly before a closing quote also ends the sentence
    (after the quote), so `..." Dann ...` splits as expected.
    """
    pieces: list[str] = []
    current: list[str] = []
    in_quote = False
    previous = ""
    for ch in text:
        current.append(ch)
        if ch in _QUOTE_CHARS:
            in_quote = not in_quote
            if not in_quote and previous in _TERMINATORS:
                piece = "".join(current).strip()
                if piece:
                    pieces.append(piece)
                current = []
        elif ch in _TERMINATORS and not in_quote:
            piece = "".join(current).strip()
            if piece:
                pieces.append(piece)
            current = []
        previous = ch
    tail = "".join(current).strip()
    if tail:
        pieces.append(tail)
    return pieces


def _split_conjunctions(
    text: str, lexicon: Lexicon, conjunctions: Sequence[str]
) -> list[str]:
    """Dissolve a compound at the first conjunction flanked by verbs.

    The conjunction itself is deleted; the right half is dissolved
    recursively. Conjunctions inside quotations are left alone.
    """
    words = _words_with_quote_state(text)
    lowered = {c.casefold() for c in conjunctions}

    def has_verb(ws: list[tuple[str, bool]]) -> bool:
        return any(lexicon.is_verb(_strip_edges(w)) for w, _ in ws)

    for i, (word, quoted) in enumerate(words):
        if quoted or _strip_edges(word).casefold() not in lowered:
            continue
        left, right = words[:i], words[i + 1 :]
        if has_verb(left) and has_verb(right):
            left_text = " ".join(w for w, _ in left)
            right_text = " ".join(w for w, _ in right)
            return [left_text] + _split_conjunctions(right_text, lexicon, conjunctions)
    return [text]


def segment(
    text: str,
    lexicon: Lexicon,
    conjunctions: Sequence[str] = DEFAULT_CONJUNCTIONS,
    start_index: int = 1,
) -> list[RawSentence]:
    """Dissolve a text block into simple sentences, in original order."""
    return [s for host in segment_hosted(text, lexicon, conjunctions, start_index) for s in host]


def segment_hosted(
    text: str,
    lexicon: Lexicon,
    conjunctions: Sequence[str] = DEFAULT_CONJUNCTIONS,
    start_index: int = 1,
) -> list[list[RawSentence]]:
    """Like :func:`segment`, but grouped by originating host sentence.

    Clauses split off one compound stay together so the caller can
    carry the subject over to subject-less halves.
    """
    hosts: list[list[RawSentence]] = []
    index = start_index
    for piece in _split_terminators(text):
        group = []
        for clause in _split_conjunctions(piece, lexicon, conjunctions):
            clause = clause.strip()
            if not clause or not _strip_edges(clause):
                continue
            group.append(RawSentence(clause, index))
            index += 1
        if group:
            hosts.append(group)
    return hosts


def strip_speech(
    sentence: RawSentence,
    lexicon: Lexicon,
    verba_dicendi: Sequence[str] = DEFAULT_VERBA_DICENDI,
) -> tuple[RawSentence, Optional[str]]:
    """Embed quoted speech in place of the quotation.

    Quotation marks are erased and a speaker clause of the form
    ``<actor> <verbum dicendi>`` before or after the quotation is
    omitted (returned as the second element so the caller can log it).
    Sentences without quotation marks pass through unchanged.
    """
    text = sentence.text
    if not any(ch in _QUOTE_CHARS for ch in text):
        return sentence, None
    first = min(i for i, ch in enumerate(text) if ch in _QUOTE_CHARS)
    last = max(i for i, ch in enumerate(text) if ch in _QUOTE_CHARS)
    if first == last:
        # Unbalanced mark: just erase it.
        cleaned = (text[:first] + text[first + 1 :]).strip()
        return RawSentence(cleaned, sentence.stream_index), None
    content = text[first + 1 : last].strip()
    outside = (text[:first] + " " + text[last + 1 :]).strip()
    if not content:
        return sentence, None
    if _is_speaker_clause(outside, lexicon, verba_dicendi):
        removed = " ".join(outside.split()).strip(" ,.;:")
        return RawSentence(content, sentence.stream_index), removed
    if not _strip_edges(outside):
        return RawSentence(content, sentence.stream_index), None
    # Quotes used for emphasis mid-sentence: erase marks, keep everything.
    merged = " ".join((text[:first], content, text[last + 1 :])).split()
    return RawSentence(" ".join(merged), sentence.stream_index), None


def _is_speaker_clause(
    outside: str, lexicon: Lexicon, verba_dicendi: Sequence[str]
) -> bool:
    tokens = [t for t in tokenize(outside, lexicon) if t.category is not Category.OTHER]
    if not tokens or len(tokens) > 3:
        return False
    dicendi = {v.casefold() for v in verba_dicendi}
    has_dicendi = any(
        t.category is Category.V and t.lemma.casefold() in dicendi for t in tokens
    )
    rest_nominal = all(
        t.category in (Category.N, Category.PRON)
        for t in tokens
        if not (t.category is Category.V and t.lemma.casefold() in dicendi)
    )
    return has_dicendi and rest_nominal


def filter_interrogative(sentence: RawSentence) -> Optional[RawSentence]:
    """Drop questions; they contribute nothing to the story line."""
    if sentence.text.rstrip().endswith("?"):
        return None
    return sentence


def adjective_pairs(tokens: Sequence[Token]) -> tuple[tuple[Token, Token], ...]:
    """(noun, adjective) for every ADJ immediately preceding an N."""
    pairs = []
    for adj, noun in zip(tokens, tokens[1:]):
        if adj.category is Category.ADJ and noun.category is Category.N:
            pairs.append((noun, adj))
    return tuple(pairs)


def annotate(sentence: RawSentence, lexicon: Lexicon) -> ClauseAnnotation:
    """Select the actor, verb, and object slots of one simple clause.

    The subject precedes the verb: the actor slot is the first noun (or
    pronoun, which needs supervisor resolution) before the first verb.
    The object is the first noun or adjective after the verb; an
    attributive adjective directly before a noun is skipped there, since
    the pair becomes a separate fact via the rewrite rule. Raises
    :class:`NoVerbError` when the clause has no verb at all.
    """
    tokens = tokenize(sentence.text, lexicon)
    verb_index = next(
        (i for i, t in enumerate(tokens) if t.category is Category.V), None
    )
    if verb_index is None:
        raise NoVerbError(sentence.text)
    verb = tokens[verb_index]

    actor: Optional[Token] = None
    pronoun: Optional[Token] = None
    for t in tokens[:verb_index]:
        if t.category is Category.N:
            actor = t
            break
        if t.category is Category.PRON:
            pronoun = t
            break

    obj: Optional[Token] = None
    for j in range(verb_index + 1, len(tokens)):
        t = tokens[j]
        if t.category is Category.N:
            obj = t
            break
        if t.category is Category.ADJ:
            if j + 1 < len(tokens) and tokens[j + 1].category is Category.N:
                continue
            obj = t
            break

    return ClauseAnnotation(
        sentence=sentence,
        tokens=tokens,
        actor=actor,
        pronoun=pronoun,
        verb=verb,
        object=obj,
        facts=adjective_pairs(tokens),
    )


def expand_adjective_pairs(tokens: Sequence[Token], position: int):
    """Rewrite every adjective+noun pair of a clause into fact collocations."""
    return [
        rewrite_adjective_fact(noun, adjective, position)
        for noun, adjective in adjective_pairs(tokens)
    ]
