"""Incremental actor/collocation mind-map engine.

Extracts one actor-verb-object collocation per sentence from a text
stream, stores them in per-actor associative memory blocks, and ranks
them with recency/repetition priority functions so the recent story
line can be reconstructed at any point of the stream.
"""

from .lexicon import Lexicon, LexiconEntry
from .model import (
    Category,
    Collocation,
    CollocationKey,
    Token,
    parse_wire,
    rewrite_adjective_fact,
    to_wire,
)
from .preprocess import (
    DroppedFragment,
    DropReason,
    RawSentence,
    RequestKind,
    ResolutionRequest,
)
from .priority import (
    PriorityFunction,
    PrioritySnapshot,
    ScoredCollocation,
    boost_coefficient,
    decay_sum,
    last_occurrence_decay,
    render_priority,
    repetition_boosted_decay,
    score_actor,
    select_output,
)
from .session import Mode, Session, SessionConfig, SessionDelta
from .store import InsertReport, MindMapBlock, MindMapStore, ObjectEntry

__version__ = "0.1.0"

__all__ = [
    "Category",
    "Collocation",
    "CollocationKey",
    "DropReason",
    "DroppedFragment",
    "InsertReport",
    "Lexicon",
    "LexiconEntry",
    "MindMapBlock",
    "MindMapStore",
    "Mode",
    "ObjectEntry",
    "PriorityFunction",
    "PrioritySnapshot",
    "RawSentence",
    "RequestKind",
    "ResolutionRequest",
    "ScoredCollocation",
    "Session",
    "SessionConfig",
    "SessionDelta",
    "Token",
    "boost_coefficient",
    "decay_sum",
    "last_occurrence_decay",
    "parse_wire",
    "render_priority",
    "repetition_boosted_decay",
    "rewrite_adjective_fact",
    "score_actor",
    "select_output",
    "to_wire",
]
