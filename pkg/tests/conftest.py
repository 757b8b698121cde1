from pathlib import Path

import pytest

from mindstream.lexicon import Lexicon
from mindstream.session import Mode, Session, SessionConfig

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

# The nine-sentence fairy-tale listing used throughout: (actor, verb, object).
STORY_TRIPLES = [
    ("Wolf", "legen", "Bett"),
    ("Wolf", "anfangen", "schnarchen"),
    ("Jäger", "gehen", "vorbei"),
    ("Frau", "sein", "alt"),
    ("Frau", "schnarchen", "laut"),
    ("Jäger", "nachsehen", "Haus"),
    ("Jäger", "eintreten", "Haus"),
    ("Bett", "liegen", "Wolf"),
    ("Jäger", "suchen", "Wolf"),
]

STORY_LINES = [f"{a}|{v}|{o}|-" for a, v, o in STORY_TRIPLES]


@pytest.fixture(scope="session")
def lexicon() -> Lexicon:
    return Lexicon.from_file(DATA_DIR / "lexicon_de.tsv")


@pytest.fixture()
def story_session() -> Session:
    session = Session(SessionConfig(mode=Mode.ANNOTATED))
    for line in STORY_LINES:
        session.step(line)
    return session


@pytest.fixture()
def raw_session(lexicon) -> Session:
    return Session(SessionConfig(mode=Mode.RAW), lexicon=lexicon)
