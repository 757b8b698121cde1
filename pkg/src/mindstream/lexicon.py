"""Surface-form lexicon: the stand-in for full morphological stemming.

Raw-mode annotation looks every word up here to obtain its basic form
and category. Full German morphology is out of scope; a flat
surface -> (lemma, category) table plus the human supervisor covers
the texts this engine targets.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .model import Category


class LexiconFormatError(ValueError):
    """A lexicon source line does not parse."""


@dataclass(frozen=True)
class LexiconEntry:
    """One surface form mapped to its lemma and category."""

    surface: str
    lemma: str
    category: Category


class Lexicon:
    """Case-insensitive surface lookup over a fixed entry set."""

    def __init__(self, entries: Iterable[LexiconEntry] = ()) -> None:
        self._by_surface: dict[str, LexiconEntry] = {}
        for entry in entries:
            key = self._normalize(entry.surface)
            if key in self._by_surface:
                raise LexiconFormatError(f"duplicate lexicon surface {entry.surface!r}")
            self._by_surface[key] = entry

    @staticmethod
    def _normalize(surface: str) -> str:
        return unicodedata.normalize("NFC", surface).casefold()

    def __len__(self) -> int:
        return len(self._by_surface)

    def lookup(self, word: str) -> Optional[LexiconEntry]:
        """Entry for a surface form, or None for out-of-lexicon words."""
        return self._by_surface.get(self._normalize(word))

    def is_verb(self, word: str) -> bool:
        entry = self.lookup(word)
        return entry is not None and entry.category is Category.V

    def entries(self) -> list[LexiconEntry]:
        return list(self._by_surface.values())

    @classmethod
    def from_lines(cls, lines: Iterable[str], source: str = "<lexicon>") -> "Lexicon":
        """Parse ``surface<TAB>lemma<TAB>category`` lines; # starts a comment."""
        entries = []
        for lineno, line in enumerate(lines, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split("\t")
            if len(parts) != 3:
                raise LexiconFormatError(
                    f"{source}:{lineno}: expected 3 tab-separated fields, got {len(parts)}"
                )
            surface, lemma, category_s = (p.strip() for p in parts)
            if not surface or not lemma:
                raise LexiconFormatError(f"{source}:{lineno}: empty surface or lemma")
            try:
                category = Category(category_s)
            except ValueError:
                raise LexiconFormatError(
                    f"{source}:{lineno}: unknown category {category_s!r}"
                ) from None
            entries.append(LexiconEntry(surface, lemma, category))
        return cls(entries)

    @classmethod
    def from_file(cls, path: str | Path) -> "Lexicon":
        path = Path(path)
        with path.open(encoding="utf-8") as handle:
            return cls.from_lines(handle, source=str(path))
