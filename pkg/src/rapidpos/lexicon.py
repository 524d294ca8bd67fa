"""Word -> ordered tag list lexicon.

The first tag of an entry is what the initial-state annotator assigns, so
tag order is meaningful everywhere in this module.  File format, one entry
per line, single spaces, LF line endings::

    binding NN VBG
    runs VBZ NNS
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .corpus import Token

# Penn Treebank tags: NN, VBZ, PRP$, -LRB-, ``, '', ., :, #, ...
_TAG_RE = re.compile(r"[A-Z0-9$#.,:;`'()\-]+")


def is_valid_tag(tag: str) -> bool:
    return bool(_TAG_RE.fullmatch(tag))


class LexiconError(Exception):
    pass


class LexiconParseError(LexiconError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DuplicateEntryError(LexiconParseError):
    pass


class MissingEntryError(LexiconError, KeyError):
    pass


class FrozenLexiconError(LexiconError):
    pass


class Provenance(str, enum.Enum):
    SEED = "seed-file"
    SUFFIX = "suffix-rule"
    ORTHO = "ortho"
    ING_REORDER = "ing-heuristic-reorder"


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        _check_tags(self.tags)

    @property
    def first(self) -> str:
        return self.tags[0]


def _check_tags(tags: Sequence[str]) -> None:
    if not tags:
        raise ValueError("tag list must be non-empty")
    if len(set(tags)) != len(tags):
        raise ValueError(f"duplicate tags in {list(tags)}")
    for t in tags:
        if not is_valid_tag(t):
            raise ValueError(f"invalid tag {t!r}")


class Lexicon:
    """Mutable during a build phase; call :meth:`freeze` before tagging.

    Equality compares word -> tags only; provenance is bookkeeping.
    """

    def __init__(self, entries: Iterable[LexiconEntry] = (), provenance: Provenance = Provenance.SEED):
        self._entries: dict[str, LexiconEntry] = {}
        self._provenance: dict[str, Provenance] = {}
        self._frozen = False
        for e in entries:
            if e.word in self._entries:
                raise ValueError(f"duplicate word {e.word!r}")
            self._entries[e.word] = e
            self._provenance[e.word] = provenance

    @classmethod
    def from_dict(cls, mapping: dict[str, Sequence[str]]) -> Lexicon:
        return cls(LexiconEntry(w, tuple(t)) for w, t in mapping.items())

    def __len__(self):
        return len(self._entries)

    def __contains__(self, word):
        return word in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __getitem__(self, word: str) -> LexiconEntry:
        try:
            return self._entries[word]
        except KeyError:
            raise MissingEntryError(word) from None

    def __eq__(self, other):
        if not isinstance(other, Lexicon):
            return NotImplemented
        return self._entries == other._entries

    def __repr__(self):
        return f"<Lexicon {len(self)} entries{' frozen' if self._frozen else ''}>"

    def entries(self) -> list[LexiconEntry]:
        return [self._entries[w] for w in sorted(self._entries)]

    def to_dict(self) -> dict[str, list[str]]:
        return {w: list(e.tags) for w, e in self._entries.items()}

    def provenance(self, word: str) -> Provenance:
        return self._provenance[word]

    @property
    def frozen(self) -> bool:
        return self._frozen

    def freeze(self) -> Lexicon:
        self._frozen = True
        return self

    def copy(self) -> Lexicon:
        """Unfrozen copy, provenance included."""
        new = Lexicon()
        new._entries = dict(self._entries)
        new._provenance = dict(self._provenance)
        return new

    def _check_writable(self):
        if self._frozen:
            raise FrozenLexiconError("lexicon is frozen")

    def add_entry(self, word: str, tags: Sequence[str], provenance: Provenance = Provenance.SEED) -> bool:
        """Insert ``word`` unless present.  Returns False when skipped.

        Existing entries are never overwritten.
        """
        _check_tags(tags)
        self._check_writable()
        if word in self._entries:
            return False
        self._entries[word] = LexiconEntry(word, tuple(tags))
        self._provenance[word] = Provenance(provenance)
        return True

    def promote_first_tag(self, word: str, tag: str, provenance: Provenance | None = Provenance.ING_REORDER) -> bool:
        """Move (or insert) ``tag`` to the front of the entry for ``word``.

        Returns True if the tag order changed.  Idempotent.
        """
        self._check_writable()
        if word not in self._entries:
            raise MissingEntryError(word)
        if not is_valid_tag(tag):
            raise ValueError(f"invalid tag {tag!r}")
        old = self._entries[word].tags
        new = (tag,) + tuple(t for t in old if t != tag)
        if new == old:
            return False
        self._entries[word] = LexiconEntry(word, new)
        if provenance is not None:
            self._provenance[word] = Provenance(provenance)
        return True

    def lookup(self, surface: str) -> tuple[str, ...] | None:
        """Exact match first, then the lowercased form if ``surface`` has capitals."""
        entry = self._entries.get(surface)
        if entry is None:
            lowered = surface.lower()
            if lowered != surface:
                entry = self._entries.get(lowered)
        return entry.tags if entry is not None else None


def lookup(lex: Lexicon, surface: str) -> tuple[str, ...] | None:
    return lex.lookup(surface)


def add_entry(lex: Lexicon, word: str, tags: Sequence[str], provenance: Provenance = Provenance.SEED) -> bool:
    return lex.add_entry(word, tags, provenance)


def promote_first_tag(lex: Lexicon, word: str, tag: str) -> bool:
    return lex.promote_first_tag(word, tag)


# -- file format -------------------------------------------------------------

def parse_lexicon(text: str) -> Lexicon:
    lex = Lexicon()
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line:
            continue
        fields = line.split(" ")
        if len(fields) < 2:
            raise LexiconParseError(lineno, f"entry has no tags: {line!r}")
        if any(not f or any(ch.isspace() for ch in f) for f in fields):
            raise LexiconParseError(lineno, f"malformed entry (expected single-space separated fields): {line!r}")
        word, tags = fields[0], fields[1:]
        try:
            _check_tags(tags)
        except ValueError as exc:
            raise LexiconParseError(lineno, str(exc)) from None
        if word in lex:
            raise DuplicateEntryError(lineno, f"duplicate entry for {word!r}")
        lex.add_entry(word, tags, Provenance.SEED)
    return lex


def serialize_lexicon(lex: Lexicon) -> str:
    return "".join(f"{e.word} {' '.join(e.tags)}\n" for e in lex.entries())


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())


def save_lexicon(lex: Lexicon, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_lexicon(lex))


# -- coverage ----------------------------------------------------------------

@dataclass(frozen=True)
class Coverage:
    covered: int
    total: int

    @property
    def empty(self) -> bool:
        return self.total == 0

    @property
    def value(self) -> float:
        # empty streams are defined as 0 coverage; check ``empty`` to tell apart
        return self.covered / self.total if self.total else 0.0

    def __float__(self):
        return self.value


def coverage(lex: Lexicon, tokens: Iterable[Token | str]) -> Coverage:
    """Token-level share of ``tokens`` with a lexicon hit."""
    covered = total = 0
    for t in tokens:
        surface = t.surface if isinstance(t, Token) else t
        total += 1
        if lex.lookup(surface) is not None:
            covered += 1
    return Coverage(covered, total)


def type_coverage(lex: Lexicon, tokens: Iterable[Token | str]) -> Coverage:
    """Same as :func:`coverage` but over distinct surface forms."""
    types = {t.surface if isinstance(t, Token) else t for t in tokens}
    return coverage(lex, sorted(types))
