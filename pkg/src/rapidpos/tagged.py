"""Tagged tokens and their two text formats.

``tsv``   ``token<TAB>tag`` per line, blank line between sentences.
``slash`` ``token/TAG`` space-joined, one sentence per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Token
from .lexicon import is_valid_tag


class TaggedFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class TaggedToken:
    token: Token
    tag: str

    def __post_init__(self):
        if not is_valid_tag(self.tag):
            raise ValueError(f"invalid tag {self.tag!r}")

    @property
    def surface(self) -> str:
        return self.token.surface


TaggedSentence = Sequence[TaggedToken]


def make_sentence(pairs: Iterable[tuple[str, str]], sentence_index: int = 0) -> list[TaggedToken]:
    return [TaggedToken(Token(w, sentence_index, i), t) for i, (w, t) in enumerate(pairs)]


def words_and_tags(sentence: TaggedSentence) -> tuple[list[str], list[str]]:
    return [t.surface for t in sentence], [t.tag for t in sentence]


def parse_tsv(text: str) -> list[list[TaggedToken]]:
    sentences: list[list[TaggedToken]] = []
    current: list[tuple[str, str]] = []
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line.strip():
            if current:
                sentences.append(make_sentence(current, len(sentences)))
                current = []
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[0] or any(ch.isspace() for ch in fields[0]):
            raise TaggedFormatError(lineno, f"expected token<TAB>tag, got {line!r}")
        if not is_valid_tag(fields[1]):
            raise TaggedFormatError(lineno, f"invalid tag {fields[1]!r}")
        current.append((fields[0], fields[1]))
    if current:
        sentences.append(make_sentence(current, len(sentences)))
    return sentences


def parse_slash(text: str) -> list[list[TaggedToken]]:
    sentences = []
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line.strip():
            continue
        pairs = []
        for item in line.split():
            word, sep, tag = item.rpartition("/")
            if not sep or not word or not is_valid_tag(tag):
                raise TaggedFormatError(lineno, f"expected token/TAG, got {item!r}")
            pairs.append((word, tag))
        sentences.append(make_sentence(pairs, len(sentences)))
    return sentences


def format_tsv(sentences: Iterable[TaggedSentence]) -> str:
    return "\n".join(
        "".join(f"{t.surface}\t{t.tag}\n" for t in sent) for sent in sentences
    )


def format_slash(sentences: Iterable[TaggedSentence]) -> str:
    return "".join(
        " ".join(f"{t.surface}/{t.tag}" for t in sent) + "\n" for sent in sentences
    )


FORMATS = {"tsv": (parse_tsv, format_tsv), "slash": (parse_slash, format_slash)}
