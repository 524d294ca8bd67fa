"""Raw-text ingestion: tokenization and word-form frequency tables."""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

PUNCT = frozenset('.,;:!?()[]{}"\'')
SENTENCE_FINAL = frozenset(".?!")


@dataclass(frozen=True)
class Token:
    surface: str
    sentence_index: int = 0
    position_in_sentence: int = 0

    def __post_init__(self):
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise ValueError(f"invalid token surface: {self.surface!r}")
        if self.sentence_index < 0 or self.position_in_sentence < 0:
            raise ValueError("token indices must be non-negative")

    def __str__(self):
        return self.surface


def _split_chunk(chunk: str) -> list[str]:
    i, j = 0, len(chunk)
    while i < j and chunk[i] in PUNCT:
        i += 1
    while j > i and chunk[j - 1] in PUNCT:
        j -= 1
    parts = list(chunk[:i])
    if i < j:
        parts.append(chunk[i:j])
    parts.extend(chunk[j:])
    return parts


def tokenize(text: str | bytes) -> list[list[Token]]:
    """Split a document into sentences of tokens.

    Whitespace delimits chunks; punctuation from ``.,;:!?()[]{}"'`` is
    peeled off both ends of each chunk one character at a time.  Hyphens,
    slashes and digits stay inside tokens, so ``IL-2`` survives whole.  A
    sentence ends at a chunk whose last character is ``.``, ``?`` or ``!``
    when the next chunk begins with an uppercase letter, or at end of text.

    Bytes are decoded as strict UTF-8 (``UnicodeDecodeError`` on bad input).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    chunks = text.split()
    sentences: list[list[Token]] = []
    current: list[str] = []
    for k, chunk in enumerate(chunks):
        current.extend(_split_chunk(chunk))
        if chunk[-1] in SENTENCE_FINAL:
            nxt = chunks[k + 1] if k + 1 < len(chunks) else None
            if nxt is None or nxt[0].isupper():
                sentences.append(current)
                current = []
    if current:
        sentences.append(current)
    return [
        [Token(s, si, pi) for pi, s in enumerate(sent)]
        for si, sent in enumerate(sentences)
    ]


def read_token_lines(text: str | bytes) -> list[list[Token]]:
    """Read one-token-per-line input; a blank line ends a sentence.

    Only the first tab-separated field is used, so gold ``token<TAB>tag``
    files double as token files.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    sentences: list[list[str]] = []
    current: list[str] = []
    for line in text.split("\n"):
        word = line.split("\t", 1)[0].strip()
        if not word:
            if current:
                sentences.append(current)
                current = []
            continue
        current.append(word)
    if current:
        sentences.append(current)
    return [
        [Token(s, si, pi) for pi, s in enumerate(sent)]
        for si, sent in enumerate(sentences)
    ]


def iter_tokens(sentences: Iterable[Sequence[Token]]) -> Iterator[Token]:
    for sent in sentences:
        yield from sent


@dataclass(frozen=True)
class FreqTable:
    """Exact-case word counts over a corpus. Immutable once built."""

    counts: Mapping[str, int] = field(default_factory=dict)
    total_tokens: int = 0

    def __post_init__(self):
        counts = dict(self.counts)
        if any(c < 1 for c in counts.values()):
            raise ValueError("counts must be positive")
        if sum(counts.values()) != self.total_tokens:
            raise ValueError("total_tokens must equal the sum of counts")
        object.__setattr__(self, "counts", MappingProxyType(counts))

    def __getitem__(self, word: str) -> int:
        return self.counts.get(word, 0)

    def __contains__(self, word: str) -> bool:
        return word in self.counts

    def __len__(self) -> int:
        return len(self.counts)

    def __iter__(self) -> Iterator[str]:
        return iter(self.counts)

    def __eq__(self, other):
        if not isinstance(other, FreqTable):
            return NotImplemented
        return self.total_tokens == other.total_tokens and dict(self.counts) == dict(other.counts)

    def __hash__(self):
        return hash((self.total_tokens, frozenset(self.counts.items())))

    def __reduce__(self):
        return (FreqTable, (dict(self.counts), self.total_tokens))

    def __add__(self, other: FreqTable) -> FreqTable:
        return merge_counts(self, other)

    @cached_property
    def folded(self) -> Mapping[str, int]:
        """Counts summed over casings, keyed by lowercased form."""
        out: Counter[str] = Counter()
        for w, c in self.counts.items():
            out[w.lower()] += c
        return MappingProxyType(dict(out))

    def count_folded(self, word: str) -> int:
        return self.folded.get(word.lower(), 0)

    def most_common(self) -> list[tuple[str, int]]:
        """Entries sorted by descending count, then lexicographically."""
        return sorted(self.counts.items(), key=lambda kv: (-kv[1], kv[0]))


def count_frequencies(tokens: Iterable[Token | str]) -> FreqTable:
    counts = Counter(t.surface if isinstance(t, Token) else t for t in tokens)
    return FreqTable(counts, sum(counts.values()))


def merge_counts(a: FreqTable, b: FreqTable) -> FreqTable:
    counts = Counter(a.counts)
    counts.update(b.counts)
    return FreqTable(counts, a.total_tokens + b.total_tokens)


def dump_frequencies(table: FreqTable) -> str:
    return "".join(f"{w}\t{c}\n" for w, c in table.most_common())


def load_frequencies(text: str) -> FreqTable:
    counts = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        try:
            word, count = line.split("\t")
            counts[word] = int(count)
        except ValueError:
            raise ValueError(f"line {lineno}: expected word<TAB>count") from None
    return FreqTable(counts, sum(counts.values()))


# -- corpus directories ------------------------------------------------------

def corpus_files(directory: str | os.PathLike) -> list[str]:
    """Regular files in ``directory`` (non-recursive), sorted by name."""
    names = sorted(os.listdir(directory))
    paths = [os.path.join(directory, n) for n in names]
    return [p for p in paths if os.path.isfile(p) and not os.path.basename(p).startswith(".")]


def read_document(path: str | os.PathLike, pretokenized: bool = False) -> list[list[Token]]:
    with open(path, "rb") as fh:
        data = fh.read()
    return read_token_lines(data) if pretokenized else tokenize(data)


def _count_file(args) -> FreqTable:
    path, pretokenized = args
    return count_frequencies(iter_tokens(read_document(path, pretokenized)))


def count_files(paths: Sequence[str], pretokenized: bool = False, jobs: int = 1) -> FreqTable:
    """Count every file in ``paths``, optionally sharded over processes."""
    work = [(p, pretokenized) for p in paths]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            shards = list(pool.map(_count_file, work))
    else:
        shards = [_count_file(w) for w in work]
    table = FreqTable()
    for shard in shards:
        table = merge_counts(table, shard)
    return table
