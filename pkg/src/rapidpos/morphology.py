"""Part-of-speech evidence from word shape.

Suffix rules guess tags for unknown words, orthographic classes catch
proper-noun-like and numeric/code tokens, and the -ing/-ed ratio decides
whether a gerund-looking word is mostly used as a noun.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .corpus import FreqTable
from .lexicon import is_valid_tag


class SuffixRuleError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class SuffixRule:
    suffix: str
    tags: tuple[str, ...]
    min_stem_length: int = 2
    confidence: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        if not self.suffix or self.suffix != self.suffix.lower():
            raise ValueError(f"suffix must be non-empty lowercase: {self.suffix!r}")
        if not self.tags or len(set(self.tags)) != len(self.tags):
            raise ValueError(f"bad tag list for -{self.suffix}: {self.tags}")
        if not all(is_valid_tag(t) for t in self.tags):
            raise ValueError(f"invalid tag in {self.tags}")
        if self.min_stem_length < 1:
            raise ValueError("min_stem_length must be positive")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must lie in [0, 1]")

    def matches(self, word: str) -> bool:
        return (
            word.lower().endswith(self.suffix)
            and len(word) - len(self.suffix) >= self.min_stem_length
        )

    def __str__(self):
        return f"-{self.suffix}"


def parse_suffix_rules(text: str) -> list[SuffixRule]:
    """Read ``suffix<TAB>tag[,tag...]<TAB>min_stem_length<TAB>confidence`` lines.

    Blank lines and ``#`` comment lines are skipped.
    """
    rules = []
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise SuffixRuleError(lineno, f"expected 4 tab-separated fields, got {len(fields)}")
        suffix, tags, stem, conf = fields
        try:
            rules.append(SuffixRule(suffix, tuple(tags.split(",")), int(stem), float(conf)))
        except ValueError as exc:
            raise SuffixRuleError(lineno, str(exc)) from None
    return rules


def serialize_suffix_rules(rules: Sequence[SuffixRule]) -> str:
    return "".join(
        f"{r.suffix}\t{','.join(r.tags)}\t{r.min_stem_length}\t{r.confidence!r}\n"
        for r in rules
    )


@lru_cache(maxsize=1)
def _default_rules() -> tuple[SuffixRule, ...]:
    text = resources.files(__package__).joinpath("data/suffix_rules.tsv").read_text("utf-8")
    return tuple(parse_suffix_rules(text))


def default_suffix_rules() -> list[SuffixRule]:
    return list(_default_rules())


def load_suffix_rules(path) -> list[SuffixRule]:
    with open(path, encoding="utf-8") as fh:
        return parse_suffix_rules(fh.read())


def match_suffix(word: str, rules: Sequence[SuffixRule]) -> tuple[SuffixRule, tuple[str, ...]] | None:
    """Longest matching suffix wins; equal lengths go to the earlier rule."""
    best = None
    for rule in rules:
        if (best is None or len(rule.suffix) > len(best.suffix)) and rule.matches(word):
            best = rule
    return (best, best.tags) if best is not None else None


# -- orthography -------------------------------------------------------------

class OrthoClass(enum.Enum):
    PROPER_NOUN_LIKE = "ProperNounLike"
    NUMBER_OR_CODE = "NumberOrCode"
    PLAIN = "Plain"


_NUMERIC_CHARS = frozenset("0123456789.,-+%")


def _is_numeric(token: str) -> bool:
    return all(ch in _NUMERIC_CHARS for ch in token) and any(ch.isdigit() for ch in token)


def classify_ortho(token: str) -> OrthoClass:
    if not token:
        raise ValueError("empty token")
    if any(ch.isdigit() for ch in token):
        return OrthoClass.NUMBER_OR_CODE
    if (
        len(token) >= 2
        and token[0].isalpha() and token[0].isupper()
        and all(ch.isalpha() and ch.islower() for ch in token[1:])
    ):
        return OrthoClass.PROPER_NOUN_LIKE
    return OrthoClass.PLAIN


def ortho_tags(cls: OrthoClass, token: str) -> tuple[str, ...] | None:
    if cls is OrthoClass.PROPER_NOUN_LIKE:
        return ("NNP",)
    if cls is OrthoClass.NUMBER_OR_CODE:
        return ("CD",) if _is_numeric(token) else ("NN",)
    return None


# -- the -ing / -ed ratio ----------------------------------------------------

@dataclass(frozen=True)
class IngDecision:
    word: str
    ing_count: int
    ed_count: int
    ratio: float
    noun_first: bool


_VOWELS = frozenset("aeiou")


def ed_candidates(word: str) -> list[str]:
    """Past forms paired with an -ing word: stem+ed, plus the undoubled
    variant when the stem ends in a doubled consonant (signalling -> signaled).
    """
    lower = word.lower()
    if not lower.endswith("ing"):
        raise ValueError(f"{word!r} does not end in -ing")
    stem = lower[:-3]
    out = [stem + "ed"]
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1].isalpha() and stem[-1] not in _VOWELS:
        out.append(stem[:-1] + "ed")
    return out


def ing_decision(word: str, freqs: FreqTable, theta: float = 5.0, min_ing_count: int = 100) -> IngDecision:
    """Counts are summed over casings; ratio = ing / max(ed, 1)."""
    lower = word.lower()
    if not lower.endswith("ing") or len(lower) < 5:
        raise ValueError(f"{word!r} is not an -ing word of length >= 5")
    ing = freqs.count_folded(lower)
    ed = sum(freqs.count_folded(c) for c in ed_candidates(lower))
    ratio = ing / max(ed, 1)
    return IngDecision(lower, ing, ed, ratio, ing >= min_ing_count and ratio >= theta)


def is_ing_word(word: str) -> bool:
    return len(word) >= 5 and word.lower().endswith("ing")
