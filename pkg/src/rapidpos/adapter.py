"""Lexicon adaptation from raw domain text.

Unknown words that occur often enough get tags from suffix rules (and,
optionally, orthographic classes); then every known -ing word whose
-ing/-ed ratio is heavily skewed gets NN promoted to its first tag.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields
from typing import Iterable, Sequence

from .corpus import FreqTable, Token, count_frequencies
from .lexicon import Coverage, Lexicon, Provenance, coverage, type_coverage
from .morphology import (
    IngDecision,
    SuffixRule,
    classify_ortho,
    default_suffix_rules,
    ing_decision,
    is_ing_word,
    match_suffix,
    ortho_tags,
)

log = logging.getLogger(__name__)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class AdaptConfig:
    min_word_count: int = 3
    theta: float = 5.0
    min_ing_count: int = 100
    suffix_confidence_floor: float = 0.5
    enable_ortho_entries: bool = False

    def __post_init__(self):
        if self.min_word_count < 1 or self.min_ing_count < 1:
            raise ConfigError("count thresholds must be positive integers")
        if self.theta <= 0:
            raise ConfigError("theta must be positive")
        if not 0 < self.suffix_confidence_floor <= 1:
            raise ConfigError("suffix_confidence_floor must lie in (0, 1]")

    def replace(self, **changes) -> AdaptConfig:
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update({k: v for k, v in changes.items() if v is not None})
        return AdaptConfig(**values)


_BOOL = {"true": True, "yes": True, "1": True, "on": True,
         "false": False, "no": False, "0": False, "off": False}


def parse_config(text: str) -> AdaptConfig:
    """Flat ``key = value`` lines; ``#`` starts a comment.  All keys optional."""
    types = {f.name: f.type for f in fields(AdaptConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or not key:
            raise ConfigError(f"line {lineno}: expected key=value")
        if key not in types:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if types[key] == "bool":
                values[key] = _BOOL[value.lower()]
            elif types[key] == "int":
                values[key] = int(value)
            else:
                values[key] = float(value)
        except (KeyError, ValueError):
            raise ConfigError(f"line {lineno}: bad value for {key}: {value!r}") from None
    try:
        return AdaptConfig(**values)
    except ConfigError as exc:
        raise ConfigError(f"invalid config: {exc}") from None


def load_config(path) -> AdaptConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


@dataclass(frozen=True)
class Proposal:
    word: str
    tags: tuple[str, ...]
    provenance: Provenance
    source: str  # rule (e.g. "-ous") or ortho class name
    count: int


def propose_entries(
    freqs: FreqTable,
    lex: Lexicon,
    rules: Sequence[SuffixRule] | None = None,
    cfg: AdaptConfig = AdaptConfig(),
) -> list[Proposal]:
    if rules is None:
        rules = default_suffix_rules()
    usable = [r for r in rules if r.confidence >= cfg.suffix_confidence_floor]
    out = []
    for word in sorted(freqs):
        count = freqs[word]
        if count < cfg.min_word_count or lex.lookup(word) is not None:
            continue
        hit = match_suffix(word, usable)
        if hit is not None:
            rule, tags = hit
            out.append(Proposal(word, tags, Provenance.SUFFIX, str(rule), count))
            continue
        if cfg.enable_ortho_entries:
            cls = classify_ortho(word)
            tags = ortho_tags(cls, word)
            if tags is not None:
                out.append(Proposal(word, tags, Provenance.ORTHO, cls.value, count))
    return out


def apply_ing_heuristic(freqs: FreqTable, lex: Lexicon, cfg: AdaptConfig = AdaptConfig()) -> list[IngDecision]:
    """Decide every lexicon -ing word seen at least ``min_ing_count`` times.

    Words are taken case-folded; the lowercase lexicon entry is the one
    reordered.  Both outcomes are returned, sorted by word.
    """
    decisions = []
    for word in sorted(freqs.folded):
        if not is_ing_word(word) or word not in lex:
            continue
        if freqs.folded[word] < cfg.min_ing_count:
            continue
        d = ing_decision(word, freqs, cfg.theta, cfg.min_ing_count)
        if d.noun_first:
            lex.promote_first_tag(word, "NN")
        decisions.append(d)
    return decisions


@dataclass
class AdaptReport:
    added: list[Proposal] = field(default_factory=list)
    reordered: list[IngDecision] = field(default_factory=list)
    coverage_before: Coverage = Coverage(0, 0)
    coverage_after: Coverage = Coverage(0, 0)
    type_coverage_before: Coverage = Coverage(0, 0)
    type_coverage_after: Coverage = Coverage(0, 0)

    @staticmethod
    def to_tsv(lex: Lexicon) -> str:
        """``word<TAB>tags<TAB>provenance`` for each entry not straight from the seed.

        Tags are space-separated; a suffix-added word later promoted to NN
        is reported once, with its final tags and the reorder mark.
        """
        return "".join(
            f"{e.word}\t{' '.join(e.tags)}\t{lex.provenance(e.word).value}\n"
            for e in lex.entries()
            if lex.provenance(e.word) is not Provenance.SEED
        )

    def summary(self) -> str:
        by_prov: dict[str, int] = {}
        for p in self.added:
            by_prov[p.provenance.value] = by_prov.get(p.provenance.value, 0) + 1
        promoted = sum(d.noun_first for d in self.reordered)
        lines = [f"added entries: {len(self.added)}"]
        lines += [f"  {k}: {v}" for k, v in sorted(by_prov.items())]
        lines.append(f"-ing words examined: {len(self.reordered)}, NN promoted: {promoted}")
        before, after = self.coverage_before.value, self.coverage_after.value
        lines.append(
            f"token coverage: {before:.4f} -> {after:.4f} ({after - before:+.4f})"
            + (" [empty holdout]" if self.coverage_before.empty else "")
        )
        lines.append(
            f"type coverage: {self.type_coverage_before.value:.4f} -> {self.type_coverage_after.value:.4f}"
        )
        return "\n".join(lines) + "\n"


def adapt(
    seed: Lexicon,
    raw_corpus: Iterable[Token | str] | FreqTable,
    holdout: Iterable[Token | str] = (),
    cfg: AdaptConfig = AdaptConfig(),
    rules: Sequence[SuffixRule] | None = None,
) -> tuple[Lexicon, AdaptReport]:
    """Return a frozen adapted copy of ``seed`` and the audit report.

    ``raw_corpus`` may be a token stream or an already counted table.
    The seed itself is not modified.
    """
    freqs = raw_corpus if isinstance(raw_corpus, FreqTable) else count_frequencies(raw_corpus)
    holdout = list(holdout)
    lex = seed.copy()
    report = AdaptReport()
    for p in propose_entries(freqs, seed, rules, cfg):
        if lex.add_entry(p.word, p.tags, p.provenance):
            report.added.append(p)
    report.reordered = apply_ing_heuristic(freqs, lex, cfg)
    lex.freeze()
    report.coverage_before = coverage(seed, holdout)
    report.coverage_after = coverage(lex, holdout)
    report.type_coverage_before = type_coverage(seed, holdout)
    report.type_coverage_after = type_coverage(lex, holdout)
    log.info("adapted lexicon: %d -> %d entries", len(seed), len(lex))
    return lex, report
