"""Scoring tagger output against gold annotation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .lexicon import Lexicon, coverage as lexicon_coverage
from .tagged import TaggedSentence

# gold corpora that do not separate proper from common nouns
_COLLAPSE = {"NNP": "NN", "NNPS": "NNS"}


def collapse_tag(tag: str) -> str:
    return _COLLAPSE.get(tag, tag)


class AlignmentError(ValueError):
    def __init__(self, sentence: int, position: int | None, message: str):
        where = f"sentence {sentence}" + (f", token {position}" if position is not None else "")
        super().__init__(f"{where}: {message}")
        self.sentence = sentence
        self.position = position


@dataclass
class EvalReport:
    token_count: int
    correct_count: int
    confusion: Counter = field(default_factory=Counter)
    per_tag_accuracy: dict[str, float] = field(default_factory=dict)
    coverage: float | None = None
    collapsed: bool = True

    @property
    def accuracy(self) -> float:
        return self.correct_count / self.token_count

    def errors(self) -> list[tuple[tuple[str, str], int]]:
        """Off-diagonal confusion cells, most frequent first."""
        cells = [(k, v) for k, v in self.confusion.items() if k[0] != k[1]]
        return sorted(cells, key=lambda kv: (-kv[1], kv[0]))

    def metrics(self, baseline_accuracy: float | None = None) -> dict[str, float]:
        out = {
            "token_count": self.token_count,
            "correct_count": self.correct_count,
            "accuracy": self.accuracy,
        }
        if self.coverage is not None:
            out["coverage"] = self.coverage
        if baseline_accuracy is not None:
            out["baseline_accuracy"] = baseline_accuracy
            out["error_reduction"] = error_reduction(baseline_accuracy, self.accuracy)
        return out

    def to_tsv(self, baseline_accuracy: float | None = None) -> str:
        lines = []
        for k, v in self.metrics(baseline_accuracy).items():
            lines.append(f"{k}\t{v}\n" if isinstance(v, int) else f"{k}\t{v:.6f}\n")
        return "".join(lines)

    def summary(self, baseline_accuracy: float | None = None, top: int = 10) -> str:
        lines = [
            f"tokens:   {self.token_count}",
            f"correct:  {self.correct_count}",
            f"accuracy: {self.accuracy:.4f} ({100 * self.accuracy:.2f}%)"
            + ("" if self.collapsed else " [NNP/NNPS kept distinct]"),
        ]
        if self.coverage is not None:
            lines.append(f"coverage: {self.coverage:.4f}")
        if baseline_accuracy is not None:
            er = error_reduction(baseline_accuracy, self.accuracy)
            lines.append(f"baseline accuracy: {baseline_accuracy:.4f}")
            lines.append(f"error reduction: {100 * er:.2f}%")
        errs = self.errors()[:top]
        if errs:
            lines.append("top confusions (gold -> predicted):")
            lines += [f"  {g} -> {p}\t{n}" for (g, p), n in errs]
        return "\n".join(lines) + "\n"


def score(
    gold: Sequence[TaggedSentence],
    predicted: Sequence[TaggedSentence],
    collapse: bool = True,
    lexicon: Lexicon | None = None,
) -> EvalReport:
    """Token accuracy of ``predicted`` against ``gold``.

    Both sides must align token for token; the first mismatch raises
    :class:`AlignmentError`.  With ``collapse`` NNP/NNPS count as NN/NNS,
    and the confusion matrix is keyed by collapsed tags.
    """
    if len(gold) != len(predicted):
        raise AlignmentError(min(len(gold), len(predicted)), None,
                             f"sentence count differs (gold {len(gold)}, predicted {len(predicted)})")
    norm = collapse_tag if collapse else (lambda t: t)
    confusion: Counter = Counter()
    for si, (gs, ps) in enumerate(zip(gold, predicted)):
        if len(gs) != len(ps):
            raise AlignmentError(si, min(len(gs), len(ps)),
                                 f"token count differs (gold {len(gs)}, predicted {len(ps)})")
        for ti, (g, p) in enumerate(zip(gs, ps)):
            if g.surface != p.surface:
                raise AlignmentError(si, ti, f"token mismatch: gold {g.surface!r}, predicted {p.surface!r}")
            confusion[norm(g.tag), norm(p.tag)] += 1
    total = sum(confusion.values())
    if total == 0:
        raise ValueError("nothing to score: gold is empty")
    correct = sum(n for (g, p), n in confusion.items() if g == p)

    per_gold: Counter = Counter()
    per_correct: Counter = Counter()
    for (g, p), n in confusion.items():
        per_gold[g] += n
        if g == p:
            per_correct[g] += n
    per_tag = {t: per_correct[t] / per_gold[t] for t in sorted(per_gold)}

    cov = None
    if lexicon is not None:
        cov = lexicon_coverage(lexicon, (t.token for s in gold for t in s)).value
    return EvalReport(total, correct, confusion, per_tag, cov, collapse)


def error_reduction(base_accuracy: float, new_accuracy: float) -> float:
    """Share of the baseline's errors removed: (new - base) / (1 - base).

    Negative when accuracy dropped.  A perfect baseline has no errors to
    remove and is defined as 0; see :func:`compare` for the flag.
    """
    if base_accuracy >= 1.0:
        return 0.0
    return (new_accuracy - base_accuracy) / (1.0 - base_accuracy)


@dataclass(frozen=True)
class Comparison:
    base_accuracy: float
    new_accuracy: float
    error_reduction: float
    degenerate: bool  # baseline was perfect

    @property
    def improved(self) -> bool:
        return self.new_accuracy > self.base_accuracy


def compare(base_accuracy: float, new_accuracy: float) -> Comparison:
    return Comparison(base_accuracy, new_accuracy,
                      error_reduction(base_accuracy, new_accuracy), base_accuracy >= 1.0)


def parse_metrics(text: str) -> Mapping[str, float]:
    """Read a ``metric<TAB>value`` report."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            key, value = line.split("\t")
            out[key] = float(value)
        except ValueError:
            raise ValueError(f"line {lineno}: expected metric<TAB>value") from None
    return out
