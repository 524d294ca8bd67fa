"""Transformation-based tagging.

Tagging is two passes: the initial-state annotator gives every token the
first lexicon tag (or a guess for unknown words), then contextual rules are
applied in order.  Each rule scans left to right and rewrites in place, so a
change made at position i is visible when position i+1 is tested.

Rule file format, one rule per line::

    NN VB PREVTAG TO
    VBD VBN PREV1OR2TAG VBZ
    NN VB CURWORD_PREVTAG use MD
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Token
from .lexicon import Lexicon, is_valid_tag
from .morphology import OrthoClass, SuffixRule, classify_ortho, default_suffix_rules, match_suffix, ortho_tags
from .tagged import TaggedSentence, TaggedToken

DEFAULT_TAG = "NN"


class Template(str, enum.Enum):
    PREVTAG = "PREVTAG"
    NEXTTAG = "NEXTTAG"
    PREV1OR2TAG = "PREV1OR2TAG"
    NEXT1OR2TAG = "NEXT1OR2TAG"
    SURROUNDTAG = "SURROUNDTAG"
    PREVWORD = "PREVWORD"
    NEXTWORD = "NEXTWORD"
    CURWORD_PREVTAG = "CURWORD_PREVTAG"


# which arguments are tags (True) or words (False)
_ARGS = {
    Template.PREVTAG: (True,),
    Template.NEXTTAG: (True,),
    Template.PREV1OR2TAG: (True,),
    Template.NEXT1OR2TAG: (True,),
    Template.SURROUNDTAG: (True, True),
    Template.PREVWORD: (False,),
    Template.NEXTWORD: (False,),
    Template.CURWORD_PREVTAG: (False, True),
}

ALL_TEMPLATES = tuple(Template)


class RuleParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ContextualRule:
    from_tag: str
    to_tag: str
    template: Template
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "template", Template(self.template))
        object.__setattr__(self, "args", tuple(self.args))
        if self.from_tag == self.to_tag:
            raise ValueError("from_tag and to_tag must differ")
        for t in (self.from_tag, self.to_tag):
            if not is_valid_tag(t):
                raise ValueError(f"invalid tag {t!r}")
        kinds = _ARGS[self.template]
        if len(self.args) != len(kinds):
            raise ValueError(f"{self.template.value} takes {len(kinds)} argument(s), got {len(self.args)}")
        for is_tag, arg in zip(kinds, self.args):
            if not arg or any(ch.isspace() for ch in arg):
                raise ValueError(f"bad argument {arg!r}")
            if is_tag and not is_valid_tag(arg):
                raise ValueError(f"invalid tag argument {arg!r}")

    def __str__(self):
        return " ".join((self.from_tag, self.to_tag, self.template.value) + self.args)

    def predicate(self, words: Sequence[str], tags: Sequence[str], i: int) -> bool:
        """Context test at position ``i``; absent context never matches."""
        n = len(tags)
        tpl, a = self.template, self.args
        if tpl is Template.PREVTAG:
            return i >= 1 and tags[i - 1] == a[0]
        if tpl is Template.NEXTTAG:
            return i + 1 < n and tags[i + 1] == a[0]
        if tpl is Template.PREV1OR2TAG:
            return (i >= 1 and tags[i - 1] == a[0]) or (i >= 2 and tags[i - 2] == a[0])
        if tpl is Template.NEXT1OR2TAG:
            return (i + 1 < n and tags[i + 1] == a[0]) or (i + 2 < n and tags[i + 2] == a[0])
        if tpl is Template.SURROUNDTAG:
            return i >= 1 and i + 1 < n and tags[i - 1] == a[0] and tags[i + 1] == a[1]
        if tpl is Template.PREVWORD:
            return i >= 1 and words[i - 1] == a[0]
        if tpl is Template.NEXTWORD:
            return i + 1 < n and words[i + 1] == a[0]
        if tpl is Template.CURWORD_PREVTAG:
            return i >= 1 and words[i] == a[0] and tags[i - 1] == a[1]
        raise AssertionError(tpl)


RuleList = list  # list[ContextualRule], order is application order


def parse_rule(line: str) -> ContextualRule:
    fields = line.split()
    if len(fields) < 4:
        raise ValueError(f"expected FROM TO TEMPLATE ARG [ARG], got {line!r}")
    frm, to, tpl, *args = fields
    try:
        template = Template(tpl)
    except ValueError:
        raise ValueError(f"unknown template {tpl!r}") from None
    return ContextualRule(frm, to, template, tuple(args))


def parse_rules(text: str) -> list[ContextualRule]:
    rules = []
    for lineno, line in enumerate(text.split("\n"), 1):
        if not line.strip():
            continue
        try:
            rules.append(parse_rule(line))
        except ValueError as exc:
            raise RuleParseError(lineno, str(exc)) from None
    return rules


def serialize_rules(rules: Iterable[ContextualRule]) -> str:
    return "".join(f"{r}\n" for r in rules)


def load_rules(path) -> list[ContextualRule]:
    with open(path, encoding="utf-8") as fh:
        return parse_rules(fh.read())


# -- tagging -----------------------------------------------------------------

def guess_tag(
    surface: str,
    sentence_initial: bool,
    suffix_rules: Sequence[SuffixRule],
) -> str:
    """Unknown-word chain: orthography, then suffix, then NN.

    A capitalized sentence-initial word says nothing about proper-nounhood,
    so it skips the NNP guess.
    """
    cls = classify_ortho(surface)
    if not (cls is OrthoClass.PROPER_NOUN_LIKE and sentence_initial):
        tags = ortho_tags(cls, surface)
        if tags:
            return tags[0]
    hit = match_suffix(surface, suffix_rules)
    if hit is not None:
        return hit[1][0]
    return DEFAULT_TAG


def _initial_tags(words: Sequence[str], lex: Lexicon, suffix_rules: Sequence[SuffixRule]) -> list[str]:
    tags = []
    for i, w in enumerate(words):
        found = lex.lookup(w)
        tags.append(found[0] if found else guess_tag(w, i == 0, suffix_rules))
    return tags


def _surfaces(sentence: Sequence[Token | TaggedToken | str]) -> list[str]:
    return [t if isinstance(t, str) else t.surface for t in sentence]


def _as_tokens(sentence: Sequence[Token | TaggedToken | str], sentence_index: int = 0) -> list[Token]:
    out = []
    for i, t in enumerate(sentence):
        if isinstance(t, TaggedToken):
            t = t.token
        out.append(t if isinstance(t, Token) else Token(t, sentence_index, i))
    return out


def initial_annotate(
    sentence: Sequence[Token | str],
    lex: Lexicon,
    suffix_rules: Sequence[SuffixRule] | None = None,
) -> list[TaggedToken]:
    if suffix_rules is None:
        suffix_rules = default_suffix_rules()
    tokens = _as_tokens(sentence)
    tags = _initial_tags(_surfaces(tokens), lex, suffix_rules)
    return [TaggedToken(t, g) for t, g in zip(tokens, tags)]


def _apply_in_place(rule: ContextualRule, words: Sequence[str], tags: list[str]) -> list[int]:
    """Rewrite ``tags`` left to right; return the positions changed."""
    changed = []
    frm, to = rule.from_tag, rule.to_tag
    for i in range(len(tags)):
        if tags[i] == frm and rule.predicate(words, tags, i):
            tags[i] = to
            changed.append(i)
    return changed


def apply_rule(rule: ContextualRule, tagged: TaggedSentence) -> list[TaggedToken]:
    words = [t.surface for t in tagged]
    tags = [t.tag for t in tagged]
    _apply_in_place(rule, words, tags)
    return [t if t.tag == g else TaggedToken(t.token, g) for t, g in zip(tagged, tags)]


def tag_sentence(
    sentence: Sequence[Token | str],
    lex: Lexicon,
    rules: Sequence[ContextualRule] = (),
    suffix_rules: Sequence[SuffixRule] | None = None,
) -> list[TaggedToken]:
    if suffix_rules is None:
        suffix_rules = default_suffix_rules()
    tokens = _as_tokens(sentence)
    words = _surfaces(tokens)
    tags = _initial_tags(words, lex, suffix_rules)
    for rule in rules:
        _apply_in_place(rule, words, tags)
    return [TaggedToken(t, g) for t, g in zip(tokens, tags)]


def tag(
    sentences: Iterable[Sequence[Token | str]],
    lex: Lexicon,
    rules: Sequence[ContextualRule] = (),
    suffix_rules: Sequence[SuffixRule] | None = None,
) -> list[list[TaggedToken]]:
    if suffix_rules is None:
        suffix_rules = default_suffix_rules()
    return [tag_sentence(s, lex, rules, suffix_rules) for s in sentences]


# -- training ----------------------------------------------------------------

def _instantiate(templates, words, tags, i, to_tag) -> Iterable[ContextualRule]:
    n = len(tags)
    frm = tags[i]
    for tpl in templates:
        if tpl is Template.PREVTAG and i >= 1:
            yield ContextualRule(frm, to_tag, tpl, (tags[i - 1],))
        elif tpl is Template.NEXTTAG and i + 1 < n:
            yield ContextualRule(frm, to_tag, tpl, (tags[i + 1],))
        elif tpl is Template.PREV1OR2TAG:
            for k in (1, 2):
                if i - k >= 0:
                    yield ContextualRule(frm, to_tag, tpl, (tags[i - k],))
        elif tpl is Template.NEXT1OR2TAG:
            for k in (1, 2):
                if i + k < n:
                    yield ContextualRule(frm, to_tag, tpl, (tags[i + k],))
        elif tpl is Template.SURROUNDTAG and 1 <= i < n - 1:
            yield ContextualRule(frm, to_tag, tpl, (tags[i - 1], tags[i + 1]))
        elif tpl is Template.PREVWORD and i >= 1:
            yield ContextualRule(frm, to_tag, tpl, (words[i - 1],))
        elif tpl is Template.NEXTWORD and i + 1 < n:
            yield ContextualRule(frm, to_tag, tpl, (words[i + 1],))
        elif tpl is Template.CURWORD_PREVTAG and i >= 1:
            yield ContextualRule(frm, to_tag, tpl, (words[i], tags[i - 1]))


def _may_cascade(rule: ContextualRule) -> bool:
    # A rule whose left-context tag equals its output can enable itself at
    # the next position, so it may correct more than the errors it was
    # instantiated from.
    tpl, a = rule.template, rule.args
    if tpl in (Template.PREVTAG, Template.PREV1OR2TAG, Template.SURROUNDTAG):
        return a[0] == rule.to_tag
    if tpl is Template.CURWORD_PREVTAG:
        return a[1] == rule.to_tag
    return False


@dataclass
class TrainResult:
    rules: list[ContextualRule]
    errors: list[int]  # working-corpus errors before training, then after each rule
    scores: list[int]


def train_with_trace(
    gold: Sequence[TaggedSentence],
    lex: Lexicon,
    templates: Iterable[Template | str] = ALL_TEMPLATES,
    min_gain: int = 2,
    suffix_rules: Sequence[SuffixRule] | None = None,
    max_rules: int | None = None,
) -> TrainResult:
    """Greedy error-driven rule learning.

    Each round instantiates candidates from the templates at every current
    error, scores each exactly as (corrections - new errors) under in-place
    application, and accepts the best; ties go to the rule whose text sorts
    first.  Stops when the best score drops below ``min_gain``.
    """
    if min_gain < 1:
        raise ValueError("min_gain must be a positive integer")
    templates = tuple(Template(t) for t in templates)
    if suffix_rules is None:
        suffix_rules = default_suffix_rules()
    words = [[t.surface for t in s] for s in gold]
    truth = [[t.tag for t in s] for s in gold]
    work = [_initial_tags(w, lex, suffix_rules) for w in words]

    def n_errors():
        return sum(p != g for ws, gs in zip(work, truth) for p, g in zip(ws, gs))

    result = TrainResult([], [n_errors()], [])
    while max_rules is None or len(result.rules) < max_rules:
        bound: dict[ContextualRule, float] = defaultdict(int)
        for w, cur, gs in zip(words, work, truth):
            for i, (p, g) in enumerate(zip(cur, gs)):
                if p != g:
                    for r in _instantiate(templates, w, cur, i, g):
                        bound[r] += 1
        if not bound:
            break
        for r in bound:
            if _may_cascade(r):
                bound[r] = math.inf

        by_tag = defaultdict(list)
        for si, cur in enumerate(work):
            for t in set(cur):
                by_tag[t].append(si)

        best, best_score = None, -math.inf
        for r in sorted(bound, key=lambda r: (-bound[r], str(r))):
            if bound[r] < best_score or bound[r] < min_gain:
                break
            score = 0
            for si in by_tag[r.from_tag]:
                tags = list(work[si])
                gs = truth[si]
                for i in _apply_in_place(r, words[si], tags):
                    score += (gs[i] == r.to_tag) - (gs[i] == r.from_tag)
            if score > best_score or (score == best_score and str(r) < str(best)):
                best, best_score = r, score
        if best is None or best_score < min_gain:
            break
        for si in by_tag[best.from_tag]:
            _apply_in_place(best, words[si], work[si])
        result.rules.append(best)
        result.scores.append(best_score)
        result.errors.append(n_errors())
    return result


def train(
    gold: Sequence[TaggedSentence],
    lex: Lexicon,
    templates: Iterable[Template | str] = ALL_TEMPLATES,
    min_gain: int = 2,
    suffix_rules: Sequence[SuffixRule] | None = None,
    max_rules: int | None = None,
) -> list[ContextualRule]:
    return train_with_trace(gold, lex, templates, min_gain, suffix_rules, max_rules).rules
