"""Tag text, then learn contextual rules from a little gold data."""

from pathlib import Path

from rapidpos.lexicon import parse_lexicon
from rapidpos.corpus import tokenize
from rapidpos.tagged import format_slash, parse_tsv
from rapidpos.tbl import initial_annotate, parse_rules, tag, train_with_trace

here = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

lex = parse_lexicon((here / "tagging" / "toy.lex").read_text()).freeze()
rules = parse_rules((here / "tagging" / "toy.rules").read_text())
sentences = tokenize((here / "tagging" / "toy.txt").read_text())

print("initial state (first lexicon tag, suffix/orthographic guesses for unknowns):")
print(format_slash([initial_annotate(s, lex) for s in sentences]))
print("after contextual rules:")
for r in rules:
    print("  ", r)
print(format_slash(tag(sentences, lex, rules)))

# learn rules from a small gold sample; min_gain=1 since the sample has a single error
gold = parse_tsv((here / "eval" / "gold10.tsv").read_text())
result = train_with_trace(gold, lex, min_gain=1)
print(f"learned {len(result.rules)} rules, errors " + " -> ".join(map(str, result.errors)))
for r, s in zip(result.rules, result.scores):
    print(f"  {r}\t(+{s})")
