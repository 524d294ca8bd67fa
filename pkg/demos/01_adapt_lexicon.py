"""Grow a small seed lexicon from raw domain text.

The seed knows a handful of general-English words.  Counting a tiny
biomedical corpus lets suffix rules propose entries for unknown frequent
words, and the -ing/-ed ratio flips "binding" to noun-first.
"""

from pathlib import Path

from rapidpos.adapter import AdaptConfig, adapt
from rapidpos.corpus import count_files, corpus_files
from rapidpos.lexicon import parse_lexicon
from rapidpos.adapter import AdaptReport
from rapidpos.corpus import read_token_lines

here = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "adapt"

seed = parse_lexicon((here / "seed.lex").read_text()).freeze()
print(f"seed lexicon: {len(seed)} entries")

freqs = count_files(corpus_files(here / "corpus"))
print(f"corpus: {freqs.total_tokens} tokens, {len(freqs)} types")
for word, count in freqs.most_common()[:5]:
    print(f"  {word:12} {count}")

holdout = [t for s in read_token_lines((here / "holdout.tsv").read_text()) for t in s]
cfg = AdaptConfig(min_word_count=3, theta=2, min_ing_count=3)
lex, report = adapt(seed, freqs, holdout, cfg)

print()
print(report.summary(), end="")
print()
print("new or changed entries:")
print(AdaptReport.to_tsv(lex), end="")
