"""Exit criteria for the package, one test (or group) per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line for each
in the terminal summary.  AC2 needs external corpora and is skipped unless
the environment variables listed on that test point at them.
"""

import os
import random
import string
import time
from pathlib import Path

import pytest

from rapidpos.adapter import AdaptConfig, AdaptReport, adapt, propose_entries
from rapidpos.cli import main as cli_main
from rapidpos.corpus import FreqTable, corpus_files, count_files, iter_tokens, read_token_lines, tokenize
from rapidpos.evaluation import error_reduction, score
from rapidpos.lexicon import Lexicon, LexiconEntry, coverage, parse_lexicon, serialize_lexicon
from rapidpos.morphology import default_suffix_rules
from rapidpos.tagged import format_slash, format_tsv, make_sentence, parse_tsv
from rapidpos.tbl import (
    ContextualRule,
    Template,
    apply_rule,
    initial_annotate,
    parse_rules,
    serialize_rules,
    tag,
    train_with_trace,
)

from oracles import brute_proposals

TAGS = ["NN", "NNS", "NNP", "NNPS", "VB", "VBP", "VBZ", "VBG", "VBD", "VBN", "JJ", "RB", "DT", "IN",
        "CD", "TO", "MD", "PRP", "PRP$", "CC", ".", ",", ":", "-LRB-", "-RRB-", "``", "''"]


# -- AC1 ---------------------------------------------------------------------

@pytest.mark.criterion("AC1 error-reduction arithmetic (0.2089 +/- 0.0005, CLI prints 20.89%)")
def test_ac1_error_reduction(tmp_path, capsys):
    assert abs(error_reduction(0.9258, 0.9413) - 0.2089) <= 0.0005

    gold = [make_sentence([("w", "NN")] * 100, k) for k in range(100)]
    pred = [make_sentence([("w", "VB" if k * 100 + i < 587 else "NN") for i in range(100)], k) for k in range(100)]
    (tmp_path / "gold.tsv").write_text(format_tsv(gold))
    (tmp_path / "pred.tsv").write_text(format_tsv(pred))
    (tmp_path / "baseline.tsv").write_text("accuracy\t0.9258\n")
    assert cli_main(["eval", str(tmp_path / "gold.tsv"), str(tmp_path / "pred.tsv"),
                     "--baseline-report", str(tmp_path / "baseline.tsv")]) == 0
    out = capsys.readouterr().out
    assert "accuracy: 0.9413" in out
    assert "20.89%" in out


# -- AC2 (optional, external data) --------------------------------------------

_EXT = {k: os.environ.get(k) for k in
        ("RAPIDPOS_GENIA_TEST_TSV", "RAPIDPOS_SEED_LEXICON", "RAPIDPOS_RULES", "RAPIDPOS_MEDLINE_DIR")}


@pytest.mark.criterion("AC2 full-scale accuracy/coverage (optional; needs GENIA + fnTBL + Medline)")
@pytest.mark.skipif(not all(_EXT.values()), reason="set " + ", ".join(_EXT) + " to run")
def test_ac2_full_scale():
    gold = parse_tsv(Path(_EXT["RAPIDPOS_GENIA_TEST_TSV"]).read_text())
    seed = parse_lexicon(Path(_EXT["RAPIDPOS_SEED_LEXICON"]).read_text()).freeze()
    rules = parse_rules(Path(_EXT["RAPIDPOS_RULES"]).read_text())
    freqs = count_files(corpus_files(_EXT["RAPIDPOS_MEDLINE_DIR"]), jobs=os.cpu_count() or 1)
    tokens = [[t.token for t in s] for s in gold]
    adapted, report = adapt(seed, freqs, (t for s in tokens for t in s), AdaptConfig())

    base = score(gold, tag(tokens, seed, rules), collapse=True).accuracy
    new = score(gold, tag(tokens, adapted, rules), collapse=True).accuracy
    print(f"baseline {base:.4f} adapted {new:.4f} coverage "
          f"{report.coverage_before.value:.3f} -> {report.coverage_after.value:.3f}")
    assert abs(base - 0.9258) <= 0.01
    assert new > base
    assert report.coverage_after.value > report.coverage_before.value


# -- AC3 ---------------------------------------------------------------------

def _fuzz_vocabulary(rng, n):
    rules = default_suffix_rules()
    endings = [r.suffix for r in rules] + ["", "", "q", "um", "xe", "2", "-1"]
    vocab = set()
    while len(vocab) < n:
        stem = "".join(rng.choice(string.ascii_lowercase) for _ in range(rng.randint(0, 7)))
        w = stem + rng.choice(endings)
        if not w:
            continue
        r = rng.random()
        if r < 0.1:
            w = w.capitalize()
        elif r < 0.13:
            w = w.upper()
        elif r < 0.16:
            w = f"{rng.randint(0, 999)}.{rng.randint(0, 9)}"
        vocab.add(w)
    return sorted(vocab)


@pytest.mark.criterion("AC3 suffix oracle equivalence on >=10,000 fuzzed words (< 5 s)")
@pytest.mark.parametrize("ortho", [False, True])
def test_ac3_suffix_oracle(ortho):
    rng = random.Random(2024)
    rules = default_suffix_rules()
    vocab = _fuzz_vocabulary(rng, 12_000)
    assert len(vocab) >= 10_000
    counts = {w: rng.randint(1, 8) for w in vocab}
    freqs = FreqTable(counts, sum(counts.values()))
    seed_words = set(rng.sample(vocab, 1500)) | {w.lower() for w in rng.sample(vocab, 500)}
    seed = Lexicon.from_dict({w: ["NN"] for w in seed_words}).freeze()
    cfg = AdaptConfig(min_word_count=3, suffix_confidence_floor=0.6, enable_ortho_entries=ortho)

    start = time.perf_counter()
    got = propose_entries(freqs, seed, rules, cfg)
    elapsed = time.perf_counter() - start

    want = brute_proposals(counts, seed_words, rules, 3, 0.6, ortho)
    assert [(p.word, p.tags, p.provenance.value) for p in got] == want
    assert len(want) > 1000
    assert elapsed < 5.0


# -- AC4 ---------------------------------------------------------------------

@pytest.mark.criterion("AC4 -ing heuristic determinism (screening promoted, activating untouched)")
def test_ac4_ing_heuristic(fixtures):
    d = fixtures / "ing"
    seed = parse_lexicon((d / "seed.lex").read_text()).freeze()
    corpus = FreqTable({"screening": 600, "screened": 20, "activating": 50, "activated": 400}, 1070)
    cfg = AdaptConfig(theta=5, min_ing_count=100)
    outputs = []
    for _ in range(2):
        lex, report = adapt(seed, corpus, [], cfg)
        outputs.append((serialize_lexicon(lex), AdaptReport.to_tsv(lex)))
        assert [d.word for d in report.reordered if d.noun_first] == ["screening"]
        assert lex["activating"].tags == seed["activating"].tags
        assert report.added == []
    assert outputs[0] == outputs[1]
    assert outputs[0][0] == (d / "expected.lex").read_text()
    assert outputs[0][1] == (d / "expected_report.tsv").read_text()


# -- AC5 ---------------------------------------------------------------------

@pytest.mark.criterion("AC5 TBL semantics (cascade, 5-sentence golden, empty rules = initial)")
def test_ac5_cascade():
    rule = ContextualRule("X", "Y", Template.PREVTAG, ("Y",))
    out = apply_rule(rule, make_sentence([("a", "Y"), ("b", "X"), ("c", "X")]))
    assert [t.tag for t in out] == ["Y", "Y", "Y"]


@pytest.mark.criterion("AC5 TBL semantics (cascade, 5-sentence golden, empty rules = initial)")
def test_ac5_golden(fixtures):
    d = fixtures / "tagging"
    lex = parse_lexicon((d / "toy.lex").read_text()).freeze()
    rules = parse_rules((d / "toy.rules").read_text())
    sentences = tokenize((d / "toy.txt").read_text())
    assert len(sentences) == 5 and len(rules) == 3
    assert format_slash(tag(sentences, lex, rules)).encode() == (d / "toy.expected.slash").read_bytes()


@pytest.mark.criterion("AC5 TBL semantics (cascade, 5-sentence golden, empty rules = initial)")
def test_ac5_empty_rules_fuzz():
    rng = random.Random(5)
    pool = ["the", "The", "binds", "IL-2", "3.5", "Delaware", "kinases", "dangerous", "of", ".",
            "phosphorylates", "x", "NF-kappaB", "signaling", "receptor", "(", ")"]
    lex = Lexicon.from_dict({"the": ["DT"], "of": ["IN"], ".": ["."], "binds": ["VBZ", "NNS"],
                             "signaling": ["NN", "VBG"]}).freeze()
    sentences = [[rng.choice(pool) for _ in range(rng.randint(1, 15))] for _ in range(1000)]
    assert tag(sentences, lex, []) == [initial_annotate(s, lex) for s in sentences]


# -- AC6 ---------------------------------------------------------------------

@pytest.mark.criterion("AC6 trainer recovers planted rule (>= 99% restored, monotone errors)")
def test_ac6_planted_rule():
    rng = random.Random(6)
    nouns = ["cell", "gene", "protein", "receptor", "assay", "level"]
    amb = ["bind", "signal", "express", "increase", "control", "block", "target"]
    gold = []
    for k in range(400):
        s = [(rng.choice(["the", "a"]), "DT"), (rng.choice(nouns), "NN")]
        if rng.random() < 0.6:
            s += [(rng.choice(["appears", "fails", "seems"]), "VBZ"), ("to", "TO"), (rng.choice(amb), "VB")]
        else:
            s += [(rng.choice(["of", "in", "for"]), "IN"), (rng.choice(amb), "NN")]
        s += [(rng.choice(["in", "of"]), "IN"), ("the", "DT"), (rng.choice(nouns), "NN"), (".", ".")]
        gold.append(make_sentence(s, k))
    # lexicon lists NN first for the ambiguous words: the planted rule's inverse
    lex = Lexicon.from_dict({
        "the": ["DT"], "a": ["DT"], "to": ["TO"], ".": ["."], "of": ["IN"], "in": ["IN"], "for": ["IN"],
        "appears": ["VBZ"], "fails": ["VBZ"], "seems": ["VBZ"],
        **{w: ["NN"] for w in nouns}, **{w: ["NN", "VB"] for w in amb},
    }).freeze()
    tokens = [[t.token for t in s] for s in gold]
    initial = tag(tokens, lex)
    corrupted = [(i, j) for i, s in enumerate(gold) for j, t in enumerate(s) if initial[i][j].tag != t.tag]
    assert len(corrupted) > 100

    result = train_with_trace(gold, lex, min_gain=2)
    final = tag(tokens, lex, result.rules)
    restored = sum(final[i][j].tag == gold[i][j].tag for i, j in corrupted)
    assert restored / len(corrupted) >= 0.99
    assert result.errors[0] == len(corrupted)
    assert all(later < earlier for earlier, later in zip(result.errors, result.errors[1:]))
    assert all(earlier - later >= 2 for earlier, later in zip(result.errors, result.errors[1:]))


# -- AC7 ---------------------------------------------------------------------

def _random_word(rng):
    return "".join(rng.choice("abcxyzABZ019-/.$'") for _ in range(rng.randint(1, 9)))


def _random_rule(rng):
    frm, to = rng.sample(TAGS, 2)
    tpl = rng.choice(list(Template))
    if tpl in (Template.PREVWORD, Template.NEXTWORD):
        args = (_random_word(rng),)
    elif tpl is Template.SURROUNDTAG:
        args = (rng.choice(TAGS), rng.choice(TAGS))
    elif tpl is Template.CURWORD_PREVTAG:
        args = (_random_word(rng), rng.choice(TAGS))
    else:
        args = (rng.choice(TAGS),)
    return ContextualRule(frm, to, tpl, args)


@pytest.mark.criterion("AC7 lexicon and rule file round-trips under fuzzing")
def test_ac7_roundtrips(fixtures):
    rng = random.Random(7)
    for _ in range(500):
        words = {_random_word(rng) for _ in range(rng.randint(0, 40))}
        lex = Lexicon(LexiconEntry(w, tuple(rng.sample(TAGS, rng.randint(1, 4)))) for w in words)
        text = serialize_lexicon(lex)
        assert parse_lexicon(text) == lex
        assert serialize_lexicon(parse_lexicon(text)) == text

        rules = [_random_rule(rng) for _ in range(rng.randint(0, 30))]
        rtext = serialize_rules(rules)
        assert parse_rules(rtext) == rules
        assert serialize_rules(parse_rules(rtext)) == rtext

    for path in sorted(fixtures.rglob("*.lex")):
        assert serialize_lexicon(parse_lexicon(path.read_text())) == path.read_text()
    rules_text = (fixtures / "tagging" / "toy.rules").read_text()
    assert serialize_rules(parse_rules(rules_text)) == rules_text


# -- AC8 ---------------------------------------------------------------------

@pytest.mark.criterion("AC8 coverage monotonicity over 100 random (seed, corpus) pairs")
def test_ac8_coverage_monotone():
    rng = random.Random(8)
    rules = default_suffix_rules()
    endings = [r.suffix for r in rules] + ["", "q", "um"]
    strict_cases = 0
    for _ in range(100):
        vocab = sorted({"".join(rng.choice("abdeiklmnoprstu") for _ in range(rng.randint(1, 6)))
                        + rng.choice(endings) for _ in range(200)})
        seed = Lexicon.from_dict({w: [rng.choice(TAGS)] for w in rng.sample(vocab, 60)}).freeze()
        corpus = [rng.choice(vocab) for _ in range(2000)]
        holdout = [rng.choice(vocab) for _ in range(500)]
        cfg = AdaptConfig(min_word_count=rng.randint(1, 10), enable_ortho_entries=rng.random() < 0.5)
        lex, report = adapt(seed, corpus, holdout, cfg)
        assert report.coverage_after.value >= report.coverage_before.value
        assert report.coverage_before == coverage(seed, holdout)
        assert report.coverage_after == coverage(lex, holdout)
        added_in_holdout = {p.word for p in report.added} & set(holdout)
        if added_in_holdout:
            strict_cases += 1
            assert report.coverage_after.value > report.coverage_before.value
    assert strict_cases > 50
