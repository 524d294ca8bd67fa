"""Batch command line: ``rapidpos {adapt,tag,eval,stats,train}``.

Exit status is 0 on success, 1 for usage, parse, config or alignment
errors, and 2 for I/O errors.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import adapter, corpus, evaluation, lexicon, morphology, tagged, tbl

class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8")


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _require(*paths, kind="file"):
    for p in paths:
        if p is None or p == "-":
            continue
        ok = os.path.isdir(p) if kind == "dir" else os.path.isfile(p)
        if not ok:
            raise FileNotFoundError(f"{kind} not found: {p}")


class InputError(ValueError):
    pass


def _parsed(path: str, parse):
    """Parse the file at ``path``; content errors name the file."""
    text = _read(path)
    try:
        return parse(text)
    except (ValueError, lexicon.LexiconError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _suffix_rules(path):
    if path is None:
        return morphology.default_suffix_rules()
    return _parsed(path, morphology.parse_suffix_rules)


def _read_sentences(path: str, fmt: str):
    text = _read(path)
    return corpus.read_token_lines(text) if fmt == "tokens" else corpus.tokenize(text)


# -- commands ----------------------------------------------------------------

def cmd_adapt(args) -> int:
    _require(args.seed, args.holdout, args.config, args.suffix_rules)
    _require(args.corpus, kind="dir")
    seed = _parsed(args.seed, lexicon.parse_lexicon).freeze()
    cfg = _parsed(args.config, adapter.parse_config) if args.config else adapter.AdaptConfig()
    cfg = cfg.replace(
        min_word_count=args.min_word_count,
        theta=args.theta,
        min_ing_count=args.min_ing_count,
        suffix_confidence_floor=args.suffix_confidence_floor,
        enable_ortho_entries=args.ortho_entries,
    )
    rules = _suffix_rules(args.suffix_rules)

    files = corpus.corpus_files(args.corpus)
    if not files:
        print(f"warning: corpus directory {args.corpus} is empty; adapted lexicon equals the seed",
              file=sys.stderr)
    freqs = corpus.count_files(files, pretokenized=args.corpus_format == "tokens", jobs=args.jobs)
    if args.holdout:
        holdout = list(corpus.iter_tokens(_read_sentences(args.holdout, args.holdout_format)))
    else:
        holdout = [w for w, c in sorted(freqs.counts.items()) for _ in range(c)]

    adapted, report = adapter.adapt(seed, freqs, holdout, cfg, rules)
    _write(args.out_lexicon, lexicon.serialize_lexicon(adapted))
    if args.out_report:
        _write(args.out_report, report.to_tsv(adapted))
    sys.stdout.write(report.summary())
    return 0


def cmd_tag(args) -> int:
    _require(args.lexicon, args.rules, args.input, args.suffix_rules)
    lex = _parsed(args.lexicon, lexicon.parse_lexicon).freeze()
    rules = _parsed(args.rules, tbl.parse_rules)
    sentences = _read_sentences(args.input, args.input_format)
    out = tbl.tag(sentences, lex, rules, _suffix_rules(args.suffix_rules))
    _write(args.output, tagged.FORMATS[args.format][1](out))
    return 0


def cmd_eval(args) -> int:
    _require(args.gold, args.predicted, args.baseline_report, args.lexicon)
    gold = _parsed(args.gold, tagged.parse_tsv)
    pred = _parsed(args.predicted, tagged.FORMATS[args.predicted_format][0])
    lex = _parsed(args.lexicon, lexicon.parse_lexicon) if args.lexicon else None
    report = evaluation.score(gold, pred, collapse=args.collapse, lexicon=lex)

    baseline = args.baseline_accuracy
    if args.baseline_report:
        metrics = _parsed(args.baseline_report, evaluation.parse_metrics)
        if "accuracy" not in metrics:
            raise ValueError(f"{args.baseline_report}: no accuracy metric")
        baseline = metrics["accuracy"]
    sys.stdout.write(report.summary(baseline))
    if args.report_out:
        _write(args.report_out, report.to_tsv(baseline))
    return 0


def ratio_table(freqs: corpus.FreqTable, theta: float, min_ing_count: int) -> str:
    lines = ["word\ting_count\ted_count\tratio\tnoun_first\n"]
    for word in sorted(freqs.folded):
        if morphology.is_ing_word(word):
            d = morphology.ing_decision(word, freqs, theta, min_ing_count)
            lines.append(f"{d.word}\t{d.ing_count}\t{d.ed_count}\t{d.ratio:.4f}\t{str(d.noun_first).lower()}\n")
    return "".join(lines)


def cmd_stats(args) -> int:
    _require(args.corpus, kind="dir")
    files = corpus.corpus_files(args.corpus)
    freqs = corpus.count_files(files, pretokenized=args.corpus_format == "tokens", jobs=args.jobs)
    os.makedirs(args.out_dir, exist_ok=True)
    _write(os.path.join(args.out_dir, "freqs.tsv"), corpus.dump_frequencies(freqs))
    _write(os.path.join(args.out_dir, "ing_ratios.tsv"), ratio_table(freqs, args.theta, args.min_ing_count))
    print(f"{len(files)} files, {freqs.total_tokens} tokens, {len(freqs)} types", file=sys.stderr)
    return 0


def cmd_train(args) -> int:
    _require(args.gold, args.lexicon, args.suffix_rules)
    gold = _parsed(args.gold, tagged.parse_tsv)
    if not gold:
        raise InputError(f"{args.gold}: no sentences")
    lex = _parsed(args.lexicon, lexicon.parse_lexicon).freeze()
    try:
        templates = [tbl.Template(t.strip()) for t in args.templates.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = tbl.train_with_trace(gold, lex, templates, args.min_gain,
                                  _suffix_rules(args.suffix_rules), args.max_rules)
    _write(args.out, tbl.serialize_rules(result.rules))
    print(f"{len(result.rules)} rules; working-corpus errors "
          + " -> ".join(map(str, result.errors)), file=sys.stderr)
    return 0


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rapidpos", description="Domain adaptation for a transformation-based POS tagger.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("adapt", help="expand a seed lexicon from raw domain text")
    p.add_argument("--seed", required=True, help="seed lexicon file")
    p.add_argument("--corpus", required=True, help="directory of raw corpus files")
    p.add_argument("--corpus-format", choices=("text", "tokens"), default="text")
    p.add_argument("--holdout", help="coverage measurement corpus (default: the raw corpus)")
    p.add_argument("--holdout-format", choices=("text", "tokens"), default="tokens",
                   help="'tokens' also accepts token<TAB>tag gold files")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--min-word-count", type=int)
    p.add_argument("--theta", type=float)
    p.add_argument("--min-ing-count", type=int)
    p.add_argument("--suffix-confidence-floor", type=float)
    p.add_argument("--ortho-entries", action=argparse.BooleanOptionalAction, default=None)
    p.add_argument("--suffix-rules", help="suffix rule TSV (default: shipped rules)")
    p.add_argument("--jobs", type=int, default=1, help="counting processes")
    p.add_argument("--out-lexicon", required=True)
    p.add_argument("--out-report", help="TSV of added/reordered entries")
    p.set_defaults(func=cmd_adapt)

    p = sub.add_parser("tag", help="tag text with a lexicon and contextual rules")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--input", required=True, help="input file ('-' for stdin)")
    p.add_argument("--input-format", choices=("text", "tokens"), default="text")
    p.add_argument("--output", default="-")
    p.add_argument("--format", choices=("slash", "tsv"), default="slash")
    p.add_argument("--suffix-rules")
    p.set_defaults(func=cmd_tag)

    p = sub.add_parser("eval", help="score predicted tags against gold")
    p.add_argument("gold", help="gold token<TAB>tag file")
    p.add_argument("predicted")
    p.add_argument("--predicted-format", choices=("tsv", "slash"), default="tsv")
    p.add_argument("--collapse", action=argparse.BooleanOptionalAction, default=True,
                   help="score NNP/NNPS as NN/NNS (default on)")
    p.add_argument("--baseline-report", help="metric TSV from an earlier eval run")
    p.add_argument("--baseline-accuracy", type=float)
    p.add_argument("--lexicon", help="also report lexicon coverage of the gold tokens")
    p.add_argument("--report-out", help="write metric<TAB>value TSV here")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("stats", help="word frequencies and -ing/-ed ratios of a corpus")
    p.add_argument("corpus")
    p.add_argument("--corpus-format", choices=("text", "tokens"), default="text")
    p.add_argument("--out-dir", default=".", help="where freqs.tsv and ing_ratios.tsv go")
    p.add_argument("--theta", type=float, default=adapter.AdaptConfig.theta)
    p.add_argument("--min-ing-count", type=int, default=adapter.AdaptConfig.min_ing_count)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("train", help="learn contextual rules from gold data")
    p.add_argument("--gold", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--templates", default=",".join(t.value for t in tbl.ALL_TEMPLATES))
    p.add_argument("--min-gain", type=int, default=2)
    p.add_argument("--max-rules", type=int)
    p.add_argument("--suffix-rules")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, UsageError, lexicon.LexiconError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
