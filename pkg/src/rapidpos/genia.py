"""GENIA POS-annotated XML to ``token<TAB>tag`` conversion.

GENIA marks words as ``<w c="NN">IL-2</w>`` inside ``<sentence>``
elements, one ``<article>`` per abstract.  Ambiguous tags such as
``NN|JJ`` keep their first alternative.

    python -m rapidpos.genia GENIAcorpus3.02.pos.xml out.tsv --half second
"""

from __future__ import annotations

import argparse
import sys
import xml.etree.ElementTree as ET
from typing import Iterator

from .lexicon import is_valid_tag
from .tagged import TaggedToken, format_tsv, make_sentence


class GeniaFormatError(ValueError):
    pass


def _tag(raw: str | None, word: str) -> str:
    if not raw:
        raise GeniaFormatError(f"word {word!r} has no POS attribute")
    tag = raw.split("|")[0].strip()
    if not is_valid_tag(tag):
        raise GeniaFormatError(f"word {word!r} has unusable tag {raw!r}")
    return tag


def iter_articles(xml_text: str | bytes) -> Iterator[list[list[TaggedToken]]]:
    """Yield each article as a list of tagged sentences."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise GeniaFormatError(f"not well-formed XML: {exc}") from None
    articles = root.iter("article") if root.tag != "article" else [root]
    for art in articles:
        sentences = []
        for sent in art.iter("sentence"):
            pairs = []
            for w in sent.iter("w"):
                word = "".join(w.itertext()).strip()
                if not word:
                    continue
                if any(ch.isspace() for ch in word):
                    raise GeniaFormatError(f"word {word!r} contains whitespace")
                pairs.append((word, _tag(w.get("c"), word)))
            if pairs:
                sentences.append(make_sentence(pairs, len(sentences)))
        yield sentences


def split_half(articles: list, half: str) -> list:
    """``first`` gets the extra article when the count is odd."""
    mid = (len(articles) + 1) // 2
    if half == "first":
        return articles[:mid]
    if half == "second":
        return articles[mid:]
    if half == "all":
        return articles
    raise ValueError(f"half must be first, second or all, not {half!r}")


def genia_to_tsv(xml_text: str | bytes, half: str = "all") -> str:
    articles = split_half(list(iter_articles(xml_text)), half)
    return format_tsv(s for art in articles for s in art)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="python -m rapidpos.genia", description=__doc__.split("\n\n")[0])
    ap.add_argument("xml", help="GENIA POS XML file")
    ap.add_argument("out", help="output TSV path ('-' for stdout)")
    ap.add_argument("--half", choices=("first", "second", "all"), default="all",
                    help="which half of the articles to keep (default all)")
    args = ap.parse_args(argv)
    try:
        with open(args.xml, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        tsv = genia_to_tsv(data, args.half)
    except GeniaFormatError as exc:
        print(f"error: {args.xml}: {exc}", file=sys.stderr)
        return 1
    if args.out == "-":
        sys.stdout.write(tsv)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(tsv)
    return 0


if __name__ == "__main__":
    sys.exit(main())
