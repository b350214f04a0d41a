"""Minimal command line: CSV in, XP text out."""
from __future__ import annotations

import argparse
import logging
import sys

from .models import TopologyConfig
from .pipeline import EmptyCorpusError, MissingColumnError, ingest
from .tagging import LookupTagger, TaggerUnavailable, spacy_tagger


def _table_tagger(path: str) -> LookupTagger:
    """Load a lookup table: word<TAB>POS<TAB>ENTITY[<TAB>SENTIMENT] per line."""
    table = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.rstrip("\n").split("\t")
            table[fields[0]] = tuple(fields[1:])
    return LookupTagger(table)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="xpingest", description="Convert a CSV news corpus into an XP graph database."
    )
    parser.add_argument("input", help="CSV with columns id,title,body[,label]")
    parser.add_argument("-o", "--out", help="output XP file (default stdout)")
    parser.add_argument("--tagger", default="spacy", help='"spacy" or "table=<path>" (default spacy)')
    parser.add_argument("--lexicon", help="sentiment lexicon file (default: shipped starter lexicon)")
    parser.add_argument("--max-tokens", type=int, default=3, help="tokens kept per category (default 3)")
    parser.add_argument("--keep-case", action="store_true", help="do not lowercase non-entity tokens")
    parser.add_argument("-v", "--verbose", action="store_true", help="log skipped articles")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    try:
        if args.tagger == "spacy":
            tagger = spacy_tagger()
        elif args.tagger.startswith("table="):
            tagger = _table_tagger(args.tagger.removeprefix("table="))
        else:
            print(f'error: unknown tagger {args.tagger!r}; use "spacy" or "table=<path>"', file=sys.stderr)
            return 2
        config = TopologyConfig(
            max_tokens_per_category=args.max_tokens,
            lowercase_labels=not args.keep_case,
            sentiment_lexicon_path=args.lexicon,
        )
        text = ingest(args.input, config, tagger=tagger)
    except (MissingColumnError, EmptyCorpusError, TaggerUnavailable, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
