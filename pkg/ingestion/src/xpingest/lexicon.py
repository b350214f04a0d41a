"""Sentiment lexicon: one ``word<TAB>polarity`` entry per line.

Only POSITIVE and NEGATIVE entries exist; a verb absent from the lexicon
is neutral and therefore dropped from the graph.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .models import TaggedToken

Polarity = str  # POSITIVE | NEGATIVE


def load_lexicon(path: str | Path) -> dict[str, Polarity]:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def parse_lexicon(text: str) -> dict[str, Polarity]:
    lexicon: dict[str, Polarity] = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        try:
            word, polarity = line.split("\t")
        except ValueError as exc:
            raise ValueError(f"lexicon line {line_no}: expected word<TAB>polarity") from exc
        polarity = polarity.strip().upper()
        if polarity not in ("POSITIVE", "NEGATIVE"):
            raise ValueError(f"lexicon line {line_no}: polarity must be POSITIVE or NEGATIVE")
        lexicon[word.strip().lower()] = polarity
    return lexicon


def starter_lexicon() -> dict[str, Polarity]:
    """The small lexicon shipped with the package."""
    text = resources.files("xpingest").joinpath("data/starter_lexicon.tsv").read_text("utf-8")
    return parse_lexicon(text)


def select_sentiment_verbs(
    tokens: Iterable[TaggedToken], lexicon: Mapping[str, Polarity]
) -> list[TaggedToken]:
    """Keep only verbs the lexicon marks POSITIVE or NEGATIVE."""
    selected = []
    for token in tokens:
        if token.pos != "VERB":
            continue
        polarity = lexicon.get(token.text.lower())
        if polarity is None:
            continue
        selected.append(
            TaggedToken(text=token.text, pos=token.pos, entity=token.entity, sentiment=polarity)
        )
    return selected
