"""Pluggable part-of-speech / named-entity tagging.

The pipeline never hard-wires an NLP backend: anything with a
``tag(text) -> list[TaggedToken]`` method works.  Tests (and the golden
fixtures) use the deterministic LookupTagger; a spacy-backed tagger can be
constructed at runtime when that library and a model are installed.
"""
from __future__ import annotations

import re
from typing import Mapping, Protocol

from .models import TaggedToken

_WORD_RE = re.compile(r"[\w'-]+", re.UNICODE)


class TaggerUnavailable(RuntimeError):
    """The configured tagging backend cannot be constructed."""


class Tagger(Protocol):
    def tag(self, text: str) -> list[TaggedToken]: ...


class LookupTagger:
    """Deterministic tagger driven by a word table.

    ``table`` maps a lowercased word to (pos, entity) or
    (pos, entity, sentiment); unknown words come back OTHER/NONE/NEUTRAL.
    """

    def __init__(self, table: Mapping[str, tuple]) -> None:
        self.table = {word.lower(): tuple(tags) for word, tags in table.items()}

    def tag(self, text: str) -> list[TaggedToken]:
        tokens = []
        for word in _WORD_RE.findall(text):
            tags = self.table.get(word.lower())
            if tags is None:
                tokens.append(TaggedToken(text=word))
                continue
            pos, entity = tags[0], tags[1]
            sentiment = tags[2] if len(tags) > 2 else "NEUTRAL"
            tokens.append(TaggedToken(text=word, pos=pos, entity=entity, sentiment=sentiment))
        return tokens


def spacy_tagger(model: str = "en_core_web_sm") -> Tagger:
    """Build a tagger backed by spacy, if available."""
    try:
        import spacy
    except ImportError as exc:
        raise TaggerUnavailable("spacy is not installed") from exc
    try:
        nlp = spacy.load(model)
    except OSError as exc:
        raise TaggerUnavailable(f"spacy model {model!r} is not installed") from exc

    entity_map = {"PERSON": "PERSON", "ORG": "ORGANIZATION", "GPE": "LOCATION", "LOC": "LOCATION"}

    class _SpacyTagger:
        def tag(self, text: str) -> list[TaggedToken]:
            doc = nlp(text)
            tokens = []
            for tok in doc:
                if not tok.text.strip():
                    continue
                pos = "VERB" if tok.pos_ == "VERB" else "NOUN" if tok.pos_ in ("NOUN", "PROPN") else "OTHER"
                entity = entity_map.get(tok.ent_type_, "NONE")
                tokens.append(TaggedToken(text=tok.text, pos=pos, entity=entity))
            return tokens

    return _SpacyTagger()


def tag_article(text: str, tagger: Tagger) -> list[TaggedToken]:
    """Run the injected tagger over one article's text."""
    if not text.strip():
        return []
    return tagger.tag(text)
