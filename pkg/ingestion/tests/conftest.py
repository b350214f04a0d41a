from __future__ import annotations

import pytest

from xpingest.tagging import LookupTagger

# Tagging table that reproduces the canonical sample article: entities for
# the person/organization/location, a lexicon-negative verb, and two nouns.
GOLDEN_TABLE = {
    "Andres": ("NOUN", "PERSON"),
    "congress": ("NOUN", "ORGANIZATION"),
    "Mexico": ("NOUN", "LOCATION"),
    "infected": ("VERB", "NONE", "NEGATIVE"),
    "said": ("VERB", "NONE"),
    "corona": ("NOUN", "NONE"),
    "president": ("NOUN", "NONE"),
}

GOLDEN_CSV = """id,title,body
a1,virus update,"Andres of the congress said Mexico is infected as corona worries the president"
"""

TABLE1_TEXT = """XP # 1
v 1 "News"
v 2 "in-line"
v 3 "Person"
v 4 "Organization"
v 5 "Location"
v 6 "Verb"
v 7 "Noun"
v 8 "Andres"
v 9 "congress"
v 10 "Mexico"
v 11 "infected"
v 12 "corona"
v 13 "president"
e 1 2 "has"
e 2 3 "has"
e 2 4 "has"
e 2 5 "has"
e 2 6 "has"
e 2 7 "has"
e 3 8 "has"
e 4 9 "has"
e 5 10 "has"
e 6 11 "has"
e 7 12 "has"
e 7 13 "has"
"""


@pytest.fixture
def golden_tagger() -> LookupTagger:
    return LookupTagger(GOLDEN_TABLE)


@pytest.fixture
def golden_csv(tmp_path):
    path = tmp_path / "corpus.csv"
    path.write_text(GOLDEN_CSV, encoding="utf-8")
    return path
