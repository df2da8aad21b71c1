"""Seeded synthetic corpora for demos and verification.

The real annotated corpora are not redistributable, so end-to-end runs use a
generated stand-in whose stance is fully determined by planted keywords: a
linear model over unigram features can express the labeling rule exactly.
"""

import random

from .corpus import Comment, Dataset, Stance

FAVOR_KEYWORDS = ("podporuji", "souhlasim", "chvalim")
AGAINST_KEYWORDS = ("odmitam", "nesouhlasim", "kritizuji")

# Neutral filler, disjoint from the keyword lists.
_FILLER = (
    "dnes", "vcera", "zitra", "clanek", "komentar", "diskuse", "nazor",
    "otazka", "odpoved", "vlada", "parlament", "mesto", "ulice", "restaurace",
    "hospoda", "kavarna", "zahrada", "okno", "stul", "zidle", "auto", "vlak",
    "autobus", "cesta", "prace", "skola", "kniha", "noviny", "televize",
    "radio", "pocasi", "dest", "slunce", "vitr", "zima", "leto", "jaro",
    "podzim", "rano", "vecer", "noc", "den", "tyden", "mesic", "rok",
    "hodina", "minuta", "chvile", "doba", "misto", "zeme", "svet", "lide",
    "clovek", "soused", "rodina", "dite", "rodic", "pritel", "kolega",
    "pivo", "kava", "caj", "voda", "chleba", "polevka", "obed", "vecere",
    "snidane", "jidlo", "trh", "obchod", "cena", "penize", "koruna", "dan",
    "zakon", "pravidlo", "zmena", "navrh", "reseni", "problem", "situace",
    "udalost", "zprava", "informace", "duvod", "vysledek", "zacatek", "konec",
)


def separable_corpus(
    n_comments: int = 300,
    seed: int = 7,
    topic: str = "Smoking ban in restaurants",
) -> Dataset:
    """Balanced corpus whose stance is decided by one planted keyword.

    FAVOR and AGAINST comments carry exactly one keyword from their list at a
    random position; NONE comments carry none. Filler words are label-neutral.
    """
    rng = random.Random(seed)
    label_cycle = (Stance.FAVOR, Stance.AGAINST, Stance.NONE)
    comments = []
    for i in range(n_comments):
        label = label_cycle[i % 3]
        words = rng.choices(_FILLER, k=rng.randint(5, 10))
        if label is Stance.FAVOR:
            words.insert(rng.randrange(len(words) + 1), rng.choice(FAVOR_KEYWORDS))
        elif label is Stance.AGAINST:
            words.insert(rng.randrange(len(words) + 1), rng.choice(AGAINST_KEYWORDS))
        text = " ".join(words).capitalize() + rng.choice((".", "!", ""))
        comments.append(Comment(id=f"c{i:04d}", topic=topic, text=text, gold=label))
    return Dataset(topic=topic, comments=tuple(comments))


def keyword_oracle(text_tokens: list[str]) -> Stance:
    """The labeling rule a separable corpus is built from, as a predictor."""
    if any(t in FAVOR_KEYWORDS for t in text_tokens):
        return Stance.FAVOR
    if any(t in AGAINST_KEYWORDS for t in text_tokens):
        return Stance.AGAINST
    return Stance.NONE


def counted_corpus(
    favor: int,
    against: int,
    none: int,
    unlabeled: int = 0,
    topic: str = "Smoking ban in restaurants",
) -> Dataset:
    """Corpus with exact per-label counts, for statistics fixtures."""
    comments = []
    blocks = (
        (Stance.FAVOR, favor),
        (Stance.AGAINST, against),
        (Stance.NONE, none),
        (None, unlabeled),
    )
    i = 0
    for label, count in blocks:
        for _ in range(count):
            comments.append(
                Comment(
                    id=f"c{i:05d}",
                    topic=topic,
                    text=f"komentar cislo {i}",
                    gold=label,
                )
            )
            i += 1
    return Dataset(topic=topic, comments=tuple(comments))
