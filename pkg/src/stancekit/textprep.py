"""Deterministic text preprocessing: normalize, tokenize, stem, in that fixed order.

Normalization replaces links to images with the sentinel ``IMGURL``, every other
URL with ``URL``, lowercases the rest, keeps only Unicode letters, and collapses
whitespace. Feature code consumes only the resulting token sequences.
"""

import re

SENTINELS = ("URL", "IMGURL")

# A URL match starts at http://, https:// or www. (any case) and runs to the
# next whitespace. Standalone sentinel tokens already present in the input are
# matched too, so they pass through unchanged and normalize stays idempotent.
_URL_OR_SENTINEL = re.compile(
    r"(?i:https?://|www\.)\S+"
    r"|(?<!\S)(?:IMGURL|URL)(?!\S)"
)

# Extension test ignores any query string or fragment on the matched run.
_IMAGE_SUFFIX = re.compile(r"\.(?:jpg|jpeg|png|gif|bmp)\Z", re.IGNORECASE)


def _sentinel_for(run: str) -> str:
    if run in SENTINELS:
        return run
    path = run.split("?", 1)[0].split("#", 1)[0]
    return "IMGURL" if _IMAGE_SUFFIX.search(path) else "URL"


def _scrub(segment: str) -> str:
    # Lowercase first: some uppercase letters lower() to letter+combining mark,
    # and the mark must then fall to the letters-only filter.
    return "".join(ch if ch.isalpha() else " " for ch in segment.lower())


def normalize(text: str) -> str:
    """Apply the preprocessing rules and return a canonical normalized string.

    In order: image links become ``IMGURL``, remaining URLs become ``URL``,
    everything else is lowercased, non-letter characters become spaces, and
    whitespace runs collapse to single spaces. Idempotent, total.
    """
    parts: list[str] = []
    pos = 0
    for m in _URL_OR_SENTINEL.finditer(text):
        parts.append(_scrub(text[pos : m.start()]))
        parts.append(" " + _sentinel_for(m.group()) + " ")
        pos = m.end()
    parts.append(_scrub(text[pos:]))
    return " ".join("".join(parts).split())


def tokenize(normalized: str) -> list[str]:
    """Split a normalized string into tokens. Tolerates stray whitespace runs."""
    return normalized.split()


class Stemmer:
    """Token-to-stem transformation seam. Implementations must be idempotent
    and must never map a non-empty token to an empty stem."""

    name = "stemmer"

    def stem(self, token: str) -> str:
        raise NotImplementedError


class IdentityStemmer(Stemmer):
    name = "identity"

    def stem(self, token: str) -> str:
        return token


# Toy rule table standing in for a real Czech stemmer: case/derivation
# endings, longest match first, never stripping a stem below four characters.
# Applied to a fixpoint so stemming is idempotent.
_CZ_SUFFIXES = tuple(
    sorted(
        (
            "ová", "ové", "ového", "ých", "ími", "ího", "ímu",
            "ami", "emi", "ách", "ích", "ech", "ům", "ou", "em",
            "a", "e", "i", "o", "u", "y", "á", "é", "í", "ý", "ů", "ě",
        ),
        key=len,
        reverse=True,
    )
)
_MIN_STEM = 4


class CzechSuffixStemmer(Stemmer):
    """Small suffix-strip rule table for Czech-like inflection endings."""

    name = "suffix-cz"

    def stem(self, token: str) -> str:
        while True:
            for suffix in _CZ_SUFFIXES:
                if token.endswith(suffix) and len(token) - len(suffix) >= _MIN_STEM:
                    token = token[: -len(suffix)]
                    break
            else:
                return token


_STEMMERS = {cls.name: cls for cls in (IdentityStemmer, CzechSuffixStemmer)}


def get_stemmer(name: str) -> Stemmer:
    """Look up a stemmer by config name (``identity`` or ``suffix-cz``)."""
    try:
        return _STEMMERS[name]()
    except KeyError:
        raise ValueError(
            f"unknown stemmer {name!r}, available: {sorted(_STEMMERS)}"
        ) from None


def apply_stemmer(tokens: list[str], stemmer: Stemmer) -> list[str]:
    """Stem each token; the sentinels URL and IMGURL pass through unchanged."""
    return [t if t in SENTINELS else stemmer.stem(t) for t in tokens]


def preprocess(text: str, stemmer: Stemmer) -> list[str]:
    """Full pipeline in the fixed order normalize -> tokenize -> stem."""
    return apply_stemmer(tokenize(normalize(text)), stemmer)
