"""Token sequences to fixed-dimension sparse feature vectors.

Column layout, frozen at fit time on training documents only:
``[TF-IDF block | initial n-gram indicators | length slot | lexicon slots]``.
Feature names unseen at fit time are silently dropped at vectorize time.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping

from .textprep import Stemmer, get_stemmer, preprocess

POSITIVE = "positive"
NEGATIVE = "negative"

LENGTH_FEATURE = "LENGTH"
LEX_POS_FEATURE = "LEX_POS"
LEX_NEG_FEATURE = "LEX_NEG"
LEX_DIFF_FEATURE = "LEX_DIFF"


@dataclass(frozen=True)
class Vocabulary:
    """Top-k training terms with their document frequencies and corpus size."""

    terms: tuple[str, ...]
    doc_freq: tuple[int, ...]
    n_docs: int

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {term: i for i, term in enumerate(self.terms)}

    def position(self, term: str) -> int | None:
        return self._positions.get(term)

    def __len__(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class FeatureConfig:
    """Per-topic feature toggles. The TF-IDF unigram block is always present."""

    use_initial_ngrams: bool = True
    max_n: int = 3
    use_length: bool = True
    use_lexicon: bool = False
    vocabulary_size: int = 1000

    def __post_init__(self) -> None:
        if self.max_n not in (1, 2, 3):
            raise ValueError(f"max_n must be 1, 2 or 3, got {self.max_n}")
        if self.vocabulary_size < 1:
            raise ValueError(
                f"vocabulary_size must be >= 1, got {self.vocabulary_size}"
            )


@dataclass(frozen=True)
class SentimentLexicon:
    """Term to polarity association; terms must already be in the pipeline's
    normalized/stemmed form, they are matched against tokens verbatim."""

    polarity: Mapping[str, str] = field(default_factory=dict)

    @classmethod
    def load(cls, path: str | Path) -> "SentimentLexicon":
        """Load a two-column TSV ``term<TAB>polarity``; duplicates are an error."""
        entries: dict[str, str] = {}
        lines = Path(path).read_text(encoding="utf-8").split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        for lineno, line in enumerate(lines, start=1):
            cols = line.split("\t")
            if len(cols) != 2:
                raise ValueError(
                    f"{path}: line {lineno}: expected 2 tab-separated columns, "
                    f"got {len(cols)}"
                )
            term, polarity = cols
            if polarity not in (POSITIVE, NEGATIVE):
                raise ValueError(
                    f"{path}: line {lineno}: polarity must be "
                    f"{POSITIVE!r} or {NEGATIVE!r}, got {polarity!r}"
                )
            if term in entries:
                raise ValueError(f"{path}: line {lineno}: duplicate term {term!r}")
            entries[term] = polarity
        return cls(polarity=entries)

    def __len__(self) -> int:
        return len(self.polarity)


@dataclass(frozen=True)
class FeatureSpace:
    """Frozen named-feature-to-column mapping plus the vocabulary behind it."""

    index: Mapping[str, int]
    dimension: int
    vocabulary: Vocabulary


@dataclass(frozen=True)
class FeatureVector:
    """Sparse vector in a frozen feature space; no explicit zeros stored."""

    dimension: int
    entries: Mapping[int, float]

    def __post_init__(self) -> None:
        for i, v in self.entries.items():
            if not 0 <= i < self.dimension:
                raise ValueError(f"index {i} out of range for dimension {self.dimension}")
            if v == 0.0:
                raise ValueError(f"explicit zero entry at index {i}")


def build_vocabulary(training_docs: list[list[str]], k: int) -> Vocabulary:
    """Rank terms by total corpus frequency (ties broken lexicographically
    ascending) and keep the top k. Records document frequency and corpus size."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    term_freq: Counter[str] = Counter()
    doc_freq: Counter[str] = Counter()
    for doc in training_docs:
        term_freq.update(doc)
        doc_freq.update(set(doc))
    if not term_freq:
        raise ValueError("cannot build a vocabulary: all training documents are empty")
    ranked = sorted(term_freq, key=lambda t: (-term_freq[t], t))[:k]
    return Vocabulary(
        terms=tuple(ranked),
        doc_freq=tuple(doc_freq[t] for t in ranked),
        n_docs=len(training_docs),
    )


def tfidf_value(term_count_in_doc: int, df: int, n_docs: int) -> float:
    """Raw term count times ln(N/df). A ubiquitous term (df = N) scores 0."""
    if df < 1 or df > n_docs:
        raise ValueError(f"df must satisfy 1 <= df <= N, got df={df}, N={n_docs}")
    if term_count_in_doc < 0:
        raise ValueError(f"term count must be >= 0, got {term_count_in_doc}")
    return term_count_in_doc * math.log(n_docs / df)


def initial_ngrams(tokens: list[str], max_n: int) -> set[str]:
    """Indicator names for the first n tokens, n = 1..max_n, e.g. ``INIT2=a_b``."""
    if not 1 <= max_n <= 3:
        raise ValueError(f"max_n must be 1, 2 or 3, got {max_n}")
    return {
        f"INIT{n}=" + "_".join(tokens[:n])
        for n in range(1, max_n + 1)
        if n <= len(tokens)
    }


def comment_length(tokens: list[str]) -> int:
    """Comment length in words after preprocessing."""
    return len(tokens)


def lexicon_counts(
    tokens: list[str], lexicon: SentimentLexicon
) -> tuple[int, int, int]:
    """(positive hits, negative hits, positive - negative), with multiplicity."""
    pos = 0
    neg = 0
    for t in tokens:
        polarity = lexicon.polarity.get(t)
        if polarity == POSITIVE:
            pos += 1
        elif polarity == NEGATIVE:
            neg += 1
    return pos, neg, pos - neg


def fit_feature_space(
    training_docs: list[list[str]],
    config: FeatureConfig,
    lexicon: SentimentLexicon | None = None,
) -> FeatureSpace:
    """Freeze the column layout on training documents only.

    Blocks appear in the fixed order: TF-IDF vocabulary (rank order), initial
    n-gram names seen in training (sorted), length slot, lexicon slots.
    """
    if config.use_lexicon and lexicon is None:
        raise ValueError("config enables lexicon features but no lexicon was given")
    vocabulary = build_vocabulary(training_docs, config.vocabulary_size)
    names = [f"TFIDF={t}" for t in vocabulary.terms]
    if config.use_initial_ngrams:
        seen: set[str] = set()
        for doc in training_docs:
            seen |= initial_ngrams(doc, config.max_n)
        names.extend(sorted(seen))
    if config.use_length:
        names.append(LENGTH_FEATURE)
    if config.use_lexicon:
        names.extend((LEX_POS_FEATURE, LEX_NEG_FEATURE, LEX_DIFF_FEATURE))
    index = {name: i for i, name in enumerate(names)}
    return FeatureSpace(index=index, dimension=len(names), vocabulary=vocabulary)


def vectorize(
    tokens: list[str],
    space: FeatureSpace,
    config: FeatureConfig,
    lexicon: SentimentLexicon | None = None,
) -> FeatureVector:
    """Sparse feature vector for one document in a frozen space.

    TF-IDF values for vocabulary terms present in the document, 1.0 indicators
    for known initial n-grams, the raw length, and the lexicon count triple.
    Zero values are not stored; unknown feature names are dropped.
    """
    vocab = space.vocabulary
    entries: dict[int, float] = {}
    for term, count in Counter(tokens).items():
        col = vocab.position(term)
        if col is None:
            continue
        value = tfidf_value(count, vocab.doc_freq[col], vocab.n_docs)
        if value != 0.0:
            entries[col] = value
    if config.use_initial_ngrams:
        for name in initial_ngrams(tokens, config.max_n):
            col = space.index.get(name)
            if col is not None:
                entries[col] = 1.0
    if config.use_length:
        col = space.index.get(LENGTH_FEATURE)
        if col is not None and tokens:
            entries[col] = float(comment_length(tokens))
    if config.use_lexicon:
        pos, neg, diff = lexicon_counts(tokens, lexicon or SentimentLexicon())
        for name, value in (
            (LEX_POS_FEATURE, pos),
            (LEX_NEG_FEATURE, neg),
            (LEX_DIFF_FEATURE, diff),
        ):
            col = space.index.get(name)
            if col is not None and value != 0:
                entries[col] = float(value)
    return FeatureVector(dimension=space.dimension, entries=entries)


@dataclass(frozen=True)
class Featurizer:
    """Everything needed to turn raw text into a feature vector at predict
    time: the stemmer, the feature toggles, the lexicon, and the frozen space."""

    stemmer: Stemmer
    config: FeatureConfig
    lexicon: SentimentLexicon
    space: FeatureSpace

    def transform(self, text: str) -> FeatureVector:
        tokens = preprocess(text, self.stemmer)
        return vectorize(tokens, self.space, self.config, self.lexicon)


SPACE_FORMAT_VERSION = "stance-space v1"

_BOOL = {True: "true", False: "false"}


def save_featurizer(path: str | Path, featurizer: Featurizer) -> None:
    """Write the feature-space sidecar file (versioned flat text)."""
    cfg = featurizer.config
    space = featurizer.space
    lines = [
        SPACE_FORMAT_VERSION,
        f"stemmer\t{featurizer.stemmer.name}",
        f"use_initial_ngrams\t{_BOOL[cfg.use_initial_ngrams]}",
        f"max_n\t{cfg.max_n}",
        f"use_length\t{_BOOL[cfg.use_length]}",
        f"use_lexicon\t{_BOOL[cfg.use_lexicon]}",
        f"vocabulary_size\t{cfg.vocabulary_size}",
        f"n_docs\t{space.vocabulary.n_docs}",
        f"dimension\t{space.dimension}",
    ]
    for term, df in zip(space.vocabulary.terms, space.vocabulary.doc_freq):
        lines.append(f"vocab\t{term}\t{df}")
    for name in sorted(
        (n for n in space.index if n.startswith("INIT")), key=space.index.__getitem__
    ):
        lines.append(f"init\t{name}")
    for term, polarity in featurizer.lexicon.polarity.items():
        lines.append(f"lex\t{term}\t{polarity}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_featurizer(path: str | Path) -> Featurizer:
    """Read back a feature-space sidecar file written by save_featurizer."""
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != SPACE_FORMAT_VERSION:
        head = lines[0] if lines else ""
        raise ValueError(
            f"{path}: bad space file version {head!r}, expected {SPACE_FORMAT_VERSION!r}"
        )
    scalars: dict[str, str] = {}
    vocab_rows: list[tuple[str, int]] = []
    init_names: list[str] = []
    lex_entries: dict[str, str] = {}
    for line in lines[1:]:
        key, _, rest = line.partition("\t")
        if key == "vocab":
            term, _, df = rest.partition("\t")
            vocab_rows.append((term, int(df)))
        elif key == "init":
            init_names.append(rest)
        elif key == "lex":
            term, _, polarity = rest.partition("\t")
            lex_entries[term] = polarity
        else:
            scalars[key] = rest
    config = FeatureConfig(
        use_initial_ngrams=scalars["use_initial_ngrams"] == "true",
        max_n=int(scalars["max_n"]),
        use_length=scalars["use_length"] == "true",
        use_lexicon=scalars["use_lexicon"] == "true",
        vocabulary_size=int(scalars["vocabulary_size"]),
    )
    vocabulary = Vocabulary(
        terms=tuple(t for t, _ in vocab_rows),
        doc_freq=tuple(df for _, df in vocab_rows),
        n_docs=int(scalars["n_docs"]),
    )
    names = [f"TFIDF={t}" for t in vocabulary.terms]
    names.extend(init_names)
    if config.use_length:
        names.append(LENGTH_FEATURE)
    if config.use_lexicon:
        names.extend((LEX_POS_FEATURE, LEX_NEG_FEATURE, LEX_DIFF_FEATURE))
    space = FeatureSpace(
        index={n: i for i, n in enumerate(names)},
        dimension=len(names),
        vocabulary=vocabulary,
    )
    if space.dimension != int(scalars["dimension"]):
        raise ValueError(
            f"{path}: dimension mismatch, header says {scalars['dimension']}, "
            f"layout has {space.dimension}"
        )
    return Featurizer(
        stemmer=get_stemmer(scalars["stemmer"]),
        config=config,
        lexicon=SentimentLexicon(polarity=lex_entries),
        space=space,
    )
