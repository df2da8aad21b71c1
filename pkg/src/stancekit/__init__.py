"""Stance detection toolkit: corpus handling, preprocessing, features,
a per-topic maximum entropy classifier, and SemEval-style evaluation."""

from .corpus import (
    CANONICAL_LABELS,
    Comment,
    Dataset,
    Stance,
    cohen_kappa_fixed_chance,
    dataset_stats,
    load_dataset,
)
from .evaluation import EvalReport, cross_validate, score, stratified_folds
from .features import (
    FeatureConfig,
    FeatureSpace,
    FeatureVector,
    SentimentLexicon,
    Vocabulary,
    build_vocabulary,
    fit_feature_space,
    vectorize,
)
from .maxent import MaxEntModel, TrainConfig, predict, predict_proba, train
from .textprep import apply_stemmer, get_stemmer, normalize, preprocess, tokenize

__version__ = "0.1.0"

__all__ = [
    "CANONICAL_LABELS",
    "Comment",
    "Dataset",
    "EvalReport",
    "FeatureConfig",
    "FeatureSpace",
    "FeatureVector",
    "MaxEntModel",
    "SentimentLexicon",
    "Stance",
    "TrainConfig",
    "Vocabulary",
    "apply_stemmer",
    "build_vocabulary",
    "cohen_kappa_fixed_chance",
    "cross_validate",
    "dataset_stats",
    "fit_feature_space",
    "get_stemmer",
    "load_dataset",
    "normalize",
    "predict",
    "predict_proba",
    "preprocess",
    "score",
    "stratified_folds",
    "tokenize",
    "train",
    "vectorize",
]
