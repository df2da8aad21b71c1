"""Scoring and cross-validation.

The headline metric averages the F1 of FAVOR and AGAINST only; the three-label
variant is the macro F1 over all three classes. Cross-validation pools the
held-out (gold, predicted) pairs of all folds into one confusion matrix and
scores once, so the report is well defined even when a fold lacks a label.
"""

import random
from dataclasses import dataclass
from typing import Mapping

from .corpus import CANONICAL_LABELS, Dataset, Stance
from .features import (
    FeatureConfig,
    FeatureSpace,
    SentimentLexicon,
    fit_feature_space,
    vectorize,
)
from .maxent import MaxEntModel, TrainConfig, predict, train
from .textprep import Stemmer, preprocess


@dataclass(frozen=True)
class EvalReport:
    """Confusion counts (rows gold, columns predicted, canonical order) and
    the derived per-label and averaged scores."""

    confusion: tuple[tuple[int, int, int], ...]
    precision: Mapping[Stance, float]
    recall: Mapping[Stance, float]
    f1: Mapping[Stance, float]
    semeval_f1: float
    macro_f1_three: float
    n_scored: int


def _safe_div(num: float, den: float) -> float:
    # 0/0 denominators score 0 by convention (absent-label behavior).
    return num / den if den else 0.0


def score(gold: list[Stance], pred: list[Stance]) -> EvalReport:
    """Score predictions against gold labels of equal, non-zero length."""
    if len(gold) != len(pred):
        raise ValueError(
            f"gold and prediction lengths differ: {len(gold)} vs {len(pred)}"
        )
    if not gold:
        raise ValueError("cannot score empty label lists")
    counts = [[0, 0, 0] for _ in range(3)]
    for g, p in zip(gold, pred):
        counts[CANONICAL_LABELS.index(g)][CANONICAL_LABELS.index(p)] += 1

    precision: dict[Stance, float] = {}
    recall: dict[Stance, float] = {}
    f1: dict[Stance, float] = {}
    for i, label in enumerate(CANONICAL_LABELS):
        tp = counts[i][i]
        fp = sum(counts[r][i] for r in range(3)) - tp
        fn = sum(counts[i]) - tp
        p = _safe_div(tp, tp + fp)
        r = _safe_div(tp, tp + fn)
        precision[label] = p
        recall[label] = r
        f1[label] = _safe_div(2 * p * r, p + r)

    semeval = (f1[Stance.FAVOR] + f1[Stance.AGAINST]) / 2
    macro3 = sum(f1.values()) / 3
    return EvalReport(
        confusion=tuple(tuple(row) for row in counts),
        precision=precision,
        recall=recall,
        f1=f1,
        semeval_f1=semeval,
        macro_f1_three=macro3,
        n_scored=len(gold),
    )


def stratified_folds(dataset: Dataset, k: int, seed: int) -> list[list[int]]:
    """Deterministic seeded stratified split into k disjoint index lists.

    Indices of each label are shuffled and dealt round-robin with a cursor
    shared across labels, so per-label counts across folds differ by at most
    one and so do overall fold sizes. Fold contents come back sorted.
    """
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if k > len(dataset):
        raise ValueError(f"k={k} exceeds dataset size {len(dataset)}")
    for i, c in enumerate(dataset.comments):
        if c.gold is None:
            raise ValueError(f"comment {c.id!r} (index {i}) has no gold label")
    rng = random.Random(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    cursor = 0
    for label in CANONICAL_LABELS:
        indices = [i for i, c in enumerate(dataset.comments) if c.gold == label]
        rng.shuffle(indices)
        for i in indices:
            folds[cursor % k].append(i)
            cursor += 1
    for fold in folds:
        fold.sort()
    return folds


@dataclass(frozen=True)
class FoldRun:
    test_indices: tuple[int, ...]
    space: FeatureSpace
    predictions: tuple[Stance, ...]


@dataclass(frozen=True)
class CrossValidationRun:
    report: EvalReport
    folds: tuple[FoldRun, ...]


def cross_validate_detailed(
    dataset: Dataset,
    k: int,
    seed: int,
    feature_config: FeatureConfig,
    train_config: TrainConfig,
    stemmer: Stemmer,
    lexicon: SentimentLexicon | None = None,
) -> CrossValidationRun:
    """Cross-validate and keep per-fold artifacts (spaces, predictions).

    Each fold's feature space is fitted on the other k-1 folds only. Held-out
    pairs are pooled in fold-index order, then scored once.
    """
    tokens = [preprocess(c.text, stemmer) for c in dataset.comments]
    folds = stratified_folds(dataset, k, seed)
    pooled_gold: list[Stance] = []
    pooled_pred: list[Stance] = []
    fold_runs: list[FoldRun] = []
    for fold_idx, test_indices in enumerate(folds):
        held_out = set(test_indices)
        train_indices = [i for i in range(len(dataset)) if i not in held_out]
        train_docs = [tokens[i] for i in train_indices]
        space = fit_feature_space(train_docs, feature_config, lexicon)
        examples = [
            (
                vectorize(tokens[i], space, feature_config, lexicon),
                dataset.comments[i].gold,
            )
            for i in train_indices
        ]
        model = train(examples, train_config)
        predictions = tuple(
            predict(model, vectorize(tokens[i], space, feature_config, lexicon))
            for i in test_indices
        )
        pooled_gold.extend(dataset.comments[i].gold for i in test_indices)
        pooled_pred.extend(predictions)
        fold_runs.append(
            FoldRun(
                test_indices=tuple(test_indices),
                space=space,
                predictions=predictions,
            )
        )
    return CrossValidationRun(
        report=score(pooled_gold, pooled_pred), folds=tuple(fold_runs)
    )


def cross_validate(
    dataset: Dataset,
    k: int,
    seed: int,
    feature_config: FeatureConfig,
    train_config: TrainConfig,
    stemmer: Stemmer,
    lexicon: SentimentLexicon | None = None,
) -> EvalReport:
    """Pooled k-fold cross-validation report (see cross_validate_detailed)."""
    return cross_validate_detailed(
        dataset, k, seed, feature_config, train_config, stemmer, lexicon
    ).report


def format_report_table(topic: str, report: EvalReport) -> str:
    """Two-column report (two-label F1, three-label F1) plus the confusion matrix."""
    label_names = [label.value for label in CANONICAL_LABELS]
    lines = [
        "Topic\tF1 (FAVOR/AGAINST)\tF1 (FAVOR/AGAINST/NONE)",
        f"{topic}\t{report.semeval_f1:.4f}\t{report.macro_f1_three:.4f}",
        "",
        "Confusion matrix (rows: gold, columns: predicted)",
        "\t" + "\t".join(label_names),
    ]
    for name, row in zip(label_names, report.confusion):
        lines.append(name + "\t" + "\t".join(str(c) for c in row))
    return "\n".join(lines)


def report_records(report: EvalReport) -> str:
    """Machine-readable key-value document with full-precision scores."""
    lines = [f"n_scored\t{report.n_scored}"]
    for label in CANONICAL_LABELS:
        lines.append(f"precision_{label.value}\t{report.precision[label]!r}")
        lines.append(f"recall_{label.value}\t{report.recall[label]!r}")
        lines.append(f"f1_{label.value}\t{report.f1[label]!r}")
    lines.append(f"semeval_f1\t{report.semeval_f1!r}")
    lines.append(f"macro_f1_three\t{report.macro_f1_three!r}")
    for g, row in zip(CANONICAL_LABELS, report.confusion):
        for p, count in zip(CANONICAL_LABELS, row):
            lines.append(f"confusion_{g.value}_{p.value}\t{count}")
    return "\n".join(lines)
