"""Command-line entry point: ``stance train|predict|crossval|stats``.

Workflows are driven by a per-topic config file in flat ``key = value`` form
(``#`` starts a comment line; unknown keys are rejected; absent optional keys
take their defaults). Human-readable output goes to stdout, diagnostics to
stderr; exit status is 0 iff the command fully succeeded.
"""

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .corpus import (
    Dataset,
    dataset_stats,
    format_stats_table,
    load_dataset,
    stats_records,
)
from .evaluation import cross_validate, format_report_table, report_records
from .features import (
    FeatureConfig,
    Featurizer,
    SentimentLexicon,
    fit_feature_space,
    load_featurizer,
    save_featurizer,
    vectorize,
)
from .maxent import TrainConfig, load_model, predict, predict_proba, save_model, train
from .textprep import get_stemmer, preprocess


@dataclass(frozen=True)
class PipelineConfig:
    topic: str | None = None
    stemmer: str = "identity"
    lexicon_path: str | None = None
    features: FeatureConfig = field(default_factory=FeatureConfig)
    training: TrainConfig = field(default_factory=TrainConfig)
    folds: int = 10
    seed: int = 1


_BOOL_VALUES = {"true": True, "false": False}


def _parse_bool(key: str, value: str) -> bool:
    if value not in _BOOL_VALUES:
        raise ValueError(f"config key {key!r}: expected true or false, got {value!r}")
    return _BOOL_VALUES[value]


def _parse_int(key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ValueError(f"config key {key!r}: expected an integer, got {value!r}") from None


def _parse_float(key: str, value: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ValueError(f"config key {key!r}: expected a number, got {value!r}") from None


_CONFIG_KEYS = (
    "topic",
    "stemmer",
    "lexicon",
    "use_initial_ngrams",
    "max_n",
    "use_length",
    "use_lexicon",
    "vocabulary_size",
    "l2_lambda",
    "max_iterations",
    "gradient_tolerance",
    "folds",
    "seed",
)


def parse_pipeline_config(path: str | Path) -> PipelineConfig:
    """Parse a flat ``key = value`` pipeline config file."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").split("\n"), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition("=")
        if not sep:
            raise ValueError(f"{path}: line {lineno}: expected 'key = value'")
        key = key.strip()
        value = value.strip()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}: line {lineno}: unknown config key {key!r}")
        if key in raw:
            raise ValueError(f"{path}: line {lineno}: duplicate config key {key!r}")
        raw[key] = value

    features = FeatureConfig(
        use_initial_ngrams=_parse_bool(
            "use_initial_ngrams", raw.get("use_initial_ngrams", "true")
        ),
        max_n=_parse_int("max_n", raw.get("max_n", "3")),
        use_length=_parse_bool("use_length", raw.get("use_length", "true")),
        use_lexicon=_parse_bool("use_lexicon", raw.get("use_lexicon", "false")),
        vocabulary_size=_parse_int("vocabulary_size", raw.get("vocabulary_size", "1000")),
    )
    training = TrainConfig(
        l2_lambda=_parse_float("l2_lambda", raw.get("l2_lambda", "0.1")),
        max_iterations=_parse_int("max_iterations", raw.get("max_iterations", "500")),
        gradient_tolerance=_parse_float(
            "gradient_tolerance", raw.get("gradient_tolerance", "1e-6")
        ),
    )
    config = PipelineConfig(
        topic=raw.get("topic"),
        stemmer=raw.get("stemmer", "identity"),
        lexicon_path=raw.get("lexicon"),
        features=features,
        training=training,
        folds=_parse_int("folds", raw.get("folds", "10")),
        seed=_parse_int("seed", raw.get("seed", "1")),
    )
    if config.folds < 2:
        raise ValueError(f"{path}: folds must be >= 2, got {config.folds}")
    if config.features.use_lexicon and config.lexicon_path is None:
        raise ValueError(f"{path}: use_lexicon is true but no lexicon path is set")
    return config


def _load_corpus(path: str, config: PipelineConfig | None = None) -> Dataset:
    dataset = load_dataset(path)
    if not dataset.comments:
        raise ValueError(f"{path}: corpus is empty")
    if config is not None and config.topic is not None and config.topic != dataset.topic:
        raise ValueError(
            f"{path}: corpus topic {dataset.topic!r} does not match "
            f"config topic {config.topic!r}"
        )
    return dataset


def _require_labeled(dataset: Dataset) -> None:
    for c in dataset.comments:
        if c.gold is None:
            raise ValueError(f"comment {c.id!r} has no gold label")


def _load_lexicon(config: PipelineConfig) -> SentimentLexicon:
    if config.lexicon_path is None:
        return SentimentLexicon()
    return SentimentLexicon.load(config.lexicon_path)


def cmd_train(args: argparse.Namespace) -> int:
    config = parse_pipeline_config(args.config)
    dataset = _load_corpus(args.corpus, config)
    _require_labeled(dataset)
    stemmer = get_stemmer(config.stemmer)
    lexicon = _load_lexicon(config)
    tokens = [preprocess(c.text, stemmer) for c in dataset.comments]
    space = fit_feature_space(tokens, config.features, lexicon)
    examples = [
        (vectorize(doc, space, config.features, lexicon), c.gold)
        for doc, c in zip(tokens, dataset.comments)
    ]
    model = train(examples, config.training)
    save_model(args.model, model)
    featurizer = Featurizer(
        stemmer=stemmer, config=config.features, lexicon=lexicon, space=space
    )
    save_featurizer(args.space, featurizer)
    print(f"dimension\t{space.dimension}")
    print(f"iterations\t{model.n_iterations}")
    print(f"final_objective\t{model.final_objective!r}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    featurizer = load_featurizer(args.space)
    model = load_model(args.model)
    if model.dimension != featurizer.space.dimension:
        raise ValueError(
            f"model dimension {model.dimension} does not match feature space "
            f"dimension {featurizer.space.dimension}"
        )
    dataset = _load_corpus(args.corpus)
    rows = ["ID\tPredicted\tP_FAVOR\tP_AGAINST\tP_NONE"]
    for c in dataset.comments:
        vec = featurizer.transform(c.text)
        label = predict(model, vec)
        p_favor, p_against, p_none = predict_proba(model, vec)
        rows.append(
            f"{c.id}\t{label.value}\t{p_favor!r}\t{p_against!r}\t{p_none!r}"
        )
    output = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(output, encoding="utf-8")
    else:
        sys.stdout.write(output)
    return 0


def cmd_crossval(args: argparse.Namespace) -> int:
    config = parse_pipeline_config(args.config)
    dataset = _load_corpus(args.corpus, config)
    _require_labeled(dataset)
    folds = args.folds if args.folds is not None else config.folds
    seed = args.seed if args.seed is not None else config.seed
    report = cross_validate(
        dataset,
        k=folds,
        seed=seed,
        feature_config=config.features,
        train_config=config.training,
        stemmer=get_stemmer(config.stemmer),
        lexicon=_load_lexicon(config),
    )
    if args.format == "kv":
        print(report_records(report))
    else:
        print(format_report_table(dataset.topic, report))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    dataset = _load_corpus(args.corpus)
    stats = dataset_stats(dataset)
    if args.format == "kv":
        print(stats_records(stats))
    else:
        print(format_stats_table(dataset.topic, stats))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stance",
        description="Stance detection toolkit: train, predict, cross-validate, stats.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fit a model and feature space on a labeled corpus")
    p_train.add_argument("--corpus", required=True, help="corpus TSV path")
    p_train.add_argument("--config", required=True, help="pipeline config path")
    p_train.add_argument("--model", required=True, help="model output path")
    p_train.add_argument(
        "--space", help="feature space output path (default: <model>.space)"
    )
    p_train.set_defaults(func=cmd_train)

    p_predict = sub.add_parser("predict", help="predict stances for a corpus")
    p_predict.add_argument("--model", required=True, help="model file from train")
    p_predict.add_argument(
        "--space", help="feature space file from train (default: <model>.space)"
    )
    p_predict.add_argument("--corpus", required=True, help="corpus TSV path")
    p_predict.add_argument("--out", help="write predictions here instead of stdout")
    p_predict.set_defaults(func=cmd_predict)

    p_cv = sub.add_parser("crossval", help="stratified k-fold cross-validation report")
    p_cv.add_argument("--corpus", required=True, help="fully labeled corpus TSV path")
    p_cv.add_argument("--config", required=True, help="pipeline config path")
    p_cv.add_argument("--folds", type=int, help="override the configured fold count")
    p_cv.add_argument("--seed", type=int, help="override the configured shuffle seed")
    p_cv.add_argument("--format", choices=("table", "kv"), default="table")
    p_cv.set_defaults(func=cmd_crossval)

    p_stats = sub.add_parser("stats", help="per-label corpus statistics")
    p_stats.add_argument("--corpus", required=True, help="corpus TSV path")
    p_stats.add_argument("--format", choices=("table", "kv"), default="table")
    p_stats.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if getattr(args, "space", None) is None and hasattr(args, "model"):
        args.space = args.model + ".space"
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"stance: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
