"""Regularized maximum entropy (multinomial logistic) classifier.

Training minimizes J(W) = -sum_i log p(y_i|x_i; W) + (lambda/2) ||W_non-bias||^2
by full-batch gradient descent with Armijo backtracking, starting from W = 0.
Everything is deterministic: same examples and config give bitwise-identical
weights on every run.
"""

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import CANONICAL_LABELS, Stance
from .features import FeatureVector

_ARMIJO_C1 = 1e-4
_BACKTRACK_SHRINK = 0.5
_MAX_BACKTRACKS = 60


@dataclass(frozen=True)
class TrainConfig:
    l2_lambda: float = 0.1
    max_iterations: int = 500
    gradient_tolerance: float = 1e-6

    def __post_init__(self) -> None:
        if self.l2_lambda < 0:
            raise ValueError(f"l2_lambda must be >= 0, got {self.l2_lambda}")
        if self.max_iterations < 0:
            raise ValueError(
                f"max_iterations must be >= 0, got {self.max_iterations}"
            )


@dataclass(eq=False)
class MaxEntModel:
    """Per-topic weight matrix, 3 labels x (dimension + 1); last column is bias.

    The trailing fields are training diagnostics; they are not serialized.
    """

    weights: np.ndarray
    dimension: int
    l2_lambda: float
    n_iterations: int = 0
    final_objective: float | None = None
    final_grad_inf_norm: float | None = None
    objective_trace: tuple[float, ...] = field(default=(), repr=False)


def _augmented(x: FeatureVector) -> np.ndarray:
    dense = np.zeros(x.dimension + 1)
    for i, v in x.entries.items():
        dense[i] = v
    dense[-1] = 1.0
    return dense


def _design(
    examples: list[tuple[FeatureVector, Stance]],
) -> tuple[np.ndarray, np.ndarray]:
    if not examples:
        raise ValueError("cannot train on an empty example list")
    dim = examples[0][0].dimension
    for vec, _ in examples:
        if vec.dimension != dim:
            raise ValueError(
                f"example dimension mismatch: expected {dim}, got {vec.dimension}"
            )
    xs = np.stack([_augmented(vec) for vec, _ in examples])
    ys = np.array([CANONICAL_LABELS.index(label) for _, label in examples])
    return xs, ys


def _log_softmax(scores: np.ndarray) -> np.ndarray:
    # Max-score subtraction keeps exp() from overflowing.
    shifted = scores - scores.max(axis=-1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=-1, keepdims=True))


def _objective(weights: np.ndarray, xs: np.ndarray, ys: np.ndarray, lam: float) -> float:
    log_p = _log_softmax(xs @ weights.T)
    nll = -log_p[np.arange(len(ys)), ys].sum()
    penalty = 0.5 * lam * float((weights[:, :-1] ** 2).sum())
    return float(nll + penalty)


def _objective_and_gradient(
    weights: np.ndarray, xs: np.ndarray, ys: np.ndarray, lam: float
) -> tuple[float, np.ndarray]:
    log_p = _log_softmax(xs @ weights.T)
    nll = -log_p[np.arange(len(ys)), ys].sum()
    penalty = 0.5 * lam * float((weights[:, :-1] ** 2).sum())
    residual = np.exp(log_p)
    residual[np.arange(len(ys)), ys] -= 1.0
    grad = residual.T @ xs
    grad[:, :-1] += lam * weights[:, :-1]
    return float(nll + penalty), grad


def objective_and_gradient(
    weights: np.ndarray,
    examples: list[tuple[FeatureVector, Stance]],
    l2_lambda: float,
) -> tuple[float, np.ndarray]:
    """Objective value and analytic gradient at the given weights.

    ``weights`` has shape (3, dimension + 1), bias in the last column and
    excluded from the L2 penalty. Rows follow the canonical label order.
    """
    xs, ys = _design(examples)
    if weights.shape != (3, xs.shape[1]):
        raise ValueError(
            f"weights shape {weights.shape} does not match (3, {xs.shape[1]})"
        )
    return _objective_and_gradient(weights, xs, ys, l2_lambda)


def train(
    examples: list[tuple[FeatureVector, Stance]],
    config: TrainConfig = TrainConfig(),
) -> MaxEntModel:
    """Fit weights by batch gradient descent with backtracking line search.

    Starts from W = 0 and stops when the gradient infinity norm drops below
    the tolerance or after max_iterations updates, whichever comes first.
    """
    xs, ys = _design(examples)
    dim = xs.shape[1] - 1
    lam = config.l2_lambda

    weights = np.zeros((3, dim + 1))
    objective, grad = _objective_and_gradient(weights, xs, ys, lam)
    trace = [objective]
    step = 1.0
    n_iterations = 0
    for _ in range(config.max_iterations):
        grad_norm = float(np.abs(grad).max())
        if grad_norm < config.gradient_tolerance:
            break
        grad_sq = float((grad**2).sum())
        accepted = None
        for _ in range(_MAX_BACKTRACKS):
            candidate = weights - step * grad
            value = _objective(candidate, xs, ys, lam)
            if value <= objective - _ARMIJO_C1 * step * grad_sq:
                accepted = candidate
                break
            step *= _BACKTRACK_SHRINK
        if accepted is None:
            break  # step size hit the numerical floor; no further progress
        weights = accepted
        objective, grad = _objective_and_gradient(weights, xs, ys, lam)
        trace.append(objective)
        n_iterations += 1
        step *= 2.0  # warm-start the next line search

    return MaxEntModel(
        weights=weights,
        dimension=dim,
        l2_lambda=lam,
        n_iterations=n_iterations,
        final_objective=objective,
        final_grad_inf_norm=float(np.abs(grad).max()),
        objective_trace=tuple(trace),
    )


def _scores(model: MaxEntModel, x: FeatureVector) -> np.ndarray:
    if x.dimension != model.dimension:
        raise ValueError(
            f"vector dimension {x.dimension} does not match model "
            f"dimension {model.dimension}"
        )
    return model.weights @ _augmented(x)


def predict_proba(model: MaxEntModel, x: FeatureVector) -> tuple[float, float, float]:
    """Class probabilities in canonical label order (FAVOR, AGAINST, NONE)."""
    log_p = _log_softmax(_scores(model, x))
    p = np.exp(log_p)
    return float(p[0]), float(p[1]), float(p[2])


def predict(model: MaxEntModel, x: FeatureVector) -> Stance:
    """Argmax label; exact ties resolve to the earliest canonical label."""
    probs = predict_proba(model, x)
    return CANONICAL_LABELS[int(np.argmax(probs))]


MODEL_FORMAT_VERSION = "stance-model v1"


def save_model(path: str | Path, model: MaxEntModel) -> None:
    """Write the versioned flat text model format (full round-trip precision)."""
    lines = [
        MODEL_FORMAT_VERSION,
        f"dimension\t{model.dimension}",
        "labels\t" + "\t".join(label.value for label in CANONICAL_LABELS),
        f"l2_lambda\t{model.l2_lambda!r}",
    ]
    for row, label in enumerate(CANONICAL_LABELS):
        values = "\t".join(repr(float(w)) for w in model.weights[row])
        lines.append(f"{label.value}\t{values}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: str | Path) -> MaxEntModel:
    """Read back a model file written by save_model."""
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != MODEL_FORMAT_VERSION:
        head = lines[0] if lines else ""
        raise ValueError(
            f"{path}: bad model file version {head!r}, expected {MODEL_FORMAT_VERSION!r}"
        )
    if len(lines) != 7:
        raise ValueError(f"{path}: expected 7 lines, got {len(lines)}")
    fields = dict(line.split("\t", 1) for line in lines[1:4])
    dim = int(fields["dimension"])
    expected_labels = "\t".join(label.value for label in CANONICAL_LABELS)
    if fields["labels"] != expected_labels:
        raise ValueError(f"{path}: unexpected label order {fields['labels']!r}")
    lam = float(fields["l2_lambda"])
    rows = []
    for line, label in zip(lines[4:], CANONICAL_LABELS):
        name, _, rest = line.partition("\t")
        if name != label.value:
            raise ValueError(f"{path}: expected weight row for {label.value}, got {name!r}")
        row = [float(v) for v in rest.split("\t")]
        if len(row) != dim + 1:
            raise ValueError(
                f"{path}: weight row for {name} has {len(row)} values, "
                f"expected {dim + 1}"
            )
        rows.append(row)
    weights = np.array(rows)
    if not np.isfinite(weights).all():
        raise ValueError(f"{path}: non-finite weight values")
    if not math.isfinite(lam) or lam < 0:
        raise ValueError(f"{path}: invalid l2_lambda {lam!r}")
    return MaxEntModel(weights=weights, dimension=dim, l2_lambda=lam)
