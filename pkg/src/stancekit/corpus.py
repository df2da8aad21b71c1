"""Stance-annotated comment datasets: loading, validation, statistics, agreement.

Corpus files are 4-column TSV (UTF-8, ``\\n`` line endings) with the header
``ID<TAB>Target<TAB>Text<TAB>Stance``. The Stance column holds one of the three
stance labels or ``?`` for an unlabeled comment. One file holds exactly one
target (topic); models are trained per topic.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path


class Stance(Enum):
    FAVOR = "FAVOR"
    AGAINST = "AGAINST"
    NONE = "NONE"


#: Canonical label order, used for every vector layout and tie-break.
CANONICAL_LABELS: tuple[Stance, Stance, Stance] = (
    Stance.FAVOR,
    Stance.AGAINST,
    Stance.NONE,
)

UNLABELED_MARK = "?"

_HEADER = ("ID", "Target", "Text", "Stance")


@dataclass(frozen=True)
class Comment:
    """One annotated text unit: id, topic (target name), raw text, optional gold label."""

    id: str
    topic: str
    text: str
    gold: Stance | None = None


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of comments sharing one topic. Immutable after load."""

    topic: str
    comments: tuple[Comment, ...]

    def __len__(self) -> int:
        return len(self.comments)


@dataclass(frozen=True)
class DatasetStats:
    favor: int
    against: int
    none: int
    unlabeled: int
    total: int


def load_dataset(path: str | Path, allow_empty: bool = False) -> Dataset:
    """Load a corpus TSV into a Dataset, preserving file order.

    Rejects malformed rows (naming the line number), unknown stance values,
    mixed Target values, duplicate or empty IDs, and empty Text unless
    ``allow_empty`` is set. ``?`` in the Stance column maps to no gold label.
    """
    raw = Path(path).read_text(encoding="utf-8")
    lines = raw.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError(f"{path}: empty file, expected header {_HEADER}")
    header = tuple(lines[0].split("\t"))
    if header != _HEADER:
        raise ValueError(f"{path}: bad header {header!r}, expected {_HEADER}")

    comments: list[Comment] = []
    seen_ids: set[str] = set()
    topic: str | None = None
    for lineno, line in enumerate(lines[1:], start=2):
        cols = line.split("\t")
        if len(cols) != 4:
            raise ValueError(
                f"{path}: line {lineno}: expected 4 tab-separated columns, got {len(cols)}"
            )
        cid, target, text, stance_str = cols
        if not cid:
            raise ValueError(f"{path}: line {lineno}: empty ID")
        if cid in seen_ids:
            raise ValueError(f"{path}: line {lineno}: duplicate ID {cid!r}")
        seen_ids.add(cid)
        if topic is None:
            topic = target
        elif target != topic:
            raise ValueError(
                f"{path}: line {lineno}: mixed Target values "
                f"({topic!r} vs {target!r}); one topic per file"
            )
        if not text and not allow_empty:
            raise ValueError(f"{path}: line {lineno}: empty Text (allow_empty not set)")
        if stance_str == UNLABELED_MARK:
            gold = None
        else:
            try:
                gold = Stance(stance_str)
            except ValueError:
                raise ValueError(
                    f"{path}: line {lineno}: unknown stance value {stance_str!r}"
                ) from None
        comments.append(Comment(id=cid, topic=target, text=text, gold=gold))

    return Dataset(topic=topic if topic is not None else "", comments=tuple(comments))


def write_dataset(path: str | Path, dataset: Dataset) -> None:
    """Write a Dataset back to the corpus TSV format (inverse of load_dataset)."""
    rows = ["\t".join(_HEADER)]
    for c in dataset.comments:
        stance_str = c.gold.value if c.gold is not None else UNLABELED_MARK
        rows.append(f"{c.id}\t{c.topic}\t{c.text}\t{stance_str}")
    Path(path).write_text("\n".join(rows) + "\n", encoding="utf-8")


def dataset_stats(dataset: Dataset) -> DatasetStats:
    """Per-label counts plus unlabeled count and total. Counts always sum to total."""
    counts = {label: 0 for label in CANONICAL_LABELS}
    unlabeled = 0
    for c in dataset.comments:
        if c.gold is None:
            unlabeled += 1
        else:
            counts[c.gold] += 1
    return DatasetStats(
        favor=counts[Stance.FAVOR],
        against=counts[Stance.AGAINST],
        none=counts[Stance.NONE],
        unlabeled=unlabeled,
        total=len(dataset.comments),
    )


def format_stats_table(topic: str, stats: DatasetStats) -> str:
    """Plain-text stats table: one header line, one row per topic."""
    header = "TOPIC\tFAVOR\tAGAINST\tNONE\tUNLABELED\tTOTAL"
    row = (
        f"{topic}\t{stats.favor}\t{stats.against}\t{stats.none}"
        f"\t{stats.unlabeled}\t{stats.total}"
    )
    return header + "\n" + row


def stats_records(stats: DatasetStats) -> str:
    """Machine-readable key-value stats document, one record per label."""
    lines = [
        f"FAVOR\t{stats.favor}",
        f"AGAINST\t{stats.against}",
        f"NONE\t{stats.none}",
        f"UNLABELED\t{stats.unlabeled}",
        f"TOTAL\t{stats.total}",
    ]
    return "\n".join(lines)


def cohen_kappa_fixed_chance(
    agree_count: int, total_count: int, num_categories: int
) -> float:
    """Cohen's kappa with chance agreement fixed at 1/num_categories.

    kappa = (p_o - p_e) / (1 - p_e) with p_o = agree_count/total_count and
    p_e = 1/num_categories. This is the fixed-chance variant (uniform chance
    over categories), not the marginal-based estimate.
    """
    if total_count <= 0:
        raise ValueError(f"total_count must be positive, got {total_count}")
    if agree_count < 0:
        raise ValueError(f"agree_count must be non-negative, got {agree_count}")
    if agree_count > total_count:
        raise ValueError(
            f"agree_count {agree_count} exceeds total_count {total_count}"
        )
    if num_categories < 2:
        raise ValueError(f"num_categories must be >= 2, got {num_categories}")
    p_o = agree_count / total_count
    p_e = 1.0 / num_categories
    return (p_o - p_e) / (1.0 - p_e)
