"""Decision tables: construction, CSV ingestion, and train/test splitting.

A decision table holds continuous condition attributes (gas concentrations
in ppm for DGA data) plus one binary decision column: 0 = healthy,
1 = faulty.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

LABEL_COLUMN = "label"

# Bounded re-shuffle attempts before split() gives up on producing
# two-class train and test partitions.
MAX_SPLIT_RETRIES = 100


@dataclass(frozen=True)
class DecisionTable:
    """Immutable table of objects x condition attributes plus a binary decision.

    ``values`` is (n_objects, n_attributes) float64, ``decisions`` is
    (n_objects,) int64 with entries in {0, 1}. ``n_dropped`` counts rows
    discarded during CSV ingestion; it is metadata, not table content.
    """

    attribute_names: tuple[str, ...]
    values: np.ndarray
    decisions: np.ndarray
    n_dropped: int = field(default=0, compare=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        decisions = np.asarray(self.decisions, dtype=np.int64)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D array of shape (n_objects, n_attributes)")
        if values.shape[1] != len(self.attribute_names):
            raise ValueError(
                f"row width {values.shape[1]} does not match "
                f"{len(self.attribute_names)} attribute names"
            )
        if decisions.shape != (values.shape[0],):
            raise ValueError("decisions must have one entry per object")
        if not np.all(np.isfinite(values)):
            raise ValueError("condition values must be finite")
        if decisions.size and not np.isin(decisions, (0, 1)).all():
            raise ValueError("decisions must be 0 or 1")
        values = values.copy()
        decisions = decisions.copy()
        values.setflags(write=False)
        decisions.setflags(write=False)
        object.__setattr__(self, "attribute_names", tuple(self.attribute_names))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "decisions", decisions)

    @property
    def n_objects(self) -> int:
        return self.values.shape[0]

    @property
    def n_attributes(self) -> int:
        return self.values.shape[1]

    def class_counts(self) -> tuple[int, int]:
        """Return (count of decision 0, count of decision 1)."""
        ones = int(self.decisions.sum())
        return self.n_objects - ones, ones

    def __eq__(self, other):
        if not isinstance(other, DecisionTable):
            return NotImplemented
        return (
            self.attribute_names == other.attribute_names
            and np.array_equal(self.values, other.values)
            and np.array_equal(self.decisions, other.decisions)
        )


@dataclass(frozen=True)
class SplitSpec:
    """Shuffled train/test split: fraction of objects for training plus seed."""

    train_fraction: float
    seed: int

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError("train_fraction must lie in (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


def load_csv(path: str | Path) -> DecisionTable:
    """Load a decision table from CSV.

    The header names the condition attributes; the final column must be
    named ``label`` and hold 0/1 decisions. Rows with any empty or
    non-numeric condition cell are dropped and counted in ``n_dropped``.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: file is empty") from None
        if len(header) < 2 or header[-1].strip() != LABEL_COLUMN:
            raise ValueError(f"{path}: last column must be named {LABEL_COLUMN!r}")
        names = tuple(name.strip() for name in header[:-1])

        rows: list[list[float]] = []
        labels: list[int] = []
        dropped = 0
        for lineno, cells in enumerate(reader, start=2):
            if not cells:
                continue
            if len(cells) != len(header):
                raise ValueError(f"{path}:{lineno}: expected {len(header)} cells, got {len(cells)}")
            try:
                parsed = [float(cell) for cell in cells[:-1]]
            except ValueError:
                dropped += 1
                continue
            if not all(np.isfinite(parsed)):
                dropped += 1
                continue
            label_cell = cells[-1].strip()
            if label_cell not in ("0", "1"):
                try:
                    label_value = float(label_cell)
                except ValueError:
                    raise ValueError(f"{path}:{lineno}: label {label_cell!r} is not 0 or 1") from None
                if label_value not in (0.0, 1.0):
                    raise ValueError(f"{path}:{lineno}: label {label_cell!r} is not 0 or 1")
                label_cell = str(int(label_value))
            rows.append(parsed)
            labels.append(int(label_cell))

    if not rows:
        raise ValueError(f"{path}: no usable data rows")
    return DecisionTable(
        attribute_names=names,
        values=np.array(rows, dtype=np.float64),
        decisions=np.array(labels, dtype=np.int64),
        n_dropped=dropped,
    )


def write_csv(table: DecisionTable, path: str | Path) -> None:
    """Write a decision table as CSV; values round-trip at full precision."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(table.attribute_names) + [LABEL_COLUMN])
        for row, decision in zip(table.values, table.decisions):
            writer.writerow([repr(float(v)) for v in row] + [int(decision)])


def split(table: DecisionTable, spec: SplitSpec) -> tuple[DecisionTable, DecisionTable]:
    """Shuffle and split a table into (train, test), deterministically per seed.

    Train size is round(train_fraction * n). Re-shuffles up to
    MAX_SPLIT_RETRIES times if either side would end up single-class.
    """
    counts = table.class_counts()
    if min(counts) < 2:
        raise ValueError("split requires at least 2 objects of each decision class")
    n = table.n_objects
    n_train = int(round(spec.train_fraction * n))
    if n_train < 1 or n_train > n - 1:
        raise ValueError(f"train_fraction {spec.train_fraction} leaves an empty partition")

    rng = np.random.default_rng(spec.seed)
    for _ in range(MAX_SPLIT_RETRIES):
        order = rng.permutation(n)
        train_idx, test_idx = order[:n_train], order[n_train:]
        train_dec = table.decisions[train_idx]
        test_dec = table.decisions[test_idx]
        if 0 < train_dec.sum() < len(train_idx) and 0 < test_dec.sum() < len(test_idx):
            train = DecisionTable(table.attribute_names, table.values[train_idx], train_dec)
            test = DecisionTable(table.attribute_names, table.values[test_idx], test_dec)
            return train, test
    raise ValueError(f"could not produce a two-class split in {MAX_SPLIT_RETRIES} attempts")


def clip_outliers(
    table: DecisionTable, lower_pct: float = 0.5, upper_pct: float = 99.5
) -> DecisionTable:
    """Clip each attribute to its [lower_pct, upper_pct] percentile range.

    Optional preprocessing step; reversible in the sense that no rows are
    removed, only extreme values winsorized.
    """
    lo = np.percentile(table.values, lower_pct, axis=0)
    hi = np.percentile(table.values, upper_pct, axis=0)
    return DecisionTable(
        attribute_names=table.attribute_names,
        values=np.clip(table.values, lo, hi),
        decisions=table.decisions,
        n_dropped=table.n_dropped,
    )
