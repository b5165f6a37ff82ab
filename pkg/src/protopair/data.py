"""Tabular binary-classification datasets: loading, scaling, splitting.

A :class:`Dataset` is an immutable bundle of an ``n x p`` float matrix,
0/1 labels, feature names, and stable per-row sample ids. Construction
checks shape and finiteness only; the stricter contract needed for
training (two classes with at least two members each, ``p >= 2``) is
enforced by :func:`load_csv` and again at training entry, because fold
splitting legitimately produces smaller fragments.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import ClassSizeError, DataError, LabelError, ParseError
from .rngs import SPLIT_STREAM, stream_rng


@dataclass
class Dataset:
    features: np.ndarray
    labels: np.ndarray
    feature_names: list[str]
    sample_ids: list[int] = field(default_factory=list)
    label_name: str = "label"
    label_mapping: dict[str, int] | None = None

    def __post_init__(self) -> None:
        self.features = np.ascontiguousarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise DataError("feature matrix must be 2-dimensional")
        n, p = self.features.shape
        if self.labels.shape != (n,):
            raise DataError(f"labels length {self.labels.shape} does not match n={n}")
        if not np.all(np.isfinite(self.features)):
            bad = np.argwhere(~np.isfinite(self.features))[0]
            raise DataError(f"non-finite value at row {bad[0]}, column {bad[1]}")
        if not np.isin(self.labels, (0, 1)).all():
            raise DataError("labels must be 0 or 1")
        if len(self.feature_names) != p:
            raise DataError(f"{len(self.feature_names)} feature names for p={p}")
        if not self.sample_ids:
            self.sample_ids = list(range(n))
        if len(self.sample_ids) != n:
            raise DataError(f"{len(self.sample_ids)} sample ids for n={n}")
        self.features.flags.writeable = False
        self.labels.flags.writeable = False

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def p(self) -> int:
        return self.features.shape[1]

    def class_indices(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def subset(self, indices: np.ndarray | list[int]) -> "Dataset":
        """Row subset preserving feature names and original sample ids."""
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(
            features=self.features[idx],
            labels=self.labels[idx],
            feature_names=list(self.feature_names),
            sample_ids=[self.sample_ids[i] for i in idx],
            label_name=self.label_name,
            label_mapping=self.label_mapping,
        )


def validate_for_training(ds: Dataset) -> None:
    """Raise unless ``ds`` satisfies the full training contract."""
    if ds.p < 2:
        raise DataError(f"need at least 2 features, got p={ds.p}")
    for label in (0, 1):
        count = int((ds.labels == label).sum())
        if count < 2:
            raise ClassSizeError(
                f"class {label} has {count} sample(s); need at least 2 per class"
            )


def _resolve_label_column(header: list[str], label_column: str | int | None) -> int:
    if label_column is None:
        return len(header) - 1
    if isinstance(label_column, int):
        if not 0 <= label_column < len(header):
            raise DataError(f"label column index {label_column} out of range")
        return label_column
    if isinstance(label_column, str) and label_column in header:
        return header.index(label_column)
    # allow a numeric string from the command line
    if isinstance(label_column, str):
        try:
            return _resolve_label_column(header, int(label_column))
        except ValueError:
            pass
    raise DataError(f"label column {label_column!r} not found in header {header}")


def read_matrix_csv(path: str) -> tuple[list[str], np.ndarray]:
    """Read a headed numeric CSV into (header, float matrix).

    Cells that fail to parse raise :class:`ParseError` naming the CSV
    line (header is line 1) and column.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path}: empty file, expected a header row") from None
        header = [h.strip() for h in header]
        rows: list[list[float]] = []
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and row[0].strip() == ""):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"{path}: line {line_no} has {len(row)} cells, header has {len(header)}"
                )
            parsed = []
            for col, cell in enumerate(row):
                text = cell.strip()
                if text == "":
                    raise ParseError(
                        f"{path}: missing value at line {line_no}, column {header[col]!r}"
                    )
                try:
                    parsed.append(float(text))
                except ValueError:
                    raise ParseError(
                        f"{path}: non-numeric value {text!r} at line {line_no},"
                        f" column {header[col]!r}"
                    ) from None
            rows.append(parsed)
    matrix = np.array(rows, dtype=np.float64) if rows else np.empty((0, len(header)))
    return header, matrix


def load_csv(path: str, label_column: str | int | None = None) -> Dataset:
    """Load a labeled CSV into a validated :class:`Dataset`.

    The label column (by name or 0-based index; default last) must hold
    exactly two distinct raw values. They map to 0/1 by lexicographic
    order of their string form, recorded in ``label_mapping``.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise ParseError(f"{path}: empty file, expected a header row") from None
        label_idx = _resolve_label_column(header, label_column)
        feature_cols = [c for c in range(len(header)) if c != label_idx]
        if len(feature_cols) < 2:
            raise DataError(
                f"{path}: need at least 2 feature columns, found {len(feature_cols)}"
            )
        raw_labels: list[str] = []
        rows: list[list[float]] = []
        for line_no, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and row[0].strip() == ""):
                continue
            if len(row) != len(header):
                raise ParseError(
                    f"{path}: line {line_no} has {len(row)} cells, header has {len(header)}"
                )
            parsed = []
            for col in feature_cols:
                text = row[col].strip()
                if text == "":
                    raise ParseError(
                        f"{path}: missing value at line {line_no}, column {header[col]!r}"
                    )
                try:
                    parsed.append(float(text))
                except ValueError:
                    raise ParseError(
                        f"{path}: non-numeric value {text!r} at line {line_no},"
                        f" column {header[col]!r}"
                    ) from None
            raw_labels.append(row[label_idx].strip())
            rows.append(parsed)

    distinct = sorted(set(raw_labels))
    if len(distinct) != 2:
        raise LabelError(
            f"{path}: label column {header[label_idx]!r} has {len(distinct)} distinct"
            f" value(s) {distinct[:5]}, expected exactly 2"
        )
    mapping = {distinct[0]: 0, distinct[1]: 1}
    labels = np.array([mapping[v] for v in raw_labels], dtype=np.int64)
    ds = Dataset(
        features=np.array(rows, dtype=np.float64),
        labels=labels,
        feature_names=[header[c] for c in feature_cols],
        label_name=header[label_idx],
        label_mapping=mapping,
    )
    validate_for_training(ds)
    return ds


def save_csv(ds: Dataset, path: str) -> None:
    """Write a dataset back to CSV; raw label values are restored from
    ``label_mapping`` when present, so load -> save -> load round-trips."""
    inverse = {v: k for k, v in (ds.label_mapping or {}).items()}
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(ds.feature_names + [ds.label_name])
        for i in range(ds.n):
            row = [repr(float(v)) for v in ds.features[i]]
            label = int(ds.labels[i])
            row.append(inverse.get(label, str(label)))
            writer.writerow(row)


@dataclass
class Scaler:
    """Per-feature min/max captured from a fit dataset."""

    min_: np.ndarray
    max_: np.ndarray

    def __post_init__(self) -> None:
        self.min_ = np.asarray(self.min_, dtype=np.float64)
        self.max_ = np.asarray(self.max_, dtype=np.float64)
        if self.min_.shape != self.max_.shape:
            raise DataError("scaler min/max shapes differ")
        if np.any(self.min_ > self.max_):
            raise DataError("scaler has min > max")

    @property
    def constant_mask(self) -> np.ndarray:
        """Features with min == max; these map to 0 under apply."""
        return self.min_ == self.max_


def minmax_fit(ds: Dataset) -> Scaler:
    return Scaler(min_=ds.features.min(axis=0), max_=ds.features.max(axis=0))


def scale_matrix(sc: Scaler, X: np.ndarray) -> np.ndarray:
    span = sc.max_ - sc.min_
    safe = np.where(span > 0, span, 1.0)
    out = (X - sc.min_) / safe
    out[:, sc.constant_mask] = 0.0
    return out


def minmax_apply(sc: Scaler, ds: Dataset) -> Dataset:
    if sc.min_.shape[0] != ds.p:
        raise DataError(f"scaler covers {sc.min_.shape[0]} features, dataset has {ds.p}")
    return Dataset(
        features=scale_matrix(sc, ds.features),
        labels=ds.labels,
        feature_names=list(ds.feature_names),
        sample_ids=list(ds.sample_ids),
        label_name=ds.label_name,
        label_mapping=ds.label_mapping,
    )


@dataclass
class FoldPlan:
    k: int
    folds: list[np.ndarray]
    seed: int

    def __post_init__(self) -> None:
        if self.k != len(self.folds):
            raise DataError("fold count does not match k")


def stratified_folds(ds: Dataset, k: int, seed: int) -> FoldPlan:
    """Partition rows into ``k`` folds with per-fold class counts that
    differ by at most one, by dealing a seeded per-class shuffle
    round-robin. Deterministic for a fixed seed."""
    if k < 2:
        raise DataError(f"need k >= 2 folds, got {k}")
    rng = stream_rng(seed, SPLIT_STREAM)
    buckets: list[list[int]] = [[] for _ in range(k)]
    for label in (0, 1):
        members = ds.class_indices(label)
        if len(members) < k:
            raise ClassSizeError(
                f"class {label} has {len(members)} samples, fewer than k={k}"
            )
        order = rng.permutation(members)
        for pos, sample in enumerate(order):
            buckets[pos % k].append(int(sample))
    folds = [np.array(sorted(b), dtype=np.intp) for b in buckets]
    return FoldPlan(k=k, folds=folds, seed=seed)


def train_test_split(
    ds: Dataset, test_fraction: float, seed: int
) -> tuple[Dataset, Dataset]:
    """Stratified split; deterministic for a fixed seed.

    Per class, round(count * test_fraction) rows go to the test side.
    Errors out if any class would keep fewer than 2 training rows.
    """
    if not 0.0 < test_fraction < 1.0:
        raise DataError(f"test_fraction must be in (0, 1), got {test_fraction}")
    rng = stream_rng(seed, SPLIT_STREAM)
    train_idx: list[int] = []
    test_idx: list[int] = []
    for label in (0, 1):
        members = ds.class_indices(label)
        n_test = int(round(len(members) * test_fraction))
        n_train = len(members) - n_test
        if n_train < 2:
            raise ClassSizeError(
                f"test_fraction {test_fraction} leaves class {label} with"
                f" {n_train} training sample(s); need at least 2"
            )
        order = rng.permutation(members)
        test_idx.extend(int(i) for i in order[:n_test])
        train_idx.extend(int(i) for i in order[n_test:])
    return ds.subset(sorted(train_idx)), ds.subset(sorted(test_idx))
