"""Nearest-prototype prediction and human-readable explanations.

A query takes the label of whichever prototype it is nearer to over the
core features; an exact tie goes to the tie-preferred prototype. The
squared-distance comparison used here is the single source of truth for
the decision rule: training evaluates candidates through the same
function, so a stored training error is reproducible exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset, Scaler, scale_matrix
from .errors import DataError, SchemaError
from .model import PrototypeModel


@dataclass(frozen=True)
class Prediction:
    label: int
    d_s: float
    d_o: float


def distance(a: np.ndarray, b: np.ndarray, features: np.ndarray | None = None) -> float:
    """Euclidean distance, optionally restricted to an index set."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DataError(f"vector shapes differ: {a.shape} vs {b.shape}")
    if features is not None:
        idx = np.asarray(features, dtype=np.intp)
        a = a[idx]
        b = b[idx]
    return math.sqrt(float(((a - b) ** 2).sum()))


def squared_distances(
    X: np.ndarray, s_values: np.ndarray, o_values: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Squared distances from every row of ``X`` to the two prototypes.

    ``X`` must already be restricted to the core features.
    """
    ds2 = ((X - s_values) ** 2).sum(axis=1)
    do2 = ((X - o_values) ** 2).sum(axis=1)
    return ds2, do2


def decide_labels(
    X: np.ndarray,
    s_values: np.ndarray,
    o_values: np.ndarray,
    label_s: int,
    label_o: int,
) -> np.ndarray:
    """Vectorized decision rule: ``label_o`` only on a strictly smaller
    distance to the o-side prototype, ``label_s`` otherwise (ties included)."""
    ds2, do2 = squared_distances(X, s_values, o_values)
    return np.where(do2 < ds2, label_o, label_s).astype(np.int64)


def _core_matrix(model: PrototypeModel, X: np.ndarray) -> np.ndarray:
    """Project rows onto the model's core features and apply the stored
    scaling, accepting either full-width or already-projected rows."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X[None, :]
    k = model.n_core_features
    if X.shape[1] == k:
        core = X
    elif X.shape[1] == model.p_total:
        core = X[:, model.feature_indices]
    else:
        raise SchemaError(
            f"row has {X.shape[1]} values; expected {k} core features or"
            f" {model.p_total} full-width features"
        )
    if model.scaled:
        core = scale_matrix(Scaler(model.scaler_min, model.scaler_max), core)
    return core


def predict_one(model: PrototypeModel, x: np.ndarray) -> Prediction:
    core = _core_matrix(model, np.asarray(x, dtype=np.float64))[0]
    d_s = distance(core, model.proto_s.values)
    d_o = distance(core, model.proto_o.values)
    label = model.proto_o.label if d_o < d_s else model.proto_s.label
    return Prediction(label=label, d_s=d_s, d_o=d_o)


def predict_batch(
    model: PrototypeModel,
    data: Dataset | np.ndarray,
    labels: np.ndarray | None = None,
) -> tuple[np.ndarray, int | None]:
    """Predict every row; returns (predicted labels, error count).

    The error count is None when no true labels are available. Passing a
    :class:`Dataset` uses its labels unless ``labels`` overrides them.
    """
    if isinstance(data, Dataset):
        X = data.features
        if labels is None:
            labels = data.labels
    else:
        X = np.asarray(data, dtype=np.float64)
    core = _core_matrix(model, X)
    predicted = decide_labels(
        core,
        model.proto_s.values,
        model.proto_o.values,
        model.proto_s.label,
        model.proto_o.label,
    )
    errors = None
    if labels is not None:
        truth = np.asarray(labels, dtype=np.int64)
        if truth.shape != predicted.shape:
            raise DataError("label vector length does not match row count")
        errors = int((predicted != truth).sum())
    return predicted, errors


def prediction_distances(
    model: PrototypeModel, data: Dataset | np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(predicted labels, d_s, d_o) for every row, for tabular output."""
    X = data.features if isinstance(data, Dataset) else np.asarray(data, dtype=np.float64)
    core = _core_matrix(model, X)
    ds2, do2 = squared_distances(core, model.proto_s.values, model.proto_o.values)
    predicted = np.where(do2 < ds2, model.proto_o.label, model.proto_s.label)
    return predicted.astype(np.int64), np.sqrt(ds2), np.sqrt(do2)


def _fmt(value: float) -> str:
    return f"{value:.4g}"


def explain(model: PrototypeModel, x: np.ndarray | None = None) -> str:
    """Render the model as a short card; with ``x``, also walk through
    the decision for that row (distances and per-feature contributions).
    """
    s, o = model.proto_s, model.proto_o
    lines = [
        f"prototype pair over {model.n_core_features} core feature(s)"
        f" (of {model.p_total} in the training schema)",
        f"  class {s.label}: training sample {s.sample_id}",
        f"  class {o.label}: training sample {o.sample_id}",
        "rule: a row closer to sample"
        f" {s.sample_id} is labeled {s.label}; closer to sample"
        f" {o.sample_id}, {o.label}; an exact tie keeps {s.label}.",
    ]
    if model.scaled:
        lines.append("values below are min-max scaled, as used by the model")
    name_w = max(len("feature"), max(len(n) for n in model.feature_names))
    header = (
        f"  {'feature'.ljust(name_w)}  {f'sample {s.sample_id}':<13} "
        f"{f'sample {o.sample_id}':<13}"
    )
    lines.append(header)
    for j, name in enumerate(model.feature_names):
        lines.append(
            f"  {name.ljust(name_w)}  {_fmt(s.values[j]):<13} {_fmt(o.values[j]):<13}"
        )
    lines.append("full-precision prototype values:")
    lines.append(f"  sample {s.sample_id}: [{', '.join(repr(float(v)) for v in s.values)}]")
    lines.append(f"  sample {o.sample_id}: [{', '.join(repr(float(v)) for v in o.values)}]")
    if x is not None:
        pred = predict_one(model, x)
        core = _core_matrix(model, np.asarray(x, dtype=np.float64))[0]
        lines.append("")
        lines.append(
            f"query: distance {_fmt(pred.d_s)} to prototype of class {s.label},"
            f" {_fmt(pred.d_o)} to prototype of class {o.label}"
        )
        lines.append(f"decision: label {pred.label}")
        lines.append(
            f"  {'feature'.ljust(name_w)}  value         pull"
        )
        for j, name in enumerate(model.feature_names):
            pull = abs(core[j] - o.values[j]) - abs(core[j] - s.values[j])
            if pull == 0:
                note = "neutral"
            else:
                note = f"toward class {s.label if pull > 0 else o.label}"
            lines.append(
                f"  {name.ljust(name_w)}  {_fmt(core[j]):<13} {_fmt(pull):<8} {note}"
            )
    return "\n".join(lines)
