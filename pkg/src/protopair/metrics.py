"""Binary-classification metrics. Label 1 is the positive class."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DataError
from .model import PrototypeModel


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def as_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


def confusion(y: np.ndarray, y_hat: np.ndarray) -> ConfusionMatrix:
    y = np.asarray(y, dtype=np.int64)
    y_hat = np.asarray(y_hat, dtype=np.int64)
    if y.shape != y_hat.shape:
        raise DataError(f"label vectors differ in length: {y.shape} vs {y_hat.shape}")
    return ConfusionMatrix(
        tp=int(((y == 1) & (y_hat == 1)).sum()),
        fp=int(((y == 0) & (y_hat == 1)).sum()),
        tn=int(((y == 0) & (y_hat == 0)).sum()),
        fn=int(((y == 1) & (y_hat == 0)).sum()),
    )


def accuracy(cm: ConfusionMatrix) -> float:
    if cm.total == 0:
        raise DataError("accuracy of an empty prediction set is undefined")
    return (cm.tp + cm.tn) / cm.total


def error_rate(cm: ConfusionMatrix) -> float:
    return (cm.fp + cm.fn) / cm.total


def f_measure(cm: ConfusionMatrix) -> float:
    """F1 with the 0/0 convention: no true positives and no mistakes
    involving the positive class scores 0."""
    if cm.total == 0:
        raise DataError("f-measure of an empty prediction set is undefined")
    denom = 2 * cm.tp + cm.fp + cm.fn
    if denom == 0:
        return 0.0
    return 2 * cm.tp / denom


def sparsity_report(model: PrototypeModel, ds: Dataset) -> tuple[float, float]:
    """(core features / total features, prototypes / training rows)."""
    return model.n_core_features / ds.p, 2 / ds.n
