"""The trained artifact: two prototype rows restricted to core features.

The whole model is two short vectors, their class labels, and the sorted
indices (plus names) of the core features they live on. Prediction needs
nothing else. ``proto_s`` is the tie-preferred prototype: a query exactly
equidistant from both prototypes takes its label.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class Prototype:
    sample_id: int
    label: int
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "values", np.ascontiguousarray(self.values, dtype=np.float64)
        )
        self.values.flags.writeable = False


@dataclass
class PrototypeModel:
    feature_indices: np.ndarray
    feature_names: list[str]
    proto_s: Prototype
    proto_o: Prototype
    train_error: int
    iterations: int
    seed: int
    n_train: int
    p_total: int
    distance: str = "euclidean"
    scaler_min: np.ndarray | None = None
    scaler_max: np.ndarray | None = None
    created_at: str = ""

    def __post_init__(self) -> None:
        self.feature_indices = np.asarray(self.feature_indices, dtype=np.intp)
        k = self.feature_indices.size
        if k < 2:
            raise DataError(f"a model needs at least 2 core features, got {k}")
        if not np.all(np.diff(self.feature_indices) > 0):
            raise DataError("core feature indices must be sorted and unique")
        if len(self.feature_names) != k:
            raise DataError("feature name count does not match core feature count")
        if self.proto_s.label == self.proto_o.label:
            raise DataError("prototypes must carry distinct labels")
        for proto in (self.proto_s, self.proto_o):
            if proto.values.shape != (k,):
                raise DataError("prototype vector length does not match core features")
        if (self.scaler_min is None) != (self.scaler_max is None):
            raise DataError("scaler min/max must be stored together")
        if self.scaler_min is not None:
            self.scaler_min = np.asarray(self.scaler_min, dtype=np.float64)
            self.scaler_max = np.asarray(self.scaler_max, dtype=np.float64)
            if self.scaler_min.shape != (k,) or self.scaler_max.shape != (k,):
                raise DataError("scaler parameters must align with core features")

    @property
    def scaled(self) -> bool:
        return self.scaler_min is not None

    @property
    def n_core_features(self) -> int:
        return int(self.feature_indices.size)
