"""Model persistence as canonical JSON.

Canonical means: sorted keys, no insignificant whitespace, floats in
Python's shortest round-trip form, and a trailing newline. Two byte-equal
files are the same model, and loading then saving reproduces the file
byte for byte, which makes models diffable and hashable.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import DataError
from .model import Prototype, PrototypeModel

FORMAT_VERSION = 1


def model_payload(model: PrototypeModel) -> dict:
    payload: dict = {
        "format_version": FORMAT_VERSION,
        "distance": model.distance,
        "scaled": model.scaled,
        "feature_indices": [int(j) for j in model.feature_indices],
        "feature_names": list(model.feature_names),
        "prototypes": [
            {
                "sample_id": int(proto.sample_id),
                "label": int(proto.label),
                "values": [float(v) for v in proto.values],
            }
            # first record is the tie-preferred prototype
            for proto in (model.proto_s, model.proto_o)
        ],
        "metadata": {
            "train_error": int(model.train_error),
            "iterations": int(model.iterations),
            "seed": int(model.seed),
            "n": int(model.n_train),
            "p": int(model.p_total),
            "created_at": model.created_at,
        },
    }
    if model.scaled:
        payload["scaler"] = {
            "min": [float(v) for v in model.scaler_min],
            "max": [float(v) for v in model.scaler_max],
        }
    return payload


def dumps_canonical(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def save_model(model: PrototypeModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_canonical(model_payload(model)))


def model_from_payload(payload: dict) -> PrototypeModel:
    try:
        version = payload["format_version"]
        if version != FORMAT_VERSION:
            raise DataError(f"unsupported model format version {version}")
        protos = [
            Prototype(
                sample_id=int(rec["sample_id"]),
                label=int(rec["label"]),
                values=np.asarray(rec["values"], dtype=np.float64),
            )
            for rec in payload["prototypes"]
        ]
        if len(protos) != 2:
            raise DataError(f"expected 2 prototypes, found {len(protos)}")
        scaler = payload.get("scaler")
        if payload["scaled"] and scaler is None:
            raise DataError("model marked scaled but carries no scaler parameters")
        meta = payload["metadata"]
        return PrototypeModel(
            feature_indices=np.asarray(payload["feature_indices"], dtype=np.intp),
            feature_names=list(payload["feature_names"]),
            proto_s=protos[0],
            proto_o=protos[1],
            train_error=int(meta["train_error"]),
            iterations=int(meta["iterations"]),
            seed=int(meta["seed"]),
            n_train=int(meta["n"]),
            p_total=int(meta["p"]),
            distance=str(payload["distance"]),
            scaler_min=None if scaler is None else np.asarray(scaler["min"]),
            scaler_max=None if scaler is None else np.asarray(scaler["max"]),
            created_at=str(meta["created_at"]),
        )
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed model payload: {exc}") from exc


def load_model(path: str) -> PrototypeModel:
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(payload, dict):
        raise DataError(f"{path}: expected a JSON object")
    return model_from_payload(payload)


def model_bytes(model: PrototypeModel) -> int:
    """Serialized size in bytes, the honest model-size figure."""
    return len(dumps_canonical(model_payload(model)).encode("utf-8"))
