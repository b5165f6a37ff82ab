"""Stratified k-fold benchmark harness.

Each fold trains on the other k-1 folds and is scored on the held-out
rows. A fold whose training fails (e.g. a class collapses to one sample)
is recorded as a failure and the run continues. Timing fields are the
only non-deterministic part of a report for a fixed (seed, config).
"""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, stratified_folds
from .errors import TrainingError
from .metrics import accuracy, confusion, f_measure
from .model_io import model_bytes
from .prediction import predict_batch
from .training import TrainConfig, train

PREDICT_REPEATS = 3


@dataclass
class FoldOutcome:
    fold: int
    n_train: int
    n_test: int
    failure: str | None = None
    accuracy: float | None = None
    f1: float | None = None
    train_error: int | None = None
    n_core_features: int | None = None
    iterations: int | None = None
    feature_ratio: float | None = None
    sample_ratio: float | None = None
    train_seconds: float | None = None
    predict_seconds_per_sample: float | None = None
    model_bytes: int | None = None


@dataclass
class BenchReport:
    k: int
    seed: int
    scaled: bool
    nn_mode: str | None
    n: int
    p: int
    folds: list[FoldOutcome] = field(default_factory=list)

    @property
    def succeeded(self) -> list[FoldOutcome]:
        return [f for f in self.folds if f.failure is None]

    def _agg(self, attr: str) -> tuple[float | None, float | None]:
        values = [getattr(f, attr) for f in self.succeeded]
        if not values:
            return None, None
        mean = float(statistics.fmean(values))
        std = float(statistics.pstdev(values)) if len(values) > 1 else 0.0
        return mean, std

    def as_dict(self) -> dict:
        acc_mean, acc_std = self._agg("accuracy")
        f1_mean, f1_std = self._agg("f1")
        feat_mean, _ = self._agg("feature_ratio")
        samp_mean, _ = self._agg("sample_ratio")
        return {
            "k": self.k,
            "seed": self.seed,
            "scaled": self.scaled,
            "nn_mode": self.nn_mode,
            "n": self.n,
            "p": self.p,
            "folds": [vars(f).copy() for f in self.folds],
            "aggregates": {
                "accuracy_mean": acc_mean,
                "accuracy_std": acc_std,
                "f1_mean": f1_mean,
                "f1_std": f1_std,
                "feature_ratio_mean": feat_mean,
                "sample_ratio_mean": samp_mean,
                "folds_succeeded": len(self.succeeded),
                "folds_failed": len(self.folds) - len(self.succeeded),
            },
        }


def bench_run(
    ds: Dataset, k: int, seed: int, config: TrainConfig | None = None
) -> BenchReport:
    """Run the k-fold benchmark; deterministic apart from timings."""
    config = config or TrainConfig(seed=seed)
    plan = stratified_folds(ds, k, seed)
    report = BenchReport(
        k=k, seed=seed, scaled=config.scale, nn_mode=config.nn, n=ds.n, p=ds.p
    )
    all_idx = np.arange(ds.n)
    for fold_no, held_out in enumerate(plan.folds):
        train_idx = np.setdiff1d(all_idx, held_out)
        train_ds = ds.subset(train_idx)
        test_ds = ds.subset(held_out)
        outcome = FoldOutcome(fold=fold_no, n_train=train_ds.n, n_test=test_ds.n)
        report.folds.append(outcome)
        try:
            t0 = time.perf_counter()
            model, stats = train(train_ds, config)
            outcome.train_seconds = time.perf_counter() - t0
        except TrainingError as exc:
            outcome.failure = str(exc)
            continue
        except ValueError as exc:
            outcome.failure = str(exc)
            continue

        timings = []
        for _ in range(PREDICT_REPEATS):
            t0 = time.perf_counter()
            predicted, _ = predict_batch(model, test_ds)
            timings.append(time.perf_counter() - t0)
        cm = confusion(test_ds.labels, predicted)
        outcome.accuracy = accuracy(cm)
        outcome.f1 = f_measure(cm)
        outcome.train_error = model.train_error
        outcome.n_core_features = model.n_core_features
        outcome.iterations = stats.iterations
        outcome.feature_ratio = model.n_core_features / ds.p
        outcome.sample_ratio = 2 / train_ds.n
        outcome.predict_seconds_per_sample = statistics.median(timings) / test_ds.n
        outcome.model_bytes = model_bytes(model)
    return report


def format_table(report: BenchReport) -> str:
    lines = [
        f"{report.k}-fold benchmark on n={report.n}, p={report.p}"
        f" (seed={report.seed}, scaled={report.scaled})",
        f"{'fold':>4} {'acc':>7} {'f1':>7} {'train_err':>9} {'|M|':>4}"
        f" {'levels':>6} {'train_s':>8} {'us/pred':>8} {'bytes':>6}",
    ]
    for f in report.folds:
        if f.failure is not None:
            lines.append(f"{f.fold:>4} failed: {f.failure}")
            continue
        lines.append(
            f"{f.fold:>4} {f.accuracy:>7.4f} {f.f1:>7.4f} {f.train_error:>9}"
            f" {f.n_core_features:>4} {f.iterations:>6} {f.train_seconds:>8.3f}"
            f" {f.predict_seconds_per_sample * 1e6:>8.1f} {f.model_bytes:>6}"
        )
    agg = report.as_dict()["aggregates"]
    if agg["accuracy_mean"] is not None:
        lines.append(
            f"mean accuracy {agg['accuracy_mean']:.4f} (std {agg['accuracy_std']:.4f}),"
            f" mean f1 {agg['f1_mean']:.4f},"
            f" mean core-feature ratio {agg['feature_ratio_mean']:.4f},"
            f" mean prototype ratio {agg['sample_ratio_mean']:.5f}"
        )
    if agg["folds_failed"]:
        lines.append(f"{agg['folds_failed']} fold(s) failed to train")
    return "\n".join(lines)
