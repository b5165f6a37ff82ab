"""Prototype-pair training: triplet search with recursive feature pruning.

One level works as follows. Every row in turn acts as the pivot of a
triplet: the pivot, its nearest same-class neighbor, and its nearest
opposite-class neighbor, all measured over the currently active feature
set M. Comparing the pivot to its two neighbors feature by feature keeps
only the features on which the pivot sits strictly closer to its own
class than to the other one; features that pull the pivot toward the
wrong class, or that cannot tell the neighbors apart, are pruned. The
neighbor pair restricted to the surviving features is a candidate model,
scored by how many of the n training rows it misclassifies under
nearest-prototype prediction. A candidate is only admissible if it keeps
at least two features. The level's winner is the first pivot (lowest
index) reaching the minimum error.

Levels then recurse: the winner's surviving features become the next
active set, the neighbor index is rebuilt over them (pruning changes the
geometry, so neighborhoods must be recomputed), and the search repeats.
Training stops when a level re-selects exactly the feature set it
started from, when a level yields no admissible candidate (the previous
winner stands), or at a hard cap of min(p, 64) levels.

Candidate evaluation across pivots is embarrassingly parallel. Workers
fill disjoint slices of a shared error array, and the winner is reduced
as argmin over (error, pivot index), so results are identical for any
worker count.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset, Scaler, minmax_apply, minmax_fit, validate_for_training
from .errors import TrainingError
from .model import Prototype, PrototypeModel
from .neighbors import LshParams, NeighborIndex, build_index, resolve_mode
from .prediction import decide_labels

MAX_LEVELS = 64


@dataclass(frozen=True)
class Triplet:
    pivot: int
    same: int
    opposite: int


@dataclass(frozen=True)
class FeatureComparison:
    """Per-feature neighbor gaps for one pivot, aligned to ``features``.

    ``margin[j] = |x_o[j] - x_i[j]| - |x_s[j] - x_i[j]|``: positive means
    feature j places the pivot strictly nearer its own class. ``kept``
    holds the original indices of the strictly positive features.
    """

    features: np.ndarray
    same_dist: np.ndarray
    opp_dist: np.ndarray
    margin: np.ndarray
    kept: np.ndarray


@dataclass(frozen=True)
class Candidate:
    same: int
    opposite: int
    features: np.ndarray
    error: int
    pivot: int


@dataclass
class TrainConfig:
    seed: int = 42
    scale: bool = False
    nn: str | None = None  # "exact", "lsh", or None for size-based choice
    lsh_params: LshParams = field(default_factory=LshParams)
    threads: int | None = None


@dataclass
class LevelRecord:
    level: int
    n_active_features: int
    best_error: int | None
    winning_pivot: int | None
    n_admissible: int
    max_kept: int
    elapsed: float
    scan_savings: float


@dataclass
class TrainStats:
    iterations: int
    levels: list[LevelRecord]
    stop_reason: str
    nn_mode: str


def form_triplet(index: NeighborIndex, pivot: int) -> Triplet:
    """Pivot plus its nearest same-class and opposite-class neighbors."""
    return Triplet(
        pivot=pivot,
        same=index.nearest_same_class(pivot),
        opposite=index.nearest_opposite_class(pivot),
    )


def compare_features(
    x_i: np.ndarray,
    x_s: np.ndarray,
    x_o: np.ndarray,
    features: np.ndarray | list[int],
) -> FeatureComparison:
    """Compare a pivot against its two neighbors over ``features``.

    All three vectors must be aligned to ``features`` (same length and
    order). ``kept`` may come out empty, e.g. when the pivot coincides
    with its opposite-class neighbor.
    """
    feats = np.asarray(features, dtype=np.intp)
    x_i = np.asarray(x_i, dtype=np.float64)
    x_s = np.asarray(x_s, dtype=np.float64)
    x_o = np.asarray(x_o, dtype=np.float64)
    same_dist = np.abs(x_s - x_i)
    opp_dist = np.abs(x_o - x_i)
    margin = opp_dist - same_dist
    kept = feats[margin > 0]
    return FeatureComparison(
        features=feats, same_dist=same_dist, opp_dist=opp_dist, margin=margin, kept=kept
    )


def evaluate_candidate(
    ds: Dataset, same: int, opposite: int, features: np.ndarray | list[int]
) -> int:
    """Misclassification count of the (same, opposite) prototype pair over
    all n training rows, restricted to ``features``."""
    feats = np.asarray(features, dtype=np.intp)
    X = ds.features[:, feats]
    predicted = decide_labels(
        X,
        ds.features[same, feats],
        ds.features[opposite, feats],
        int(ds.labels[same]),
        int(ds.labels[opposite]),
    )
    return int((predicted != ds.labels).sum())


def _evaluate_range(
    ds: Dataset,
    feats: np.ndarray,
    kept_mask: np.ndarray,
    s_arr: np.ndarray,
    o_arr: np.ndarray,
    pivots: np.ndarray,
    errors: np.ndarray,
    cache: dict,
) -> None:
    """Fill ``errors`` for a slice of pivots; duplicates of the same
    (s, o, kept) candidate are looked up instead of re-scored."""
    for i in pivots:
        key = (int(s_arr[i]), int(o_arr[i]), kept_mask[i].tobytes())
        e = cache.get(key)
        if e is None:
            e = evaluate_candidate(ds, key[0], key[1], feats[kept_mask[i]])
            cache[key] = e
        errors[i] = e


def train_level(
    ds: Dataset,
    features: np.ndarray,
    index: NeighborIndex,
    threads: int = 1,
    level: int = 0,
) -> tuple[Candidate | None, LevelRecord]:
    """Run one full pass of pivot evaluation over the active features.

    Returns the winning candidate (minimum error, then lowest pivot
    index) or None when no pivot keeps more than one feature.
    """
    t0 = time.perf_counter()
    feats = np.asarray(features, dtype=np.intp)
    n = ds.n
    s_arr, o_arr, qstats = index.triplet_arrays()

    Xm = ds.features[:, feats]
    kept_mask = np.abs(Xm[o_arr] - Xm) - np.abs(Xm[s_arr] - Xm) > 0
    kept_counts = kept_mask.sum(axis=1)
    admissible = kept_counts > 1
    n_admissible = int(admissible.sum())
    max_kept = int(kept_counts.max()) if n else 0

    errors = np.full(n, np.inf)
    if n_admissible:
        pivots = np.flatnonzero(admissible)
        cache: dict = {}
        workers = max(1, threads)
        if workers == 1 or len(pivots) < 2:
            _evaluate_range(ds, feats, kept_mask, s_arr, o_arr, pivots, errors, cache)
        else:
            chunks = np.array_split(pivots, min(workers * 4, len(pivots)))
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(
                        _evaluate_range,
                        ds, feats, kept_mask, s_arr, o_arr, chunk, errors, cache,
                    )
                    for chunk in chunks
                    if chunk.size
                ]
                for f in futures:
                    f.result()

    winner: Candidate | None = None
    if n_admissible:
        w = int(np.argmin(errors))  # first minimum = lowest pivot index
        winner = Candidate(
            same=int(s_arr[w]),
            opposite=int(o_arr[w]),
            features=np.sort(feats[kept_mask[w]]),
            error=int(errors[w]),
            pivot=w,
        )
    record = LevelRecord(
        level=level,
        n_active_features=int(feats.size),
        best_error=None if winner is None else winner.error,
        winning_pivot=None if winner is None else winner.pivot,
        n_admissible=n_admissible,
        max_kept=max_kept,
        elapsed=time.perf_counter() - t0,
        scan_savings=qstats.scan_savings,
    )
    return winner, record


def _default_threads() -> int:
    return max(1, os.cpu_count() or 1)


def train(ds: Dataset, config: TrainConfig | None = None) -> tuple[PrototypeModel, TrainStats]:
    """Train a prototype-pair model on a binary dataset.

    Raises :class:`TrainingError` when the very first level yields no
    admissible candidate; a barren later level simply stops refinement
    and the previous winner stands.
    """
    config = config or TrainConfig()
    validate_for_training(ds)
    scaler: Scaler | None = None
    work = ds
    if config.scale:
        scaler = minmax_fit(ds)
        work = minmax_apply(scaler, ds)

    mode = resolve_mode(config.nn, work.n)
    threads = config.threads if config.threads is not None else _default_threads()
    cap = min(work.p, MAX_LEVELS)
    active = np.arange(work.p, dtype=np.intp)
    best: Candidate | None = None
    records: list[LevelRecord] = []
    stop_reason = "level cap reached"
    for level in range(cap):
        index = build_index(work, active, mode=mode, seed=config.seed,
                            lsh_params=config.lsh_params)
        winner, record = train_level(work, active, index, threads=threads, level=level)
        records.append(record)
        if winner is None:
            if best is None:
                raise TrainingError(
                    "no pivot kept more than one feature at the first level"
                    f" (largest kept set: {record.max_kept})"
                )
            stop_reason = "no admissible candidate, previous winner stands"
            break
        best = winner
        if np.array_equal(winner.features, active):
            stop_reason = "feature set stable"
            break
        active = winner.features

    assert best is not None
    stats = TrainStats(
        iterations=len(records),
        levels=records,
        stop_reason=stop_reason,
        nn_mode=mode,
    )
    model = _build_model(ds, work, scaler, best, stats, config)
    return model, stats


def _build_model(
    raw: Dataset,
    work: Dataset,
    scaler: Scaler | None,
    best: Candidate,
    stats: TrainStats,
    config: TrainConfig,
) -> PrototypeModel:
    feats = best.features
    return PrototypeModel(
        feature_indices=feats,
        feature_names=[work.feature_names[j] for j in feats],
        proto_s=Prototype(
            sample_id=work.sample_ids[best.same],
            label=int(work.labels[best.same]),
            values=work.features[best.same, feats],
        ),
        proto_o=Prototype(
            sample_id=work.sample_ids[best.opposite],
            label=int(work.labels[best.opposite]),
            values=work.features[best.opposite, feats],
        ),
        train_error=best.error,
        iterations=stats.iterations,
        seed=config.seed,
        n_train=raw.n,
        p_total=raw.p,
        scaler_min=None if scaler is None else scaler.min_[feats],
        scaler_max=None if scaler is None else scaler.max_[feats],
        created_at=_created_at(),
    )


def _created_at() -> str:
    """Creation timestamp; honors SOURCE_DATE_EPOCH for reproducible runs."""
    import datetime

    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    if epoch is not None:
        ts = datetime.datetime.fromtimestamp(int(epoch), tz=datetime.timezone.utc)
    else:
        ts = datetime.datetime.now(tz=datetime.timezone.utc)
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")
