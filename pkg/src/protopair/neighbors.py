"""Class-constrained nearest-neighbor queries over an active feature set.

Two modes answer the same two questions about a training row: which other
row of the same class is nearest, and which row of the opposite class is
nearest, with distances restricted to the currently active features.

``exact`` scans everything and is the reference behavior: the true
minimizer of Euclidean distance, ties broken toward the lowest row index.
``lsh`` restricts each query to rows sharing at least one hash bucket
with it (random-projection hashing with quantized offsets), falling back
to a full scan whenever the buckets hold no row that satisfies the class
constraint, so a neighbor is always returned. Both modes are deterministic
for a fixed (seed, mode, active feature set).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import DataError, SingletonClassError
from .rngs import LSH_STREAM, stream_rng

# Default memory budget for chunked distance computation (floats).
_CHUNK_BUDGET = 4_000_000


@dataclass
class LshParams:
    """num_tables/hashes_per_table default to 8 and 4; a bucket width of
    None is resolved at build time from the data (4x the median
    nearest-neighbor distance of a seeded subsample), because a fixed
    width cannot suit arbitrary feature scales."""

    num_tables: int = 8
    hashes_per_table: int = 4
    bucket_width: float | None = None

    def __post_init__(self) -> None:
        if self.num_tables < 1 or self.hashes_per_table < 1:
            raise DataError("lsh needs at least one table and one hash per table")
        if self.bucket_width is not None and self.bucket_width <= 0:
            raise DataError("lsh bucket width must be positive")


@dataclass
class QueryStats:
    """Distance-evaluation counters for one batch of queries."""

    queries: int = 0
    examined: int = 0
    fallbacks: int = 0
    exact_equivalent: int = 0

    @property
    def scan_savings(self) -> float:
        """Fraction of candidate distance evaluations avoided relative to
        a full scan; 0.0 for exact mode."""
        if self.exact_equivalent == 0:
            return 0.0
        return 1.0 - self.examined / self.exact_equivalent


class NeighborIndex:
    """Immutable after construction; concurrent queries are safe."""

    def __init__(
        self,
        ds: Dataset,
        active_features: np.ndarray,
        mode: str = "exact",
        seed: int = 42,
        lsh_params: LshParams | None = None,
    ):
        active = np.asarray(sorted(int(j) for j in set(np.asarray(active_features).tolist())))
        if active.size == 0:
            raise DataError("active feature set is empty")
        if active[0] < 0 or active[-1] >= ds.p:
            raise DataError(f"active features out of range for p={ds.p}")
        if mode not in ("exact", "lsh"):
            raise DataError(f"unknown index mode {mode!r}")
        self.mode = mode
        self.seed = seed
        self.active_features = active
        self.labels = ds.labels
        self._X = np.ascontiguousarray(ds.features[:, active])
        self.lsh_params = lsh_params if mode == "lsh" else None
        self._tables: list[dict[bytes, np.ndarray]] = []
        if mode == "lsh":
            self._build_tables()

    @property
    def n(self) -> int:
        return self._X.shape[0]

    def _build_tables(self) -> None:
        params = self.lsh_params or LshParams()
        rng = stream_rng(self.seed, LSH_STREAM)
        m = self._X.shape[1]
        w = params.bucket_width
        if w is None:
            w = _estimate_bucket_width(self._X, self.labels, rng)
        self.lsh_params = LshParams(
            num_tables=params.num_tables,
            hashes_per_table=params.hashes_per_table,
            bucket_width=w,
        )
        self._row_keys: list[np.ndarray] = []
        for _ in range(params.num_tables):
            proj = rng.standard_normal((m, params.hashes_per_table))
            offset = rng.uniform(0.0, w, size=params.hashes_per_table)
            keys = np.floor((self._X @ proj + offset) / w).astype(np.int64)
            table: dict[bytes, list[int]] = {}
            for i in range(self.n):
                table.setdefault(keys[i].tobytes(), []).append(i)
            self._tables.append(
                {k: np.array(v, dtype=np.intp) for k, v in table.items()}
            )
            self._row_keys.append(keys)

    def _d2_to(self, i: int, candidates: np.ndarray) -> np.ndarray:
        diff = self._X[candidates] - self._X[i]
        return (diff * diff).sum(axis=1)

    def _constraint_pool(self, i: int, same_class: bool) -> np.ndarray:
        if same_class:
            pool = np.flatnonzero(self.labels == self.labels[i])
            pool = pool[pool != i]
            if pool.size == 0:
                raise SingletonClassError(
                    f"sample {i} is the only member of class {int(self.labels[i])}"
                )
        else:
            pool = np.flatnonzero(self.labels != self.labels[i])
            if pool.size == 0:
                raise SingletonClassError("dataset has a single class")
        return pool

    def _query(self, i: int, same_class: bool, stats: QueryStats | None = None) -> int:
        pool = self._constraint_pool(i, same_class)
        if stats is not None:
            stats.queries += 1
            stats.exact_equivalent += pool.size
        if self.mode == "lsh":
            gathered = [
                self._tables[t].get(self._row_keys[t][i].tobytes(), _EMPTY)
                for t in range(len(self._tables))
            ]
            cand = np.unique(np.concatenate(gathered))
            cand = cand[cand != i]
            if same_class:
                cand = cand[self.labels[cand] == self.labels[i]]
            else:
                cand = cand[self.labels[cand] != self.labels[i]]
            if cand.size == 0:
                # no constraint-satisfying row in any shared bucket
                if stats is not None:
                    stats.fallbacks += 1
                    stats.examined += pool.size
                cand = pool
            elif stats is not None:
                stats.examined += cand.size
        else:
            cand = pool
            if stats is not None:
                stats.examined += cand.size
        d2 = self._d2_to(i, cand)
        return int(cand[np.argmin(d2)])

    def nearest_same_class(self, i: int) -> int:
        return self._query(i, same_class=True)

    def nearest_opposite_class(self, i: int) -> int:
        return self._query(i, same_class=False)

    def triplet_arrays(self) -> tuple[np.ndarray, np.ndarray, QueryStats]:
        """Same-class and opposite-class neighbors for every row.

        The exact path runs as chunked full distance computation, which
        reproduces per-query answers bit for bit; lsh loops per query.
        """
        stats = QueryStats()
        n = self.n
        if self.mode == "lsh":
            s = np.empty(n, dtype=np.intp)
            o = np.empty(n, dtype=np.intp)
            for i in range(n):
                s[i] = self._query(i, True, stats)
                o[i] = self._query(i, False, stats)
            return s, o, stats

        for label in (0, 1):
            count = int((self.labels == label).sum())
            if count < 2:
                raise SingletonClassError(
                    f"class {label} has {count} sample(s); every row needs a"
                    " same-class neighbor"
                )
        m = self._X.shape[1]
        chunk = max(1, int(_CHUNK_BUDGET / max(1, n * m)))
        s = np.empty(n, dtype=np.intp)
        o = np.empty(n, dtype=np.intp)
        same_mask_full = self.labels[None, :] == self.labels[:, None]
        for start in range(0, n, chunk):
            stop = min(n, start + chunk)
            diff = self._X[start:stop, None, :] - self._X[None, :, :]
            d2 = (diff * diff).sum(axis=-1)
            rows = np.arange(start, stop)
            d2[np.arange(stop - start), rows] = np.inf
            mask = same_mask_full[start:stop]
            s[start:stop] = np.argmin(np.where(mask, d2, np.inf), axis=1)
            o[start:stop] = np.argmin(np.where(mask, np.inf, d2), axis=1)
        stats.queries = 2 * n
        stats.examined = stats.exact_equivalent = 2 * n * (n - 1)
        return s, o, stats


_EMPTY = np.array([], dtype=np.intp)


def _estimate_bucket_width(
    X: np.ndarray, labels: np.ndarray, rng: np.random.Generator
) -> float:
    """Width that keeps true neighbors colliding with high probability.

    Queries are class-constrained, and opposite-class neighbors are
    usually farther than same-class ones, so the width is sized from the
    larger of the two median constrained nearest-neighbor distances on a
    subsample (times 3). The subsample draw is the first use of the
    seeded stream, so rebuilds with one seed agree."""
    n = X.shape[0]
    k = min(n, 128)
    idx = np.sort(rng.choice(n, size=k, replace=False)) if k < n else np.arange(n)
    sub = X[idx]
    sub_labels = labels[idx]
    diff = sub[:, None, :] - sub[None, :, :]
    d2 = (diff * diff).sum(axis=-1)
    np.fill_diagonal(d2, np.inf)
    same = sub_labels[:, None] == sub_labels[None, :]
    medians = []
    for mask in (same, ~same):
        nearest = np.where(mask, d2, np.inf).min(axis=1)
        nearest = nearest[np.isfinite(nearest)]
        if nearest.size:
            medians.append(float(np.median(np.sqrt(nearest))))
    width = 3.0 * max(medians, default=0.0)
    if not np.isfinite(width) or width <= 0.0:
        return 1.0
    return width


def build_index(
    ds: Dataset,
    active_features: np.ndarray | list[int],
    mode: str = "exact",
    seed: int = 42,
    lsh_params: LshParams | None = None,
) -> NeighborIndex:
    return NeighborIndex(ds, np.asarray(active_features), mode, seed, lsh_params)


def resolve_mode(requested: str | None, n: int, threshold: int = 2000) -> str:
    """'exact' below the size threshold, 'lsh' above, unless forced."""
    if requested in ("exact", "lsh"):
        return requested
    return "exact" if n <= threshold else "lsh"


def exact_nearest(
    ds: Dataset,
    i: int,
    same_class: bool,
    active_features: np.ndarray | list[int],
) -> int:
    """Reference scan: global minimizer of Euclidean distance over the
    active features among rows satisfying the class constraint, ties to
    the lowest index. Used to verify the index modes."""
    active = np.asarray(active_features, dtype=np.intp)
    if active.size == 0:
        raise DataError("active feature set is empty")
    labels = ds.labels
    if same_class:
        pool = np.flatnonzero(labels == labels[i])
        pool = pool[pool != i]
    else:
        pool = np.flatnonzero(labels != labels[i])
    if pool.size == 0:
        raise SingletonClassError(f"no candidate satisfies the constraint for row {i}")
    diff = ds.features[np.ix_(pool, active)] - ds.features[i, active]
    d2 = (diff * diff).sum(axis=1)
    return int(pool[np.argmin(d2)])
