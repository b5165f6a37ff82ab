"""Exhaustive prototype-pair search, the ground truth at desk scale.

Every cross-class sample pair is scored with every feature subset in the
requested size range, under exactly the prediction semantics the trained
models use. The search space is a strict superset of what training can
reach (training never keeps single-feature sets; this search may), so
the returned error is a lower bound on any training error for the same
data. Cost grows as O(n^3 * 2^p); the size guard is a hard error on
purpose, because silently approximating a verification tool would defeat
it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DataError, SearchSpaceError
from .prediction import decide_labels

DEFAULT_MAX_N = 20
DEFAULT_MAX_P = 12


@dataclass(frozen=True)
class OracleResult:
    s: int
    o: int
    subset: tuple[int, ...]
    error: int
    ties: int

    def as_dict(self) -> dict:
        return {
            "s": self.s,
            "o": self.o,
            "subset": list(self.subset),
            "error": self.error,
            "ties": self.ties,
        }


def oracle_search(
    ds: Dataset,
    min_subset: int = 1,
    max_subset: int | None = None,
    max_n: int = DEFAULT_MAX_N,
    max_p: int = DEFAULT_MAX_P,
) -> OracleResult:
    """Best (class-0 sample, class-1 sample, feature subset) by minimal
    error, then fewest features, then lexicographically smallest
    (s, o, subset). ``ties`` counts solutions achieving both minima.

    ``max_n``/``max_p`` are the size guard. Raising them is a conscious
    caller decision; the defaults keep the blow-up at desk scale.
    """
    if ds.n > max_n or ds.p > max_p:
        raise SearchSpaceError(
            f"exhaustive search limited to n <= {max_n} and p <= {max_p};"
            f" got n={ds.n}, p={ds.p}"
        )
    if max_subset is None:
        max_subset = ds.p
    if not 1 <= min_subset <= max_subset <= ds.p:
        raise DataError(
            f"need 1 <= min_subset <= max_subset <= p, got"
            f" [{min_subset}, {max_subset}] with p={ds.p}"
        )
    class0 = ds.class_indices(0)
    class1 = ds.class_indices(1)
    if class0.size == 0 or class1.size == 0:
        raise DataError("both classes must be present")

    X = ds.features
    y = ds.labels
    best_key: tuple | None = None
    ties = 0
    for size in range(min_subset, max_subset + 1):
        for subset in itertools.combinations(range(ds.p), size):
            feats = np.asarray(subset, dtype=np.intp)
            Xc = X[:, feats]
            for s in class0:
                for o in class1:
                    predicted = decide_labels(Xc, Xc[s], Xc[o], 0, 1)
                    error = int((predicted != y).sum())
                    key = (error, size, int(s), int(o), subset)
                    if best_key is None or key[:2] < best_key[:2]:
                        best_key = key
                        ties = 1
                    elif key[:2] == best_key[:2]:
                        ties += 1
                        if key < best_key:
                            best_key = key

    assert best_key is not None
    error, size, s, o, subset = best_key
    return OracleResult(s=s, o=o, subset=subset, error=error, ties=ties)
