import pathlib

import numpy as np
import pytest

from protopair import Dataset, load_csv

DATA_DIR = pathlib.Path(__file__).parent / "data"
TOY_CSV = DATA_DIR / "toy4.csv"


@pytest.fixture
def toy() -> Dataset:
    return load_csv(str(TOY_CSV))


@pytest.fixture
def toy_path() -> str:
    return str(TOY_CSV)


def make_blobs(
    n: int,
    p: int,
    seed: int,
    separation: float = 3.0,
    scale: float = 1.0,
) -> Dataset:
    """Two Gaussian clusters, one per class, balanced up to rounding."""
    rng = np.random.default_rng(seed)
    n0 = n // 2
    n1 = n - n0
    center = rng.standard_normal(p) * separation
    X0 = rng.standard_normal((n0, p)) * scale
    X1 = rng.standard_normal((n1, p)) * scale + center
    X = np.vstack([X0, X1])
    y = np.concatenate([np.zeros(n0, dtype=np.int64), np.ones(n1, dtype=np.int64)])
    order = rng.permutation(n)
    return Dataset(
        features=X[order],
        labels=y[order],
        feature_names=[f"x{j}" for j in range(p)],
    )


def make_random_labels(n: int, p: int, seed: int) -> Dataset:
    """Uniform features with random labels, at least two per class."""
    rng = np.random.default_rng(seed)
    X = rng.uniform(size=(n, p))
    while True:
        y = rng.integers(0, 2, size=n)
        if (y == 0).sum() >= 2 and (y == 1).sum() >= 2:
            break
    return Dataset(
        features=X,
        labels=y.astype(np.int64),
        feature_names=[f"x{j}" for j in range(p)],
    )
