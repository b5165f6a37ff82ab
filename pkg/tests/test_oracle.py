import itertools

import numpy as np
import pytest

from protopair import (
    Dataset,
    SearchSpaceError,
    TrainingError,
    oracle_search,
    predict_batch,
    train,
)

from conftest import make_random_labels


def quadruple_loop_minimum(ds, min_size=1, max_size=None):
    """Independent exhaustive implementation: four nested loops, no
    vectorization, used to cross-check the library's search."""
    max_size = max_size or ds.p
    best = None
    for size in range(min_size, max_size + 1):
        for subset in itertools.combinations(range(ds.p), size):
            for s in np.flatnonzero(ds.labels == 0):
                for o in np.flatnonzero(ds.labels == 1):
                    wrong = 0
                    for t in range(ds.n):
                        d_s = sum((ds.features[t, j] - ds.features[s, j]) ** 2 for j in subset)
                        d_o = sum((ds.features[t, j] - ds.features[o, j]) ** 2 for j in subset)
                        label = ds.labels[o] if d_o < d_s else ds.labels[s]
                        wrong += int(label != ds.labels[t])
                    if best is None or wrong < best:
                        best = wrong
    return best


class TestOracleToy:
    def test_toy_optimum(self, toy):
        result = oracle_search(toy)
        assert result.error == 0
        assert (result.s, result.o) == (1, 2)
        assert result.subset == (1,)
        assert result.ties >= 1

    def test_toy_tie_count_matches_enumeration(self, toy):
        result = oracle_search(toy)
        # count zero-error single-feature solutions independently
        count = 0
        for j in range(toy.p):
            for s in (0, 1):
                for o in (2, 3):
                    col = toy.features[:, j]
                    d_s = np.abs(col - col[s])
                    d_o = np.abs(col - col[o])
                    pred = np.where(d_o < d_s, toy.labels[o], toy.labels[s])
                    if int((pred != toy.labels).sum()) == 0:
                        count += 1
        assert result.ties == count

    def test_subset_range_is_respected(self, toy):
        full = oracle_search(toy, min_subset=toy.p, max_subset=toy.p)
        assert len(full.subset) == toy.p

    def test_matches_toy_training_answer(self, toy):
        model, _ = train(toy)
        result = oracle_search(toy)
        assert result.error <= model.train_error
        assert {toy.sample_ids[result.s], toy.sample_ids[result.o]} == {
            model.proto_s.sample_id,
            model.proto_o.sample_id,
        }


class TestOracleSmall:
    def test_two_row_dataset(self):
        ds = Dataset(
            features=np.array([[0.0, 1.0], [1.0, 0.0]]),
            labels=np.array([0, 1]),
            feature_names=["a", "b"],
        )
        result = oracle_search(ds)
        assert (result.s, result.o) == (0, 1)
        assert result.error == 0
        full = oracle_search(ds, min_subset=2)
        assert full.subset == (0, 1)
        assert full.error == 0

    def test_deterministic(self, toy):
        a = oracle_search(toy)
        b = oracle_search(toy)
        assert a == b

    def test_size_guard(self):
        ds = make_random_labels(25, 3, seed=0)
        with pytest.raises(SearchSpaceError, match="n <= 20"):
            oracle_search(ds)

    def test_guard_can_be_raised_explicitly(self):
        ds = make_random_labels(25, 3, seed=0)
        result = oracle_search(ds, max_n=25)
        assert 0 <= result.error <= ds.n

    def test_bad_subset_range(self, toy):
        with pytest.raises(Exception):
            oracle_search(toy, min_subset=3, max_subset=2)

    @pytest.mark.parametrize("seed", range(8))
    def test_minimum_matches_quadruple_loop(self, seed):
        ds = make_random_labels(9, 4, seed)
        result = oracle_search(ds)
        assert result.error == quadruple_loop_minimum(ds)


class TestOracleLowerBound:
    @pytest.mark.parametrize("seed", range(15))
    def test_oracle_never_beaten_by_training(self, seed):
        ds = make_random_labels(10, 4, seed)
        result = oracle_search(ds)
        try:
            model, _ = train(ds)
        except TrainingError:
            return
        assert result.error <= model.train_error
        _, re_eval = predict_batch(model, ds)
        assert re_eval == model.train_error
