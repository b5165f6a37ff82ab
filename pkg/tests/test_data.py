import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protopair import (
    ClassSizeError,
    DataError,
    Dataset,
    LabelError,
    ParseError,
    Scaler,
    load_csv,
    minmax_apply,
    minmax_fit,
    save_csv,
    stratified_folds,
    train_test_split,
)

from conftest import make_blobs


class TestLoadCsv:
    def test_toy_shape_and_mapping(self, toy):
        assert toy.n == 4
        assert toy.p == 4
        assert toy.labels.tolist() == [0, 0, 1, 1]
        assert toy.feature_names == ["f1", "f2", "f3", "f4"]
        assert toy.label_mapping == {"0": 0, "1": 1}
        assert toy.sample_ids == [0, 1, 2, 3]

    def test_label_column_by_name_and_index(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("y,a,b\n0,1,2\n0,3,4\n1,5,6\n1,7,8\n")
        by_name = load_csv(str(path), "y")
        by_index = load_csv(str(path), 0)
        assert by_name.feature_names == ["a", "b"]
        assert np.array_equal(by_name.features, by_index.features)

    def test_lexicographic_label_mapping(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b,y\n1,2,pos\n3,4,neg\n5,6,pos\n7,8,neg\n")
        ds = load_csv(str(path))
        assert ds.label_mapping == {"neg": 0, "pos": 1}
        assert ds.labels.tolist() == [1, 0, 1, 0]

    def test_non_numeric_cell_names_row_and_column(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b,y\n1,2,0\n3,oops,1\n5,6,0\n7,8,1\n")
        with pytest.raises(ParseError, match=r"line 3.*'b'"):
            load_csv(str(path))

    def test_missing_cell_is_an_error(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b,y\n1,2,0\n3,,1\n5,6,0\n7,8,1\n")
        with pytest.raises(ParseError, match="missing value"):
            load_csv(str(path))

    def test_three_label_values_rejected(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b,y\n1,2,0\n3,4,1\n5,6,2\n7,8,0\n")
        with pytest.raises(LabelError, match="3 distinct"):
            load_csv(str(path))

    def test_single_feature_column_rejected(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,y\n1,0\n2,0\n3,1\n4,1\n")
        with pytest.raises(DataError, match="at least 2 feature columns"):
            load_csv(str(path))

    def test_small_class_rejected(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("a,b,y\n1,2,0\n3,4,0\n5,6,0\n7,8,1\n")
        with pytest.raises(ClassSizeError):
            load_csv(str(path))

    def test_round_trip(self, toy, tmp_path):
        out = tmp_path / "round.csv"
        save_csv(toy, str(out))
        back = load_csv(str(out))
        assert np.array_equal(back.features, toy.features)
        assert np.array_equal(back.labels, toy.labels)
        assert back.feature_names == toy.feature_names

    @given(seed=st.integers(0, 10_000))
    @settings(max_examples=25, deadline=None)
    def test_round_trip_random_values(self, seed, tmp_path_factory):
        ds = make_blobs(8, 3, seed)
        out = tmp_path_factory.mktemp("rt") / "d.csv"
        save_csv(ds, str(out))
        back = load_csv(str(out))
        assert np.array_equal(back.features, ds.features)
        assert np.array_equal(back.labels, ds.labels)


class TestDatasetValidation:
    def test_non_finite_rejected(self):
        with pytest.raises(DataError, match="non-finite"):
            Dataset(
                features=np.array([[1.0, np.nan], [2.0, 3.0]]),
                labels=np.array([0, 1]),
                feature_names=["a", "b"],
            )

    def test_bad_labels_rejected(self):
        with pytest.raises(DataError, match="labels must be 0 or 1"):
            Dataset(
                features=np.zeros((2, 2)),
                labels=np.array([0, 2]),
                feature_names=["a", "b"],
            )

    def test_features_immutable(self, toy):
        with pytest.raises(ValueError):
            toy.features[0, 0] = 99.0

    def test_subset_preserves_ids(self, toy):
        sub = toy.subset([2, 3])
        assert sub.sample_ids == [2, 3]
        assert np.array_equal(sub.features, toy.features[2:])


class TestMinMax:
    def test_fit_simple_column(self):
        ds = Dataset(
            features=np.array([[0.0, 1.0], [0.25, 2.0], [0.75, 3.0], [1.0, 4.0]]),
            labels=np.array([0, 0, 1, 1]),
            feature_names=["a", "b"],
        )
        sc = minmax_fit(ds)
        assert sc.min_.tolist() == [0.0, 1.0]
        assert sc.max_.tolist() == [1.0, 4.0]

    def test_constant_column_flagged_and_zeroed(self):
        ds = Dataset(
            features=np.array([[5.0, 1.0], [5.0, 2.0], [5.0, 3.0], [5.0, 4.0]]),
            labels=np.array([0, 0, 1, 1]),
            feature_names=["const", "b"],
        )
        sc = minmax_fit(ds)
        assert sc.constant_mask.tolist() == [True, False]
        scaled = minmax_apply(sc, ds)
        assert np.all(scaled.features[:, 0] == 0.0)

    def test_apply_endpoints(self):
        ds = Dataset(
            features=np.array([[-2.0, 0.0], [0.0, 1.0], [4.0, 2.0], [1.0, 3.0]]),
            labels=np.array([0, 0, 1, 1]),
            feature_names=["a", "b"],
        )
        sc = minmax_fit(ds)
        scaled = minmax_apply(sc, ds)
        assert scaled.features[0, 0] == 0.0  # value -2 with min -2
        assert scaled.features[2, 0] == 1.0  # value 4 with max 4
        assert np.all(scaled.features >= 0.0)
        assert np.all(scaled.features <= 1.0)

    def test_dimension_mismatch(self, toy):
        sc = Scaler(min_=np.zeros(2), max_=np.ones(2))
        with pytest.raises(DataError, match="scaler covers"):
            minmax_apply(sc, toy)

    @given(seed=st.integers(0, 10_000), n=st.integers(4, 40), p=st.integers(2, 6))
    @settings(max_examples=30, deadline=None)
    def test_apply_stays_in_unit_interval(self, seed, n, p):
        ds = make_blobs(n, p, seed)
        scaled = minmax_apply(minmax_fit(ds), ds)
        assert np.all(scaled.features >= 0.0)
        assert np.all(scaled.features <= 1.0)


class TestStratifiedFolds:
    def test_balanced_ten_in_five_folds(self):
        ds = make_blobs(10, 2, seed=0)
        plan = stratified_folds(ds, 5, seed=1)
        for fold in plan.folds:
            assert len(fold) == 2
            assert ds.labels[fold].sum() == 1  # one sample of each class

    def test_partition_properties(self):
        ds = make_blobs(53, 3, seed=3)
        plan = stratified_folds(ds, 10, seed=9)
        everything = np.concatenate(plan.folds)
        assert len(everything) == ds.n
        assert len(np.unique(everything)) == ds.n
        for label in (0, 1):
            counts = [int((ds.labels[f] == label).sum()) for f in plan.folds]
            assert max(counts) - min(counts) <= 1

    def test_deterministic(self):
        ds = make_blobs(24, 2, seed=5)
        a = stratified_folds(ds, 4, seed=7)
        b = stratified_folds(ds, 4, seed=7)
        for fa, fb in zip(a.folds, b.folds):
            assert np.array_equal(fa, fb)

    def test_class_smaller_than_k(self):
        ds = make_blobs(10, 2, seed=0)  # 5 per class
        with pytest.raises(ClassSizeError):
            stratified_folds(ds, 6, seed=0)


class TestTrainTestSplit:
    def test_eighty_twenty_balanced(self):
        ds = make_blobs(100, 3, seed=11)
        train_ds, test_ds = train_test_split(ds, 0.2, seed=42)
        assert train_ds.n == 80 and test_ds.n == 20
        assert int((train_ds.labels == 0).sum()) == 40
        assert int((test_ds.labels == 0).sum()) == 10

    def test_deterministic(self):
        ds = make_blobs(30, 2, seed=2)
        a = train_test_split(ds, 0.3, seed=5)
        b = train_test_split(ds, 0.3, seed=5)
        assert a[0].sample_ids == b[0].sample_ids
        assert a[1].sample_ids == b[1].sample_ids

    def test_no_leak_and_full_cover(self):
        ds = make_blobs(41, 2, seed=8)
        tr, te = train_test_split(ds, 0.25, seed=3)
        ids = sorted(tr.sample_ids + te.sample_ids)
        assert ids == list(range(41))

    def test_tiny_training_class_rejected(self, toy):
        with pytest.raises(ClassSizeError):
            train_test_split(toy, 0.5, seed=0)
