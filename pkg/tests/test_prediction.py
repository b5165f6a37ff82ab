import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protopair import (
    DataError,
    Prototype,
    PrototypeModel,
    SchemaError,
    distance,
    explain,
    predict_batch,
    predict_one,
    train,
)

from conftest import make_blobs


def two_feature_model(s_vals, o_vals, label_s=0, label_o=1):
    return PrototypeModel(
        feature_indices=np.array([0, 1]),
        feature_names=["a", "b"],
        proto_s=Prototype(sample_id=5, label=label_s, values=np.asarray(s_vals, float)),
        proto_o=Prototype(sample_id=6, label=label_o, values=np.asarray(o_vals, float)),
        train_error=0,
        iterations=1,
        seed=42,
        n_train=10,
        p_total=4,
    )


class TestDistance:
    def test_identity(self):
        assert distance([1.0, 2.0], [1.0, 2.0]) == 0.0

    def test_three_four_five(self):
        assert distance([0.0, 0.0], [3.0, 4.0]) == 5.0

    def test_single_feature(self):
        assert distance([1.5], [1.4]) == pytest.approx(0.1)

    def test_restricted_to_index_set(self):
        assert distance([0.0, 9.0, 0.0], [3.0, -1.0, 4.0], features=[0, 2]) == 5.0

    def test_shape_mismatch(self):
        with pytest.raises(DataError):
            distance([1.0], [1.0, 2.0])


class TestPredictOne:
    def test_single_feature_style_rule(self):
        # prototypes at 1.4 and 3.3 on a flower-length style feature pair
        model = two_feature_model([1.4, 0.0], [3.3, 0.0])
        pred = predict_one(model, np.array([1.5, 0.0]))
        assert pred.label == 0
        assert pred.d_s == pytest.approx(0.1)
        assert pred.d_o == pytest.approx(1.8)

    def test_exact_tie_goes_to_tie_preferred_prototype(self):
        model = two_feature_model([0.0, 0.0], [2.0, 0.0])
        pred = predict_one(model, np.array([1.0, 0.0]))
        assert pred.d_s == pred.d_o
        assert pred.label == 0

    def test_query_equal_to_either_prototype(self):
        model = two_feature_model([0.0, 1.0], [1.0, 0.0])
        assert predict_one(model, np.array([1.0, 0.0])).label == 1
        assert predict_one(model, np.array([0.0, 1.0])).label == 0

    def test_full_width_rows_are_projected(self):
        model = two_feature_model([0.0, 0.0], [5.0, 5.0])
        # p_total is 4; the model's features are columns 0 and 1
        full = np.array([9.9, 9.9, 123.0, -7.0])
        assert predict_one(model, full).label == 1

    def test_wrong_width_rejected(self):
        model = two_feature_model([0.0, 0.0], [5.0, 5.0])
        with pytest.raises(SchemaError):
            predict_one(model, np.array([1.0, 2.0, 3.0]))

    @given(
        factor=st.floats(min_value=0.001, max_value=1000.0),
        qx=st.floats(-10, 10),
        qy=st.floats(-10, 10),
    )
    @settings(max_examples=60, deadline=None)
    def test_positive_scaling_preserves_the_label(self, factor, qx, qy):
        base = two_feature_model([0.0, 1.0], [3.0, -2.0])
        scaled = two_feature_model(
            np.array([0.0, 1.0]) * factor, np.array([3.0, -2.0]) * factor
        )
        q = np.array([qx, qy])
        assert predict_one(base, q).label == predict_one(scaled, q * factor).label


class TestPredictBatch:
    def test_training_error_reproduced(self, toy):
        model, _ = train(toy)
        _, errors = predict_batch(model, toy)
        assert errors == model.train_error

    def test_prototype_rows_classify_themselves(self, toy):
        model, _ = train(toy)
        both = np.vstack([model.proto_s.values, model.proto_o.values])
        labels, errors = predict_batch(
            model, both, labels=[model.proto_s.label, model.proto_o.label]
        )
        assert errors == 0

    def test_without_labels_no_error_count(self, toy):
        model, _ = train(toy)
        labels, errors = predict_batch(model, toy.features)
        assert errors is None
        assert labels.shape == (toy.n,)

    def test_schema_mismatch(self, toy):
        model, _ = train(toy)
        with pytest.raises(SchemaError):
            predict_batch(model, np.zeros((3, 7)))

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_predict_one(self, seed):
        ds = make_blobs(30, 5, seed)
        model, _ = train(ds)
        batch, _ = predict_batch(model, ds)
        singles = [predict_one(model, ds.features[i]).label for i in range(ds.n)]
        assert batch.tolist() == singles


class TestExplain:
    def test_global_card_names_prototypes_and_features(self, toy):
        model, _ = train(toy)
        card = explain(model)
        assert f"training sample {model.proto_s.sample_id}" in card
        assert f"training sample {model.proto_o.sample_id}" in card
        for name in model.feature_names:
            assert name in card
        assert "full-precision" in card

    def test_card_with_query_reports_zero_distance_to_own_prototype(self, toy):
        model, _ = train(toy)
        card = explain(model, model.proto_s.values)
        assert f"distance 0 to prototype of class {model.proto_s.label}" in card
        assert f"decision: label {model.proto_s.label}" in card

    def test_two_feature_model_renders_two_feature_rows(self):
        model = two_feature_model([0.1, 0.2], [0.8, 0.9])
        card = explain(model)
        lines = [l for l in card.splitlines() if l.strip().startswith(("a ", "b "))]
        assert len(lines) == 2
