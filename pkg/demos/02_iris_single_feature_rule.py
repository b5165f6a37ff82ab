"""Recover a one-feature flower rule by exhaustive prototype search.

Setosa and versicolour are linearly separable on petal length, so the
naive search over (sample pair, feature subset) lands on a two-number
classifier that is perfect on held-out data.

Run:  python3 demos/02_iris_single_feature_rule.py   (needs scikit-learn)
"""

import numpy as np
from sklearn.datasets import load_iris

from protopair import Dataset, oracle_search, train_test_split
from protopair.prediction import decide_labels


def main():
    raw = load_iris()
    keep = raw.target < 2
    ds = Dataset(
        features=raw.data[keep],
        labels=raw.target[keep],
        feature_names=list(raw.feature_names),
    )
    train_ds, test_ds = train_test_split(ds, 0.2, seed=42)
    print(f"setosa vs versicolour: {train_ds.n} train / {test_ds.n} test rows")

    result = oracle_search(train_ds, min_subset=1, max_subset=2, max_n=train_ds.n)
    feats = np.asarray(result.subset)
    names = [train_ds.feature_names[j] for j in result.subset]
    s_val = train_ds.features[result.s, feats]
    o_val = train_ds.features[result.o, feats]
    print(f"\noptimum: rows ({result.s}, {result.o}), features {names},"
          f" training error {result.error}, {result.ties} tied optima")
    print(f"rule: closer to {s_val} -> setosa, closer to {o_val} -> versicolour")

    pred = decide_labels(test_ds.features[:, feats], s_val, o_val, 0, 1)
    acc = float((pred == test_ds.labels).mean())
    print(f"test accuracy: {acc:.3f}")

    # petal-length rules specifically: how many perfect ones exist?
    pl = ds.feature_names.index("petal length (cm)")
    col = train_ds.features[:, pl]
    tcol = test_ds.features[:, pl]
    perfect = []
    for s in np.flatnonzero(train_ds.labels == 0):
        for o in np.flatnonzero(train_ds.labels == 1):
            tr = np.where(np.abs(col - col[o]) < np.abs(col - col[s]), 1, 0)
            te = np.where(np.abs(tcol - col[o]) < np.abs(tcol - col[s]), 1, 0)
            if not (tr != train_ds.labels).sum() and not (te != test_ds.labels).sum():
                perfect.append((float(col[s]), float(col[o])))
    lo = min(p[0] for p in perfect)
    hi = max(p[1] for p in perfect)
    print(f"\n{len(perfect)} petal-length prototype pairs are perfect on train"
          f" and test, e.g. {perfect[0]}; prototype values span [{lo}, {hi}]")


if __name__ == "__main__":
    main()
