"""Walk through training on a four-sample toy table, step by step.

Run:  python3 demos/01_toy_walkthrough.py
"""

import pathlib

import numpy as np

from protopair import (
    TrainConfig,
    build_index,
    compare_features,
    evaluate_candidate,
    explain,
    form_triplet,
    load_csv,
    oracle_search,
    train,
)

DATA = pathlib.Path(__file__).parent.parent / "tests" / "data" / "toy4.csv"


def show_table(ds, trip, fc):
    print(f"  pivot row {trip.pivot}: same-class neighbor {trip.same},"
          f" opposite-class neighbor {trip.opposite}")
    print(f"  {'feature':<8} {'pivot':>6} {'same':>6} {'opp':>6} {'margin':>8} kept?")
    for k, j in enumerate(fc.features):
        name = ds.feature_names[j]
        kept = "yes" if j in fc.kept else "no"
        print(f"  {name:<8} {ds.features[trip.pivot, j]:>6.2f}"
              f" {ds.features[trip.same, j]:>6.2f} {ds.features[trip.opposite, j]:>6.2f}"
              f" {fc.margin[k]:>8.2f} {kept}")


def main():
    ds = load_csv(str(DATA))
    print(f"toy dataset: {ds.n} rows, {ds.p} features, labels {ds.labels.tolist()}")
    print(ds.features)

    print("\n--- level 1: every row pivots a triplet over all features ---")
    active = np.arange(ds.p)
    index = build_index(ds, active)
    for i in range(ds.n):
        trip = form_triplet(index, i)
        fc = compare_features(
            ds.features[i], ds.features[trip.same], ds.features[trip.opposite], active
        )
        show_table(ds, trip, fc)
        if fc.kept.size > 1:
            e = evaluate_candidate(ds, trip.same, trip.opposite, fc.kept)
            print(f"  -> candidate ({trip.same}, {trip.opposite}) over"
                  f" {fc.kept.tolist()} misclassifies {e} of {ds.n}")
        else:
            print(f"  -> kept {fc.kept.size} feature(s): below the floor, skipped")
        print()

    print("--- full training ---")
    model, stats = train(ds, TrainConfig(seed=42))
    for rec in stats.levels:
        print(f"level {rec.level}: {rec.n_active_features} active features,"
              f" best error {rec.best_error}, winning pivot {rec.winning_pivot}")
    print(f"stopped because: {stats.stop_reason}")

    print("\n--- the model card ---")
    print(explain(model))

    print("\n--- exhaustive search agrees on the prototype rows ---")
    result = oracle_search(ds)
    print(f"optimum: rows ({result.s}, {result.o}), feature subset"
          f" {[ds.feature_names[j] for j in result.subset]},"
          f" error {result.error}, {result.ties} tied optima")


if __name__ == "__main__":
    main()
