"""Command-line interface.

Subcommands: train, predict, evaluate, bench, explain, oracle. Results
go to stdout, diagnostics to stderr. Exit codes are a stable contract:
0 success, 1 usage or data-contract error, 2 training failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys

import numpy as np

from .bench import bench_run, format_table
from .data import load_csv, read_matrix_csv
from .errors import DataError, SchemaError, SearchSpaceError, TrainingError
from .metrics import accuracy, confusion, f_measure
from .model_io import load_model, save_model
from .neighbors import LshParams
from .oracle import DEFAULT_MAX_N, DEFAULT_MAX_P, oracle_search
from .prediction import explain, prediction_distances
from .training import TrainConfig, train

log = logging.getLogger("protopair")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; the contract reserves 2 for
    # training failures, so route usage problems through exit code 1.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _add_log_level(p: argparse.ArgumentParser, root: bool = False) -> None:
    # accepted both before and after the subcommand; the subcommand copy
    # uses SUPPRESS so an absent flag never clobbers the root value
    kwargs = {"choices": ["error", "info", "debug"]}
    kwargs["default"] = "info" if root else argparse.SUPPRESS
    p.add_argument("--log-level", **kwargs)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=42, help="seed for all randomness")
    p.add_argument("--scale", action="store_true", help="min-max scale features")
    p.add_argument("--nn", choices=["exact", "lsh"], default=None,
                   help="neighbor search mode (default: exact up to n=2000, then lsh)")
    p.add_argument("--lsh-tables", type=int, default=8)
    p.add_argument("--lsh-hashes", type=int, default=4)
    p.add_argument("--lsh-width", type=float, default=None,
                   help="hash bucket width (default: sized from the data)")
    p.add_argument("--threads", type=int, default=None,
                   help="worker cap (env NL_THREADS, else all cores)")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="protopair",
        description="Train and apply two-prototype sparse classifiers.",
        epilog="NL_THREADS in the environment caps workers when --threads is absent.",
    )
    _add_log_level(parser, root=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model from a labeled CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--label", default=None, help="label column name or index")
    p.add_argument("--output", required=True, help="model JSON path")
    _add_common(p)
    _add_log_level(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="label rows of a CSV with a model")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True, help="prediction CSV path")
    _add_log_level(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score a model against labeled rows")
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--label", default=None)
    _add_log_level(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="stratified k-fold benchmark")
    p.add_argument("--input", required=True)
    p.add_argument("--label", default=None)
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--json", default=None, help="also write the report as JSON")
    _add_common(p)
    _add_log_level(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("explain", help="print a model card")
    p.add_argument("--model", required=True)
    p.add_argument("--sample", default=None,
                   help="CSV with one row to walk through the decision")
    _add_log_level(p)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("oracle", help="exhaustive prototype-pair search")
    p.add_argument("--input", required=True)
    p.add_argument("--label", default=None)
    p.add_argument("--min-subset", type=int, default=1)
    p.add_argument("--max-subset", type=int, default=None)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help="size guard; raise consciously for larger data")
    p.add_argument("--max-p", type=int, default=DEFAULT_MAX_P)
    _add_log_level(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def _threads(args: argparse.Namespace) -> int | None:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("NL_THREADS")
    if env:
        try:
            return int(env)
        except ValueError:
            raise DataError(f"NL_THREADS must be an integer, got {env!r}") from None
    return None


def _config(args: argparse.Namespace) -> TrainConfig:
    return TrainConfig(
        seed=args.seed,
        scale=args.scale,
        nn=args.nn,
        lsh_params=LshParams(
            num_tables=args.lsh_tables,
            hashes_per_table=args.lsh_hashes,
            bucket_width=args.lsh_width,
        ),
        threads=_threads(args),
    )


def cmd_train(args: argparse.Namespace) -> int:
    ds = load_csv(args.input, args.label)
    log.info("loaded %s: n=%d p=%d", args.input, ds.n, ds.p)
    model, stats = train(ds, _config(args))
    save_model(model, args.output)
    log.info("stopped: %s", stats.stop_reason)
    print(
        f"levels={stats.iterations} core_features={model.n_core_features}"
        f" train_error={model.train_error}"
    )
    return 0


def _project_by_name(model, header: list[str], X: np.ndarray) -> np.ndarray:
    missing = [name for name in model.feature_names if name not in header]
    if missing:
        raise SchemaError(
            "input is missing feature column(s): " + ", ".join(missing)
        )
    cols = [header.index(name) for name in model.feature_names]
    return X[:, cols]


def cmd_predict(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    header, X = read_matrix_csv(args.input)
    core = _project_by_name(model, header, X)
    labels, d_s, d_o = prediction_distances(model, core)
    with open(args.output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["sample_id", "predicted_label", "d_s", "d_o"])
        for i in range(len(labels)):
            writer.writerow([i, int(labels[i]), repr(float(d_s[i])), repr(float(d_o[i]))])
    log.info("wrote %d prediction(s) to %s", len(labels), args.output)
    return 0


def _load_eval_csv(path: str, label_column) -> tuple[list[str], np.ndarray, np.ndarray]:
    """Labeled CSV for scoring: no class-size requirements, labels must
    be 0/1 or exactly two distinct raw values (mapped by sorted order)."""
    header, X = read_matrix_csv_with_strings(path)
    from .data import _resolve_label_column  # shared column resolution

    label_idx = _resolve_label_column(header, label_column)
    raw = [row[label_idx] for row in X]
    feature_cols = [c for c in range(len(header)) if c != label_idx]
    matrix = np.empty((len(X), len(feature_cols)))
    for r, row in enumerate(X):
        for c, col in enumerate(feature_cols):
            try:
                matrix[r, c] = float(row[col])
            except ValueError:
                raise DataError(
                    f"{path}: non-numeric value {row[col]!r} at data row {r},"
                    f" column {header[col]!r}"
                ) from None
    distinct = sorted(set(raw))
    try:
        as_numeric = {v: float(v) for v in distinct}
    except ValueError:
        as_numeric = {}
    if as_numeric and set(as_numeric.values()) <= {0.0, 1.0}:
        labels = np.array([int(as_numeric[v]) for v in raw], dtype=np.int64)
    elif len(distinct) == 2:
        mapping = {distinct[0]: 0, distinct[1]: 1}
        labels = np.array([mapping[v] for v in raw], dtype=np.int64)
    else:
        raise DataError(
            f"{path}: cannot map label values {distinct[:5]} to 0/1"
        )
    return [header[c] for c in feature_cols], matrix, labels


def read_matrix_csv_with_strings(path: str) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file, expected a header row") from None
        rows = []
        for row in reader:
            if not row or (len(row) == 1 and row[0].strip() == ""):
                continue
            if len(row) != len(header):
                raise DataError(
                    f"{path}: row with {len(row)} cells, header has {len(header)}"
                )
            rows.append([c.strip() for c in row])
    return header, rows


def cmd_evaluate(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    feat_header, X, y = _load_eval_csv(args.input, args.label)
    core = _project_by_name(model, feat_header, X)
    labels, _, _ = prediction_distances(model, core)
    cm = confusion(y, labels)
    print(json.dumps({
        "accuracy": accuracy(cm),
        "f1": f_measure(cm),
        "confusion": cm.as_dict(),
        "n": cm.total,
    }, sort_keys=True))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    ds = load_csv(args.input, args.label)
    report = bench_run(ds, args.folds, args.seed, _config(args))
    print(format_table(report))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(report.as_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if not report.succeeded:
        log.error("no fold trained successfully")
        return 2
    return 0


def cmd_explain(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    x = None
    if args.sample:
        header, X = read_matrix_csv(args.sample)
        if X.shape[0] < 1:
            raise DataError(f"{args.sample}: no data rows")
        x = _project_by_name(model, header, X)[0]
    print(explain(model, x))
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    ds = load_csv(args.input, args.label)
    result = oracle_search(
        ds,
        min_subset=args.min_subset,
        max_subset=args.max_subset,
        max_n=args.max_n,
        max_p=args.max_p,
    )
    payload = result.as_dict()
    payload["s_sample_id"] = ds.sample_ids[result.s]
    payload["o_sample_id"] = ds.sample_ids[result.o]
    payload["subset_names"] = [ds.feature_names[j] for j in result.subset]
    print(json.dumps(payload, sort_keys=True))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, args.log_level.upper()),
        format="%(levelname)s %(message)s",
        force=True,
    )
    try:
        return args.func(args)
    except TrainingError as exc:
        log.error("training failed: %s", exc)
        return 2
    except SearchSpaceError as exc:
        log.error("%s", exc)
        return 1
    except (DataError, OSError, ValueError) as exc:
        log.error("%s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
