"""Command-line front end: generate, train, predict, decompose, evaluate, benchmark.

Exit codes: 0 success, 1 usage error, 2 data error, 3 training divergence.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from . import datasets, evaluate, fourier
from .model import AugmentationSpec, ModelFormatError, decompose, forward, load, predict, save
from .preprocess import PreprocessError
from .timeseries import SplitSpec, TimeSeries, TimeSeriesError, load_csv, write_csv
from .train import TrainConfig, TrainingDiverged, fit_nd

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_DIVERGED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x) -> str:
    return repr(float(x))


def _write_rows(path, header, rows) -> None:
    out = sys.stdout if path in (None, "-") else open(path, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()


def _add_train_flags(p) -> None:
    g = p.add_argument_group("training")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--epochs", type=int, default=TrainConfig.epochs)
    g.add_argument("--learning-rate", type=float, default=TrainConfig.learning_rate)
    g.add_argument("--l1", type=float, default=TrainConfig.l1_strength,
                   help="L1 strength on output weights")
    g.add_argument("--linear", type=int, default=10, help="linear augmentation units")
    g.add_argument("--softplus", type=int, default=10, help="softplus augmentation units")
    g.add_argument("--sigmoid", type=int, default=10, help="sigmoid augmentation units")
    g.add_argument("--no-aug", action="store_true", help="no augmentation units, g(t) = 0")
    g.add_argument("--freeze-frequencies", action="store_true",
                   help="keep sinusoid frequencies and phases at their initial values")
    g.add_argument("--log-filter", action="store_true",
                   help="fit log(values) and exponentiate predictions")


def _train_config(args) -> TrainConfig:
    aug = AugmentationSpec.none() if args.no_aug else AugmentationSpec(
        args.linear, args.softplus, args.sigmoid)
    try:
        return TrainConfig(
            learning_rate=args.learning_rate, l1_strength=args.l1, epochs=args.epochs,
            seed=args.seed, aug=aug, log_filter=args.log_filter,
            freeze_frequencies=args.freeze_frequencies,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _time_grid(args, model) -> np.ndarray:
    if args.count < 0:
        raise UsageError("--count must be nonnegative")
    lo = args.start if args.start is not None else float(model.preprocess.invert_times(0.0))
    hi = args.stop if args.stop is not None else float(model.preprocess.invert_times(1.0))
    return np.linspace(lo, hi, args.count, endpoint=False)


def _read_times(path) -> np.ndarray:
    times = []
    with open(path, newline="", encoding="utf-8") as fh:
        for i, row in enumerate(csv.reader(fh)):
            if not row or not row[0].strip():
                continue
            try:
                times.append(float(row[0]))
            except ValueError:
                if i == 0:
                    continue
                raise TimeSeriesError(f"row {i}: non-numeric time {row[0]!r}") from None
    return np.asarray(times, dtype=float)


def cmd_generate(args) -> int:
    if args.dataset == "toy":
        if args.train < 2 or args.test < 1:
            raise UsageError("--train must be >= 2 and --test >= 1")
        train, test = datasets.gen_toy(args.train, args.test)
        prefix = args.out or "toy"
        write_csv(train, f"{prefix}_train.csv")
        write_csv(test, f"{prefix}_test.csv")
    else:
        try:
            params = datasets.MackeyGlassParams(
                beta=args.beta, gamma=args.gamma, exponent=args.exponent, tau=args.tau,
                dt=args.dt, history_value=args.history, burn_in=args.burn_in,
                sample_stride=args.stride,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if args.n < 2:
            raise UsageError("--n must be at least 2")
        series = datasets.gen_mackey_glass(args.n, params)
        write_csv(series, args.out or "mackey_glass.csv")
    return EXIT_OK


def cmd_train(args) -> int:
    config = _train_config(args)
    series = load_csv(args.input, has_time_column=not args.no_time_column)
    model, trace = fit_nd(series, config, track_units=args.track)
    save(model, args.out)
    if args.trace:
        trace.to_csv(args.trace)
    return EXIT_OK


def cmd_predict(args) -> int:
    model = load(args.model)
    times = _read_times(args.times) if args.times else _time_grid(args, model)
    preds = predict(model, times) if times.size else np.empty(0)
    _write_rows(args.out, ["time", "prediction"],
                [[_fmt(t), _fmt(p)] for t, p in zip(times, preds)])
    return EXIT_OK


def cmd_decompose(args) -> int:
    model = load(args.model)
    times = _time_grid(args, model)
    norm_t = model.preprocess.times(times)
    parts = decompose(model, norm_t)
    labels = list(parts)
    columns = [np.asarray(parts[k], dtype=float).reshape(times.shape) for k in labels]
    total = np.asarray(forward(model, norm_t), dtype=float).reshape(times.shape)
    if args.original_units:
        if model.preprocess.log_filter:
            raise UsageError("--original-units is not additive for log-filtered models")
        scale, offset = model.preprocess.v_scale, model.preprocess.v_offset
        columns = [c * scale for c in columns]
        columns[-1] = columns[-1] + offset
        total = total * scale + offset
    rows = []
    for i, t in enumerate(times):
        rows.append([_fmt(t)] + [_fmt(c[i]) for c in columns] + [_fmt(total[i])])
    _write_rows(args.out, ["time", *labels, "prediction"], rows)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    if args.model:
        model = load(args.model)
        freqs, amps = np.abs(model.frequencies), np.abs(model.amplitudes)
        rows = [[k, _fmt(f), _fmt(a)] for k, (f, a) in enumerate(zip(freqs, amps))]
    else:
        series = load_csv(args.input, has_time_column=not args.no_time_column)
        spec = fourier.dft_real(series.values)
        rows = [[k, _fmt(f), _fmt(a)]
                for k, f, a in zip(spec.bins, spec.frequencies, spec.amplitudes)]
    _write_rows(args.out, ["k", "frequency", "amplitude"], rows)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    model = load(args.model)
    test = load_csv(args.test, has_time_column=not args.no_time_column)
    report = evaluate.score(args.label, test.values, predict(model, test.times))
    print(evaluate.format_report([report]))
    if args.out:
        evaluate.write_report_csv([report], args.out)
    return EXIT_OK


def _benchmark_series(args) -> tuple[TimeSeries, SplitSpec, bool, str | None]:
    name = args.dataset
    log_filter = args.log_filter
    reference = None
    if name == "toy":
        tr, te = datasets.gen_toy(args.train or 128, args.test or 256)
        series = TimeSeries(np.concatenate([tr.times, te.times]),
                            np.concatenate([tr.values, te.values]), "toy")
        split_spec = SplitSpec(len(tr), len(te))
    elif name == "mackey-glass":
        n_train, n_test = args.train or 512, args.test or 512
        series = datasets.gen_mackey_glass(n_train + n_test)
        split_spec = SplitSpec(n_train, n_test)
    else:
        if not args.input:
            raise UsageError("--input is required unless --dataset is toy or mackey-glass")
        series = load_csv(args.input, has_time_column=not args.no_time_column)
        if name in evaluate.DATASET_SETUPS:
            default_split, default_log = evaluate.DATASET_SETUPS[name]
            reference = name
            log_filter = log_filter or default_log
            split_spec = SplitSpec(args.train or default_split.train_count,
                                   args.test or default_split.test_count)
        else:
            if not (args.train and args.test):
                raise UsageError("--train and --test are required for a custom input")
            split_spec = SplitSpec(args.train, args.test)
    return series, split_spec, log_filter, reference


def cmd_benchmark(args) -> int:
    series, split_spec, log_filter, reference = _benchmark_series(args)
    args.log_filter = log_filter
    config = _train_config(args)
    baselines = [b for b in args.baselines.split(",") if b]
    bad = set(baselines) - set(evaluate.BASELINES)
    if bad:
        raise UsageError(f"unknown baselines {sorted(bad)}; choose from {evaluate.BASELINES}")
    if split_spec.train_count + split_spec.test_count > len(series):
        raise TimeSeriesError(
            f"split {split_spec.train_count}+{split_spec.test_count} exceeds {len(series)} samples")
    reports = evaluate.run_benchmark(series, split_spec, config, baselines, reference)
    print(evaluate.format_report(reports))
    if args.out:
        evaluate.write_report_csv(reports, args.out)
    return EXIT_OK


def _add_grid_flags(p) -> None:
    p.add_argument("--from", dest="start", type=float, default=None,
                   help="first time (default: start of the training window)")
    p.add_argument("--to", dest="stop", type=float, default=None,
                   help="end of the half-open time range (default: end of the training window)")
    p.add_argument("--count", type=int, default=100)


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = _Parser(prog="neuraldecomp", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file of flag defaults; flags override it")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    subs = {}

    p = sub.add_parser("generate", help="write a synthetic dataset as CSV")
    p.add_argument("dataset", choices=["toy", "mackey-glass"])
    p.add_argument("--out", help="output file (mackey-glass) or prefix (toy)")
    p.add_argument("--train", type=int, default=128)
    p.add_argument("--test", type=int, default=256)
    p.add_argument("--n", type=int, default=1024)
    mg = datasets.MackeyGlassParams()
    p.add_argument("--beta", type=float, default=mg.beta)
    p.add_argument("--gamma", type=float, default=mg.gamma)
    p.add_argument("--exponent", type=float, default=mg.exponent)
    p.add_argument("--tau", type=float, default=mg.tau)
    p.add_argument("--dt", type=float, default=mg.dt)
    p.add_argument("--history", type=float, default=mg.history_value)
    p.add_argument("--burn-in", type=int, default=mg.burn_in)
    p.add_argument("--stride", type=int, default=mg.sample_stride)
    p.set_defaults(func=cmd_generate)
    subs["generate"] = p

    p = sub.add_parser("train", help="fit a model to a CSV series")
    p.add_argument("input")
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--no-time-column", action="store_true")
    p.add_argument("--trace", help="write per-epoch training RMSE to this CSV")
    p.add_argument("--track", type=int, nargs="*", default=(),
                   help="hidden unit indices whose frequency/amplitude go into the trace")
    _add_train_flags(p)
    p.set_defaults(func=cmd_train)
    subs["train"] = p

    p = sub.add_parser("predict", help="evaluate a saved model at given times")
    p.add_argument("model")
    _add_grid_flags(p)
    p.add_argument("--times", help="CSV whose first column holds the query times")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.set_defaults(func=cmd_predict)
    subs["predict"] = p

    p = sub.add_parser("decompose", help="per-unit contributions over a time grid")
    p.add_argument("model")
    _add_grid_flags(p)
    p.add_argument("--original-units", action="store_true",
                   help="scale contributions to data units (not for log-filtered models)")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.set_defaults(func=cmd_decompose)
    subs["decompose"] = p

    p = sub.add_parser("spectrum", help="amplitude vs frequency of a series (DFT) or a model")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="series CSV, transformed with the DFT")
    src.add_argument("--model", help="saved model; lists its sinusoid units")
    p.add_argument("--no-time-column", action="store_true")
    p.add_argument("--out", help="output CSV (default stdout)")
    p.set_defaults(func=cmd_spectrum)
    subs["spectrum"] = p

    p = sub.add_parser("evaluate", help="score a saved model on a held-out CSV")
    p.add_argument("model")
    p.add_argument("test")
    p.add_argument("--no-time-column", action="store_true")
    p.add_argument("--label", default="ND")
    p.add_argument("--out", help="report CSV")
    p.set_defaults(func=cmd_evaluate)
    subs["evaluate"] = p

    p = sub.add_parser("benchmark", help="train/test comparison against baselines")
    p.add_argument("--dataset", default="custom",
                   choices=["custom", "toy", "mackey-glass", *evaluate.DATASET_SETUPS])
    p.add_argument("--input", help="series CSV (required unless dataset is synthetic)")
    p.add_argument("--no-time-column", action="store_true")
    p.add_argument("--train", type=int, default=None, help="training sample count")
    p.add_argument("--test", type=int, default=None, help="test sample count")
    p.add_argument("--baselines", default=",".join(evaluate.BASELINES),
                   help="comma-separated subset of idft,persistence,nd_no_aug")
    p.add_argument("--out", help="report CSV")
    _add_train_flags(p)
    p.set_defaults(func=cmd_benchmark)
    subs["benchmark"] = p
    return parser, subs


def _config_defaults(path, subparser) -> dict:
    actions = {a.dest: a for a in subparser._actions}
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        dest = key.lstrip("-").replace("-", "_")
        action = actions.get(dest)
        if action is None:
            raise UsageError(f"{path}:{lineno}: unknown option {key!r}")
        if isinstance(action, argparse._StoreTrueAction):
            values[dest] = raw.lower() in ("1", "true", "yes", "on")
        else:
            try:
                values[dest] = action.type(raw) if action.type else raw
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {raw!r}") from exc
    return values


def main(argv=None) -> int:
    parser, subs = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            subs[args.command].set_defaults(**_config_defaults(args.config, subs[args.command]))
            args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"neuraldecomp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TrainingDiverged as exc:
        print(f"neuraldecomp: {exc}", file=sys.stderr)
        return EXIT_DIVERGED
    except (TimeSeriesError, PreprocessError, ModelFormatError, evaluate.UndefinedMetricError,
            OSError, ValueError, IndexError) as exc:
        print(f"neuraldecomp: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
