"""Forecast error metrics and the train/test benchmark harness."""

from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .fourier import dft_real, idft_eval
from .model import AugmentationSpec, NDModel, predict
from .preprocess import invert_values
from .timeseries import SplitSpec, TimeSeries, split
from .train import TrainConfig, fit_nd

BASELINES = ("idft", "persistence", "nd_no_aug")


class UndefinedMetricError(ValueError):
    pass


def _pair(actual, predicted):
    a = np.asarray(actual, dtype=float)
    p = np.asarray(predicted, dtype=float)
    if a.shape != p.shape or a.ndim != 1:
        raise ValueError(f"length mismatch: {a.shape} actual vs {p.shape} predicted")
    if a.size == 0:
        raise ValueError("metrics need at least one sample")
    return a, p


def mape(actual, predicted) -> float:
    """Mean absolute percent error as a fraction (0.1 == 10%)."""
    a, p = _pair(actual, predicted)
    if np.any(a == 0):
        raise UndefinedMetricError("MAPE is undefined when an actual value is zero")
    return float(np.mean(np.abs((a - p) / a)))


def rmse(actual, predicted) -> float:
    a, p = _pair(actual, predicted)
    return float(np.sqrt(np.mean((a - p) ** 2)))


@dataclass(frozen=True)
class EvalReport:
    model_label: str
    mape: float | None
    rmse: float | None
    n_test: int
    published: bool = False
    model: NDModel | None = field(default=None, repr=False, compare=False)

    @property
    def mape_percent(self) -> float | None:
        return None if self.mape is None else 100.0 * self.mape


def score(label: str, actual, predicted, model=None) -> EvalReport:
    try:
        m = mape(actual, predicted)
    except UndefinedMetricError:
        m = None
    return EvalReport(label, m, rmse(actual, predicted), len(actual), model=model)


# Published test errors for the four real-world problems: (MAPE %, RMSE).
# None marks the "N/A" cells. These are reference rows, never recomputed here.
PUBLISHED = {
    "labor": {
        "ARIMA": (39.42, 2.97), "SARIMA": (29.69, 2.41), "SVR": (25.14, 2.18),
        "deep Fourier NN": (34.38, 2.81), "ESN": (15.73, 1.09), "LSTM": (14.63, 1.14),
        "ND": (10.89, 1.09),
    },
    "airline": {
        "ARIMA": (12.34, 75.32), "SARIMA": (13.33, 67.54), "SVR": (47.04, 209.57),
        "deep Fourier NN": (19.89, 94.47), "ESN": (12.05, 63.50), "LSTM": (18.95, 93.61),
        "ND": (9.52, 45.03),
    },
    "ozone": {
        "ARIMA": (39.50, 1.33), "SARIMA": (22.71, 1.06), "SVR": (49.53, 1.83),
        "deep Fourier NN": (77.19, 3.71), "ESN": (16.15, 0.705), "LSTM": (16.52, 0.667),
        "ND": (21.59, 0.99),
    },
    "speleothem": {
        "ARIMA": (None, None), "SARIMA": (None, None), "SVR": (8.50, 1.078),
        "deep Fourier NN": (None, None), "ESN": (None, None), "LSTM": (None, None),
        "ND": (1.89, 0.214),
    },
}

# split sizes and log-filter use for the real-world problems
DATASET_SETUPS = {
    "labor": (SplitSpec(258, 96), False),
    "airline": (SplitSpec(72, 72), True),
    "ozone": (SplitSpec(152, 44), True),
    "speleothem": (SplitSpec(250, 132), False),
}


def published_reports(dataset: str) -> list[EvalReport]:
    rows = []
    for label, (mape_pct, err) in PUBLISHED[dataset].items():
        rows.append(EvalReport(
            f"{label} (published)",
            None if mape_pct is None else mape_pct / 100.0,
            err,
            DATASET_SETUPS[dataset][0].test_count,
            published=True,
        ))
    return rows


def idft_forecast(train: TimeSeries, model_like: NDModel, times) -> np.ndarray:
    """Periodic extrapolation of the training samples, on the ND model's axes."""
    params = model_like.preprocess
    spectrum = dft_real(params.values(train.values))
    return invert_values(params, idft_eval(spectrum, params.times(times)))


def persistence_forecast(train: TimeSeries, times) -> np.ndarray:
    return np.full(len(times), train.values[-1])


def run_benchmark(series: TimeSeries, spec: SplitSpec, config: TrainConfig | None = None,
                  baselines=BASELINES, reference: str | None = None) -> list[EvalReport]:
    """Train ND on the leading samples and score it, plus baselines, on the rest.

    ``reference`` names a real-world problem whose published rows are appended
    (marked ``published=True``).
    """
    if config is None:
        config = TrainConfig()
    unknown = set(baselines) - set(BASELINES)
    if unknown:
        raise ValueError(f"unknown baselines: {sorted(unknown)}")
    train, test = split(series, spec)
    model, _ = fit_nd(train, config)
    reports = [score("ND", test.values, predict(model, test.times), model)]
    if "nd_no_aug" in baselines:
        cfg = dataclasses.replace(config, aug=AugmentationSpec.none())
        ablated, _ = fit_nd(train, cfg)
        reports.append(score("ND (g=0)", test.values, predict(ablated, test.times), ablated))
    if "idft" in baselines:
        reports.append(score("iDFT", test.values, idft_forecast(train, model, test.times)))
    if "persistence" in baselines:
        reports.append(score("persistence", test.values, persistence_forecast(train, test.times)))
    if reference is not None:
        reports.extend(published_reports(reference))
    return reports


def _cell(x, fmt):
    return "N/A" if x is None else format(x, fmt)


def _csv_cell(x):
    return "N/A" if x is None else repr(float(x))


def write_report_csv(reports, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["model", "mape_percent", "rmse"])
        for r in reports:
            writer.writerow([r.model_label, _csv_cell(r.mape_percent), _csv_cell(r.rmse)])


def format_report(reports) -> str:
    """Aligned plain-text table, percent MAPE and RMSE in data units."""
    rows = [("model", "MAPE %", "RMSE")]
    rows += [(r.model_label, _cell(r.mape_percent, ".2f"), _cell(r.rmse, ".4g")) for r in reports]
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    lines = []
    for i, row in enumerate(rows):
        lines.append(f"{row[0]:<{widths[0]}}  {row[1]:>{widths[1]}}  {row[2]:>{widths[2]}}")
        if i == 0:
            lines.append("-" * len(lines[0]))
    return "\n".join(lines)
