"""Invertible time/value normalization applied before fitting.

Training times are mapped onto ``[0, (N-1)/N]`` so that evenly spaced samples
land exactly on ``k/N`` and everything after the training window is ``>= 1``.
Values are optionally log-filtered and then min-max scaled onto ``[0, 10]``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .timeseries import TimeSeries

VALUE_SPAN = 10.0


class PreprocessError(ValueError):
    pass


@dataclass(frozen=True)
class PreprocessParams:
    t_offset: float = 0.0
    t_scale: float = 1.0
    v_offset: float = 0.0
    v_scale: float = 1.0
    log_filter: bool = False

    def __post_init__(self):
        if not (self.t_scale > 0 and self.v_scale > 0):
            raise PreprocessError("t_scale and v_scale must be positive")
        for x in (self.t_offset, self.t_scale, self.v_offset, self.v_scale):
            if not np.isfinite(x):
                raise PreprocessError("preprocessing parameters must be finite")

    @classmethod
    def identity(cls) -> "PreprocessParams":
        return cls()

    def times(self, raw_times) -> np.ndarray:
        return (np.asarray(raw_times, dtype=float) - self.t_offset) / self.t_scale

    def values(self, raw_values) -> np.ndarray:
        v = np.asarray(raw_values, dtype=float)
        if self.log_filter:
            if np.any(v <= 0):
                raise PreprocessError("log filter requires strictly positive values")
            v = np.log(v)
        return (v - self.v_offset) / self.v_scale

    def invert_times(self, norm_times) -> np.ndarray:
        return np.asarray(norm_times, dtype=float) * self.t_scale + self.t_offset


def fit(train: TimeSeries, log_filter: bool = False) -> PreprocessParams:
    n = len(train)
    t_min, t_max = float(train.times[0]), float(train.times[-1])
    span = t_max - t_min
    if not span > 0:
        raise PreprocessError("degenerate time axis: all times equal")
    values = np.asarray(train.values, dtype=float)
    if log_filter:
        if np.any(values <= 0):
            raise PreprocessError("log filter requires strictly positive values")
        values = np.log(values)
    v_min, v_max = float(values.min()), float(values.max())
    if v_max > v_min:
        v_offset, v_scale = v_min, (v_max - v_min) / VALUE_SPAN
    else:
        v_offset, v_scale = v_min - VALUE_SPAN / 2, 1.0
    return PreprocessParams(
        t_offset=t_min,
        t_scale=span * n / (n - 1),
        v_offset=v_offset,
        v_scale=v_scale,
        log_filter=log_filter,
    )


def apply(params: PreprocessParams, series: TimeSeries) -> TimeSeries:
    return TimeSeries(params.times(series.times), params.values(series.values), series.name)


def invert_values(params: PreprocessParams, predictions) -> np.ndarray:
    v = np.asarray(predictions, dtype=float) * params.v_scale + params.v_offset
    if params.log_filter:
        v = np.exp(v)
    return v
