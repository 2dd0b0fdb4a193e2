"""Sampled time series, train/test splitting and CSV input/output."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np


class TimeSeriesError(ValueError):
    """Raised for malformed series or unreadable CSV data."""


class CSVParseError(TimeSeriesError):
    def __init__(self, row: int, message: str):
        self.row = row
        super().__init__(f"row {row}: {message}")


class OrderingError(TimeSeriesError):
    pass


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Ordered ``(time, value)`` samples, possibly irregularly spaced."""

    times: np.ndarray
    values: np.ndarray
    name: str = ""

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float)
        if times.ndim != 1 or values.ndim != 1:
            raise TimeSeriesError("times and values must be one-dimensional")
        if times.shape != values.shape:
            raise TimeSeriesError(
                f"length mismatch: {times.size} times, {values.size} values"
            )
        if times.size < 2:
            raise TimeSeriesError("a series needs at least 2 samples")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise TimeSeriesError("times and values must be finite")
        if np.any(np.diff(times) <= 0):
            raise OrderingError("times must be strictly increasing")
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_values(cls, values, name: str = "") -> "TimeSeries":
        values = np.asarray(values, dtype=float)
        return cls(np.arange(values.size, dtype=float), values, name)

    def __len__(self) -> int:
        return self.times.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return np.array_equal(self.times, other.times) and np.array_equal(
            self.values, other.values
        )

    def __repr__(self) -> str:
        return f"TimeSeries(name={self.name!r}, n={len(self)}, t=[{self.times[0]:g}, {self.times[-1]:g}])"


@dataclass(frozen=True)
class SplitSpec:
    train_count: int
    test_count: int

    def __post_init__(self):
        if self.train_count < 1 or self.test_count < 1:
            raise ValueError("train_count and test_count must be positive")


def split(series: TimeSeries, spec: SplitSpec) -> tuple[TimeSeries, TimeSeries]:
    """Leading ``train_count`` samples for training, the next ``test_count`` for testing."""
    end = spec.train_count + spec.test_count
    if end > len(series):
        raise IndexError(
            f"split {spec.train_count}+{spec.test_count} exceeds series length {len(series)}"
        )
    # a single held-out sample is allowed, so the test half skips the >=2 check
    train = TimeSeries(series.times[: spec.train_count], series.values[: spec.train_count], series.name)
    test = held_out(series.times[spec.train_count:end], series.values[spec.train_count:end], series.name)
    return train, test


def held_out(times, values, name="") -> TimeSeries:
    """Build a test-side series, which may legitimately hold a single sample."""
    if len(times) >= 2:
        return TimeSeries(times, values, name)
    ts = object.__new__(TimeSeries)
    object.__setattr__(ts, "times", np.array(times, dtype=float))
    object.__setattr__(ts, "values", np.array(values, dtype=float))
    object.__setattr__(ts, "name", name)
    return ts


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def load_csv(path, has_time_column: bool | None = True, name: str | None = None) -> TimeSeries:
    """Read a one- or two-column CSV.

    A single non-numeric first row is treated as a header. Without a time
    column the samples get the implicit times ``0, 1, 2, ...``. Pass
    ``has_time_column=None`` to infer it from the width of the first row.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [row for row in csv.reader(fh) if row and any(c.strip() for c in row)]
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    if has_time_column is None:
        has_time_column = bool(rows) and len(rows[0]) == 2
    ncols = 2 if has_time_column else 1
    times, values = [], []
    for i, row in enumerate(rows):
        cells = [c.strip() for c in row]
        if len(cells) != ncols:
            raise CSVParseError(i, f"expected {ncols} column(s), got {len(cells)}")
        try:
            nums = [float(c) for c in cells]
        except ValueError:
            raise CSVParseError(i, f"non-numeric cell in {cells!r}") from None
        if has_time_column:
            times.append(nums[0])
        values.append(nums[-1])
    if not has_time_column:
        times = list(range(len(values)))
    if name is None:
        name = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return TimeSeries(times, values, name)


def write_csv(series: TimeSeries, path) -> None:
    """Write ``time,value`` rows using shortest round-tripping float repr."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write("time,value\n")
        for t, v in zip(series.times, series.values):
            fh.write(f"{_fmt(t)},{_fmt(v)}\n")


def _fmt(x: float) -> str:
    x = float(x)
    if x.is_integer() and abs(x) < 1e16 and not (x == 0 and np.signbit(x)):
        return str(int(x))
    return repr(x)
