"""Synthetic series: the trend-plus-sinusoids toy problem and Mackey-Glass."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .timeseries import TimeSeries, held_out


def toy_signal(t):
    t = np.asarray(t, dtype=float)
    return np.sin(4.25 * np.pi * t) + np.sin(8.5 * np.pi * t) + 5.0 * t


def gen_toy(n_train: int = 128, n_test: int = 256) -> tuple[TimeSeries, TimeSeries]:
    """Train on ``n_train`` points over [0, 1), test on ``n_test`` over [1, 3)."""
    if n_train < 2 or n_test < 1:
        raise ValueError("gen_toy needs n_train >= 2 and n_test >= 1")
    t_train = np.arange(n_train) / n_train
    t_test = 1.0 + 2.0 * np.arange(n_test) / n_test
    return (
        TimeSeries(t_train, toy_signal(t_train), "toy"),
        held_out(t_test, toy_signal(t_test), "toy"),
    )


class IntegrationError(RuntimeError):
    pass


@dataclass(frozen=True)
class MackeyGlassParams:
    beta: float = 0.2
    gamma: float = 0.1
    exponent: float = 10.0
    tau: float = 17.0
    dt: float = 1.0
    history_value: float = 1.2
    burn_in: int = 1000
    sample_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.tau > 0:
            raise ValueError("tau must be positive")
        if self.sample_stride < 1:
            raise ValueError("sample_stride must be at least 1")
        if self.burn_in < 0:
            raise ValueError("burn_in must be nonnegative")


def _mg_rhs(x, x_delayed, p: MackeyGlassParams):
    return p.beta * x_delayed / (1.0 + x_delayed**p.exponent) - p.gamma * x


def gen_mackey_glass(n_total: int = 1024, params: MackeyGlassParams | None = None) -> TimeSeries:
    """Integrate the Mackey-Glass delay equation with RK4.

    The delayed state comes from linear interpolation on the stored
    trajectory, with a constant history before ``t = 0``. After ``burn_in``
    steps every ``sample_stride``-th state is emitted with integer times.
    """
    p = params or MackeyGlassParams()
    if n_total < 2:
        raise ValueError("n_total must be at least 2")
    n_steps = p.burn_in + (n_total - 1) * p.sample_stride
    x = np.empty(n_steps + 1)
    x[0] = p.history_value
    dt = p.dt
    lag = p.tau / dt

    def delayed(s: float) -> float:
        # state at step position s (may be fractional or negative)
        if s <= 0:
            return x[0] if s == 0 else p.history_value
        i = int(np.floor(s))
        frac = s - i
        if frac == 0.0:
            return x[i]
        return (1.0 - frac) * x[i] + frac * x[i + 1]

    for i in range(n_steps):
        xi = x[i]
        d0 = delayed(i - lag)
        dh = delayed(i + 0.5 - lag)
        d1 = delayed(i + 1 - lag)
        k1 = _mg_rhs(xi, d0, p)
        k2 = _mg_rhs(xi + 0.5 * dt * k1, dh, p)
        k3 = _mg_rhs(xi + 0.5 * dt * k2, dh, p)
        k4 = _mg_rhs(xi + dt * k3, d1, p)
        x[i + 1] = xi + dt / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.isfinite(x[i + 1]):
            raise IntegrationError(f"non-finite state at step {i + 1}")
    values = x[p.burn_in :: p.sample_stride][:n_total]
    return TimeSeries.from_values(values, name="mackey-glass")
