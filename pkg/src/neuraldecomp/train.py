"""Stochastic gradient descent with L1 shrinkage on the output layer."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import preprocess as pp
from ._kernels import sgd_epoch
from .model import (
    ActivationKind,
    AugmentationSpec,
    NDModel,
    activate,
    activate_deriv,
    forward,
    init,
)
from .timeseries import TimeSeries


class TrainingDiverged(RuntimeError):
    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"training diverged at epoch {epoch} (non-finite error)")


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    l1_strength: float = 1e-2
    epochs: int = 20000
    seed: int = 0
    aug: AugmentationSpec = field(default_factory=AugmentationSpec)
    log_filter: bool = False
    freeze_frequencies: bool = False

    def __post_init__(self):
        if not self.learning_rate >= 0:
            raise ValueError("learning_rate must be nonnegative")
        if not self.l1_strength >= 0:
            raise ValueError("l1_strength must be nonnegative")
        if int(self.epochs) != self.epochs or self.epochs < 1:
            raise ValueError("epochs must be a positive integer")

    @property
    def shrink_per_step(self) -> float:
        return self.l1_strength * self.learning_rate


@dataclass
class TrainTrace:
    """Per-epoch training RMSE (normalized units) and optional parameter snapshots.

    The RMSE of an epoch is taken over the residuals seen just before each
    sample's update, so it lags the end-of-epoch model slightly.
    """

    rmse: list[float] = field(default_factory=list)
    tracked_units: tuple[int, ...] = ()
    frequencies: list[np.ndarray] = field(default_factory=list)
    amplitudes: list[np.ndarray] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rmse)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            header = ["epoch", "rmse"]
            for u in self.tracked_units:
                header += [f"freq_{u}", f"amp_{u}"]
            writer.writerow(header)
            for e, r in enumerate(self.rmse):
                row = [e + 1, repr(r)]
                for i in range(len(self.tracked_units)):
                    row += [repr(float(self.frequencies[e][i])), repr(float(self.amplitudes[e][i]))]
                writer.writerow(row)


def gradient(model: NDModel, t: float, target: float) -> np.ndarray:
    """Gradient of ``0.5 * (forward(t) - target)**2``, laid out like ``get_params``."""
    t = float(t)
    z = t * model.input_weights + model.biases
    h = activate(model.kinds, z)
    d = activate_deriv(model.kinds, z)
    r = float(h @ model.output_weights + model.output_bias) - target
    gz = r * model.output_weights * d
    return np.concatenate([gz * t, gz, r * h, [r]])


def l1_shrink(model: NDModel, amount: float) -> None:
    """Soft-threshold every output weight toward zero by ``amount``.

    The output bias is not a weight and is left alone.
    """
    if amount < 0:
        raise ValueError("shrink amount must be nonnegative")
    a = model.output_weights
    model.output_weights = np.sign(a) * np.maximum(np.abs(a) - amount, 0.0)


def train_model(model: NDModel, times, targets, config: TrainConfig,
                track_units=(), rng: np.random.Generator | None = None) -> TrainTrace:
    """Run ``config.epochs`` SGD epochs on already normalized data, in place."""
    times = np.ascontiguousarray(times, dtype=float)
    targets = np.ascontiguousarray(targets, dtype=float)
    if rng is None:
        rng = np.random.default_rng(config.seed)
    trainable = np.ones(model.n_hidden, dtype=np.bool_)
    if config.freeze_frequencies:
        trainable[model.kinds == ActivationKind.SINUSOID] = False
    kinds = np.ascontiguousarray(model.kinds, dtype=np.int64)
    w, b, a = model.input_weights, model.biases, model.output_weights
    c = np.array([model.output_bias])
    h = np.empty(model.n_hidden)
    d = np.empty(model.n_hidden)
    track = tuple(int(u) for u in track_units)
    trace = TrainTrace(tracked_units=track)
    n = times.size
    for epoch in range(1, int(config.epochs) + 1):
        order = rng.permutation(n)
        sse = sgd_epoch(kinds, w, b, a, c, times, targets, order,
                        config.learning_rate, config.shrink_per_step, trainable, h, d)
        rmse = float(np.sqrt(sse / n))
        if not np.isfinite(rmse):
            model.output_bias = float(c[0])
            raise TrainingDiverged(epoch)
        trace.rmse.append(rmse)
        if track:
            trace.frequencies.append(w[list(track)].copy())
            trace.amplitudes.append(a[list(track)].copy())
    model.output_bias = float(c[0])
    return trace


def fit_nd(train: TimeSeries, config: TrainConfig | None = None,
           track_units=()) -> tuple[NDModel, TrainTrace]:
    """Fit preprocessing and train a fresh network with one sinusoid per sample."""
    if config is None:
        config = TrainConfig()
    params = pp.fit(train, log_filter=config.log_filter)
    norm = pp.apply(params, train)
    rng = np.random.default_rng(config.seed)
    # init and shuffling draw from independent child streams of the same seed
    init_seed, order_seed = rng.integers(0, 2**63, size=2)
    model = init(len(train), config.aug, seed=int(init_seed), preprocess=params)
    trace = train_model(model, norm.times, norm.values, config, track_units,
                        rng=np.random.default_rng(order_seed))
    return model, trace


def training_rmse(model: NDModel, train: TimeSeries) -> float:
    norm_t = model.preprocess.times(train.times)
    norm_v = model.preprocess.values(train.values)
    return float(np.sqrt(np.mean((forward(model, norm_t) - norm_v) ** 2)))
