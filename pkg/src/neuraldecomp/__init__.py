"""Neural Decomposition: trainable sinusoid-plus-trend models for extrapolating time series."""

from .datasets import MackeyGlassParams, gen_mackey_glass, gen_toy
from .fourier import Spectrum, dft_real, idft_configure, idft_eval
from .model import (
    ActivationKind,
    AugmentationSpec,
    HiddenUnit,
    NDModel,
    decompose,
    forward,
    init,
    load,
    predict,
    save,
)
from .preprocess import PreprocessParams
from .timeseries import SplitSpec, TimeSeries, load_csv, split, write_csv
from .train import TrainConfig, TrainTrace, TrainingDiverged, fit_nd, gradient, l1_shrink

__version__ = "0.1.0"
