"""
Trend plus two sinusoids: iDFT versus Neural Decomposition
==========================================================

The signal ``sin(4.25 pi t) + sin(8.5 pi t) + 5t`` is sampled 128 times on
[0, 1) and the task is to extrapolate over [1, 3). Its periods do not divide
the window and it has a linear trend, the two things the inverse DFT cannot
represent.

Run with ``python notebooks/plot_01_toy_problem.py``; figures and CSVs go to
``notebooks/out/``.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import neuraldecomp as nd
from neuraldecomp.evaluate import idft_forecast, rmse

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

train, test = nd.gen_toy(128, 256)
grid = np.linspace(0, 3, 600, endpoint=False)

###############################################################################
# The full model: trainable frequencies plus 10 linear, 10 softplus and 10
# sigmoid augmentation units. Training takes a few seconds.

full, _ = nd.fit_nd(train)

###############################################################################
# The iDFT is the network with its initial frequencies and amplitudes taken
# from the DFT. It reproduces the training points and then repeats them.

idft_test = idft_forecast(train, full, test.times)
idft_grid = idft_forecast(train, full, grid)

###############################################################################
# Two ablations: frequencies frozen at their iDFT values, and no augmentation
# units at all.

frozen, _ = nd.fit_nd(train, nd.TrainConfig(freeze_frequencies=True))
no_aug, _ = nd.fit_nd(train, nd.TrainConfig(aug=nd.AugmentationSpec.none()))

for label, pred in [
    ("iDFT", idft_test),
    ("ND", nd.predict(full, test.times)),
    ("ND, frozen frequencies", nd.predict(frozen, test.times)),
    ("ND, g(t) = 0", nd.predict(no_aug, test.times)),
]:
    print(f"{label:<24} test RMSE {rmse(test.values, pred):.4f}")

fig, ax = plt.subplots(figsize=(9, 4))
ax.plot(train.times, train.values, ".", color="tab:blue", label="train")
ax.plot(test.times, test.values, ".", color="tab:red", ms=3, label="test")
ax.plot(grid, idft_grid, color="gray", lw=1, label="iDFT")
ax.plot(grid, nd.predict(full, grid), color="tab:green", label="ND")
ax.plot(grid, nd.predict(frozen, grid), color="tab:cyan", lw=1, label="frozen frequencies")
ax.plot(grid, nd.predict(no_aug, grid), color="tab:orange", lw=1, label="g(t) = 0")
ax.axvspan(0, 1, color="0.93")
ax.set_xlabel("t")
ax.legend(ncol=3, fontsize=8)
fig.tight_layout()
fig.savefig(out / "toy_problem.png", dpi=120)

nd.save(full, out / "toy_full.json")
nd.write_csv(nd.TimeSeries(grid, nd.predict(full, grid), "nd"), out / "toy_nd_curve.csv")
