"""
Mackey-Glass: a chaotic series
==============================

512 training and 512 test points from the delay equation with tau = 17.
Both the full model and the ``g(t) = 0`` ablation are trained; this takes a
few minutes.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import neuraldecomp as nd
from neuraldecomp.evaluate import format_report, run_benchmark

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

series = nd.gen_mackey_glass(1024)
nd.write_csv(series, out / "mackey_glass.csv")
split = nd.SplitSpec(512, 512)

reports = run_benchmark(series, split)
print(format_report(reports))

###############################################################################
# How much the augmentation units are used after training. On this series
# the L1 shrink typically removes all of them.

model = reports[0].model
print("augmentation output weights:", np.round(model.output_weights[model.n_sinusoids:], 4))

train, test = nd.split(series, split)
fig, ax = plt.subplots(figsize=(10, 3.5))
ax.plot(train.times, train.values, ".", ms=2, color="tab:blue")
ax.plot(test.times, test.values, ".", ms=2, color="tab:red")
ax.plot(test.times, nd.predict(model, test.times), color="tab:green", label="ND")
ax.plot(test.times, nd.predict(reports[1].model, test.times), color="tab:orange",
        lw=1, label="g(t) = 0")
ax.legend()
fig.tight_layout()
fig.savefig(out / "mackey_glass.png", dpi=120)
