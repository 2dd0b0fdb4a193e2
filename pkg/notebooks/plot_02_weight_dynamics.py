"""
How the frequencies and amplitudes move during training
=======================================================

Tracks the two sinusoid units that end up carrying the toy signal, and
compares the amplitude spectrum the DFT needs with the handful of units the
trained network keeps.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

import neuraldecomp as nd

out = Path(__file__).parent / "out"
out.mkdir(exist_ok=True)

train, _ = nd.gen_toy(128, 256)

###############################################################################
# A first run finds which units survive. Training is deterministic, so a
# second run with tracking enabled follows the same path.

model, _ = nd.fit_nd(train)
keep = tuple(int(i) for i in np.argsort(-np.abs(model.amplitudes))[:4])
model, trace = nd.fit_nd(train, track_units=keep)
trace.to_csv(out / "toy_trace.csv")

freqs = np.array(trace.frequencies)
amps = np.array(trace.amplitudes)
epochs = np.arange(1, len(trace) + 1)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
for i, unit in enumerate(keep):
    ax1.plot(epochs, freqs[:, i], label=f"unit {unit}")
    ax2.plot(epochs, amps[:, i], label=f"unit {unit}")
ax1.set_xlabel("epoch")
ax1.set_ylabel("frequency")
ax2.set_xlabel("epoch")
ax2.set_ylabel("amplitude")
ax1.legend(fontsize=8)
fig.tight_layout()
fig.savefig(out / "toy_weight_dynamics.png", dpi=120)

###############################################################################
# Frequency-domain view. The DFT spreads energy over every bin; the trained
# model uses two sinusoids near 4.25 pi and 8.5 pi plus the linear units.

norm = model.preprocess.values(train.values)
spectrum = nd.dft_real(norm)
f_nd, a_nd = nd.model.frequency_spectrum(model)
print("active sinusoids:", int(np.sum(a_nd > 1e-2)))
print("their frequencies / pi:", np.round(f_nd[a_nd > 1e-2] / np.pi, 3))

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.5), sharey=True)
ax1.stem(spectrum.frequencies, spectrum.amplitudes)
ax1.set_title("iDFT")
ax2.stem(f_nd, a_nd)
ax2.set_title("ND")
for ax in (ax1, ax2):
    ax.set_xlim(0, 80)
    ax.set_xlabel("angular frequency (normalized time)")
ax1.set_ylabel("amplitude")
fig.tight_layout()
fig.savefig(out / "toy_spectra.png", dpi=120)
