"""Direct real-input DFT and its continuous inverse.

The inverse is evaluated in normalized time, where sample ``n`` of ``N`` sits at
``t = n/N`` and bin ``k`` oscillates at angular frequency ``2*pi*k``. Being a
sum of periodic terms it repeats with period 1, which makes it the naive
periodic-extrapolation baseline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ActivationKind, ModelConfigError, NDModel


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Real and imaginary coefficients for bins ``0..N//2``.

    Coefficients already carry the ``1/N`` normalization and the doubling of
    bins that have a conjugate partner, so the reconstruction is a plain sum.
    """

    real: np.ndarray
    imag: np.ndarray
    n: int

    def __post_init__(self):
        real = np.asarray(self.real, dtype=float)
        imag = np.asarray(self.imag, dtype=float)
        if real.shape != (self.n // 2 + 1,) or imag.shape != real.shape:
            raise ValueError(f"spectrum of N={self.n} needs {self.n // 2 + 1} bins")
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "imag", imag)

    @property
    def bins(self) -> np.ndarray:
        return np.arange(self.n // 2 + 1)

    @property
    def frequencies(self) -> np.ndarray:
        """Angular frequency of each bin in normalized time."""
        return 2.0 * np.pi * self.bins

    @property
    def amplitudes(self) -> np.ndarray:
        return np.hypot(self.real, self.imag)


def dft_real(values) -> Spectrum:
    x = np.asarray(values, dtype=float)
    n = x.size
    if x.ndim != 1 or n < 2:
        raise ValueError("dft_real needs a 1-D sequence of at least 2 values")
    k = np.arange(n // 2 + 1)
    # reduce k*j mod n in integers so the angle stays exact for large n
    angle = 2.0 * np.pi * (np.outer(k, np.arange(n)) % n) / n
    weight = np.full(k.size, 2.0 / n)
    weight[0] = 1.0 / n
    if n % 2 == 0:
        weight[-1] = 1.0 / n
    real = weight * (np.cos(angle) @ x)
    imag = -weight * (np.sin(angle) @ x)
    return Spectrum(real, imag, n)


def idft_eval(spectrum: Spectrum, t):
    """Evaluate ``sum_k R_k cos(2 pi k t) - I_k sin(2 pi k t)``."""
    t = np.asarray(t, dtype=float)
    # wrapping into [0, 1) keeps the period exact for large |t|
    phase = 2.0 * np.pi * np.outer(np.mod(t.ravel(), 1.0), spectrum.bins)
    out = np.cos(phase) @ spectrum.real - np.sin(phase) @ spectrum.imag
    out = out.reshape(t.shape)
    return float(out) if out.ndim == 0 else out


def idft_configure(model: NDModel, spectrum: Spectrum) -> None:
    """Set output weights so ``forward(model, t) == idft_eval(spectrum, t)``.

    Even units (cosines) take ``R_k`` and odd units (negated sines) take
    ``I_k``. The DC term goes to the output bias. Unit 1 (frequency 0, a
    negated sine) is identically zero, so it is retuned to carry the one term
    that has no unit of its own: the Nyquist cosine for even ``N``, the top
    bin's sine for odd ``N``.
    """
    n = spectrum.n
    if model.n_sinusoids != n:
        raise ModelConfigError(
            f"model has {model.n_sinusoids} sinusoid units, spectrum has N={n}"
        )
    top = n // 2
    weights = np.zeros(model.n_hidden)
    for k in range(2, n):
        j = k // 2
        weights[k] = spectrum.real[j] if k % 2 == 0 else spectrum.imag[j]
    model.input_weights[1] = 2.0 * np.pi * top
    if n % 2 == 0:
        model.biases[1] = np.pi / 2
        weights[1] = spectrum.real[top]
    else:
        model.biases[1] = np.pi
        weights[1] = spectrum.imag[top]
    model.output_weights = weights
    model.output_bias = float(spectrum.real[0])
