"""The Neural Decomposition network: N sinusoid units plus augmentation units.

The hidden layer maps a scalar normalized time ``t`` through ``act(w * t + b)``;
a single linear output unit sums the activations with the output weights and
adds an output bias. For sinusoid units ``w`` is the frequency, ``b`` the phase
shift and the output weight the amplitude.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .preprocess import PreprocessParams, invert_values

FORMAT_NAME = "neuraldecomp-model"
FORMAT_VERSION = 1

# half-width of the uniform draws used for "small random" initial values
INIT_SCALE = 0.01


class ModelConfigError(ValueError):
    pass


class ModelFormatError(ValueError):
    pass


class ActivationKind(enum.IntEnum):
    SINUSOID = 0
    LINEAR = 1
    SOFTPLUS = 2
    SIGMOID = 3


class HiddenUnit(NamedTuple):
    kind: ActivationKind
    input_weight: float
    bias: float


@dataclass(frozen=True)
class AugmentationSpec:
    linear_count: int = 10
    softplus_count: int = 10
    sigmoid_count: int = 10

    def __post_init__(self):
        if min(self.linear_count, self.softplus_count, self.sigmoid_count) < 0:
            raise ModelConfigError("augmentation unit counts must be nonnegative")

    @classmethod
    def none(cls) -> "AugmentationSpec":
        return cls(0, 0, 0)

    @property
    def total(self) -> int:
        return self.linear_count + self.softplus_count + self.sigmoid_count

    def kinds(self) -> list[ActivationKind]:
        return (
            [ActivationKind.LINEAR] * self.linear_count
            + [ActivationKind.SOFTPLUS] * self.softplus_count
            + [ActivationKind.SIGMOID] * self.sigmoid_count
        )


def softplus(z):
    z = np.asarray(z, dtype=float)
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


def sigmoid(z):
    z = np.asarray(z, dtype=float)
    # exp of a nonpositive argument only, so neither branch overflows
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def activate(kinds: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Hidden activations for pre-activations ``z``; broadcasts over leading axes."""
    return np.select(
        [kinds == ActivationKind.SINUSOID, kinds == ActivationKind.LINEAR,
         kinds == ActivationKind.SOFTPLUS],
        [np.sin(z), z, softplus(z)],
        default=sigmoid(z),
    )


def activate_deriv(kinds: np.ndarray, z: np.ndarray) -> np.ndarray:
    s = sigmoid(z)
    return np.select(
        [kinds == ActivationKind.SINUSOID, kinds == ActivationKind.LINEAR,
         kinds == ActivationKind.SOFTPLUS],
        [np.cos(z), np.ones_like(z), s],
        default=s * (1.0 - s),
    )


@dataclass(eq=False)
class NDModel:
    """Parameters of a trained or freshly initialized network.

    ``kinds``, ``input_weights`` and ``biases`` describe the hidden units,
    sinusoids first. ``preprocess`` maps raw data onto the network's
    normalized axes and back.
    """

    kinds: np.ndarray
    input_weights: np.ndarray
    biases: np.ndarray
    output_weights: np.ndarray
    output_bias: float = 0.0
    preprocess: PreprocessParams = field(default_factory=PreprocessParams.identity)

    def __post_init__(self):
        self.kinds = np.asarray(self.kinds, dtype=np.int64)
        self.input_weights = np.array(self.input_weights, dtype=float)
        self.biases = np.array(self.biases, dtype=float)
        self.output_weights = np.array(self.output_weights, dtype=float)
        self.output_bias = float(self.output_bias)
        m = self.kinds.size
        if not (self.input_weights.size == self.biases.size == self.output_weights.size == m):
            raise ModelConfigError("hidden and output parameter arrays differ in length")
        sin_mask = self.kinds == ActivationKind.SINUSOID
        n_sin = int(sin_mask.sum())
        if not np.all(sin_mask[:n_sin]):
            raise ModelConfigError("sinusoid units must precede augmentation units")

    @property
    def n_sinusoids(self) -> int:
        return int(np.count_nonzero(self.kinds == ActivationKind.SINUSOID))

    @property
    def n_hidden(self) -> int:
        return self.kinds.size

    @property
    def hidden(self) -> list[HiddenUnit]:
        return [
            HiddenUnit(ActivationKind(k), float(w), float(b))
            for k, w, b in zip(self.kinds, self.input_weights, self.biases)
        ]

    @property
    def frequencies(self) -> np.ndarray:
        return self.input_weights[: self.n_sinusoids]

    @property
    def phases(self) -> np.ndarray:
        return self.biases[: self.n_sinusoids]

    @property
    def amplitudes(self) -> np.ndarray:
        return self.output_weights[: self.n_sinusoids]

    def copy(self) -> "NDModel":
        return NDModel(
            self.kinds.copy(), self.input_weights.copy(), self.biases.copy(),
            self.output_weights.copy(), self.output_bias, self.preprocess,
        )

    # flat parameter vector: input weights, biases, output weights, output bias
    def get_params(self) -> np.ndarray:
        return np.concatenate(
            [self.input_weights, self.biases, self.output_weights, [self.output_bias]]
        )

    def set_params(self, flat) -> None:
        flat = np.asarray(flat, dtype=float)
        m = self.n_hidden
        if flat.size != 3 * m + 1:
            raise ModelConfigError(f"expected {3 * m + 1} parameters, got {flat.size}")
        self.input_weights = flat[:m].copy()
        self.biases = flat[m : 2 * m].copy()
        self.output_weights = flat[2 * m : 3 * m].copy()
        self.output_bias = float(flat[3 * m])

    def params_equal(self, other: "NDModel") -> bool:
        return (
            np.array_equal(self.kinds, other.kinds)
            and np.array_equal(self.get_params(), other.get_params())
            and self.preprocess == other.preprocess
        )

    def hidden_activations(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        z = t[..., None] * self.input_weights + self.biases
        return activate(self.kinds, z)


def init(n_sinusoids: int, aug: AugmentationSpec | None = None, seed: int = 0,
         preprocess: PreprocessParams | None = None) -> NDModel:
    """Build a network whose sinusoids mimic the inverse DFT basis.

    Unit ``k`` gets frequency ``2*pi*floor(k/2)`` and phase ``pi/2`` (even ``k``,
    a cosine) or ``pi`` (odd ``k``, a negated sine). Output weights start as
    small uniform noise, and augmentation units start near the identity.
    """
    if aug is None:
        aug = AugmentationSpec()
    if n_sinusoids < 1:
        raise ModelConfigError("n_sinusoids must be at least 1")
    rng = np.random.default_rng(seed)
    k = np.arange(n_sinusoids)
    freqs = 2.0 * np.pi * (k // 2)
    phases = np.where(k % 2 == 0, np.pi / 2, np.pi)
    m = n_sinusoids + aug.total
    out_w = rng.uniform(-INIT_SCALE, INIT_SCALE, size=m)
    out_b = rng.uniform(-INIT_SCALE, INIT_SCALE)
    aug_w = 1.0 + rng.uniform(-INIT_SCALE, INIT_SCALE, size=aug.total)
    aug_b = rng.uniform(-INIT_SCALE, INIT_SCALE, size=aug.total)
    kinds = [ActivationKind.SINUSOID] * n_sinusoids + aug.kinds()
    return NDModel(
        kinds=np.array(kinds, dtype=np.int64),
        input_weights=np.concatenate([freqs, aug_w]),
        biases=np.concatenate([phases, aug_b]),
        output_weights=out_w,
        output_bias=out_b,
        preprocess=preprocess if preprocess is not None else PreprocessParams.identity(),
    )


def forward(model: NDModel, t):
    """Network output at normalized time(s) ``t``, in normalized value units."""
    h = model.hidden_activations(t)
    out = h @ model.output_weights + model.output_bias
    return float(out) if np.ndim(out) == 0 else out


def predict(model: NDModel, raw_times) -> np.ndarray:
    t = model.preprocess.times(np.atleast_1d(np.asarray(raw_times, dtype=float)))
    return invert_values(model.preprocess, forward(model, t))


def component_labels(model: NDModel) -> list[str]:
    labels = []
    counters: dict[str, int] = {}
    for kind in model.kinds:
        name = ActivationKind(kind).name.lower()
        i = counters.get(name, 0)
        counters[name] = i + 1
        labels.append(f"{name}_{i}")
    return labels + ["bias"]


def decompose(model: NDModel, t) -> dict[str, float | np.ndarray]:
    """Per-unit contributions to ``forward(model, t)`` plus the output bias."""
    h = model.hidden_activations(t) * model.output_weights
    parts = {}
    for i, label in enumerate(component_labels(model)[:-1]):
        parts[label] = h[..., i] if h.ndim > 1 else float(h[i])
    t = np.asarray(t, dtype=float)
    parts["bias"] = np.full(t.shape, model.output_bias) if t.ndim else model.output_bias
    return parts


def frequency_spectrum(model: NDModel) -> tuple[np.ndarray, np.ndarray]:
    """Sinusoid ``(|frequency|, |amplitude|)`` pairs, the frequency-domain view."""
    return np.abs(model.frequencies), np.abs(model.amplitudes)


def _hex(x: float) -> str:
    return float(x).hex()


def to_dict(model: NDModel) -> dict:
    p = model.preprocess
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "preprocess": {
            "t_offset": _hex(p.t_offset),
            "t_scale": _hex(p.t_scale),
            "v_offset": _hex(p.v_offset),
            "v_scale": _hex(p.v_scale),
            "log_filter": p.log_filter,
        },
        "output_bias": _hex(model.output_bias),
        "units": [
            {
                "kind": ActivationKind(k).name.lower(),
                "input_weight": _hex(w),
                "bias": _hex(b),
                "output_weight": _hex(a),
            }
            for k, w, b, a in zip(
                model.kinds, model.input_weights, model.biases, model.output_weights
            )
        ],
    }


def from_dict(doc: dict) -> NDModel:
    try:
        if doc.get("format") != FORMAT_NAME:
            raise ModelFormatError(f"not a {FORMAT_NAME} document")
        if doc.get("version") != FORMAT_VERSION:
            raise ModelFormatError(
                f"unsupported model version {doc.get('version')!r} (expected {FORMAT_VERSION})"
            )
        pp = doc["preprocess"]
        preprocess = PreprocessParams(
            t_offset=float.fromhex(pp["t_offset"]),
            t_scale=float.fromhex(pp["t_scale"]),
            v_offset=float.fromhex(pp["v_offset"]),
            v_scale=float.fromhex(pp["v_scale"]),
            log_filter=bool(pp["log_filter"]),
        )
        units = doc["units"]
        return NDModel(
            kinds=[ActivationKind[u["kind"].upper()] for u in units],
            input_weights=[float.fromhex(u["input_weight"]) for u in units],
            biases=[float.fromhex(u["bias"]) for u in units],
            output_weights=[float.fromhex(u["output_weight"]) for u in units],
            output_bias=float.fromhex(doc["output_bias"]),
            preprocess=preprocess,
        )
    except ModelFormatError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ModelFormatError(f"malformed model document: {exc}") from exc


def save(model: NDModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_dict(model), fh, indent=1)
        fh.write("\n")


def load(path) -> NDModel:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: not valid model JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError(f"{path}: expected a JSON object")
    return from_dict(doc)
