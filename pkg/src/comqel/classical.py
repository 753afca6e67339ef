"""Classical baseline: a single-hidden-layer tanh network sized to the circuit.

The hidden width is the largest h whose weight count d_in*h + 2h + 1 stays
within the circuit's parameter budget, so the two surrogate families compete
at matched capacity. The network trains through the same conservative loop
as the circuit (run_training) and is extremized by the same reflective
ascent; only the forward/backward arithmetic differs.

Weights live in one flat vector laid out W1 | b1 | w2 | b2 with W1 stored
row-major as an (h, d_in) matrix. tanh keeps input gradients smooth and
nonvanishing on [-1, 1]^d, which the ascent steps rely on.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dataset import Dataset
from .training import (
    CONSERVATIVE_VARIANTS,
    DualState,
    TrainConfig,
    TrainingDiagnostics,
    run_training,
)


@dataclass(frozen=True)
class MlpSpec:
    """Architecture plus (optionally) trained weights as a flat vector."""

    d_in: int
    hidden: int
    weights: np.ndarray | None = None

    def __post_init__(self):
        if self.d_in < 1:
            raise ValueError(f"d_in must be >= 1, got {self.d_in}")
        if self.hidden < 1:
            raise ValueError(f"hidden must be >= 1, got {self.hidden}")
        if self.weights is not None and self.weights.shape != (self.n_params,):
            raise ValueError(
                f"weights must have shape ({self.n_params},), got {self.weights.shape}"
            )

    @property
    def n_params(self) -> int:
        return self.d_in * self.hidden + 2 * self.hidden + 1

    def unpack(self, weights: np.ndarray | None = None):
        """Split a flat weight vector into (W1, b1, w2, b2)."""
        w = self.weights if weights is None else np.asarray(weights, dtype=np.float64)
        if w is None:
            raise ValueError("no weights stored and none supplied")
        h, d = self.hidden, self.d_in
        w1 = w[: h * d].reshape(h, d)
        b1 = w[h * d : h * d + h]
        w2 = w[h * d + h : h * d + 2 * h]
        b2 = w[-1]
        return w1, b1, w2, b2


def matched_hidden_size(d_in: int, pqc_param_count: int) -> int:
    """Largest hidden width whose weight count fits the circuit's budget."""
    if pqc_param_count < d_in + 3:
        raise ValueError(
            f"budget {pqc_param_count} too small for even one hidden unit with d_in={d_in}"
        )
    return (pqc_param_count - 1) // (d_in + 2)


def matched_mlp(d_in: int, pqc_param_count: int) -> MlpSpec:
    return MlpSpec(d_in=d_in, hidden=matched_hidden_size(d_in, pqc_param_count))


def _forward_parts(spec: MlpSpec, weights: np.ndarray, x: np.ndarray):
    """Batched forward pass returning hidden activations alongside outputs.

    Contractions go through np.sum rather than BLAS matmul so each row's
    output is bit-identical no matter how the batch is packed; the training
    loop leans on that when it stacks data and adversarial rows.
    """
    w1, b1, w2, b2 = spec.unpack(weights)
    x = np.atleast_2d(np.asarray(x, dtype=np.float64))
    a = np.tanh(np.sum(x[:, None, :] * w1[None, :, :], axis=-1) + b1)
    out = np.sum(a * w2, axis=-1) + b2
    return out, a, x


def mlp_forward(spec: MlpSpec, x: np.ndarray, weights: np.ndarray | None = None) -> float:
    """w2 . tanh(W1 x + b1) + b2 for a single input."""
    w = spec.weights if weights is None else weights
    out, _, _ = _forward_parts(spec, w, np.asarray(x, dtype=np.float64).reshape(1, -1))
    return float(out[0])


def mlp_grads(
    spec: MlpSpec, x: np.ndarray, target: float, weights: np.ndarray | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Exact gradients: squared error w.r.t. weights, network output w.r.t. x."""
    w = spec.weights if weights is None else np.asarray(weights, dtype=np.float64)
    ops = MlpSurrogate(spec)
    xb = np.asarray(x, dtype=np.float64).reshape(1, -1)
    vals, jac = ops.value_and_param_jac(w, xb)
    _, input_grads = ops.value_and_input_grad(w, xb)
    weight_grad = 2.0 * (vals[0] - target) * jac[0]
    return weight_grad, input_grads[0]


@dataclass(frozen=True)
class MlpSurrogate:
    """SurrogateOps adapter so run_training drives the network unchanged."""

    spec: MlpSpec

    @property
    def n_params(self) -> int:
        return self.spec.n_params

    def init_params(self, rng: np.random.Generator) -> np.ndarray:
        # Symmetric uniform init scaled by 1/sqrt(fan_in) per weight block.
        h, d = self.spec.hidden, self.spec.d_in
        raw = rng.uniform(-1.0, 1.0, size=self.n_params)
        scale = np.empty(self.n_params)
        scale[: h * d + h] = 1.0 / np.sqrt(d)
        scale[h * d + h :] = 1.0 / np.sqrt(h)
        return raw * scale

    def values(self, params: np.ndarray, x: np.ndarray) -> np.ndarray:
        out, _, _ = _forward_parts(self.spec, params, x)
        return out

    def value_and_param_jac(self, params, x):
        out, a, xb = _forward_parts(self.spec, params, x)
        _, _, w2, _ = self.spec.unpack(params)
        h, d = self.spec.hidden, self.spec.d_in
        s = w2 * (1.0 - a**2)
        jac = np.empty((xb.shape[0], self.n_params))
        jac[:, : h * d] = (s[:, :, None] * xb[:, None, :]).reshape(xb.shape[0], h * d)
        jac[:, h * d : h * d + h] = s
        jac[:, h * d + h : h * d + 2 * h] = a
        jac[:, -1] = 1.0
        return out, jac

    def value_and_input_grad(self, params, x):
        out, a, _ = _forward_parts(self.spec, params, x)
        w1, _, w2, _ = self.spec.unpack(params)
        s = w2 * (1.0 - a**2)
        # np.sum keeps per-row results independent of the batch size (see
        # _forward_parts)
        return out, np.sum(s[:, :, None] * w1[None, :, :], axis=1)


def train_com_classical(
    spec: MlpSpec,
    data: Dataset,
    config: TrainConfig,
    rng: np.random.Generator | None = None,
) -> tuple[MlpSpec, DualState, TrainingDiagnostics]:
    """Conservative training of the matched network; mirrors train_com_qel."""
    if config.variant not in CONSERVATIVE_VARIANTS:
        raise ValueError(
            f"train_com_classical requires variant in {CONSERVATIVE_VARIANTS},"
            f" got {config.variant!r}"
        )
    if spec.d_in != data.d:
        raise ValueError(f"network d_in={spec.d_in} but dataset has d={data.d}")
    weights, dual, diagnostics = run_training(MlpSurrogate(spec), data, config, rng)
    return replace(spec, weights=weights), dual, diagnostics
