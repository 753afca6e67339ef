"""Surrogate training: plain regression and conservative dual descent-ascent.

Two entry points share one loop. train_qel runs full-batch Adam on the MSE
against scaled targets. train_com_qel adds a conservatism penalty

    C = mean f(adv) - mean f(data) - tau

where the adversarial points are regenerated every epoch by reflective
ascent from the dataset inputs and then treated as constants in the primal
gradient. The dual variable alpha follows projected ascent
alpha <- max(0, alpha + dual_lr * C). Ablation variants keep only the
adversarial term (ONLY_ADV) or only the negated data term (NO_ADV).

The loop is written against a small SurrogateOps interface so the quantum
circuit and the classical baseline train through identical code, which is
what makes the plain/conservative and quantum/classical comparisons fair.
With alpha_init=0 and dual_lr=0 the conservative loop reproduces plain
training bit for bit; the penalty branch is skipped outright at alpha == 0
so no arithmetic difference can creep in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import numpy as np

from .ansatz import AnsatzSpec, evaluate_surrogate_batch, param_count
from .dataset import Dataset
from .extremize import reflective_step
from .gradients import value_and_grad_theta_batch, value_and_grad_x_batch

VARIANTS = ("FULL", "ONLY_ADV", "NO_ADV", "QEL_PLAIN")
CONSERVATIVE_VARIANTS = ("FULL", "ONLY_ADV", "NO_ADV")

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


def default_step_size(d: int) -> float:
    """Ascent step size 0.05 * sqrt(d), used for both adversarial and solution search."""
    return 0.05 * float(np.sqrt(d))


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for one training run.

    adv_step and extremize_lr default to None, meaning 0.05 * sqrt(d) resolved
    against the dataset dimension at train time.
    """

    tau: float = 0.1
    t_p: int = 1
    adv_step: float | None = None
    epochs: int = 100
    primal_lr: float = 0.05
    dual_lr: float = 0.01
    alpha_init: float = 0.0
    variant: str = "FULL"
    extremize_steps: int = 100
    extremize_lr: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.t_p < 1:
            raise ValueError(f"t_p must be >= 1, got {self.t_p}")
        if self.adv_step is not None and not self.adv_step > 0:
            raise ValueError(f"adv_step must be positive, got {self.adv_step}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.primal_lr <= 0:
            raise ValueError(f"primal_lr must be positive, got {self.primal_lr}")
        if self.dual_lr < 0:
            raise ValueError(f"dual_lr must be >= 0, got {self.dual_lr}")
        if self.alpha_init < 0:
            raise ValueError(f"alpha_init must be >= 0, got {self.alpha_init}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.extremize_steps < 0:
            raise ValueError(f"extremize_steps must be >= 0, got {self.extremize_steps}")
        if self.extremize_lr is not None and not self.extremize_lr > 0:
            raise ValueError(f"extremize_lr must be positive, got {self.extremize_lr}")

    def resolved_adv_step(self, d: int) -> float:
        return self.adv_step if self.adv_step is not None else default_step_size(d)

    def resolved_extremize_lr(self, d: int) -> float:
        return self.extremize_lr if self.extremize_lr is not None else default_step_size(d)


@dataclass(frozen=True)
class DualState:
    alpha: float

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha < 0:
            raise ValueError(f"alpha must be finite and >= 0, got {self.alpha}")


@dataclass(frozen=True)
class AdamState:
    """Parameters plus first/second moment estimates; step counts completed updates."""

    params: np.ndarray
    m: np.ndarray
    v: np.ndarray
    step: int = 0

    @classmethod
    def init(cls, params: np.ndarray) -> "AdamState":
        params = np.asarray(params, dtype=np.float64)
        return cls(params=params.copy(), m=np.zeros_like(params), v=np.zeros_like(params))


def adam_step(state: AdamState, grads: np.ndarray, lr: float) -> AdamState:
    """One bias-corrected Adam update; returns a new state, inputs untouched."""
    grads = np.asarray(grads, dtype=np.float64)
    if grads.shape != state.params.shape:
        raise ValueError(f"gradient shape {grads.shape} != parameter shape {state.params.shape}")
    t = state.step + 1
    m = ADAM_BETA1 * state.m + (1.0 - ADAM_BETA1) * grads
    v = ADAM_BETA2 * state.v + (1.0 - ADAM_BETA2) * grads**2
    m_hat = m / (1.0 - ADAM_BETA1**t)
    v_hat = v / (1.0 - ADAM_BETA2**t)
    params = state.params - lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
    return AdamState(params=params, m=m, v=v, step=t)


@runtime_checkable
class SurrogateOps(Protocol):
    """What the training loop needs from a surrogate family."""

    @property
    def n_params(self) -> int: ...

    def init_params(self, rng: np.random.Generator) -> np.ndarray: ...

    def values(self, params: np.ndarray, x: np.ndarray) -> np.ndarray: ...

    def value_and_param_jac(
        self, params: np.ndarray, x: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]: ...

    def value_and_input_grad(
        self, params: np.ndarray, x: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]: ...


@dataclass(frozen=True)
class QuantumSurrogate:
    """SurrogateOps backed by the data-reuploading circuit."""

    spec: AnsatzSpec

    @property
    def n_params(self) -> int:
        return param_count(self.spec)

    def init_params(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(-np.pi, np.pi, size=self.n_params)

    def values(self, params: np.ndarray, x: np.ndarray) -> np.ndarray:
        return evaluate_surrogate_batch(self.spec, params, x)

    def value_and_param_jac(self, params, x):
        return value_and_grad_theta_batch(self.spec, params, x)

    def value_and_input_grad(self, params, x):
        return value_and_grad_x_batch(self.spec, params, x)


@dataclass
class TrainingDiagnostics:
    """Per-epoch traces plus metrics recomputed at the returned parameters.

    mse_trace and c_trace hold the values seen at the start of each epoch,
    alpha_trace the dual variable after that epoch's projected update.
    c_trace and final_c are NaN for plain (QEL_PLAIN) training.
    """

    variant: str
    mse_trace: np.ndarray
    c_trace: np.ndarray
    alpha_trace: np.ndarray
    final_mse: float = float("nan")
    final_c: float = float("nan")

    @property
    def epochs_run(self) -> int:
        return len(self.mse_trace)


class TrainingDiverged(RuntimeError):
    """Loss or dual variable went non-finite; carries traces up to the failing epoch."""

    def __init__(self, message: str, diagnostics: TrainingDiagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


def mse_loss(spec: AnsatzSpec, theta: np.ndarray, data: Dataset) -> float:
    """Mean squared error of the circuit surrogate against scaled targets."""
    if data.n_points == 0:
        raise ValueError("dataset is empty")
    values = evaluate_surrogate_batch(spec, theta, data.x)
    return float(np.mean((values - data.y_scaled) ** 2))


def ascend_batch(
    ops: SurrogateOps, params: np.ndarray, x0: np.ndarray, steps: int, mu: float
) -> np.ndarray:
    """Run `steps` reflective ascent steps on every row of x0 simultaneously."""
    x = np.array(x0, dtype=np.float64)
    for _ in range(steps):
        _, grads = ops.value_and_input_grad(params, x)
        x = reflective_step(x, grads, mu)
    return x


def generate_adversarial(
    spec: AnsatzSpec, theta: np.ndarray, data: Dataset, config: TrainConfig
) -> np.ndarray:
    """Adversarial set: t_p reflective ascent steps on the surrogate from each datapoint."""
    mu = config.resolved_adv_step(data.d)
    return ascend_batch(QuantumSurrogate(spec), theta, data.x, config.t_p, mu)


def com_penalty(
    spec: AnsatzSpec, theta: np.ndarray, data: Dataset, adv: np.ndarray, tau: float
) -> float:
    """Conservatism gap: mean surrogate value on adv minus mean on data minus tau."""
    adv = np.asarray(adv, dtype=np.float64)
    if adv.shape != data.x.shape:
        raise ValueError(f"adversarial set shape {adv.shape} != data shape {data.x.shape}")
    vals_adv = evaluate_surrogate_batch(spec, theta, adv)
    vals_data = evaluate_surrogate_batch(spec, theta, data.x)
    return penalty_value(vals_adv, vals_data, tau, "FULL")


def penalty_value(
    vals_adv: np.ndarray | None, vals_data: np.ndarray, tau: float, variant: str
) -> float:
    if variant == "FULL":
        return float(np.mean(vals_adv) - np.mean(vals_data) - tau)
    if variant == "ONLY_ADV":
        return float(np.mean(vals_adv) - tau)
    if variant == "NO_ADV":
        return float(-np.mean(vals_data) - tau)
    raise ValueError(f"no penalty defined for variant {variant!r}")


def penalty_grad(
    jac_adv: np.ndarray | None, jac_data: np.ndarray, variant: str
) -> np.ndarray:
    """Gradient of the variant penalty w.r.t. parameters, adversarial set held fixed."""
    if variant == "FULL":
        return np.mean(jac_adv, axis=0) - np.mean(jac_data, axis=0)
    if variant == "ONLY_ADV":
        return np.mean(jac_adv, axis=0)
    if variant == "NO_ADV":
        return -np.mean(jac_data, axis=0)
    raise ValueError(f"no penalty defined for variant {variant!r}")


def run_training(
    ops: SurrogateOps,
    data: Dataset,
    config: TrainConfig,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, DualState, TrainingDiagnostics]:
    """Shared loop behind train_qel, train_com_qel, and the classical baseline.

    Per epoch: regenerate the adversarial set from current parameters (variants
    that use one), take one full-batch Adam step on MSE + alpha * C with the
    adversarial points fixed, then the projected dual update on alpha. The rng
    only seeds parameter initialization; everything after that is deterministic.
    """
    if rng is None:
        rng = np.random.Generator(np.random.PCG64(config.seed))
    conservative = config.variant in CONSERVATIVE_VARIANTS
    uses_adv = config.variant in ("FULL", "ONLY_ADV")
    mu = config.resolved_adv_step(data.d)

    state = AdamState.init(ops.init_params(rng))
    alpha = float(config.alpha_init)

    mse_trace = np.empty(config.epochs)
    c_trace = np.full(config.epochs, np.nan)
    alpha_trace = np.full(config.epochs, alpha)

    def partial_diag(epoch: int) -> TrainingDiagnostics:
        return TrainingDiagnostics(
            variant=config.variant,
            mse_trace=mse_trace[:epoch].copy(),
            c_trace=c_trace[:epoch].copy(),
            alpha_trace=alpha_trace[:epoch].copy(),
        )

    n_pts = data.n_points
    for epoch in range(config.epochs):
        vals_adv = jac_adv = None
        if conservative and uses_adv and alpha > 0.0:
            # One stacked sweep for data and adversarial rows; rows are
            # independent, so the data half is bit-identical to a separate
            # evaluation (which is what the alpha == 0 branch below does).
            adv = ascend_batch(ops, state.params, data.x, config.t_p, mu)
            vals_all, jac_all = ops.value_and_param_jac(
                state.params, np.concatenate([data.x, adv], axis=0)
            )
            vals_data, jac_data = vals_all[:n_pts], jac_all[:n_pts]
            vals_adv, jac_adv = vals_all[n_pts:], jac_all[n_pts:]
        else:
            vals_data, jac_data = ops.value_and_param_jac(state.params, data.x)
            if conservative and uses_adv:
                adv = ascend_batch(ops, state.params, data.x, config.t_p, mu)
                vals_adv = ops.values(state.params, adv)
        residuals = vals_data - data.y_scaled
        mse = float(np.mean(residuals**2))
        if not np.isfinite(mse):
            raise TrainingDiverged(f"non-finite MSE at epoch {epoch}", partial_diag(epoch))
        grad = (2.0 / n_pts) * (residuals @ jac_data)

        c = float("nan")
        if conservative:
            c = penalty_value(vals_adv, vals_data, config.tau, config.variant)
            if not np.isfinite(c):
                raise TrainingDiverged(f"non-finite penalty at epoch {epoch}", partial_diag(epoch))
            if alpha > 0.0:
                grad = grad + alpha * penalty_grad(jac_adv, jac_data, config.variant)

        state = adam_step(state, grad, config.primal_lr)

        if conservative:
            alpha = max(0.0, alpha + config.dual_lr * c)
            if not np.isfinite(alpha):
                raise TrainingDiverged(f"non-finite alpha at epoch {epoch}", partial_diag(epoch))

        mse_trace[epoch] = mse
        c_trace[epoch] = c
        alpha_trace[epoch] = alpha

    diagnostics = TrainingDiagnostics(
        variant=config.variant,
        mse_trace=mse_trace,
        c_trace=c_trace,
        alpha_trace=alpha_trace,
    )
    final_vals = ops.values(state.params, data.x)
    diagnostics.final_mse = float(np.mean((final_vals - data.y_scaled) ** 2))
    if conservative:
        final_vals_adv = None
        if uses_adv:
            final_adv = ascend_batch(ops, state.params, data.x, config.t_p, mu)
            final_vals_adv = ops.values(state.params, final_adv)
        diagnostics.final_c = penalty_value(final_vals_adv, final_vals, config.tau, config.variant)
    return state.params, DualState(alpha=alpha), diagnostics


def train_qel(
    spec: AnsatzSpec,
    data: Dataset,
    config: TrainConfig,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Plain surrogate regression: full-batch Adam on the MSE for config.epochs."""
    if config.variant != "QEL_PLAIN":
        raise ValueError(f"train_qel requires variant QEL_PLAIN, got {config.variant!r}")
    params, _, _ = run_training(QuantumSurrogate(spec), data, config, rng)
    return params


def train_com_qel(
    spec: AnsatzSpec,
    data: Dataset,
    config: TrainConfig,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, DualState, TrainingDiagnostics]:
    """Conservative training via dual gradient descent-ascent."""
    if config.variant not in CONSERVATIVE_VARIANTS:
        raise ValueError(
            f"train_com_qel requires variant in {CONSERVATIVE_VARIANTS}, got {config.variant!r}"
        )
    return run_training(QuantumSurrogate(spec), data, config, rng)
