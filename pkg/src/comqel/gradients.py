"""Exact surrogate derivatives: parameter-shift in theta, chain rule in x.

Every rotation generator is a Pauli/2, so the +-pi/2 shift rule

    df/dphi = (f(phi + pi/2) - f(phi - pi/2)) / 2

is exact for both trainable angles and encoding angles. Input gradients
combine the per-gate shift with the encoding derivative
d(2*j*arccos(x))/dx = -2*j / sqrt(1 - x^2); inputs are clamped to
|x| <= 1 - CLAMP_EPS first since that derivative blows up at the boundary.

All shifted evaluations ride along one forward sweep: when the sweep reaches
a differentiated gate it forks two extra copies of the forward block (angle
shifted by +-pi/2) into a growing batch, and every later gate is applied to
the whole batch in a single kernel call. Rows never interact, so each
shifted value is bit-identical to naively re-running the circuit with that
one angle changed; the batching only removes per-call overhead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ansatz import AnsatzSpec, CompiledCircuit, CompiledOp, compile_circuit, param_count
from .statevector import apply_cnot, apply_rotation, expect_sum_z

CLAMP_EPS = 1e-7
_SHIFT = np.pi / 2


@dataclass
class GradReport:
    """Surrogate value plus its gradients in theta and x at one point."""

    d_theta: np.ndarray
    d_x: np.ndarray
    value: float

    def __post_init__(self):
        if not (np.all(np.isfinite(self.d_theta)) and np.all(np.isfinite(self.d_x))):
            raise ValueError("gradient entries must be finite")


def grad_theta(spec: AnsatzSpec, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Parameter-shift gradient of the surrogate w.r.t. every trainable angle."""
    _, jac = value_and_grad_theta_batch(spec, theta, np.asarray(x, dtype=np.float64)[None, :])
    return jac[0]


def grad_x(spec: AnsatzSpec, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Gradient of the surrogate w.r.t. the inputs (clamped near |x| = 1)."""
    _, grads = value_and_grad_x_batch(spec, theta, np.asarray(x, dtype=np.float64)[None, :])
    return grads[0]


def grad_report(spec: AnsatzSpec, theta: np.ndarray, x: np.ndarray) -> GradReport:
    """Value and both gradients at one point."""
    x = np.asarray(x, dtype=np.float64)
    values, jac = value_and_grad_theta_batch(spec, theta, x[None, :])
    _, dx = value_and_grad_x_batch(spec, theta, x[None, :])
    return GradReport(d_theta=jac[0], d_x=dx[0], value=float(values[0]))


def clamp_inputs(inputs: np.ndarray) -> np.ndarray:
    """Pull inputs off the arccos singularity at |x| = 1."""
    return np.clip(inputs, -1.0 + CLAMP_EPS, 1.0 - CLAMP_EPS)


def value_and_grad_theta_batch(
    spec: AnsatzSpec, theta: np.ndarray, inputs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Values (B,) and per-point jacobian (B, P) over the trainable angles."""
    circuit = compile_circuit(spec, theta, inputs)
    values, branched, pairs = _branching_sweep(circuit, lambda op: op.theta_index is not None)
    jac = np.empty((circuit.batch, param_count(spec)))
    for k, op in enumerate(branched):
        jac[:, op.theta_index] = 0.5 * (pairs[k, 0] - pairs[k, 1])
    return values, jac


def value_and_grad_x_batch(
    spec: AnsatzSpec, theta: np.ndarray, inputs: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Values (B,) and input gradients (B, d), chained through the encoding."""
    inputs = clamp_inputs(np.asarray(inputs, dtype=np.float64))
    circuit = compile_circuit(spec, theta, inputs)
    values, branched, pairs = _branching_sweep(circuit, lambda op: op.var is not None)
    # d(2*j*arccos(x_v))/dx_v, one column per variable
    dphi_dx = -1.0 / np.sqrt(1.0 - inputs**2)
    grads = np.zeros((circuit.batch, spec.d))
    for k, op in enumerate(branched):
        df_dphi = 0.5 * (pairs[k, 0] - pairs[k, 1])
        grads[:, op.var] += df_dphi * (2.0 * op.tower_j) * dphi_dx[:, op.var]
    return values, grads


def _branching_sweep(
    circuit: CompiledCircuit, branch_when: Callable[[CompiledOp], bool]
) -> tuple[np.ndarray, list[CompiledOp], np.ndarray]:
    """One pass that evaluates the circuit and every selected +-pi/2 shift.

    The first `batch` rows hold the unshifted forward state. Whenever an op
    selected by `branch_when` comes up, the forward rows are copied twice into
    the batch, the copies get the op with the angle shifted up/down, the older
    rows get it unshifted, and the sweep moves on. Returns the unshifted
    values, the branched ops in encounter order, and an array of shape
    (n_branches, 2, batch) with the (plus, minus) values per branch.
    """
    n = circuit.spec.n_qubits
    b = circuit.batch
    flags = [branch_when(op) for op in circuit.ops]
    k_total = sum(flags)
    amps = np.zeros(((1 + 2 * k_total) * b, 2**n), dtype=np.complex128)
    amps[:b, 0] = 1.0
    live = b
    branched: list[CompiledOp] = []
    for op, branch in zip(circuit.ops, flags):
        if branch:
            amps[live : live + b] = amps[:b]
            amps[live + b : live + 2 * b] = amps[:b]
            _apply_rows(amps[:live], n, op, b)
            apply_rotation(amps[live : live + 2 * b], n, op.kind, op.target, _shifted_angles(op, b))
            branched.append(op)
            live += 2 * b
        else:
            _apply_rows(amps[:live], n, op, b)
    vals = expect_sum_z(amps, n)
    return vals[:b], branched, vals[b:].reshape(k_total, 2, b)


def _apply_rows(amps: np.ndarray, n: int, op: CompiledOp, b: int) -> None:
    """Apply one op to every live row; batch-shaped angles repeat per block of b rows."""
    if op.kind == "CNOT":
        apply_cnot(amps, n, op.control, op.target)
        return
    angle = op.angle
    if isinstance(angle, np.ndarray) and angle.ndim and amps.shape[0] != b:
        angle = np.tile(angle, amps.shape[0] // b)
    apply_rotation(amps, n, op.kind, op.target, angle)


def _shifted_angles(op: CompiledOp, b: int) -> np.ndarray:
    """Angles for the two fresh branch blocks: first +pi/2, then -pi/2."""
    if isinstance(op.angle, np.ndarray) and np.ndim(op.angle):
        return np.concatenate([op.angle + _SHIFT, op.angle - _SHIFT])
    return np.concatenate([np.full(b, op.angle + _SHIFT), np.full(b, op.angle - _SHIFT)])


def finite_diff(fn: Callable[[np.ndarray], float], point: np.ndarray, h: float) -> np.ndarray:
    """Central-difference gradient oracle, one coordinate at a time."""
    if h <= 0:
        raise ValueError(f"step must be positive, got {h}")
    point = np.atleast_1d(np.asarray(point, dtype=np.float64))
    grad = np.empty_like(point)
    for k in range(point.size):
        bumped = point.copy()
        bumped[k] = point[k] + h
        up = fn(bumped)
        bumped[k] = point[k] - h
        down = fn(bumped)
        grad[k] = (up - down) / (2.0 * h)
    return grad
