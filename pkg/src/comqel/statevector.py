"""Exact dense state-vector simulation of small qubit registers.

The simulator keeps the full complex amplitude vector over the 2**n
computational basis states and applies gates by stride iteration over the
target qubit's axis, so a gate costs O(2**n) instead of the O(4**n) of an
explicit matrix product. Qubit 0 is the least significant bit of the basis
index; every module in this package shares that convention.

Rotation gates follow the convention R_P(theta) = exp(-i * theta * P / 2)
for P in {X, Y, Z}, which makes the +-pi/2 parameter-shift rule exact.

All kernels accept amplitude arrays with arbitrary leading batch axes
(shape (..., 2**n)); the trailing axis is the basis index. Batched angles
broadcast against the batch axes, which is what lets a whole dataset of
encoded inputs be simulated in one pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_QUBITS = 8

ROTATION_KINDS = ("RX", "RY", "RZ")
GATE_KINDS = ROTATION_KINDS + ("CNOT",)


@dataclass
class StateVector:
    """Complex amplitudes of an n-qubit register, basis-ordered with qubit 0 as LSB."""

    n_qubits: int
    amplitudes: np.ndarray

    def norm_squared(self) -> float:
        a = self.amplitudes
        return float(np.sum(a.real**2 + a.imag**2))

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())


@dataclass(frozen=True)
class Gate:
    """A single circuit element: RX/RY/RZ carry an angle, CNOT carries a control."""

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CNOT":
            if self.control is None:
                raise ValueError("CNOT requires a control qubit")
            if self.control == self.target:
                raise ValueError("CNOT control and target must differ")
        else:
            if self.angle is None:
                raise ValueError(f"{self.kind} requires an angle")
            if self.control is not None:
                raise ValueError(f"{self.kind} takes no control qubit")


def new_zero_state(n: int) -> StateVector:
    """Return |0...0> on n qubits (1 <= n <= 8)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in 1..{MAX_QUBITS}, got {n}")
    amplitudes = np.zeros(2**n, dtype=np.complex128)
    amplitudes[0] = 1.0
    return StateVector(n, amplitudes)


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply a gate in place and return the (mutated) state."""
    n = state.n_qubits
    if not 0 <= gate.target < n:
        raise ValueError(f"target qubit {gate.target} out of range for {n} qubits")
    if gate.kind == "CNOT":
        if not 0 <= gate.control < n:
            raise ValueError(f"control qubit {gate.control} out of range for {n} qubits")
        apply_cnot(state.amplitudes, n, gate.control, gate.target)
    else:
        apply_rotation(state.amplitudes, n, gate.kind, gate.target, gate.angle)
    return state


def apply_rotation(amps: np.ndarray, n: int, kind: str, target: int, angle) -> None:
    """In-place R_P(angle) on `target`; `angle` may be scalar or batch-shaped.

    RZ is diagonal and multiplies the two half-spaces in place. RX and RY mix
    them, handled as one stacked 2x2 matmul over the target axis; this keeps
    the pass count over the amplitude array low, which matters because the
    gradient sweep calls this on very wide batches.
    """
    pre = 2 ** (n - target - 1)
    post = 2**target
    a = amps.reshape(amps.shape[:-1] + (pre, 2, post))
    half = 0.5 * np.asarray(angle, dtype=np.float64)
    c = np.cos(half)
    s = np.sin(half)
    if kind == "RZ":
        phase = c - 1j * s  # exp(-i*half)
        if half.ndim:
            phase = phase[..., None, None]
        a[..., 0, :] *= phase
        a[..., 1, :] *= np.conj(phase)
        return
    u = np.zeros(half.shape + (2, 2), dtype=np.complex128)
    if kind == "RX":
        u[..., 0, 0] = c
        u[..., 0, 1] = -1j * s
        u[..., 1, 0] = -1j * s
        u[..., 1, 1] = c
    elif kind == "RY":
        u[..., 0, 0] = c
        u[..., 0, 1] = -s
        u[..., 1, 0] = s
        u[..., 1, 1] = c
    else:
        raise ValueError(f"not a rotation kind: {kind!r}")
    if half.ndim:
        # align per-batch matrices against the (batch, pre, 2, post) slices
        u = u.reshape(half.shape + (1, 2, 2))
    a[...] = np.matmul(u, a)


@lru_cache(maxsize=None)
def _cnot_index_pairs(n: int, control: int, target: int) -> tuple[np.ndarray, np.ndarray]:
    idx = np.arange(2**n)
    sel = ((idx >> control) & 1 == 1) & ((idx >> target) & 1 == 0)
    i0 = idx[sel]
    i1 = i0 | (1 << target)
    return i0, i1


def apply_cnot(amps: np.ndarray, n: int, control: int, target: int) -> None:
    """In-place CNOT: flip `target` amplitude pairs wherever `control` is set."""
    i0, i1 = _cnot_index_pairs(n, control, target)
    tmp = amps[..., i0].copy()
    amps[..., i0] = amps[..., i1]
    amps[..., i1] = tmp


@lru_cache(maxsize=None)
def sum_z_diagonal(n: int) -> np.ndarray:
    """Eigenvalues of sum_i Z_i on the basis states: (#zero bits) - (#one bits)."""
    return np.array([n - 2 * bin(k).count("1") for k in range(2**n)], dtype=np.float64)


def expectation_sum_z(state: StateVector) -> float:
    """<sum_i Z_i> of a normalized state; lies in [-n, n]."""
    return float(expect_sum_z(state.amplitudes, state.n_qubits))


def expect_sum_z(amps: np.ndarray, n: int) -> np.ndarray:
    """Batched <sum_i Z_i>: reduces the trailing basis axis, keeps batch axes.

    Reduced with np.sum rather than a BLAS product: pairwise summation's
    order depends only on the row length, so a state gives bit-identical
    expectations no matter what batch it is evaluated in.
    """
    probs = amps.real**2 + amps.imag**2
    return np.sum(probs * sum_z_diagonal(n), axis=-1)


_ORACLE_MAX_QUBITS = 4


def dense_unitary_oracle(gates: list[Gate], n: int) -> np.ndarray:
    """Explicit 2**n x 2**n product matrix of a gate sequence (test oracle, n <= 4).

    Builds every gate as a dense matrix via Kronecker products and multiplies
    them out, deliberately avoiding the stride kernels it is used to check.
    """
    if not 1 <= n <= _ORACLE_MAX_QUBITS:
        raise ValueError(f"dense oracle supports 1..{_ORACLE_MAX_QUBITS} qubits, got {n}")
    total = np.eye(2**n, dtype=np.complex128)
    for gate in gates:
        total = _dense_gate_matrix(gate, n) @ total
    return total


def _dense_gate_matrix(gate: Gate, n: int) -> np.ndarray:
    if gate.kind == "CNOT":
        dim = 2**n
        m = np.zeros((dim, dim), dtype=np.complex128)
        for k in range(dim):
            j = k ^ (1 << gate.target) if (k >> gate.control) & 1 else k
            m[j, k] = 1.0
        return m
    half = 0.5 * gate.angle
    c, s = np.cos(half), np.sin(half)
    if gate.kind == "RX":
        u = np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)
    elif gate.kind == "RY":
        u = np.array([[c, -s], [s, c]], dtype=np.complex128)
    else:
        u = np.array([[c - 1j * s, 0.0], [0.0, c + 1j * s]], dtype=np.complex128)
    # qubit 0 is the LSB, so higher qubits are the leading Kronecker factors
    high = np.eye(2 ** (n - gate.target - 1))
    low = np.eye(2**gate.target)
    return np.kron(np.kron(high, u), low)
