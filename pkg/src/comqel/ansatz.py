"""Data-reuploading circuit construction and surrogate evaluation.

The surrogate is the expectation of sum_i Z_i after the layered circuit

    W_1, S_1(x), W_2, S_2(x), ..., W_L, S_L(x), W_{L+1}

acting on |0...0>, where each trainable block W applies RX, RZ, RX to every
qubit followed by a CNOT entangler ladder, and each encoding block S applies
Chebyshev-tower RY rotations of the inputs.

Entangler topologies:
  * "chain": CNOT (q, q+1) for every adjacent pair (hardware-efficient layout).
  * "clique": the chain with every edge removed whose two qubits encode
    variables that never share a clique of the objective's functional graph,
    so no entanglement path crosses functionally independent variable groups.

Tower indices are counted per variable block: the qubit with 1-based offset i
inside a block of m qubits gets the rotation RY(2*j*arccos(x_v)) with
j = (l-1)*m + i in layer l. (For a single-variable register this reduces to
the whole-register tower; for multi-variable registers it keeps each
variable's Chebyshev spectrum independent of its neighbours.)
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .statevector import (
    Gate,
    apply_gate,
    expectation_sum_z,
    expect_sum_z,
    new_zero_state,
)

TOPOLOGIES = ("chain", "clique")


@dataclass(frozen=True)
class AnsatzSpec:
    """Circuit blueprint: register size, depth, variable layout, entangler topology.

    var_blocks maps each input variable (0-based) to a contiguous, disjoint
    qubit range (start, stop); the ranges must tile 0..n_qubits-1. Under the
    "clique" topology, `cliques` lists the variable groups of the objective's
    functional graph and only chain edges within a shared clique survive.
    """

    n_qubits: int
    n_layers: int
    var_blocks: tuple[tuple[int, tuple[int, int]], ...]
    topology: str = "chain"
    cliques: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        if self.n_layers < 1:
            raise ValueError(f"n_layers must be >= 1, got {self.n_layers}")
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"topology must be one of {TOPOLOGIES}, got {self.topology!r}")
        covered = []
        variables = []
        for var, (start, stop) in self.var_blocks:
            if stop <= start:
                raise ValueError(f"empty qubit range for variable {var}")
            covered.extend(range(start, stop))
            variables.append(var)
        if sorted(covered) != list(range(self.n_qubits)):
            raise ValueError("var_blocks must cover all qubits exactly once")
        if sorted(variables) != list(range(len(variables))):
            raise ValueError("var_blocks must mention each variable 0..d-1 exactly once")
        if self.topology == "clique":
            if self.cliques is None:
                raise ValueError("clique topology requires cliques")
            in_cliques = set().union(*self.cliques)
            if not set(variables) <= in_cliques:
                raise ValueError("every variable must appear in at least one clique")

    @property
    def d(self) -> int:
        return len(self.var_blocks)

    def qubit_variable(self, q: int) -> int:
        """Variable encoded on qubit q."""
        for var, (start, stop) in self.var_blocks:
            if start <= q < stop:
                return var
        raise ValueError(f"qubit {q} not covered by any variable block")

    def entangler_pairs(self) -> list[tuple[int, int]]:
        """CNOT (control, target) pairs of one trainable block."""
        pairs = []
        for q in range(self.n_qubits - 1):
            if self.topology == "clique":
                va, vb = self.qubit_variable(q), self.qubit_variable(q + 1)
                if not any(va in c and vb in c for c in self.cliques):
                    continue
            pairs.append((q, q + 1))
        return pairs

    def to_dict(self) -> dict:
        out = {
            "n_qubits": self.n_qubits,
            "n_layers": self.n_layers,
            "var_blocks": [[var, [start, stop]] for var, (start, stop) in self.var_blocks],
            "topology": self.topology,
        }
        if self.cliques is not None:
            out["cliques"] = [sorted(c) for c in self.cliques]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "AnsatzSpec":
        cliques = data.get("cliques")
        return cls(
            n_qubits=int(data["n_qubits"]),
            n_layers=int(data["n_layers"]),
            var_blocks=tuple(
                (int(var), (int(start), int(stop))) for var, (start, stop) in data["var_blocks"]
            ),
            topology=data.get("topology", "chain"),
            cliques=None if cliques is None else tuple(frozenset(c) for c in cliques),
        )


def uniform_blocks(n_qubits: int, d: int) -> tuple[tuple[int, tuple[int, int]], ...]:
    """Split the register into d equal contiguous blocks in variable order."""
    if n_qubits % d != 0:
        raise ValueError(f"{n_qubits} qubits cannot be split evenly over {d} variables")
    m = n_qubits // d
    return tuple((v, (v * m, (v + 1) * m)) for v in range(d))


def param_count(spec: AnsatzSpec) -> int:
    """Trainable angle count: 3 rotations per qubit in each of L+1 blocks."""
    return 3 * spec.n_qubits * (spec.n_layers + 1)


def build_trainable_block(spec: AnsatzSpec, theta_slice: np.ndarray, layer: int) -> list[Gate]:
    """One trainable block: RX, RZ, RX on every qubit, then the entangler ladder.

    `layer` is the 1-based block index (1..L+1); the structure is the same in
    every block, only the angles differ.
    """
    theta_slice = np.asarray(theta_slice, dtype=np.float64)
    if theta_slice.shape != (3 * spec.n_qubits,):
        raise ValueError(
            f"trainable block {layer} expects {3 * spec.n_qubits} angles, "
            f"got shape {theta_slice.shape}"
        )
    gates = []
    for q in range(spec.n_qubits):
        gates.append(Gate("RX", q, angle=float(theta_slice[3 * q])))
        gates.append(Gate("RZ", q, angle=float(theta_slice[3 * q + 1])))
        gates.append(Gate("RX", q, angle=float(theta_slice[3 * q + 2])))
    for control, target in spec.entangler_pairs():
        gates.append(Gate("CNOT", target, control=control))
    return gates


def build_encoding_block(spec: AnsatzSpec, x: np.ndarray, layer: int) -> list[Gate]:
    """Encoding block of layer l (1-based): RY(2*j*arccos(x_v)) per qubit."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.d,):
        raise ValueError(f"expected {spec.d} input variables, got shape {x.shape}")
    if np.any(np.abs(x) > 1.0):
        raise ValueError(f"inputs must lie in [-1, 1], got {x}")
    gates = []
    for var, (start, stop) in spec.var_blocks:
        m = stop - start
        phi = np.arccos(x[var])
        for i in range(1, m + 1):
            j = (layer - 1) * m + i
            gates.append(Gate("RY", start + i - 1, angle=float(2 * j * phi)))
    return gates


def full_gate_list(spec: AnsatzSpec, theta: np.ndarray, x: np.ndarray) -> list[Gate]:
    """Assemble W_1, S_1, ..., W_L, S_L, W_{L+1} as a flat gate sequence."""
    theta = _check_theta(spec, theta)
    width = 3 * spec.n_qubits
    gates = []
    for layer in range(1, spec.n_layers + 1):
        gates.extend(build_trainable_block(spec, theta[(layer - 1) * width : layer * width], layer))
        gates.extend(build_encoding_block(spec, x, layer))
    last = spec.n_layers + 1
    gates.extend(build_trainable_block(spec, theta[(last - 1) * width : last * width], last))
    return gates


def evaluate_surrogate(spec: AnsatzSpec, theta: np.ndarray, x: np.ndarray) -> float:
    """<sum_i Z_i> of the circuit state for inputs x; bounded by n_qubits."""
    state = new_zero_state(spec.n_qubits)
    for gate in full_gate_list(spec, theta, x):
        apply_gate(state, gate)
    return expectation_sum_z(state)


def _check_theta(spec: AnsatzSpec, theta: np.ndarray) -> np.ndarray:
    theta = np.asarray(theta, dtype=np.float64)
    expected = param_count(spec)
    if theta.shape != (expected,):
        raise ValueError(f"expected {expected} trainable angles, got shape {theta.shape}")
    return theta


# ---------------------------------------------------------------------------
# Compiled form: one flat op sequence with batch-shaped encoding angles, used
# by the batched evaluator and the parameter-shift engine. Trainable ops carry
# their position in theta; encoding ops carry (variable, tower index) so the
# input-gradient chain rule knows its per-gate factor.
# ---------------------------------------------------------------------------


@dataclass
class CompiledOp:
    kind: str
    target: int
    control: int | None = None
    angle: np.ndarray | float | None = None
    theta_index: int | None = None
    var: int | None = None
    tower_j: int | None = None


@dataclass
class CompiledCircuit:
    spec: AnsatzSpec
    ops: list[CompiledOp]
    batch: int  # number of simultaneously encoded inputs


def compile_circuit(spec: AnsatzSpec, theta: np.ndarray, inputs: np.ndarray) -> CompiledCircuit:
    """Flatten the layered circuit for a batch of inputs (shape (B, d))."""
    theta = _check_theta(spec, theta)
    inputs = np.asarray(inputs, dtype=np.float64)
    if inputs.ndim != 2 or inputs.shape[1] != spec.d:
        raise ValueError(f"inputs must have shape (B, {spec.d}), got {inputs.shape}")
    if np.any(np.abs(inputs) > 1.0):
        raise ValueError("inputs must lie in [-1, 1]")
    arccos = np.arccos(inputs)  # (B, d)
    pairs = spec.entangler_pairs()
    ops: list[CompiledOp] = []

    def trainable_block(block: int) -> None:
        base = 3 * spec.n_qubits * block
        for q in range(spec.n_qubits):
            for slot, kind in enumerate(("RX", "RZ", "RX")):
                k = base + 3 * q + slot
                ops.append(CompiledOp(kind, q, angle=float(theta[k]), theta_index=k))
        for control, target in pairs:
            ops.append(CompiledOp("CNOT", target, control=control))

    for layer in range(1, spec.n_layers + 1):
        trainable_block(layer - 1)
        for var, (start, stop) in spec.var_blocks:
            m = stop - start
            for i in range(1, m + 1):
                j = (layer - 1) * m + i
                ops.append(
                    CompiledOp(
                        "RY",
                        start + i - 1,
                        angle=2.0 * j * arccos[:, var],
                        var=var,
                        tower_j=j,
                    )
                )
    trainable_block(spec.n_layers)
    return CompiledCircuit(spec, ops, inputs.shape[0])


def run_compiled(circuit: CompiledCircuit) -> np.ndarray:
    """Evaluate the surrogate for every input in the batch; returns shape (B,)."""
    amps = _zero_batch(circuit)
    for op in circuit.ops:
        _apply_op(amps, circuit.spec.n_qubits, op)
    return expect_sum_z(amps, circuit.spec.n_qubits)


def evaluate_surrogate_batch(spec: AnsatzSpec, theta: np.ndarray, inputs: np.ndarray) -> np.ndarray:
    """Batched surrogate values for inputs of shape (B, d)."""
    return run_compiled(compile_circuit(spec, theta, inputs))


def _zero_batch(circuit: CompiledCircuit) -> np.ndarray:
    amps = np.zeros((circuit.batch, 2**circuit.spec.n_qubits), dtype=np.complex128)
    amps[:, 0] = 1.0
    return amps


def _apply_op(amps: np.ndarray, n: int, op: CompiledOp, shift: float = 0.0) -> None:
    from .statevector import apply_cnot, apply_rotation

    if op.kind == "CNOT":
        apply_cnot(amps, n, op.control, op.target)
    else:
        angle = op.angle if shift == 0.0 else op.angle + shift
        apply_rotation(amps, n, op.kind, op.target, angle)
