"""Shared helpers for building random circuits and ansatz instances."""

import numpy as np

from comqel import AnsatzSpec, Gate, param_count, uniform_blocks
from comqel.statevector import GATE_KINDS


def random_gates(rng: np.random.Generator, n: int, length: int) -> list[Gate]:
    """A random mix of rotations and (for n >= 2) CNOTs."""
    gates = []
    for _ in range(length):
        kind = GATE_KINDS[rng.integers(0, len(GATE_KINDS))]
        if kind == "CNOT":
            if n < 2:
                kind = "RX"
            else:
                control, target = rng.choice(n, size=2, replace=False)
                gates.append(Gate("CNOT", int(target), control=int(control)))
                continue
        target = int(rng.integers(0, n))
        gates.append(Gate(kind, target, angle=float(rng.uniform(-2 * np.pi, 2 * np.pi))))
    return gates


def random_chain_instance(rng: np.random.Generator, max_qubits: int = 4, max_layers: int = 3):
    """Random (spec, theta, x) with a chain ansatz and interior inputs."""
    n = int(rng.integers(1, max_qubits + 1))
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    d = int(divisors[rng.integers(0, len(divisors))])
    layers = int(rng.integers(1, max_layers + 1))
    spec = AnsatzSpec(
        n_qubits=n, n_layers=layers, var_blocks=uniform_blocks(n, d), topology="chain"
    )
    theta = rng.uniform(-np.pi, np.pi, size=param_count(spec))
    x = rng.uniform(-0.95, 0.95, size=d)
    return spec, theta, x
