"""Reflective gradient ascent on a trained surrogate, started from the best datapoint.

The same stepping rule serves the final solution search and the adversarial
sample generation during conservative training: a tentative step that leaves
[-1, 1] is mirrored back across the violated bound (u -> 2c - u with c the
bound), and clamped to the bound in the rare case a huge step overshoots so
far that even the reflection lands outside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dataset import Dataset


@dataclass
class AscentTrace:
    """Iterates x_0..x_T and the surrogate value at each."""

    iterates: np.ndarray  # (T+1, d)
    values: np.ndarray  # (T+1,)

    @property
    def solution(self) -> np.ndarray:
        return self.iterates[-1]


class NonFiniteGradientError(RuntimeError):
    """Ascent hit a non-finite gradient; carries the partial trace."""

    def __init__(self, message: str, trace: AscentTrace):
        super().__init__(message)
        self.trace = trace


def reflective_step(x: np.ndarray, g: np.ndarray, mu: float) -> np.ndarray:
    """One ascent step x + mu*g, mirrored back into [-1, 1] per coordinate.

    Elementwise, so it applies equally to a single point (d,) or a whole
    batch of points (N, d).
    """
    u = np.asarray(x, dtype=np.float64) + mu * np.asarray(g, dtype=np.float64)
    # one reflection against whichever bound the tentative point violated
    r = np.where(u > 1.0, 2.0 - u, np.where(u < -1.0, -2.0 - u, u))
    # a step of size > 2 overshoots the single reflection; pin to the bound
    return np.clip(r, -1.0, 1.0)


def ascend(
    grad_fn: Callable[[np.ndarray], tuple[float, np.ndarray]],
    x0: np.ndarray,
    steps: int,
    mu: float,
) -> AscentTrace:
    """Apply `steps` reflective steps of size mu; grad_fn returns (value, gradient)."""
    if steps < 0:
        raise ValueError(f"step count must be >= 0, got {steps}")
    x = np.asarray(x0, dtype=np.float64).copy()
    if np.any(np.abs(x) > 1.0):
        raise ValueError(f"start point must lie in [-1, 1]^d, got {x}")
    iterates = [x.copy()]
    values = []
    for _ in range(steps):
        value, grad = grad_fn(x)
        values.append(value)
        if not np.all(np.isfinite(grad)):
            trace = AscentTrace(np.array(iterates), np.array(values))
            raise NonFiniteGradientError(f"non-finite gradient at {x}", trace)
        x = reflective_step(x, grad, mu)
        iterates.append(x.copy())
    final_value, _ = grad_fn(x)
    values.append(final_value)
    return AscentTrace(np.array(iterates), np.array(values))


def best_in_dataset(data: Dataset) -> tuple[np.ndarray, float]:
    """The dataset point with the highest raw objective; ties pick the lowest index."""
    if data.n_points == 0:
        raise ValueError("dataset is empty")
    best = int(np.argmax(data.y_raw))
    return data.x[best].copy(), float(data.y_raw[best])
