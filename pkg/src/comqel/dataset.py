"""Offline training data: input/output pairs with min-max target scaling.

Raw objective values can span any range (the structured benchmark reaches
the hundreds) while the surrogate's expectation is bounded, so targets are
affinely rescaled to [-1, 1]. The map is monotone, so the best datapoint is
the same before and after scaling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np


@dataclass
class Dataset:
    x: np.ndarray  # (N, d), every entry in [-1, 1]
    y_raw: np.ndarray  # (N,)
    y_scaled: np.ndarray  # (N,), in [-1, 1]
    y_min_raw: float
    y_max_raw: float

    @property
    def n_points(self) -> int:
        return self.x.shape[0]

    @property
    def d(self) -> int:
        return self.x.shape[1]

    @classmethod
    def from_raw(cls, x: np.ndarray, y_raw: np.ndarray) -> "Dataset":
        """Build a dataset from raw pairs, filling in the scaled targets."""
        x = np.atleast_2d(np.asarray(x, dtype=np.float64))
        y_raw = np.asarray(y_raw, dtype=np.float64)
        if x.shape[0] != y_raw.shape[0]:
            raise ValueError(f"{x.shape[0]} inputs but {y_raw.shape[0]} outputs")
        if np.any(np.abs(x) > 1.0):
            raise ValueError("inputs must lie in [-1, 1]^d")
        y_min = float(np.min(y_raw))
        y_max = float(np.max(y_raw))
        if y_max > y_min:
            y_scaled = -1.0 + 2.0 * (y_raw - y_min) / (y_max - y_min)
        else:
            warnings.warn("all objective values identical; scaled targets set to 0")
            y_scaled = np.zeros_like(y_raw)
        return cls(x=x, y_raw=y_raw, y_scaled=y_scaled, y_min_raw=y_min, y_max_raw=y_max)
