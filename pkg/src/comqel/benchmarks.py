"""Ground-truth objectives, dataset sampling, and solution-quality metrics.

All benchmarks are maximization problems on [-1, 1]^d:

  * cosine2d: sum of two damped cosines, maximum 2 at the origin.
  * ackley1d: the Ackley function negated so larger is better; maximum 0
    at the origin, with heavy oscillation elsewhere.
  * structured3d: a Rosenbrock-style term in (x1, x2) plus the negated
    Ackley in x3. The two variable groups never interact, which the
    functional graph records as the cliques {x1, x2} and {x3}.

The Rosenbrock-style term is 100*(x2 - x1^2) + (x1 - 1)^2 with the first
term unsquared; pass squared_rosenbrock=True for the classical
100*(x2 - x1^2)^2 variant.

Sampling uses numpy's PCG64 generator so datasets are bit-reproducible
across platforms from the seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset


@dataclass(frozen=True)
class FunctionalGraph:
    """Variable cliques of an objective; variables in different cliques never interact."""

    cliques: tuple[frozenset[int], ...]

    def __post_init__(self):
        if not self.cliques:
            raise ValueError("functional graph needs at least one clique")

    @property
    def variables(self) -> frozenset[int]:
        return frozenset().union(*self.cliques)

    @property
    def nontrivial(self) -> bool:
        """True when there is more than one clique, i.e. real structure to exploit."""
        return len(self.cliques) > 1


@dataclass(frozen=True)
class Metrics:
    usefulness: float
    novelty: float

    def __post_init__(self):
        if self.novelty < 0:
            raise ValueError(f"novelty must be >= 0, got {self.novelty}")


def cosine2d(x) -> float:
    """sum_i cos(2*pi*x_i) * (1 - 0.1*|x_i|) over the two coordinates."""
    x = np.asarray(x, dtype=np.float64)
    return float(np.sum(np.cos(2.0 * np.pi * x) * (1.0 - 0.1 * np.abs(x))))


def ackley(x) -> float:
    """Negated standard Ackley (coefficients 20, 0.2, 2*pi); maximum 0 at x = 0."""
    x = np.atleast_1d(np.asarray(x, dtype=np.float64))
    rms = np.sqrt(np.mean(x**2))
    value = -20.0 * np.exp(-0.2 * rms) - np.exp(np.mean(np.cos(2.0 * np.pi * x))) + 20.0 + np.e
    return float(-value)


def structured3d(x, squared_rosenbrock: bool = False) -> float:
    """Rosenbrock-style term in (x1, x2) plus negated Ackley in x3."""
    x = np.asarray(x, dtype=np.float64)
    first = x[1] - x[0] ** 2
    if squared_rosenbrock:
        first = first**2
    return float(100.0 * first + (x[0] - 1.0) ** 2) + ackley(x[2])


@dataclass(frozen=True)
class BenchmarkFn:
    """A named objective: dimension, functional graph, and optional variants."""

    id: str
    d: int
    fgm: FunctionalGraph
    squared_rosenbrock: bool = False

    def __call__(self, x) -> float:
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.d,):
            raise ValueError(f"{self.id} expects {self.d} coordinates, got shape {x.shape}")
        if self.id == "cosine2d":
            return cosine2d(x)
        if self.id == "ackley1d":
            return ackley(x)
        if self.id == "structured3d":
            return structured3d(x, squared_rosenbrock=self.squared_rosenbrock)
        raise ValueError(f"unknown benchmark {self.id!r}")


_BENCHMARK_DIMS = {"cosine2d": 2, "ackley1d": 1, "structured3d": 3}
_BENCHMARK_FGMS = {
    "cosine2d": FunctionalGraph((frozenset({0}), frozenset({1}))),
    "ackley1d": FunctionalGraph((frozenset({0}),)),
    "structured3d": FunctionalGraph((frozenset({0, 1}), frozenset({2}))),
}


def get_benchmark(name: str, squared_rosenbrock: bool = False) -> BenchmarkFn:
    if name not in _BENCHMARK_DIMS:
        raise ValueError(f"unknown benchmark {name!r}; choose from {sorted(_BENCHMARK_DIMS)}")
    return BenchmarkFn(
        id=name,
        d=_BENCHMARK_DIMS[name],
        fgm=_BENCHMARK_FGMS[name],
        squared_rosenbrock=squared_rosenbrock,
    )


def sample_dataset(fn: BenchmarkFn, n_points: int, seed: int) -> Dataset:
    """Draw n_points inputs i.i.d. uniform on [-1, 1]^d and evaluate the objective."""
    if n_points < 2:
        raise ValueError(f"need at least 2 points, got {n_points}")
    rng = np.random.Generator(np.random.PCG64(seed))
    x = rng.uniform(-1.0, 1.0, size=(n_points, fn.d))
    y_raw = np.array([fn(xi) for xi in x])
    return Dataset.from_raw(x, y_raw)


def usefulness(fn: BenchmarkFn, x_hat: np.ndarray, data: Dataset) -> float:
    """True-objective improvement of x_hat, normalized by the dataset's value range.

    1 means as good as the best datapoint, 0 as bad as the worst; the scale is
    affine, so values above 1 mean genuine improvement over the dataset.
    """
    if data.y_max_raw <= data.y_min_raw:
        raise ValueError("usefulness undefined: dataset has no objective spread")
    return (fn(x_hat) - data.y_min_raw) / (data.y_max_raw - data.y_min_raw)


def novelty(x_hat: np.ndarray, data: Dataset) -> float:
    """Minimum squared Euclidean distance from x_hat to any dataset input."""
    if data.n_points == 0:
        raise ValueError("dataset is empty")
    diffs = data.x - np.asarray(x_hat, dtype=np.float64)
    return float(np.min(np.sum(diffs**2, axis=1)))
