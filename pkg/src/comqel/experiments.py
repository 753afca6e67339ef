"""Multi-seed benchmark sweeps with CSV persistence and exact replay.

One experiment fixes a task and an ansatz topology, then crosses dataset
seeds with methods and tau values. Every run follows the same recipe:
sample the dataset, train the surrogate, reflective-ascend from the best
datapoint, score the returned solution against the true objective. All
methods under one seed share the dataset, so comparisons are paired.

Per-run RNG streams derive from SeedSequence([dataset_seed, method_code,
tau_microkey]) over PCG64, which makes any single run reproducible from
the CSV row's coordinates alone; replay_run re-executes exactly one run
for that purpose. Aborted runs are kept out of the CSV and recorded in
the metadata JSON instead.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .ansatz import AnsatzSpec, param_count, uniform_blocks
from .benchmarks import get_benchmark, novelty, sample_dataset, usefulness
from .classical import MlpSurrogate, matched_mlp
from .extremize import NonFiniteGradientError, ascend, best_in_dataset
from .training import (
    QuantumSurrogate,
    SurrogateOps,
    TrainConfig,
    TrainingDiagnostics,
    TrainingDiverged,
    run_training,
)

METHODS = ("qel", "com_qel", "com_qel_only_adv", "com_qel_no_adv", "com_classical")
ANSATZE = ("HEA", "QGNN")

_METHOD_VARIANT = {
    "qel": "QEL_PLAIN",
    "com_qel": "FULL",
    "com_qel_only_adv": "ONLY_ADV",
    "com_qel_no_adv": "NO_ADV",
    "com_classical": "FULL",
}
_METHOD_CODE = {name: code for code, name in enumerate(METHODS)}

# Desk-scale setups: qubit count, layer count, dataset size per task.
_TASK_SETUPS = {
    "cosine2d": (4, 3, 20),
    "ackley1d": (3, 3, 10),
    "structured3d": (6, 6, 30),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a sweep needs; None fields fall back to the task's setup."""

    task: str
    methods: tuple[str, ...] = ("qel", "com_qel")
    ansatz: str = "HEA"
    taus: tuple[float, ...] = (0.1,)
    n_qubits: int | None = None
    n_layers: int | None = None
    n_points: int | None = None
    n_seeds: int = 30
    seed0: int = 0
    epochs: int = 100
    t_p: int = 1
    primal_lr: float = 0.05
    dual_lr: float = 0.01
    alpha_init: float = 0.0
    extremize_steps: int = 100
    squared_rosenbrock: bool = False
    out: str | None = None

    def __post_init__(self):
        if self.task not in _TASK_SETUPS:
            raise ValueError(f"unknown task {self.task!r}; choose from {sorted(_TASK_SETUPS)}")
        if not self.methods:
            raise ValueError("methods must be non-empty")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
        if self.ansatz not in ANSATZE:
            raise ValueError(f"unknown ansatz {self.ansatz!r}; choose from {ANSATZE}")
        if self.ansatz == "QGNN" and not get_benchmark(self.task).fgm.nontrivial:
            raise ValueError(f"QGNN needs a multi-clique functional graph; {self.task} has one clique")
        if not self.taus:
            raise ValueError("taus must be non-empty")
        for t in self.taus:
            if t < 0:
                raise ValueError(f"tau must be >= 0, got {t}")
        if self.n_seeds < 1:
            raise ValueError(f"n_seeds must be >= 1, got {self.n_seeds}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")

    @property
    def resolved_n_qubits(self) -> int:
        return self.n_qubits if self.n_qubits is not None else _TASK_SETUPS[self.task][0]

    @property
    def resolved_n_layers(self) -> int:
        return self.n_layers if self.n_layers is not None else _TASK_SETUPS[self.task][1]

    @property
    def resolved_n_points(self) -> int:
        return self.n_points if self.n_points is not None else _TASK_SETUPS[self.task][2]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["methods"] = list(self.methods)
        d["taus"] = list(self.taus)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        d = dict(d)
        if "methods" in d:
            d["methods"] = tuple(d["methods"])
        if "taus" in d:
            d["taus"] = tuple(d["taus"])
        unknown = set(d) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


@dataclass(frozen=True)
class RunResult:
    seed: int
    method: str
    tau: float | None
    ansatz: str
    x_hat: np.ndarray
    f_true: float
    usefulness: float
    novelty: float
    final_mse: float
    final_c: float
    final_alpha: float
    wall_ms: float
    # per-epoch training traces, kept in memory for audits; never serialized
    diagnostics: TrainingDiagnostics | None = field(default=None, compare=False)


@dataclass(frozen=True)
class RunError:
    seed: int
    method: str
    tau: float | None
    ansatz: str
    message: str


@dataclass
class ExperimentResult:
    """All completed runs plus any aborted ones; iterates over the runs."""

    config: ExperimentConfig
    runs: list[RunResult] = field(default_factory=list)
    errors: list[RunError] = field(default_factory=list)

    def __iter__(self):
        return iter(self.runs)

    def __len__(self):
        return len(self.runs)


def build_ansatz(config: ExperimentConfig) -> AnsatzSpec:
    fn = get_benchmark(config.task)
    blocks = uniform_blocks(config.resolved_n_qubits, fn.d)
    if config.ansatz == "QGNN":
        return AnsatzSpec(
            n_qubits=config.resolved_n_qubits,
            n_layers=config.resolved_n_layers,
            var_blocks=blocks,
            topology="clique",
            cliques=fn.fgm.cliques,
        )
    return AnsatzSpec(
        n_qubits=config.resolved_n_qubits,
        n_layers=config.resolved_n_layers,
        var_blocks=blocks,
        topology="chain",
    )


def run_rng(dataset_seed: int) -> np.random.Generator:
    """Parameter-init stream for one seed, shared by every method/tau cell.

    Sharing the stream pairs the comparison: all methods on a seed start from
    the same draw, so result differences reflect the training procedure alone.
    The trailing 1 keeps this stream distinct from the dataset sampler, which
    seeds its generator with the bare seed.
    """
    ss = np.random.SeedSequence([dataset_seed, 1])
    return np.random.Generator(np.random.PCG64(ss))


def _train_config(config: ExperimentConfig, method: str, tau: float | None) -> TrainConfig:
    return TrainConfig(
        tau=0.0 if tau is None else tau,
        t_p=config.t_p,
        epochs=config.epochs,
        primal_lr=config.primal_lr,
        dual_lr=config.dual_lr,
        alpha_init=config.alpha_init,
        variant=_METHOD_VARIANT[method],
        extremize_steps=config.extremize_steps,
        # seed is unused here: run_single passes an explicit rng stream.
        seed=0,
    )


def run_single(
    config: ExperimentConfig, dataset_seed: int, method: str, tau: float | None
) -> RunResult:
    """Execute one fully deterministic run; wall_ms is the only nonreproducible field."""
    fn = get_benchmark(config.task, squared_rosenbrock=config.squared_rosenbrock)
    data = sample_dataset(fn, config.resolved_n_points, dataset_seed)
    tc = _train_config(config, method, tau)
    rng = run_rng(dataset_seed)

    t0 = time.perf_counter()
    if method == "com_classical":
        # Hidden width matched to the parameter budget of this task's circuit.
        budget = param_count(build_ansatz(config))
        ops: SurrogateOps = MlpSurrogate(matched_mlp(fn.d, budget))
    else:
        ops = QuantumSurrogate(build_ansatz(config))
    params, dual, diagnostics = run_training(ops, data, tc, rng)

    x0, _ = best_in_dataset(data)
    mu = tc.resolved_extremize_lr(data.d)

    def grad_fn(x):
        vals, grads = ops.value_and_input_grad(params, x[None, :])
        return float(vals[0]), grads[0]

    trace = ascend(grad_fn, x0, steps=config.extremize_steps, mu=mu)
    x_hat = trace.solution
    wall_ms = (time.perf_counter() - t0) * 1000.0

    final_alpha = dual.alpha if tc.variant != "QEL_PLAIN" else float("nan")
    return RunResult(
        seed=dataset_seed,
        method=method,
        tau=tau,
        ansatz=config.ansatz,
        x_hat=x_hat,
        f_true=fn(x_hat),
        usefulness=usefulness(fn, x_hat, data),
        novelty=novelty(x_hat, data),
        final_mse=diagnostics.final_mse,
        final_c=diagnostics.final_c,
        final_alpha=final_alpha,
        wall_ms=wall_ms,
        diagnostics=diagnostics,
    )


def _cells(config: ExperimentConfig):
    """(seed, method, tau) triples in deterministic sweep order."""
    for offset in range(config.n_seeds):
        seed = config.seed0 + offset
        for method in config.methods:
            if method == "qel":
                yield seed, method, None
            else:
                for tau in config.taus:
                    yield seed, method, tau


def run_experiment(config: ExperimentConfig, progress: bool = False) -> ExperimentResult:
    """Run the whole sweep; aborted cells go to .errors and the sweep continues."""
    result = ExperimentResult(config=config)
    for seed, method, tau in _cells(config):
        try:
            result.runs.append(run_single(config, seed, method, tau))
        except (TrainingDiverged, NonFiniteGradientError, FloatingPointError) as exc:
            result.errors.append(
                RunError(seed=seed, method=method, tau=tau, ansatz=config.ansatz, message=str(exc))
            )
        if progress:
            print(f"done seed={seed} method={method} tau={tau}", file=sys.stderr)
    result.runs.sort(key=lambda r: (r.seed, _METHOD_CODE[r.method], -1.0 if r.tau is None else r.tau))
    return result


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def csv_header(d: int) -> str:
    xh = ",".join(f"x_hat_{i}" for i in range(d))
    return f"seed,method,tau,ansatz,{xh},f_true,usefulness,novelty,final_mse,final_C,final_alpha,wall_ms"


def format_row(r: RunResult) -> str:
    tau = "" if r.tau is None else _fmt(r.tau)
    xh = ",".join(_fmt(v) for v in r.x_hat)
    tail = ",".join(
        _fmt(v)
        for v in (r.f_true, r.usefulness, r.novelty, r.final_mse, r.final_c, r.final_alpha, r.wall_ms)
    )
    return f"{r.seed},{r.method},{tau},{r.ansatz},{xh},{tail}"


def write_csv(path: str | Path, result: ExperimentResult) -> Path:
    path = Path(path)
    d = get_benchmark(result.config.task).d
    lines = [csv_header(d)] + [format_row(r) for r in result.runs]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


def write_metadata(path: str | Path, result: ExperimentResult) -> Path:
    """Resolved config, library versions, RNG scheme, and any aborted runs."""
    try:
        from . import __version__ as code_version
    except ImportError:
        code_version = "unknown"
    meta = {
        "config": result.config.to_dict(),
        "code_version": code_version,
        "numpy_version": np.__version__,
        "python_version": sys.version.split()[0],
        "rng": "PCG64; dataset from SeedSequence(seed), init from SeedSequence([seed, 1]) shared across methods",
        "n_runs": len(result.runs),
        "errors": [asdict(e) for e in result.errors],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(meta, indent=2) + "\n")
    return path


def replay_run(config: ExperimentConfig, seed: int, method: str, tau: float | None) -> RunResult:
    """Re-execute one cell; identical to the sweep's own run of that cell."""
    return run_single(config, seed, method, tau)


def rows_match(a: RunResult, b: RunResult) -> bool:
    """Bit-exact row comparison ignoring wall_ms, the only timing-dependent field."""
    ra = format_row(a).rsplit(",", 1)[0]
    rb = format_row(b).rsplit(",", 1)[0]
    return ra == rb


def summarize(result: ExperimentResult | list[RunResult]) -> list[dict]:
    """Quantile table of usefulness and novelty per (method, tau, ansatz) group."""
    runs = list(result)
    if not runs:
        raise ValueError("no runs to summarize")
    groups: dict[tuple, list[RunResult]] = {}
    for r in runs:
        groups.setdefault((r.method, r.tau, r.ansatz), []).append(r)
    table = []
    for key in sorted(groups, key=lambda k: (_METHOD_CODE[k[0]], -1.0 if k[1] is None else k[1], k[2])):
        rs = groups[key]
        row = {"method": key[0], "tau": key[1], "ansatz": key[2], "n": len(rs)}
        for metric in ("usefulness", "novelty"):
            vals = np.array([getattr(r, metric) for r in rs])
            qs = np.quantile(vals, [0.0, 0.25, 0.5, 0.75, 1.0])
            row[metric] = {
                "min": float(qs[0]),
                "q25": float(qs[1]),
                "median": float(qs[2]),
                "q75": float(qs[3]),
                "max": float(qs[4]),
            }
        table.append(row)
    return table


def format_summary(table: list[dict]) -> str:
    lines = [
        f"{'method':<18} {'tau':>6} {'ansatz':>6} {'n':>4} "
        f"{'U_med':>9} {'U_min':>9} {'N_med':>9} {'N_min':>9}"
    ]
    for row in table:
        tau = "-" if row["tau"] is None else f"{row['tau']:g}"
        lines.append(
            f"{row['method']:<18} {tau:>6} {row['ansatz']:>6} {row['n']:>4} "
            f"{row['usefulness']['median']:>9.4f} {row['usefulness']['min']:>9.4f} "
            f"{row['novelty']['median']:>9.4f} {row['novelty']['min']:>9.4f}"
        )
    return "\n".join(lines)
