"""Conservative quantum surrogate optimization on an exact small-qubit simulator.

The pipeline: fit a data-reuploading circuit (or a parameter-matched tanh
network) to a fixed dataset, optionally with a conservatism penalty that
suppresses overestimation on adversarially ascended inputs, then search the
trained surrogate by reflective gradient ascent from the best datapoint.
"""

from .ansatz import (
    AnsatzSpec,
    evaluate_surrogate,
    evaluate_surrogate_batch,
    full_gate_list,
    param_count,
    uniform_blocks,
)
from .benchmarks import (
    BenchmarkFn,
    FunctionalGraph,
    Metrics,
    ackley,
    cosine2d,
    get_benchmark,
    novelty,
    sample_dataset,
    structured3d,
    usefulness,
)
from .classical import (
    MlpSpec,
    MlpSurrogate,
    matched_hidden_size,
    matched_mlp,
    mlp_forward,
    mlp_grads,
    train_com_classical,
)
from .dataset import Dataset
from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    RunResult,
    replay_run,
    run_experiment,
    run_single,
    summarize,
    write_csv,
    write_metadata,
)
from .extremize import AscentTrace, ascend, best_in_dataset, reflective_step
from .gradients import (
    GradReport,
    finite_diff,
    grad_report,
    grad_theta,
    grad_x,
    value_and_grad_theta_batch,
    value_and_grad_x_batch,
)
from .statevector import (
    Gate,
    StateVector,
    apply_gate,
    dense_unitary_oracle,
    expectation_sum_z,
    new_zero_state,
)
from .training import (
    AdamState,
    DualState,
    QuantumSurrogate,
    SurrogateOps,
    TrainConfig,
    TrainingDiagnostics,
    TrainingDiverged,
    adam_step,
    ascend_batch,
    com_penalty,
    default_step_size,
    generate_adversarial,
    mse_loss,
    penalty_grad,
    penalty_value,
    run_training,
    train_com_qel,
    train_qel,
)

__version__ = "0.1.0"

__all__ = [
    "AdamState",
    "AnsatzSpec",
    "AscentTrace",
    "BenchmarkFn",
    "Dataset",
    "DualState",
    "ExperimentConfig",
    "ExperimentResult",
    "FunctionalGraph",
    "Gate",
    "GradReport",
    "Metrics",
    "MlpSpec",
    "MlpSurrogate",
    "QuantumSurrogate",
    "RunResult",
    "StateVector",
    "SurrogateOps",
    "TrainConfig",
    "TrainingDiagnostics",
    "TrainingDiverged",
    "ackley",
    "adam_step",
    "apply_gate",
    "ascend",
    "ascend_batch",
    "best_in_dataset",
    "com_penalty",
    "cosine2d",
    "default_step_size",
    "dense_unitary_oracle",
    "evaluate_surrogate",
    "evaluate_surrogate_batch",
    "expectation_sum_z",
    "finite_diff",
    "full_gate_list",
    "generate_adversarial",
    "get_benchmark",
    "grad_report",
    "grad_theta",
    "grad_x",
    "matched_hidden_size",
    "matched_mlp",
    "mlp_forward",
    "mlp_grads",
    "mse_loss",
    "new_zero_state",
    "novelty",
    "param_count",
    "penalty_grad",
    "penalty_value",
    "replay_run",
    "reflective_step",
    "run_experiment",
    "run_single",
    "run_training",
    "sample_dataset",
    "structured3d",
    "summarize",
    "train_com_classical",
    "train_com_qel",
    "train_qel",
    "uniform_blocks",
    "usefulness",
    "value_and_grad_theta_batch",
    "value_and_grad_x_batch",
    "write_csv",
    "write_metadata",
]
