"""Matched tanh network: sizing, gradients, and conservative training."""

import numpy as np
import pytest

from comqel import (
    Dataset,
    MlpSpec,
    MlpSurrogate,
    TrainConfig,
    matched_hidden_size,
    matched_mlp,
    mlp_forward,
    mlp_grads,
    train_com_classical,
)
from comqel.gradients import finite_diff
from comqel.training import SurrogateOps


def random_mlp(rng, d_in=None, hidden=None):
    d_in = d_in if d_in is not None else int(rng.integers(1, 4))
    hidden = hidden if hidden is not None else int(rng.integers(1, 6))
    spec = MlpSpec(d_in=d_in, hidden=hidden)
    weights = rng.normal(scale=0.8, size=spec.n_params)
    return spec, weights


def test_matched_hidden_sizes_for_task_budgets():
    # circuit budgets 3n(L+1): cosine 48, ackley 36, structured 126
    assert matched_hidden_size(2, 48) == 11
    assert matched_hidden_size(1, 36) == 11
    assert matched_hidden_size(3, 126) == 25


def test_matched_budget_gap_is_small():
    for d_in in (1, 2, 3, 5):
        for budget in (20, 48, 126, 300):
            spec = matched_mlp(d_in, budget)
            assert spec.n_params <= budget
            assert budget - spec.n_params < d_in + 2


def test_matched_hidden_rejects_tiny_budget():
    with pytest.raises(ValueError):
        matched_hidden_size(3, 5)


def test_mlp_spec_validation():
    MlpSpec(d_in=2, hidden=3)
    with pytest.raises(ValueError):
        MlpSpec(d_in=0, hidden=3)
    with pytest.raises(ValueError):
        MlpSpec(d_in=2, hidden=0)
    with pytest.raises(ValueError):
        MlpSpec(d_in=2, hidden=3, weights=np.zeros(5))


def test_unpack_layout_round_trip():
    spec = MlpSpec(d_in=2, hidden=3)
    w = np.arange(spec.n_params, dtype=np.float64)
    w1, b1, w2, b2 = spec.unpack(w)
    assert w1.shape == (3, 2)
    np.testing.assert_array_equal(w1, [[0, 1], [2, 3], [4, 5]])
    np.testing.assert_array_equal(b1, [6, 7, 8])
    np.testing.assert_array_equal(w2, [9, 10, 11])
    assert b2 == 12.0
    with pytest.raises(ValueError):
        spec.unpack()  # no stored weights


def test_forward_zero_weights_is_zero():
    spec = MlpSpec(d_in=2, hidden=4)
    assert mlp_forward(spec, np.array([0.3, -0.7]), np.zeros(spec.n_params)) == 0.0


def test_forward_hand_case():
    # 1 input, 1 hidden unit: w2*tanh(w1*x + b1) + b2
    spec = MlpSpec(d_in=1, hidden=1)
    w = np.array([2.0, 0.5, 3.0, -0.25])
    expected = 3.0 * np.tanh(2.0 * 0.4 + 0.5) - 0.25
    assert abs(mlp_forward(spec, np.array([0.4]), w) - expected) <= 1e-15


def test_forward_is_odd_up_to_biases():
    # with zero biases the network output is odd in x
    rng = np.random.default_rng(6)
    spec = MlpSpec(d_in=3, hidden=5)
    w = rng.normal(size=spec.n_params)
    h, d = spec.hidden, spec.d_in
    w[h * d : h * d + h] = 0.0
    w[-1] = 0.0
    x = rng.uniform(-1, 1, 3)
    assert abs(mlp_forward(spec, x, w) + mlp_forward(spec, -x, w)) <= 1e-14


def test_param_jacobian_matches_finite_diff():
    rng = np.random.default_rng(7)
    for _ in range(20):
        spec, weights = random_mlp(rng)
        ops = MlpSurrogate(spec)
        x = rng.uniform(-1, 1, size=(1, spec.d_in))
        vals, jac = ops.value_and_param_jac(weights, x)
        numeric = finite_diff(lambda w: float(ops.values(w, x)[0]), weights, 1e-6)
        np.testing.assert_allclose(jac[0], numeric, atol=1e-6)
        assert vals[0] == ops.values(weights, x)[0]


def test_input_gradient_matches_finite_diff():
    rng = np.random.default_rng(8)
    for _ in range(20):
        spec, weights = random_mlp(rng)
        ops = MlpSurrogate(spec)
        x = rng.uniform(-1, 1, spec.d_in)
        _, grads = ops.value_and_input_grad(weights, x[None, :])
        numeric = finite_diff(
            lambda xx: float(ops.values(weights, xx[None, :])[0]), x, 1e-6
        )
        np.testing.assert_allclose(grads[0], numeric, atol=1e-6)


def test_mlp_grads_zero_weights():
    spec = MlpSpec(d_in=2, hidden=3)
    w = np.zeros(spec.n_params)
    weight_grad, input_grad = mlp_grads(spec, np.array([0.5, -0.5]), target=1.0, weights=w)
    # output 0, residual -1: only the output bias has nonzero gradient (2e * 1)
    np.testing.assert_array_equal(input_grad, [0.0, 0.0])
    assert weight_grad[-1] == -2.0
    # hidden weights get zero gradient because w2 = 0; w2 entries see a = tanh(0) = 0
    np.testing.assert_array_equal(weight_grad[:-1], np.zeros(spec.n_params - 1))


def test_init_is_scaled_and_seeded():
    spec = MlpSpec(d_in=4, hidden=6)
    ops = MlpSurrogate(spec)
    a = ops.init_params(np.random.Generator(np.random.PCG64(3)))
    b = ops.init_params(np.random.Generator(np.random.PCG64(3)))
    np.testing.assert_array_equal(a, b)
    h, d = spec.hidden, spec.d_in
    assert np.all(np.abs(a[: h * d + h]) <= 1.0 / np.sqrt(d))
    assert np.all(np.abs(a[h * d + h :]) <= 1.0 / np.sqrt(h))


def test_mlp_surrogate_satisfies_protocol():
    assert isinstance(MlpSurrogate(MlpSpec(d_in=1, hidden=2)), SurrogateOps)


def test_batched_values_match_singles():
    rng = np.random.default_rng(9)
    spec, weights = random_mlp(rng, d_in=2, hidden=4)
    ops = MlpSurrogate(spec)
    xs = rng.uniform(-1, 1, size=(6, 2))
    batch = ops.values(weights, xs)
    for i in range(6):
        assert batch[i] == mlp_forward(spec, xs[i], weights)


def test_train_com_classical_fits_realizable_target():
    # targets produced by a fixed network of the same architecture
    rng = np.random.default_rng(12)
    spec = MlpSpec(d_in=1, hidden=4)
    teacher = rng.normal(scale=0.5, size=spec.n_params)
    xs = rng.uniform(-1, 1, size=(8, 1))
    ops = MlpSurrogate(spec)
    vals = ops.values(teacher, xs)
    data = Dataset(
        x=xs,
        y_raw=vals.copy(),
        y_scaled=vals.copy(),
        y_min_raw=float(vals.min()),
        y_max_raw=float(vals.max()),
    )
    config = TrainConfig(variant="FULL", epochs=400, tau=1.0, primal_lr=0.02)
    trained, dual, diag = train_com_classical(
        spec, data, config, np.random.Generator(np.random.PCG64(0))
    )
    assert diag.final_mse <= 1e-3
    assert trained.weights is not None
    assert dual.alpha >= 0.0


def test_train_com_classical_constant_family_keeps_alpha_zero():
    # a dataset at a single repeated input makes ascent pointless; with large
    # tau the constraint is slack the whole way and alpha never leaves zero
    xs = np.array([[0.0], [0.0], [0.0], [0.0]])
    data = Dataset(
        x=xs,
        y_raw=np.zeros(4),
        y_scaled=np.zeros(4),
        y_min_raw=0.0,
        y_max_raw=0.0,
    )
    spec = MlpSpec(d_in=1, hidden=3)
    config = TrainConfig(variant="FULL", epochs=30, tau=10.0)
    _, dual, diag = train_com_classical(
        spec, data, config, np.random.Generator(np.random.PCG64(1))
    )
    assert dual.alpha == 0.0
    assert np.all(diag.alpha_trace == 0.0)
    assert np.all(diag.c_trace < 0.0)


def test_train_com_classical_is_deterministic():
    rng = np.random.default_rng(13)
    xs = rng.uniform(-1, 1, size=(6, 2))
    y = rng.normal(size=6)
    data = Dataset.from_raw(xs, y)
    spec = matched_mlp(2, 48)
    config = TrainConfig(variant="FULL", epochs=25, tau=0.1)
    a = train_com_classical(spec, data, config, np.random.Generator(np.random.PCG64(5)))
    b = train_com_classical(spec, data, config, np.random.Generator(np.random.PCG64(5)))
    np.testing.assert_array_equal(a[0].weights, b[0].weights)
    np.testing.assert_array_equal(a[2].c_trace, b[2].c_trace)


def test_train_com_classical_validates_inputs():
    data = Dataset.from_raw(np.array([[0.1], [0.2]]), np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        train_com_classical(MlpSpec(d_in=1, hidden=2), data, TrainConfig(variant="QEL_PLAIN"))
    with pytest.raises(ValueError):
        train_com_classical(MlpSpec(d_in=2, hidden=2), data, TrainConfig(variant="FULL"))
