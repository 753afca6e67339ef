"""Gradient checks against finite differences and analytic toys."""

import numpy as np
import pytest

from comqel import (
    evaluate_surrogate,
    evaluate_surrogate_batch,
    finite_diff,
    grad_report,
    grad_theta,
    grad_x,
    param_count,
    value_and_grad_theta_batch,
    value_and_grad_x_batch,
)
from comqel.ansatz import AnsatzSpec, uniform_blocks
from comqel.gradients import CLAMP_EPS, GradReport, clamp_inputs
from conftest import random_chain_instance


def toy_1q():
    spec = AnsatzSpec(n_qubits=1, n_layers=1, var_blocks=uniform_blocks(1, 1))
    return spec, np.zeros(param_count(spec))


def test_finite_diff_square():
    g = finite_diff(lambda p: float(p[0] ** 2), np.array([3.0]), 1e-5)
    assert abs(g[0] - 6.0) <= 1e-6


def test_finite_diff_constant():
    g = finite_diff(lambda p: 4.2, np.array([0.3, -0.7]), 1e-5)
    np.testing.assert_allclose(g, 0.0, atol=1e-10)


def test_finite_diff_rejects_bad_step():
    with pytest.raises(ValueError):
        finite_diff(lambda p: 0.0, np.array([0.0]), 0.0)


def test_toy_input_gradient():
    # f(x) = 2x^2 - 1, so df/dx = 4x; at 0.5 that is 2
    spec, theta = toy_1q()
    g = grad_x(spec, theta, np.array([0.5]))
    assert abs(g[0] - 2.0) <= 1e-10


def test_parameter_shift_matches_finite_diff():
    rng = np.random.default_rng(100)
    for _ in range(15):
        spec, theta, x = random_chain_instance(rng)
        analytic = grad_theta(spec, theta, x)
        numeric = finite_diff(lambda t: evaluate_surrogate(spec, t, x), theta, 1e-5)
        np.testing.assert_allclose(analytic, numeric, atol=1e-6)


def test_input_gradient_matches_finite_diff():
    rng = np.random.default_rng(200)
    for _ in range(15):
        spec, theta, x = random_chain_instance(rng)
        analytic = grad_x(spec, theta, x)
        numeric = finite_diff(lambda xx: evaluate_surrogate(spec, theta, xx), x, 1e-5)
        np.testing.assert_allclose(analytic, numeric, atol=1e-5)


def test_shift_rule_is_exact_not_approximate():
    # the +-pi/2 rule must reproduce a manual shifted-circuit evaluation bit for bit
    rng = np.random.default_rng(5)
    spec = AnsatzSpec(n_qubits=3, n_layers=2, var_blocks=uniform_blocks(3, 1))
    theta = rng.uniform(-np.pi, np.pi, param_count(spec))
    x = np.array([[0.4]])
    _, jac = value_and_grad_theta_batch(spec, theta, x)
    for k in (0, 7, 11, 17, 26):
        plus = theta.copy()
        plus[k] += np.pi / 2
        minus = theta.copy()
        minus[k] -= np.pi / 2
        manual = 0.5 * (
            evaluate_surrogate_batch(spec, plus, x)[0]
            - evaluate_surrogate_batch(spec, minus, x)[0]
        )
        assert jac[0, k] == manual


def test_batch_gradients_match_per_point():
    rng = np.random.default_rng(300)
    spec = AnsatzSpec(n_qubits=2, n_layers=2, var_blocks=uniform_blocks(2, 2))
    theta = rng.uniform(-np.pi, np.pi, param_count(spec))
    xs = rng.uniform(-0.9, 0.9, size=(5, 2))
    values, jac = value_and_grad_theta_batch(spec, theta, xs)
    _, gx = value_and_grad_x_batch(spec, theta, xs)
    for i, x in enumerate(xs):
        assert values[i] == evaluate_surrogate(spec, theta, x)
        np.testing.assert_array_equal(jac[i], grad_theta(spec, theta, x))
        np.testing.assert_array_equal(gx[i], grad_x(spec, theta, x))


def test_gradient_integrates_to_value_difference():
    # trapezoid integral of df/dx over [a, b] recovers f(b) - f(a) on the 1-qubit toy
    spec, theta = toy_1q()
    a, b = -0.7, 0.8
    grid = np.linspace(a, b, 401)
    grads = np.array([grad_x(spec, theta, np.array([x]))[0] for x in grid])
    integral = np.trapezoid(grads, grid)
    diff = evaluate_surrogate(spec, theta, np.array([b])) - evaluate_surrogate(
        spec, theta, np.array([a])
    )
    assert abs(integral - diff) <= 1e-3


def test_input_gradient_finite_at_boundary():
    spec, theta = toy_1q()
    for x in (-1.0, 1.0):
        g = grad_x(spec, theta, np.array([x]))
        assert np.all(np.isfinite(g))


def test_clamp_inputs():
    clamped = clamp_inputs(np.array([-1.0, -0.5, 1.0]))
    assert clamped[0] == -1.0 + CLAMP_EPS
    assert clamped[1] == -0.5
    assert clamped[2] == 1.0 - CLAMP_EPS


def test_grad_report():
    rng = np.random.default_rng(8)
    spec, theta, x = random_chain_instance(rng)
    report = grad_report(spec, theta, x)
    assert report.d_theta.shape == (param_count(spec),)
    assert report.d_x.shape == (spec.d,)
    assert report.value == evaluate_surrogate(spec, theta, x)
    with pytest.raises(ValueError):
        GradReport(d_theta=np.array([np.inf]), d_x=np.array([0.0]), value=0.0)
