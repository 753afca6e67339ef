import numpy as np
import pytest

from comqel import AscentTrace, Dataset, ascend, best_in_dataset, reflective_step
from comqel.extremize import NonFiniteGradientError


def quad_grad(x):
    # f(x) = -sum(x^2), maximum at the origin
    return float(-np.sum(x**2)), -2.0 * x


def test_interior_step_is_plain_ascent():
    x = np.array([0.1, -0.2])
    g = np.array([1.0, 0.5])
    np.testing.assert_array_equal(reflective_step(x, g, 0.1), x + 0.1 * g)


def test_step_reflects_off_upper_bound():
    # 0.9 + 0.2 -> 1.1, mirrored to 0.9
    out = reflective_step(np.array([0.9]), np.array([1.0]), 0.2)
    assert abs(out[0] - 0.9) <= 1e-15


def test_step_reflects_off_lower_bound():
    out = reflective_step(np.array([-0.95]), np.array([-1.0]), 0.1)
    assert abs(out[0] - (-0.95)) <= 1e-15


def test_huge_step_clamps_after_one_reflection():
    # u = 5 reflects to -3, which is pinned at the lower bound
    out = reflective_step(np.array([0.0]), np.array([1.0]), 5.0)
    assert out[0] == -1.0
    out = reflective_step(np.array([0.0]), np.array([-1.0]), 5.0)
    assert out[0] == 1.0


def test_step_batched_matches_elementwise():
    rng = np.random.default_rng(0)
    xs = rng.uniform(-1.0, 1.0, size=(20, 3))
    gs = rng.normal(size=(20, 3))
    batch = reflective_step(xs, gs, 0.7)
    for i in range(20):
        np.testing.assert_array_equal(batch[i], reflective_step(xs[i], gs[i], 0.7))


def test_long_run_stays_inside_domain():
    # random gradients, 10^5 steps, every iterate must stay in the box
    rng = np.random.default_rng(42)
    x = rng.uniform(-1.0, 1.0, size=4)
    for _ in range(100_000):
        x = reflective_step(x, rng.normal(size=4), 0.3)
        assert np.all(np.abs(x) <= 1.0)


def test_ascend_climbs_quadratic():
    trace = ascend(quad_grad, np.array([0.8, -0.6]), steps=200, mu=0.1)
    assert trace.iterates.shape == (201, 2)
    assert trace.values.shape == (201,)
    assert np.all(np.diff(trace.values) >= -1e-12)
    np.testing.assert_allclose(trace.solution, 0.0, atol=1e-8)
    assert abs(trace.values[-1]) <= 1e-12


def test_ascend_zero_steps():
    x0 = np.array([0.25, 0.5])
    trace = ascend(quad_grad, x0, steps=0, mu=0.1)
    np.testing.assert_array_equal(trace.solution, x0)
    assert trace.values.shape == (1,)
    assert trace.values[0] == quad_grad(x0)[0]


def test_ascend_rejects_start_outside_domain():
    with pytest.raises(ValueError):
        ascend(quad_grad, np.array([1.5]), steps=1, mu=0.1)


def test_ascend_rejects_negative_steps():
    with pytest.raises(ValueError):
        ascend(quad_grad, np.array([0.0]), steps=-1, mu=0.1)


def test_ascend_raises_on_nan_gradient():
    calls = []

    def bad_grad(x):
        calls.append(x.copy())
        if len(calls) < 3:
            return 0.0, np.ones_like(x)
        return 0.0, np.full_like(x, np.nan)

    with pytest.raises(NonFiniteGradientError) as err:
        ascend(bad_grad, np.array([0.0]), steps=10, mu=0.01)
    # two good steps happened; the value at the failing iterate is still recorded
    assert err.value.trace.iterates.shape == (3, 1)
    assert err.value.trace.values.shape == (3,)


def test_trace_solution_is_last_iterate():
    trace = AscentTrace(iterates=np.array([[0.0], [0.5]]), values=np.array([1.0, 2.0]))
    assert trace.solution[0] == 0.5


def test_best_in_dataset():
    data = Dataset.from_raw(
        x=np.array([[0.1], [0.2], [0.3]]), y_raw=np.array([1.0, 5.0, 2.0])
    )
    x_best, y_best = best_in_dataset(data)
    assert x_best[0] == 0.2
    assert y_best == 5.0


def test_best_in_dataset_ties_pick_first():
    data = Dataset.from_raw(
        x=np.array([[0.1], [0.2], [0.3]]), y_raw=np.array([5.0, 5.0, 1.0])
    )
    x_best, _ = best_in_dataset(data)
    assert x_best[0] == 0.1
