import numpy as np
import pytest

from paoa.spsa import NonFiniteObjectiveError, SpsaConfig, maximize, project


def unit_cfg(dim, **kw):
    return SpsaConfig(lo=np.zeros(dim), hi=np.ones(dim), **kw)


# ---------------------------------------------------------------------------
# Config and projection
# ---------------------------------------------------------------------------


def test_config_defaults_and_stability():
    cfg = unit_cfg(3)
    assert cfg.iterations == 100
    assert cfg.A == 10.0
    assert unit_cfg(3, stability=5.0).A == 5.0


def test_config_validation():
    with pytest.raises(ValueError):
        SpsaConfig(lo=np.ones(2), hi=np.zeros(2))
    with pytest.raises(ValueError):
        unit_cfg(2, a=-1.0)
    with pytest.raises(ValueError):
        unit_cfg(2, alpha=0.1, gamma_exp=0.2)


def test_project():
    lo, hi = np.zeros(3), np.ones(3)
    assert np.array_equal(project(np.array([0.2, 0.5, 0.9]), lo, hi), [0.2, 0.5, 0.9])
    assert project(np.array([1.3, -0.2, 0.5]), lo, hi).tolist() == [1.0, 0.0, 0.5]


# ---------------------------------------------------------------------------
# Optimization behaviour
# ---------------------------------------------------------------------------


def test_quadratic_1d_converges():
    # 20 seeded runs; 90th percentile of |x_best - 0.7| within 0.05
    errs = []
    for seed in range(20):
        rng = np.random.default_rng(1000 + seed)
        trace = maximize(lambda x: -(x[0] - 0.7) ** 2, np.array([0.1]), unit_cfg(1), rng)
        errs.append(abs(trace.best_params[0] - 0.7))
    assert sorted(errs)[17] <= 0.05


def test_noisy_quadratic_10d_regression_guard():
    # separable concave quadratic with additive noise, 200 iterations
    for seed in range(3):
        rng = np.random.default_rng(seed)
        target = rng.uniform(0.2, 0.8, 10)
        noise = np.random.default_rng(seed + 100)

        def f(x):
            return -float(((x - target) ** 2).sum()) + noise.normal(0.0, 0.1)

        trace = maximize(f, rng.uniform(0, 1, 10), unit_cfg(10, iterations=200), rng)
        assert np.median(np.abs(trace.best_params - target)) <= 0.1


def test_constant_objective_stays_in_box():
    rng = np.random.default_rng(5)
    trace = maximize(lambda x: 1.0, np.full(4, 0.5), unit_cfg(4), rng)
    for x in trace.params:
        assert (x >= 0).all() and (x <= 1).all()
    assert any(np.array_equal(trace.best_params, x) for x in trace.params)


def test_zero_iterations_records_only_x0():
    rng = np.random.default_rng(6)
    x0 = np.array([0.3, 0.4])
    trace = maximize(lambda x: float(x.sum()), x0, unit_cfg(2, iterations=0), rng)
    assert len(trace.params) == 1
    assert np.array_equal(trace.params[0], x0)
    assert trace.best_objective == pytest.approx(0.7)


def test_every_evaluation_point_is_inside_the_box():
    seen = []

    def f(x):
        seen.append(x.copy())
        return -float(((x - 0.5) ** 2).sum())

    rng = np.random.default_rng(7)
    maximize(f, np.array([0.99, 0.01]), unit_cfg(2, iterations=50), rng)
    pts = np.array(seen)
    assert (pts >= 0).all() and (pts <= 1).all()
    assert len(pts) == 1 + 3 * 50  # x0 plus (two probes + re-evaluation) per step


def test_trace_is_deterministic_given_seed():
    noise_a = np.random.default_rng(42)
    noise_b = np.random.default_rng(42)

    def make(noise):
        return lambda x: -(x[0] - 0.6) ** 2 + noise.normal(0, 0.05)

    t1 = maximize(make(noise_a), np.array([0.2]), unit_cfg(1), np.random.default_rng(9))
    t2 = maximize(make(noise_b), np.array([0.2]), unit_cfg(1), np.random.default_rng(9))
    assert t1.objectives == t2.objectives
    assert np.array_equal(np.array(t1.params), np.array(t2.params))


def test_best_so_far_is_monotone():
    noise = np.random.default_rng(11)
    rng = np.random.default_rng(12)
    trace = maximize(
        lambda x: -(x[0] - 0.5) ** 2 + noise.normal(0, 0.3),
        np.array([0.1]),
        unit_cfg(1),
        rng,
    )
    assert trace.best_so_far == sorted(trace.best_so_far)
    assert trace.best_objective == trace.best_so_far[-1]
    assert trace.best_objective == max(trace.objectives)


def test_x0_outside_box_rejected():
    with pytest.raises(ValueError):
        maximize(lambda x: 0.0, np.array([1.5]), unit_cfg(1), np.random.default_rng(0))


def test_non_finite_objective_aborts_with_params():
    def f(x):
        return float("nan") if x[0] > 0.5 else 0.0

    with pytest.raises(NonFiniteObjectiveError) as info:
        maximize(f, np.array([0.9]), unit_cfg(1), np.random.default_rng(1))
    assert info.value.params.shape == (1,)
    assert info.value.params[0] > 0.5
