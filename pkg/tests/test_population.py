import numpy as np
import pytest

from fairloop.population import (PopulationParams, PopulationState,
                                 initial_state, population_step,
                                 run_population_sim)
from fairloop.rng import RandomSource


def test_no_departures_state_frozen():
    params = PopulationParams(n=100, init_counts=(50, 50), rec_prob=(1.0, 1.0),
                              horizon=20)
    traj = run_population_sim(params, RandomSource(1))
    assert np.all(traj[:, 0] == 50)
    assert np.all(traj[:, 1] == 50)


def test_conservation():
    params = PopulationParams(n=200, init_counts=(120, 80),
                              rec_prob=(0.3, 0.6), horizon=50)
    traj = run_population_sim(params, RandomSource(2))
    assert np.all(traj.sum(axis=1) == 200)


def test_absorbing_when_one_group_extinct():
    params = PopulationParams(n=300, init_counts=(300, 0),
                              rec_prob=(0.4, 0.5), horizon=30)
    traj = run_population_sim(params, RandomSource(3))
    assert np.all(traj[:, 1] == 0)


def test_asymmetric_service_drains_group_one():
    params = PopulationParams(n=1000, init_counts=(500, 500),
                              rec_prob=(0.0, 1.0), horizon=60)
    traj = run_population_sim(params, RandomSource(4))
    assert np.all(np.diff(traj[:, 0]) <= 0) or traj[-1, 0] < traj[0, 0]
    assert traj[-1, 0] < 50  # near-extinction of the never-served group


def test_symmetric_probs_keep_expected_counts():
    params = PopulationParams(n=400, init_counts=(100, 300),
                              rec_prob=(0.5, 0.5), horizon=1)
    rng = RandomSource(5)
    state = initial_state(params)
    finals = np.array([population_step(state, params, rng.spawn(i)).counts[0]
                       for i in range(3000)])
    # one-step expectation preserves counts: E[n1'] = n1 p + n1 (1 - p)
    se = finals.std(ddof=1) / np.sqrt(finals.size)
    assert abs(finals.mean() - 100) <= 4 * se


def test_zero_horizon_returns_initial_only():
    params = PopulationParams(n=10, init_counts=(4, 6), rec_prob=(0.5, 0.5),
                              horizon=0)
    traj = run_population_sim(params, RandomSource(6))
    assert traj.shape == (1, 2)
    assert traj[0].tolist() == [4, 6]


def test_determinism():
    params = PopulationParams(n=500, init_counts=(250, 250),
                              rec_prob=(0.4, 0.5), horizon=40)
    a = run_population_sim(params, RandomSource(7))
    b = run_population_sim(params, RandomSource(7))
    assert np.array_equal(a, b)


def test_representation_bias_median_drift():
    params = PopulationParams(n=1000, init_counts=(495, 505),
                              rec_prob=(0.40, 0.50), horizon=200)
    finals = []
    master = RandomSource(1234)
    for s in range(20):
        traj = run_population_sim(params, master.spawn(s))
        finals.append(traj[-1, 0] / params.n)
    assert np.median(finals) < 0.25


def test_params_validation():
    with pytest.raises(ValueError):
        PopulationParams(n=10, init_counts=(4, 4), rec_prob=(0.5, 0.5), horizon=1)
    with pytest.raises(ValueError):
        PopulationParams(n=10, init_counts=(5, 5), rec_prob=(1.5, 0.5), horizon=1)
    with pytest.raises(ValueError):
        PopulationState(np.array([1, 2, 3]))
