"""Total variation, discrete and continuized mixing times, matrix exponential."""

import math

import numpy as np
import pytest
import scipy.linalg

from mixbounds import (
    continuous_mixing_time,
    d_profile,
    dhn,
    directed_cycle,
    discrete_mixing_time,
    lazy,
    matrix_exponential,
    random_reversible,
    tv_distance,
    two_state,
    uniform_walk,
)
from mixbounds.errors import BadEpsilon, BadParams, DimensionMismatch, NoConvergence, NotErgodic, NotIrreducible

from _families import doubly_stochastic


def test_tv_distance_examples():
    assert tv_distance([0.3, 0.7], [0.3, 0.7]) == 0.0
    assert tv_distance([1, 0, 0], [0, 0, 1]) == 1.0
    assert abs(tv_distance([0.75, 0.25], [0.5, 0.5]) - 0.25) <= 1e-15
    assert tv_distance([0.1, 0.9], [0.9, 0.1]) == tv_distance([0.9, 0.1], [0.1, 0.9])
    with pytest.raises(DimensionMismatch):
        tv_distance([0.5, 0.5], [1.0])


def test_tv_distance_worst_event_form():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.dirichlet(np.ones(6))
        b = rng.dirichlet(np.ones(6))
        d = a - b
        assert abs(tv_distance(a, b) - d[d > 0].sum()) <= 1e-12


def test_discrete_mixing_uniform_walk_single_step():
    for eps in (0.4, 0.25, 0.01):
        assert discrete_mixing_time(uniform_walk(2), 0, eps).time == 1


def test_discrete_mixing_two_state_closed_form():
    # TV after t steps is (1 - 2 delta)^t / 2
    for delta in (0.25, 0.1, 0.05, 0.005):
        chain = two_state(delta)
        got = discrete_mixing_time(chain, "a", 0.25).time
        t, tv = 0, 0.5
        while tv > 0.25:
            t += 1
            tv = 0.5 * (1 - 2 * delta) ** t
        assert got == t


def test_discrete_mixing_lazy_two_state():
    assert discrete_mixing_time(lazy(two_state(0.25)), "a", 0.25).time == 1


def test_discrete_mixing_gates():
    with pytest.raises(NotErgodic):
        discrete_mixing_time(directed_cycle(3), 0, 0.25)
    chain = two_state(0.25)
    for bad in (0.0, 1.0, -0.1, 5e-13):
        with pytest.raises(BadEpsilon):
            discrete_mixing_time(chain, 0, bad)
    with pytest.raises(NoConvergence):
        discrete_mixing_time(two_state(1e-3), 0, 0.25, max_steps=10)


def test_discrete_mixing_worst_start():
    chain = random_reversible(6, seed=2)
    worst = discrete_mixing_time(chain, None, 0.05)
    per_state = max(discrete_mixing_time(chain, x, 0.05).time for x in range(6))
    assert worst.time == per_state
    assert worst.from_state is None
    assert worst.achieved_tv <= 0.05 + 1e-12


def test_d_profile_two_state():
    chain = two_state(0.25)
    prof = d_profile(chain, 12)
    for t, val in enumerate(prof, start=1):
        assert abs(val - 0.5 * 0.5**t) <= 1e-12
    assert all(v == 0.0 for v in d_profile(uniform_walk(2), 5))
    with pytest.raises(BadParams):
        d_profile(chain, 10_001)
    with pytest.raises(NotErgodic):
        d_profile(directed_cycle(4), 5)


def test_d_profile_submultiplicative():
    for chain in (two_state(0.2), dhn(4), random_reversible(5, seed=9), lazy(two_state(0.05))):
        prof = [0.0] + d_profile(chain, 100)
        for s in range(1, 51):
            for t in range(1, 51):
                assert prof[s + t] <= 2 * prof[s] * prof[t] + 1e-12


def test_matrix_exponential_identity_and_closed_form():
    chain = two_state(0.25)
    Q = chain.P - np.eye(2)
    np.testing.assert_allclose(matrix_exponential(Q, 0.0), np.eye(2), atol=1e-15)
    for t in (0.1, 0.7, 3.0):
        E = matrix_exponential(Q, t)
        want = 0.5 + 0.5 * math.exp(-2 * (1 - 0.25) * t)
        assert abs(E[0, 0] - want) <= 1e-12


def test_matrix_exponential_against_scipy():
    rng = np.random.default_rng(4)
    for chain in (dhn(3), random_reversible(7, seed=4), doubly_stochastic(6, seed=1)):
        Q = chain.P - np.eye(chain.n)
        for t in (0.1, 1.0, 10.0):
            E = matrix_exponential(Q, t)
            assert np.abs(E - scipy.linalg.expm(Q * t)).max() <= 1e-12
            assert np.abs(E.sum(axis=1) - 1.0).max() <= 1e-9
            assert E.min() >= -1e-12


def test_matrix_exponential_semigroup():
    chain = random_reversible(5, seed=13)
    Q = chain.P - np.eye(5)
    for s, t in ((0.5, 0.25), (1.0, 2.0), (0.1, 5.0)):
        lhs = matrix_exponential(Q, s + t)
        rhs = matrix_exponential(Q, s) @ matrix_exponential(Q, t)
        assert np.abs(lhs - rhs).max() <= 1e-8


def test_matrix_exponential_derivative():
    chain = two_state(0.3)
    Q = chain.P - np.eye(2)
    h = 1e-6
    for t in (0.2, 1.5):
        num = (matrix_exponential(Q, t + h) - matrix_exponential(Q, t)) / h
        ana = Q @ matrix_exponential(Q, t)
        assert np.abs(num - ana).max() <= 1e-4


def test_matrix_exponential_bad_input():
    with pytest.raises(BadParams):
        matrix_exponential(np.zeros((2, 2)), -1.0)
    with pytest.raises(DimensionMismatch):
        matrix_exponential(np.zeros((2, 3)), 1.0)


def test_continuous_mixing_two_state_closed_form():
    # TV decays as exp(-2 (1 - delta) t) / 2
    for delta, eps in ((0.25, 0.25), (0.1, 0.1)):
        chain = two_state(delta)
        want = math.log(1.0 / (2 * eps)) / (2 * (1 - delta))
        got = continuous_mixing_time(chain, "a", eps).time
        assert abs(got - want) <= 2e-6


def test_continuous_mixing_boundary_zero():
    res = continuous_mixing_time(uniform_walk(2), 0, 0.5)
    assert res.time == 0.0 and res.achieved_tv <= 0.5


def test_continuous_mixing_periodic_chain_is_fine():
    res = continuous_mixing_time(directed_cycle(3), 0, 0.25)
    assert 0.0 < res.time < 10.0
    assert res.achieved_tv <= 0.25


def test_continuous_mixing_grid_oracle():
    chain = doubly_stochastic(5, seed=3)
    eps = 0.2
    res = continuous_mixing_time(chain, 1, eps)
    Q = chain.P - np.eye(5)
    grid = np.linspace(0.0, 2 * res.time + 1.0, 4001)
    v = np.zeros(5)
    v[1] = 1.0
    crossing = None
    for t in grid:
        tv = 0.5 * np.abs(v @ scipy.linalg.expm(Q * t) - chain.pi).sum()
        if tv <= eps:
            crossing = t
            break
    assert crossing is not None
    step = grid[1] - grid[0]
    assert abs(res.time - crossing) <= step + 1e-6


def test_continuous_mixing_gates():
    c3 = directed_cycle(3)
    from mixbounds import multiply, time_reversal

    with pytest.raises(NotIrreducible):
        continuous_mixing_time(multiply(time_reversal(c3), c3), 0, 0.25)
    with pytest.raises(BadEpsilon):
        continuous_mixing_time(two_state(0.25), 0, 1.5)
