"""Quadratic forms, eigenstructure, variational constants and conductance."""

import numpy as np
import pytest

from mixbounds import (
    classify,
    conductance,
    dhn,
    dirichlet_form,
    directed_cycle,
    eigendecompose,
    f_form,
    lambda_constants,
    lazy,
    multiply,
    random_reversible,
    reconstruct_power,
    reversibilize,
    time_reversal,
    two_state,
    uniform_walk,
    variance,
)
from mixbounds.errors import DimensionMismatch, NotErgodic, NotReversible, TooLarge

from _families import doubly_stochastic, quadratic_forms, rayleigh_minimum


# ---------------------------------------------------------------- forms


def test_dirichlet_form_examples():
    chain = two_state(0.25)
    assert dirichlet_form(chain, [3.0, 3.0]) == 0.0
    assert abs(dirichlet_form(chain, [0.0, 1.0]) - (1 - 0.25) / 2) <= 1e-15
    n = 4
    d = dhn(n)
    phi = [abs(int(lbl)) for lbl in d.labels]
    assert abs(dirichlet_form(d, phi) - (1 - 1 / n) / 2) <= 1e-12


def test_f_form_examples():
    chain = two_state(0.25)
    assert abs(f_form(chain, [1.0, -1.0]) - 2 * 0.25) <= 1e-15
    assert f_form(chain, [0.0, 0.0]) == 0.0
    assert abs(f_form(chain, [0.0, 1.0]) - (1 + 0.25) / 2) <= 1e-15


def test_form_dimension_checks():
    chain = two_state(0.25)
    with pytest.raises(DimensionMismatch):
        dirichlet_form(chain, [1.0, 2.0, 3.0])
    with pytest.raises(DimensionMismatch):
        f_form(chain, [1.0])
    with pytest.raises(DimensionMismatch):
        variance([0.5, 0.5], [1.0])


def test_variance_examples():
    assert variance([0.5, 0.5], [7.0, 7.0]) == 0.0
    assert abs(variance([0.5, 0.5], [0.0, 1.0]) - 0.25) <= 1e-15
    for n in (2, 4, 8):
        d = dhn(n)
        phi = [abs(int(lbl)) for lbl in d.labels]
        assert abs(variance(d.pi, phi) - (n * n + 2) / 12) <= 1e-10


def test_variance_matches_pairwise_form():
    rng = np.random.default_rng(5)
    chain = random_reversible(7, seed=5)
    for _ in range(20):
        phi = rng.standard_normal(7)
        pairwise = 0.5 * float(
            np.sum(np.outer(chain.pi, chain.pi) * (phi[:, None] - phi[None, :]) ** 2)
        )
        assert abs(variance(chain.pi, phi) - pairwise) <= 1e-10


def test_forms_match_reversibilization():
    rng = np.random.default_rng(17)
    for chain in (dhn(3), directed_cycle(4), doubly_stochastic(6, seed=2)):
        rev = reversibilize(chain)
        for _ in range(100):
            phi = rng.standard_normal(chain.n)
            assert abs(dirichlet_form(chain, phi) - dirichlet_form(rev, phi)) <= 1e-10
            assert abs(f_form(chain, phi) - f_form(rev, phi)) <= 1e-10


# ---------------------------------------------------------------- spectrum


def test_eigendecompose_two_state():
    s = eigendecompose(two_state(0.25))
    np.testing.assert_allclose(s.betas, [1.0, -0.5], atol=1e-12)
    assert abs(s.beta_max - 0.5) <= 1e-12
    s_lazy = eigendecompose(lazy(two_state(0.25)))
    np.testing.assert_allclose(s_lazy.betas, [1.0, 0.25], atol=1e-12)
    s_uni = eigendecompose(uniform_walk(2))
    np.testing.assert_allclose(s_uni.betas, [1.0, 0.0], atol=1e-12)


def test_eigendecompose_invariants():
    for chain in (two_state(0.1), random_reversible(9, seed=3), lazy(random_reversible(5, seed=8))):
        s = eigendecompose(chain)
        assert abs(s.betas[0] - 1.0) <= 1e-10
        assert s.betas[-1] > -1.0 - 1e-10
        gram = s.vectors @ s.vectors.T
        assert np.abs(gram - np.eye(chain.n)).max() <= 1e-8
        assert np.abs(s.vectors[0] - np.sqrt(chain.pi)).max() <= 1e-8
        # left eigenvector property of the symmetrised matrix
        d = np.sqrt(chain.pi)
        A = (d[:, None] / d[None, :]) * chain.P
        for i in range(chain.n):
            assert np.abs(s.vectors[i] @ A - s.betas[i] * s.vectors[i]).max() <= 1e-8


def test_eigendecompose_gates():
    with pytest.raises(NotReversible):
        eigendecompose(dhn(4))
    c3 = directed_cycle(3)
    with pytest.raises(NotErgodic):
        eigendecompose(multiply(time_reversal(c3), c3))


def test_lambda_constants():
    for delta in (0.1, 0.25, 0.4):
        lam1, lam_bot = lambda_constants(two_state(delta))
        assert abs(lam1 - (2 - 2 * delta)) <= 1e-12
        assert abs(lam_bot - 2 * delta) <= 1e-12
    lam1, _ = lambda_constants(directed_cycle(3))
    assert abs(lam1 - 1.5) <= 1e-12
    with pytest.raises(NotErgodic):
        c3 = directed_cycle(3)
        lambda_constants(multiply(time_reversal(c3), c3))


def test_rayleigh_quotient_dominates_constants():
    rng = np.random.default_rng(23)
    for chain in (two_state(0.2), random_reversible(6, seed=1), dhn(3)):
        lam1, lam_bot = lambda_constants(chain)
        for _ in range(200):
            phi = rng.standard_normal(chain.n)
            if np.ptp(phi) == 0.0:
                continue
            var = variance(chain.pi, phi)
            assert dirichlet_form(chain, phi) / var >= lam1 - 1e-9
            assert f_form(chain, phi) / var >= lam_bot - 1e-9


def test_lambda_matches_coordinate_descent_oracle():
    for chain, seed in ((two_state(0.3), 0), (random_reversible(5, seed=4), 1),
                        (random_reversible(7, seed=9), 2)):
        diff, summ, var = quadratic_forms(chain)
        lam1, lam_bot = lambda_constants(chain)
        assert abs(rayleigh_minimum(diff, var, seed=seed) - lam1) <= 1e-6
        assert abs(rayleigh_minimum(summ, var, seed=seed) - lam_bot) <= 1e-6


def test_reconstruct_power_matches_direct_powers():
    for chain in (two_state(0.25), random_reversible(7, seed=3), lazy(random_reversible(4, seed=6))):
        s = eigendecompose(chain)
        direct = np.eye(chain.n)
        for n in range(0, 21):
            rebuilt = reconstruct_power(s, chain.pi, n)
            assert np.abs(rebuilt - direct).max() <= 1e-9
            direct = direct @ chain.P


# ---------------------------------------------------------------- conductance


def test_conductance_two_state():
    phi, phi_asym, argmin = conductance(two_state(0.25))
    assert abs(phi - 2 * (1 - 0.25)) <= 1e-12
    assert abs(phi_asym - (1 - 0.25)) <= 1e-12
    assert argmin == (0,)


def test_conductance_directed_cycle():
    phi, _, _ = conductance(directed_cycle(3))
    assert abs(phi - 1.5) <= 1e-12


def test_conductance_uniform_walk():
    # single nontrivial cut; same chain as two_state at delta = 1/2
    phi, phi_asym, argmin = conductance(uniform_walk(2))
    assert abs(phi - 1.0) <= 1e-12
    assert abs(phi_asym - 0.5) <= 1e-12
    assert argmin == (0,)
    phi_ts, _, _ = conductance(two_state(0.5))
    assert abs(phi - phi_ts) <= 1e-15


def test_conductance_matches_indicator_quotient():
    chain = random_reversible(6, seed=12)
    phi, _, argmin = conductance(chain)
    members = np.zeros(chain.n)
    members[list(argmin)] = 1.0
    quotient = dirichlet_form(chain, members) / variance(chain.pi, members)
    assert abs(phi - quotient) <= 1e-12
    # the minimising cut really is minimal among all indicator quotients
    for mask in range(1, 2**chain.n - 1):
        ind = np.array([(mask >> i) & 1 for i in range(chain.n)], dtype=float)
        q = dirichlet_form(chain, ind) / variance(chain.pi, ind)
        assert q >= phi - 1e-12


def test_conductance_gates():
    with pytest.raises(TooLarge):
        conductance(uniform_walk(25))
    c3 = directed_cycle(3)
    with pytest.raises(NotErgodic):
        conductance(multiply(time_reversal(c3), c3))


def test_gap_sandwich_on_battery():
    chains = [
        two_state(0.25),
        uniform_walk(4),
        random_reversible(6, seed=0),
        dhn(3),
        directed_cycle(3),
        doubly_stochastic(5, seed=7),
    ]
    for chain in chains:
        if not classify(chain).irreducible:
            continue
        lam1, _ = lambda_constants(chain)
        phi, _, _ = conductance(chain)
        assert lam1 <= phi + 1e-12
        assert lam1 >= phi * phi / 8 - 1e-12
