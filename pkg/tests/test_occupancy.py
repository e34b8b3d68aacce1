import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import power_iteration_nu, simulate_average_reward
from mdpvcg import (GeneratorSpec, OccupancyMeasure, generate_model, induce,
                    kernel_shift_bound, mixing_contraction, occupancy_from,
                    payoff, state_kernel)


def rand_policy(S, A, rng):
    return rng.dirichlet(np.ones(A), size=S)


def test_uniform_kernel_gives_uniform_nu():
    S, A = 4, 3
    kernel = np.full((S, A, S), 1.0 / S)
    rng = np.random.default_rng(0)
    occ = occupancy_from(kernel, rand_policy(S, A, rng))
    np.testing.assert_allclose(occ.nu, np.full(S, 1.0 / S), atol=1e-12)


def test_single_state():
    kernel = np.ones((1, 3, 1))
    pi = np.array([[0.2, 0.5, 0.3]])
    occ = occupancy_from(kernel, pi)
    np.testing.assert_allclose(occ.nu, [1.0], atol=1e-15)
    np.testing.assert_allclose(occ.rho, pi, atol=1e-15)


def test_nu_matches_power_iteration():
    model = generate_model(GeneratorSpec(S=3, n=1, alpha=0.1, A=3), 4)
    rng = np.random.default_rng(1)
    pi = rand_policy(3, 3, rng)
    occ = occupancy_from(model.kernel, pi)
    oracle = power_iteration_nu(state_kernel(model.kernel, pi), 500)
    np.testing.assert_allclose(occ.nu, oracle, atol=1e-10)


def test_induce_uniform_q():
    S, A = 3, 2
    occ = OccupancyMeasure(np.full((S, A, S), 1.0 / (A * S * S)))
    kernel, pi = induce(occ)
    np.testing.assert_allclose(kernel, 1.0 / S, atol=1e-15)
    np.testing.assert_allclose(pi, 1.0 / A, atol=1e-15)


def test_induce_roundtrip():
    rng = np.random.default_rng(2)
    model = generate_model(GeneratorSpec(S=4, n=1, alpha=0.05, A=3), 8)
    pi = rand_policy(4, 3, rng)
    occ = occupancy_from(model.kernel, pi)
    kernel2, pi2 = induce(occ)
    np.testing.assert_allclose(kernel2, model.kernel, atol=1e-9)
    np.testing.assert_allclose(pi2, pi, atol=1e-9)
    occ2 = occupancy_from(kernel2, pi2)
    np.testing.assert_allclose(occ2.q, occ.q, atol=1e-9)


def test_induce_zero_mass_rows_fall_back_to_uniform():
    S, A = 2, 2
    q = np.zeros((S, A, S))
    q[0, 0, 0] = 1.0  # all mass on one triple; validation off
    kernel, pi = induce(OccupancyMeasure(q))
    np.testing.assert_allclose(kernel[0, 1], [0.5, 0.5])
    np.testing.assert_allclose(kernel[1], 0.5)
    np.testing.assert_allclose(pi[1], [0.5, 0.5])


def test_payoff_constant_reward_is_the_constant():
    model = generate_model(GeneratorSpec(S=3, n=1, alpha=0.1, A=2), 1)
    occ = occupancy_from(model.kernel, rand_policy(3, 2, np.random.default_rng(3)))
    assert payoff(occ, np.full((3, 2), 0.7)) == pytest.approx(0.7, abs=1e-12)
    assert payoff(occ, np.zeros((3, 2))) == 0.0


def test_payoff_matches_long_run_simulation():
    model = generate_model(GeneratorSpec(S=2, n=1, alpha=0.2, A=2), 6)
    actions = [1, 0]  # deterministic policy
    pi = np.zeros((2, 2))
    pi[0, 1] = pi[1, 0] = 1.0
    reward = model.reward_means[1]
    occ = occupancy_from(model.kernel, pi)
    exact = payoff(occ, reward)
    empirical = simulate_average_reward(model.kernel, actions, reward,
                                        T=1_000_000, seed=17)
    assert abs(exact - empirical) <= 0.01


def test_payoff_is_linear():
    rng = np.random.default_rng(4)
    model = generate_model(GeneratorSpec(S=3, n=1, alpha=0.1, A=3), 5)
    occ = occupancy_from(model.kernel, rand_policy(3, 3, rng))
    r1, r2 = rng.random((3, 3)), rng.random((3, 3))
    a, b = 0.31, -1.7
    lhs = payoff(occ, a * r1 + b * r2)
    rhs = a * payoff(occ, r1) + b * payoff(occ, r2)
    assert abs(lhs - rhs) <= 1e-12


def test_views_satisfy_summation_identities():
    rng = np.random.default_rng(5)
    for seed in range(20):
        model = generate_model(GeneratorSpec(S=3, n=1, alpha=0.08, A=3), seed)
        occ = occupancy_from(model.kernel, rand_policy(3, 3, rng))
        assert occ.violations() == []
        np.testing.assert_allclose(occ.q.sum(axis=2), occ.rho, atol=1e-12)
        np.testing.assert_allclose(occ.rho.sum(axis=1), occ.nu, atol=1e-12)
        np.testing.assert_allclose(
            occ.q, occ.rho[:, :, None] * model.kernel, atol=1e-12)


def test_contraction_identical_inputs():
    p = np.full((3, 3), 1.0 / 3)
    nu = np.array([0.2, 0.3, 0.5])
    assert mixing_contraction(nu, nu, p, 0.1, 3) == (0.0, 0.0)


def test_contraction_uniform_kernel_reaches_stationarity():
    S = 4
    p = np.full((S, S), 1.0 / S)
    rng = np.random.default_rng(6)
    nu, nu2 = rng.dirichlet(np.ones(S)), rng.dirichlet(np.ones(S))
    lhs, _ = mixing_contraction(nu, nu2, p, 1.0 / S, S)
    assert lhs <= 1e-15


def test_contraction_bound_on_random_trials():
    rng = np.random.default_rng(7)
    S, A, alpha = 3, 3, 0.1
    for seed in range(1000):
        model = generate_model(GeneratorSpec(S=S, n=1, alpha=alpha, A=A), seed)
        pi = rand_policy(S, A, rng)
        nu, nu2 = rng.dirichlet(np.ones(S)), rng.dirichlet(np.ones(S))
        lhs, bound = mixing_contraction(nu, nu2, state_kernel(model.kernel, pi),
                                        alpha, S)
        assert lhs <= bound + 1e-12


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000), policy_seed=st.integers(0, 10_000))
def test_kernel_shift_diagnostic_bound(seed, policy_seed):
    spec = GeneratorSpec(S=3, n=1, alpha=0.1, A=2)
    k1 = generate_model(spec, seed).kernel
    k2 = generate_model(spec, seed + 1).kernel
    pi = rand_policy(3, 2, np.random.default_rng(policy_seed))
    lhs, bound = kernel_shift_bound(k1, k2, pi, 0.1)
    assert lhs <= bound + 1e-10
