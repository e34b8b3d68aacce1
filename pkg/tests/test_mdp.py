import json

import numpy as np
import pytest

from mdpvcg import (GeneratorSpec, MdpModel, SimState, generate_model,
                    load_model, save_model, step, validate_model)
from mdpvcg.mdp import draw_rewards


def uniform_model(S=3, A=2, n=1, alpha=None):
    alpha = 1.0 / S if alpha is None else alpha
    kernel = np.full((S, A, S), 1.0 / S)
    means = np.full((n + 1, S, A), 0.5)
    return MdpModel(kernel=kernel, reward_means=means, alpha=alpha)


def test_validate_uniform_kernel_is_boundary_case():
    assert validate_model(uniform_model()) == []


def test_validate_flags_zero_entry_location():
    model = uniform_model()
    kernel = model.kernel.copy()
    kernel[1, 0, 2] = 0.0
    kernel[1, 0, 0] += 1.0 / 3
    bad = MdpModel(kernel=kernel, reward_means=model.reward_means, alpha=0.01)
    kinds = {(v.kind, v.where) for v in validate_model(bad)}
    assert ("ergodicity_margin", (1, 0, 2)) in kinds


def test_validate_mixture_construction_over_random_kernels():
    # (1 - lam) * Q + lam * uniform with lam = S * alpha keeps every entry >= alpha
    rng = np.random.default_rng(0)
    S, A, alpha = 4, 3, 0.05
    lam = S * alpha
    for _ in range(100):
        q = rng.dirichlet(np.ones(S), size=(S, A))
        kernel = (1 - lam) * q + lam / S
        assert kernel.min() >= lam / S - 1e-15
        model = MdpModel(kernel=kernel, reward_means=np.full((2, S, A), 0.3),
                         alpha=alpha)
        assert validate_model(model) == []


def test_validate_reports_reward_range():
    model = uniform_model()
    means = model.reward_means.copy()
    means[1, 0, 0] = 1.5
    bad = MdpModel(kernel=model.kernel, reward_means=means, alpha=model.alpha)
    assert any(v.kind == "reward_range" for v in validate_model(bad))


def test_single_item_action_space():
    spec = GeneratorSpec(S=2, n=2, alpha=0.1, auction="single_item")
    assert spec.num_actions() == 3
    assert generate_model(spec, 0).A == 3
    assert spec.action_labels()[0] == "no-sale"


def test_multi_unit_and_combinatorial_action_spaces():
    assert GeneratorSpec(S=2, n=2, alpha=0.1, auction="multi_unit",
                         items=2).num_actions() == 6
    assert GeneratorSpec(S=2, n=2, alpha=0.1, auction="combinatorial",
                         items=2).num_actions() == 9


def test_generate_is_deterministic_in_seed():
    spec = GeneratorSpec(S=3, n=2, alpha=0.1, A=4)
    a = generate_model(spec, 42)
    b = generate_model(spec, 42)
    np.testing.assert_array_equal(a.kernel, b.kernel)
    np.testing.assert_array_equal(a.reward_means, b.reward_means)


def test_generate_min_entry_over_many_seeds():
    spec = GeneratorSpec(S=3, n=1, alpha=0.1, A=2)
    worst = min(generate_model(spec, s).kernel.min() for s in range(1000))
    assert worst >= 0.1 - 1e-15


def test_generate_rejects_bad_alpha():
    with pytest.raises(ValueError):
        generate_model(GeneratorSpec(S=4, n=1, alpha=0.3, A=2), 0)


def test_step_point_mass_row():
    kernel = np.zeros((3, 1, 3))
    kernel[:, 0, 0] = 1.0  # validation-bypassed: rows are point masses on 0
    model = MdpModel(kernel=kernel, reward_means=np.full((2, 3, 1), 0.5), alpha=0.01)
    sim = SimState(t=1, s=2, rng=np.random.default_rng(0))
    for _ in range(50):
        s2, _ = step(model, sim, 0)
        assert s2 == 0


def test_step_empirical_frequencies_match_row():
    model = generate_model(GeneratorSpec(S=3, n=1, alpha=0.1, A=2), 3)
    sim = SimState(t=1, s=1, rng=np.random.default_rng(11))
    counts = np.zeros(3)
    for _ in range(100_000):
        sim.s = 1  # resample the same (s, a) row every time
        s2, _ = step(model, sim, 0)
        counts[s2] += 1
    freq = counts / counts.sum()
    assert np.abs(freq - model.kernel[1, 0]).sum() <= 0.02


def test_deterministic_family_returns_means_exactly():
    model = generate_model(
        GeneratorSpec(S=2, n=2, alpha=0.2, A=2, reward_family="deterministic"), 5)
    sim = SimState(t=1, s=0, rng=np.random.default_rng(0))
    _, rewards = step(model, sim, 1)
    np.testing.assert_array_equal(rewards, model.reward_means[:, 0, 1])


def test_bernoulli_scaled_rewards_stay_in_range():
    model = generate_model(
        GeneratorSpec(S=2, n=2, alpha=0.2, A=2, c_max=2.5,
                      reward_family="bernoulli-scaled"), 5)
    rng = np.random.default_rng(1)
    draws = np.array([draw_rewards(model, 0, 0, rng) for _ in range(2000)])
    assert set(np.unique(draws[:, 0])) <= {0.0, 2.5}
    assert draws[:, 1:].min() >= 0.0 and draws[:, 1:].max() <= 1.0
    np.testing.assert_allclose(
        draws.mean(axis=0), model.reward_means[:, 0, 0], atol=0.12)


def test_equal_seeds_give_bitwise_equal_trajectories():
    model = generate_model(
        GeneratorSpec(S=3, n=2, alpha=0.1, A=3, reward_family="bernoulli-scaled"), 9)
    trails = []
    for _ in range(2):
        sim = SimState.start(model, 123)
        trail = []
        for t in range(200):
            s2, rewards = step(model, sim, t % model.A)
            trail.append((s2, tuple(rewards)))
        trails.append(trail)
    assert trails[0] == trails[1]


def test_step_rejects_out_of_range_action():
    model = uniform_model()
    sim = SimState.start(model, 0)
    with pytest.raises(ValueError):
        step(model, sim, model.A)


def test_sim_time_advances_by_one():
    model = uniform_model()
    sim = SimState.start(model, 0)
    t0 = sim.t
    step(model, sim, 0)
    step(model, sim, 1)
    assert sim.t == t0 + 2


def test_model_file_roundtrip(tmp_path):
    model = generate_model(
        GeneratorSpec(S=3, n=2, alpha=0.1, A=3, c_max=1.7,
                      reward_family="bernoulli-scaled"), 2)
    path = tmp_path / "model.json"
    save_model(model, path)
    again = load_model(path)
    save_model(again, tmp_path / "model2.json")
    assert json.loads(path.read_text()) == json.loads((tmp_path / "model2.json").read_text())
    np.testing.assert_array_equal(model.kernel, again.kernel)
    np.testing.assert_array_equal(model.reward_means, again.reward_means)
    assert again.reward_family == model.reward_family
    assert again.c_max == model.c_max
