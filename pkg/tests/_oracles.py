"""Independent reference computations used to freeze expected test values.

Everything here deliberately avoids the library's LP / linear-solve paths:
power iteration for stationary distributions, explicit enumeration for
optimal policies, and plain sampling loops for Monte Carlo averages.
"""

import numpy as np


def power_iteration_nu(p_state, iterations=500):
    """Stationary distribution by repeated application of the state kernel."""
    S = p_state.shape[0]
    nu = np.full(S, 1.0 / S)
    for _ in range(iterations):
        nu = nu @ p_state
    return nu


def enumerate_policies(S, A):
    for code in range(A ** S):
        pi = np.zeros((S, A))
        c = code
        for s in range(S):
            pi[s, c % A] = 1.0
            c //= A
        yield pi


def policy_average_payoff(kernel, policy, reward, iterations=4000):
    """Average payoff of a policy via power iteration (no linear solve)."""
    p_state = np.einsum("sax,sa->sx", kernel, policy)
    nu = power_iteration_nu(p_state, iterations)
    rho = nu[:, None] * policy
    return float((rho * reward).sum())


def brute_force_best(kernel, reward, iterations=4000):
    """Best average payoff over all deterministic stationary policies."""
    S, A, _ = kernel.shape
    return max(
        policy_average_payoff(kernel, pi, reward, iterations)
        for pi in enumerate_policies(S, A)
    )


def simulate_average_reward(kernel, policy_actions, reward, T, seed):
    """Monte Carlo long-run average of r(s, a) under a deterministic policy.

    ``policy_actions`` maps each state to its action. Independent of the
    library's simulation path: local cdf sampling only.
    """
    rng = np.random.default_rng(seed)
    S = kernel.shape[0]
    cdfs = [np.cumsum(kernel[s, policy_actions[s]]) for s in range(S)]
    s = 0
    total = 0.0
    u = rng.random(T)
    for t in range(T):
        total += reward[s, policy_actions[s]]
        s = int(cdfs[s].searchsorted(u[t], side="right"))
        if s >= S:
            s = S - 1
    return total / T


def second_price_outcome(values):
    """Static second-price auction: (winner index, price)."""
    order = np.argsort(values)
    return int(order[-1]), float(values[order[-2]]) if len(values) > 1 else 0.0
