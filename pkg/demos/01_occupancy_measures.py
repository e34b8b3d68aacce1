"""Occupancy measures: the bridge between policies and linear programs.

A stationary policy on an ergodic kernel induces long-run visit frequencies
q(s,a,s'), with marginals rho(s,a) and nu(s). Average payoffs become inner
products <rho, r>, and the map policy -> occupancy is invertible. This demo
walks the algebra round trip and the one-step mixing contraction.
"""

import numpy as np

from mdpvcg import (GeneratorSpec, generate_model, induce, mixing_contraction,
                    occupancy_from, payoff, state_kernel)

rng = np.random.default_rng(0)

print("=" * 64)
print("A random 3-state, 3-action environment with kernel margin 0.1")
print("=" * 64)
model = generate_model(GeneratorSpec(S=3, A=3, n=2, alpha=0.1), seed=42)
policy = rng.dirichlet(np.ones(3), size=3)
print("policy rows:\n", policy.round(3))

occ = occupancy_from(model.kernel, policy)
print("\nstate frequencies nu:", occ.nu.round(4))
print("state-action frequencies rho:\n", occ.rho.round(4))
print("total mass:", occ.q.sum().round(12), " violations:", occ.violations())

print("\nAverage payoff of the seller's reward table:")
print("  <rho, r_0> =", round(payoff(occ, model.reward_means[0]), 6))

print("\nRound trip: induce (kernel, policy) back from q")
kernel2, policy2 = induce(occ)
print("  max kernel error:", np.abs(kernel2 - model.kernel).max())
print("  max policy error:", np.abs(policy2 - policy).max())

print("\nOne-step contraction toward stationarity (factor 1 - alpha*S = 0.7):")
p_state = state_kernel(model.kernel, policy)
nu = np.array([1.0, 0.0, 0.0])  # worst-case start: a point mass
for step_i in range(6):
    lhs, bound = mixing_contraction(nu, occ.nu, p_state, model.alpha, model.S)
    print(f"  step {step_i}: ||nu - nu*||_1 = {np.abs(nu - occ.nu).sum():.6f}"
          f"   next <= {bound:.6f}")
    nu = nu @ p_state
