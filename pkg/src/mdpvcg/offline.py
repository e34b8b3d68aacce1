"""Offline VCG mechanism for average-reward auctions with a known kernel.

The allocation maximizes bid-reported welfare over the kernel's occupancy
polytope; each bidder pays, per round, the welfare the others could have
earned without her minus what they actually earn at the realized (s, a).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .occupancy import induce, occupancy_from, payoff
from .polytope import PolytopeSpec, maximize
from .tolerances import TOL


@dataclass(frozen=True)
class BidProfile:
    """Per-bidder bid tables b_i(s,a), each in [0, 1]."""

    bids: np.ndarray  # (n, S, A)

    def __post_init__(self):
        b = np.asarray(self.bids, dtype=np.float64)
        if b.ndim != 3:
            raise ValueError(f"bids must be (n, S, A), got {b.shape}")
        if b.min() < -TOL.row_sum or b.max() > 1 + TOL.row_sum:
            raise ValueError("bids must lie in [0, 1]")
        object.__setattr__(self, "bids", b)

    @classmethod
    def truthful(cls, model) -> "BidProfile":
        return cls(model.reward_means[1:].copy())

    @property
    def n(self) -> int:
        return self.bids.shape[0]


@dataclass(frozen=True)
class Mechanism:
    allocation: np.ndarray            # policy pi*(a|s), row-stochastic
    payments: np.ndarray              # (n, S, A)
    counterfactual_values: np.ndarray # (n,), others' best welfare without i
    welfare_value: float              # optimal reported welfare <q*, R>

    def violations(self) -> list:
        out = []
        if not np.all(np.isfinite(self.payments)):
            out.append("non-finite payment")
        rows = self.allocation.sum(axis=1)
        if np.abs(rows - 1.0).max() > TOL.mass or self.allocation.min() < -TOL.mass:
            out.append("allocation is not a valid policy")
        return out


def offline_mechanism(bids: BidProfile, r0: np.ndarray, kernel: np.ndarray) -> Mechanism:
    """Solve the welfare LP and the n counterfactual LPs; assemble payments.

    Bids substitute for the bidders' reward tables throughout. The constraint
    system is bid-independent, so one polytope serves all n+1 solves.
    """
    n = bids.n
    S, A = r0.shape
    spec = PolytopeSpec("EXACT_KERNEL", S, A, kernel=kernel)
    reported = r0 + bids.bids.sum(axis=0)

    best = maximize(reported, spec)
    if best.status != "optimal":
        raise RuntimeError(f"welfare LP: {best.status}")
    _, allocation = induce(best.q)

    payments = np.empty((n, S, A))
    values = np.empty(n)
    for i in range(n):
        others = reported - bids.bids[i]
        sol = maximize(others, spec)
        if sol.status != "optimal":
            raise RuntimeError(f"counterfactual LP for bidder {i + 1}: {sol.status}")
        values[i] = sol.objective_value
        payments[i] = values[i] - others

    return Mechanism(
        allocation=allocation,
        payments=payments,
        counterfactual_values=values,
        welfare_value=best.objective_value,
    )


def average_utilities(mechanism: Mechanism, rewards: np.ndarray, kernel: np.ndarray):
    """Exact average utilities under the mechanism's allocation.

    ``rewards`` holds the true mean tables for all players, seller first.
    Returns (u_0, array of u_i, welfare).
    """
    occ = occupancy_from(kernel, mechanism.allocation)
    welfare = payoff(occ, rewards.sum(axis=0))
    u_bidders = np.array([
        payoff(occ, rewards[i + 1] - mechanism.payments[i])
        for i in range(mechanism.payments.shape[0])
    ])
    u_seller = payoff(occ, rewards[0] + mechanism.payments.sum(axis=0))
    return u_seller, u_bidders, welfare


def seller_utility_identity(mechanism: Mechanism, rewards: np.ndarray,
                            kernel: np.ndarray):
    """Closed form for the seller's utility under truthful bids.

    lhs is u_0 evaluated directly; rhs rewrites it through the n
    counterfactual optima: -(n-1)<rho*, R> + sum_i <rho*_{-i}, R_{-i}>.
    """
    n = mechanism.payments.shape[0]
    u_seller, _, welfare = average_utilities(mechanism, rewards, kernel)
    rhs = -(n - 1) * welfare + mechanism.counterfactual_values.sum()
    return u_seller, rhs
