"""Episodic confidence-set learner that mimics the offline VCG mechanism.

The learner runs in episodes of growing length. Each episode starts with a
mixing phase (no charges) long enough for the chain to approach the stationary
distribution of the current policy, followed by a stationary phase in which
per-round payments are charged. At episode end it rebuilds the empirical
kernel with Bernstein bands, clipped reward UCB/LCBs, and solves one welfare
LP plus n counterfactual LPs over the shrunk confidence polytope to get the
next allocation policy and payment tables.

Payments come in two flavors sharing all state: the seller-favorable table
uses optimistic counterfactual welfare minus pessimistic realized welfare (it
tends to overcharge), the bidder-favorable table swaps the roles. Both are
maintained every episode; ``variant`` selects which one is charged.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .occupancy import OccupancyMeasure, induce
from .polytope import PolytopeSpec, maximize, tighten_band

logger = logging.getLogger(__name__)

VARIANTS = ("seller_favorable", "bidder_favorable")


class ConfigurationError(RuntimeError):
    """Raised when a learner parameter makes an episode's LP infeasible."""


@dataclass(frozen=True)
class LearnerConfig:
    S: int
    A: int
    n: int
    alpha: float              # assumed ergodicity margin (known, never estimated)
    delta: float              # shrunk-polytope action floor
    zeta: float               # confidence level
    epsilon: float = 0.05     # intended shrinkage loss; used by calibration helpers
    c_max: float = 1.0
    variant: str = "seller_favorable"

    def __post_init__(self):
        if not 0 < self.zeta < 1 or not 0 < self.epsilon < 1:
            raise ValueError("epsilon and zeta must lie in (0, 1)")
        if not 0 < self.delta <= 1.0 / (self.S * self.A):
            raise ValueError(f"delta must lie in (0, 1/(S*A)]; got {self.delta}")
        if not 0 < self.alpha * self.S <= 1:
            raise ValueError("alpha must satisfy 0 < alpha*S <= 1")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")

    def reward_caps(self) -> np.ndarray:
        caps = np.ones(self.n + 1)
        caps[0] = self.c_max
        return caps


def episode_lengths(k: int, alpha: float, S: int, A: int, delta: float, zeta: float):
    """Mixing and stationary lengths (d_k, l_k) for episode k.

    d_k = ceil(ln k / (alpha S)), floored at one round so the first episode
    still has a mixing phase; l_k = ceil(max(4, sqrt(k)) ln(A S k / zeta) /
    (alpha delta)). Natural logarithms.
    """
    if k < 1:
        raise ValueError("episode index starts at 1")
    d = max(1, math.ceil(math.log(k) / (alpha * S)))
    l = math.ceil(max(4.0, math.sqrt(k)) * math.log(A * S * k / zeta) / (alpha * delta))
    return d, l


def episode_schedule(config: LearnerConfig, episodes: int) -> np.ndarray:
    """Start rounds tau_1..tau_{K+1} implied by the episode-length formulas."""
    taus = [1]
    for k in range(1, episodes + 1):
        d, l = episode_lengths(k, config.alpha, config.S, config.A,
                               config.delta, config.zeta)
        taus.append(taus[-1] + d + l)
    return np.array(taus, dtype=np.int64)


@dataclass
class RoundDecision:
    action: int
    charges: np.ndarray  # per-bidder payment this round; all zero while mixing
    phase: str
    episode: int


class OnlineVcgLearner:
    """Seller-side state machine: act / observe each round, end_episode between."""

    def __init__(self, config: LearnerConfig):
        self.config = config
        S, A, n = config.S, config.A, config.n
        self.k = 1
        self.tau_k = 1
        self.pos = 0  # rounds already played in the current episode
        self.d_k, self.l_k = episode_lengths(1, config.alpha, S, A,
                                             config.delta, config.zeta)
        self.counts = np.zeros((S, A), dtype=np.int64)
        self.counts3 = np.zeros((S, A, S), dtype=np.int64)
        self.reward_sums = np.zeros((n + 1, S, A))
        self.p_bar = np.zeros((S, A, S))
        self.band_lower = np.zeros((S, A, S))
        self.band_upper = np.ones((S, A, S))
        caps = config.reward_caps()
        self.reward_ucb = np.broadcast_to(caps[:, None, None], (n + 1, S, A)).copy()
        self.reward_lcb = np.zeros((n + 1, S, A))
        self.q_hat = OccupancyMeasure(np.full((S, A, S), 1.0 / (A * S * S)))
        self.policy = np.full((S, A), 1.0 / A)
        self.payments_seller = np.ones((n, S, A))
        self.payments_bidder = np.ones((n, S, A))
        self._policy_cdf = np.cumsum(self.policy, axis=1)
        self._zero_charges = np.zeros(n)  # shared read-only mixing charges
        self._zero_charges.setflags(write=False)

    @property
    def phase(self) -> str:
        return "mixing" if self.pos < self.d_k else "stationary"

    @property
    def episode_complete(self) -> bool:
        return self.pos >= self.d_k + self.l_k

    @property
    def payments(self) -> np.ndarray:
        """The charged table under the configured variant."""
        if self.config.variant == "seller_favorable":
            return self.payments_seller
        return self.payments_bidder

    def act(self, s: int, rng: np.random.Generator) -> RoundDecision:
        if self.episode_complete:
            raise RuntimeError("episode complete; call end_episode before acting")
        phase = "mixing" if self.pos < self.d_k else "stationary"
        a = int(self._policy_cdf[s].searchsorted(rng.random(), side="right"))
        if a >= self.config.A:
            a = self.config.A - 1
        if phase == "mixing":
            charges = self._zero_charges
        else:
            charges = self.payments[:, s, a].copy()
        self.pos += 1
        return RoundDecision(action=a, charges=charges, phase=phase, episode=self.k)

    def observe(self, s: int, a: int, s2: int, seller_reward: float, bids) -> None:
        """Record one transition and the reported rewards (both phases count)."""
        self.counts[s, a] += 1
        self.counts3[s, a, s2] += 1
        sums = self.reward_sums
        sums[0, s, a] += seller_reward  # seller capped by c_max, never clipped
        for i, b in enumerate(bids):
            if b < 0.0 or b > 1.0:
                logger.warning("round %d: bid %r outside [0, 1] clipped",
                               self.tau_k + self.pos - 1, b)
                b = 0.0 if b < 0.0 else 1.0
            sums[i + 1, s, a] += b

    def end_episode(self) -> None:
        """Refresh estimates, tighten the band, and solve the n+1 update LPs."""
        if not self.episode_complete:
            raise RuntimeError("stationary phase not complete")
        cfg = self.config
        S, A, n, k = cfg.S, cfg.A, cfg.n, self.k

        visits = np.maximum(1, self.counts)
        self.p_bar = self.counts3 / visits[:, :, None]
        log_kernel = math.log(A * S * k / cfg.zeta)
        denom = np.maximum(1, self.counts - 1)[:, :, None]
        radii = (2.0 * np.sqrt(self.p_bar * log_kernel / denom)
                 + 14.0 * log_kernel / (3.0 * denom))
        self.band_lower, self.band_upper = tighten_band(
            (self.band_lower, self.band_upper), self.p_bar, radii)

        r_bar = self.reward_sums / visits[None, :, :]
        log_reward = math.log(A * S * k * n / cfg.zeta)
        beta = np.sqrt(2.0 * log_reward / visits)
        caps = cfg.reward_caps()[:, None, None]
        self.reward_ucb = np.minimum(caps, r_bar + caps * beta[None])
        self.reward_lcb = np.maximum(0.0, r_bar - caps * beta[None])

        spec = PolytopeSpec("SHRUNK_CONFIDENCE", S, A, delta=cfg.delta,
                            band_lower=self.band_lower, band_upper=self.band_upper)
        total_ucb = self.reward_ucb.sum(axis=0)
        total_lcb = self.reward_lcb.sum(axis=0)

        sol = maximize(total_ucb, spec)
        if sol.status != "optimal":
            raise ConfigurationError(
                f"episode {k}: allocation LP infeasible; delta={cfg.delta} is too "
                "large for the current confidence band")
        self.q_hat = sol.q
        _, self.policy = induce(sol.q)
        self._policy_cdf = np.cumsum(self.policy, axis=1)

        for i in range(1, n + 1):
            ucb_others = total_ucb - self.reward_ucb[i]
            lcb_others = total_lcb - self.reward_lcb[i]
            opt = maximize(ucb_others, spec)
            pes = maximize(lcb_others, spec)
            if opt.status != "optimal" or pes.status != "optimal":
                raise ConfigurationError(
                    f"episode {k}: payment LP for bidder {i} infeasible")
            self.payments_seller[i - 1] = opt.objective_value - lcb_others
            self.payments_bidder[i - 1] = pes.objective_value - ucb_others

        self.tau_k += self.d_k + self.l_k
        self.k += 1
        self.d_k, self.l_k = episode_lengths(self.k, cfg.alpha, S, A,
                                             cfg.delta, cfg.zeta)
        self.pos = 0

    # -- checkpointing -----------------------------------------------------

    def to_checkpoint(self) -> dict:
        cfg = self.config
        return {
            "config": {
                "S": cfg.S, "A": cfg.A, "n": cfg.n, "alpha": cfg.alpha,
                "delta": cfg.delta, "zeta": cfg.zeta, "epsilon": cfg.epsilon,
                "c_max": cfg.c_max, "variant": cfg.variant,
            },
            "k": self.k,
            "tau_k": self.tau_k,
            "pos": self.pos,
            "counts": self.counts.tolist(),
            "counts3": self.counts3.tolist(),
            "reward_sums": self.reward_sums.tolist(),
            "band_lower": self.band_lower.tolist(),
            "band_upper": self.band_upper.tolist(),
            "reward_ucb": self.reward_ucb.tolist(),
            "reward_lcb": self.reward_lcb.tolist(),
            "q_hat": self.q_hat.q.tolist(),
            "policy": self.policy.tolist(),
            "payments_seller": self.payments_seller.tolist(),
            "payments_bidder": self.payments_bidder.tolist(),
        }

    @classmethod
    def from_checkpoint(cls, doc: dict) -> "OnlineVcgLearner":
        learner = cls(LearnerConfig(**doc["config"]))
        learner.k = int(doc["k"])
        learner.tau_k = int(doc["tau_k"])
        learner.pos = int(doc["pos"])
        learner.d_k, learner.l_k = episode_lengths(
            learner.k, learner.config.alpha, learner.config.S, learner.config.A,
            learner.config.delta, learner.config.zeta)
        learner.counts = np.array(doc["counts"], dtype=np.int64)
        learner.counts3 = np.array(doc["counts3"], dtype=np.int64)
        learner.reward_sums = np.array(doc["reward_sums"])
        learner.band_lower = np.array(doc["band_lower"])
        learner.band_upper = np.array(doc["band_upper"])
        learner.reward_ucb = np.array(doc["reward_ucb"])
        learner.reward_lcb = np.array(doc["reward_lcb"])
        learner.q_hat = OccupancyMeasure(np.array(doc["q_hat"]))
        learner.policy = np.array(doc["policy"])
        learner._policy_cdf = np.cumsum(learner.policy, axis=1)
        learner.payments_seller = np.array(doc["payments_seller"])
        learner.payments_bidder = np.array(doc["payments_bidder"])
        return learner


def save_checkpoint(learner: OnlineVcgLearner, path) -> None:
    Path(path).write_text(json.dumps(learner.to_checkpoint()))


def load_checkpoint(path) -> OnlineVcgLearner:
    return OnlineVcgLearner.from_checkpoint(json.loads(Path(path).read_text()))
