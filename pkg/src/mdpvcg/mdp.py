"""Ground-truth auction environments: tabular MDPs with per-player rewards.

Player 0 is the seller (mean rewards in [0, c_max]); players 1..n are bidders
(mean rewards in [0, 1]). The transition kernel must satisfy the uniform
ergodicity margin: every entry P(s'|s,a) >= alpha.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .tolerances import TOL

REWARD_FAMILIES = ("deterministic", "bernoulli-scaled")


@dataclass
class MdpModel:
    """Immutable environment: kernel (S,A,S), reward_means (n+1,S,A)."""

    kernel: np.ndarray
    reward_means: np.ndarray
    alpha: float
    c_max: float = 1.0
    reward_family: tuple = ("deterministic",)

    def __post_init__(self):
        self.kernel = np.ascontiguousarray(self.kernel, dtype=np.float64)
        self.reward_means = np.ascontiguousarray(self.reward_means, dtype=np.float64)
        if self.kernel.ndim != 3 or self.kernel.shape[0] != self.kernel.shape[2]:
            raise ValueError(f"kernel must be (S, A, S), got {self.kernel.shape}")
        if self.reward_means.ndim != 3 or self.reward_means.shape[1:] != self.kernel.shape[:2]:
            raise ValueError(
                f"reward_means must be (n+1, S, A), got {self.reward_means.shape}"
            )
        fam = self.reward_family
        if isinstance(fam, str):
            fam = (fam,) * (self.n + 1)
        fam = tuple(fam)
        if len(fam) == 1:
            fam = fam * (self.n + 1)
        if len(fam) != self.n + 1:
            raise ValueError(f"need one reward family per player, got {len(fam)}")
        for f in fam:
            if f not in REWARD_FAMILIES:
                raise ValueError(f"unknown reward family {f!r}")
        self.reward_family = fam
        self.kernel.setflags(write=False)
        self.reward_means.setflags(write=False)
        # cached sampling tables; kernel_cdf[s, a] is the cdf over next states
        self._kernel_cdf = np.cumsum(self.kernel, axis=2)
        self._deterministic = tuple(f == "deterministic" for f in self.reward_family)

    @property
    def S(self) -> int:
        return self.kernel.shape[0]

    @property
    def A(self) -> int:
        return self.kernel.shape[1]

    @property
    def n(self) -> int:
        return self.reward_means.shape[0] - 1

    def reward_caps(self) -> np.ndarray:
        """Per-player reward upper bounds: c_max for the seller, 1 for bidders."""
        caps = np.ones(self.n + 1)
        caps[0] = self.c_max
        return caps


@dataclass
class SimState:
    """One simulation stream: round index, current state, owned rng."""

    t: int
    s: int
    rng: np.random.Generator

    @classmethod
    def start(cls, model: MdpModel, seed) -> "SimState":
        rng = np.random.default_rng(seed)
        return cls(t=1, s=int(rng.integers(model.S)), rng=rng)


@dataclass(frozen=True)
class Violation:
    kind: str
    where: tuple
    detail: str


def validate_model(model: MdpModel) -> list:
    """Check every model invariant; returns the (possibly empty) violation list."""
    out = []
    S, A = model.S, model.A
    if model.alpha <= 0:
        out.append(Violation("alpha_positive", (), f"alpha={model.alpha} must be > 0"))
    if model.alpha * S > 1 + TOL.row_sum:
        out.append(Violation("alpha_mass", (), f"alpha*S={model.alpha * S} exceeds 1"))
    row_sums = model.kernel.sum(axis=2)
    bad = np.argwhere(np.abs(row_sums - 1.0) > TOL.row_sum)
    for s, a in bad:
        out.append(Violation("row_sum", (int(s), int(a)), f"sums to {row_sums[s, a]!r}"))
    low = np.argwhere(model.kernel < model.alpha - TOL.row_sum)
    for s, a, s2 in low:
        out.append(
            Violation(
                "ergodicity_margin",
                (int(s), int(a), int(s2)),
                f"P={model.kernel[s, a, s2]!r} < alpha={model.alpha}",
            )
        )
    caps = model.reward_caps()
    for i in range(model.n + 1):
        r = model.reward_means[i]
        bad = np.argwhere((r < -TOL.row_sum) | (r > caps[i] + TOL.row_sum))
        for s, a in bad:
            out.append(
                Violation(
                    "reward_range",
                    (i, int(s), int(a)),
                    f"r_{i}={r[s, a]!r} outside [0, {caps[i]}]",
                )
            )
    return out


def _multi_unit_actions(n: int, m: int) -> list:
    """All nonnegative integer allocations over n bidders with at most m units."""
    out = [()]
    for _ in range(n):
        out = [a + (x,) for a in out for x in range(m + 1 - sum(a))]
    return out


@dataclass(frozen=True)
class GeneratorSpec:
    """Configuration for random model generation.

    ``auction`` picks an action-space shape: single_item gives one action per
    bidder plus no-sale; multi_unit allocates up to ``items`` identical units;
    combinatorial assigns each of ``items`` distinct goods to a bidder or to
    nobody. With auction=None, ``A`` is taken literally.
    """

    S: int
    n: int
    alpha: float
    A: Optional[int] = None
    auction: Optional[str] = None
    items: int = 1
    c_max: float = 1.0
    reward_family: Union[str, Sequence[str]] = "deterministic"

    def action_labels(self) -> list:
        if self.auction == "single_item":
            return ["no-sale"] + [f"to-bidder-{i}" for i in range(1, self.n + 1)]
        if self.auction == "multi_unit":
            return [str(a) for a in _multi_unit_actions(self.n, self.items)]
        if self.auction == "combinatorial":
            labels = []
            for code in range(self.num_actions()):
                assign, c = [], code
                for _ in range(self.items):
                    assign.append(c % (self.n + 1))
                    c //= self.n + 1
                labels.append(str(tuple(assign)))
            return labels
        return [f"a{j}" for j in range(self.num_actions())]

    def num_actions(self) -> int:
        if self.auction == "single_item":
            return self.n + 1
        if self.auction == "multi_unit":
            return len(_multi_unit_actions(self.n, self.items))
        if self.auction == "combinatorial":
            return (self.n + 1) ** self.items
        if self.A is None:
            raise ValueError("A is required when no auction shape is given")
        return self.A


def generate_model(spec: GeneratorSpec, seed) -> MdpModel:
    """Draw a valid random model, deterministic in ``seed``.

    The kernel mixes a random row-stochastic table with the all-ones matrix,
    (1 - S*alpha)*Q + alpha, so every entry is at least alpha by construction.
    """
    S, n, alpha = spec.S, spec.n, spec.alpha
    if alpha <= 0 or alpha * S > 1:
        raise ValueError(f"need 0 < alpha <= 1/S, got alpha={alpha}, S={S}")
    A = spec.num_actions()
    rng = np.random.default_rng(seed)
    q = rng.dirichlet(np.ones(S), size=(S, A))
    kernel = (1.0 - S * alpha) * q + alpha
    means = rng.uniform(0.0, 1.0, size=(n + 1, S, A))
    means[0] *= spec.c_max
    return MdpModel(
        kernel=kernel,
        reward_means=means,
        alpha=alpha,
        c_max=spec.c_max,
        reward_family=spec.reward_family,
    )


def draw_rewards(model: MdpModel, s: int, a: int, rng: np.random.Generator) -> list:
    """Sample one realized reward per player at (s, a); returns a plain list."""
    means = model.reward_means
    out = []
    cap = model.c_max
    for i, det in enumerate(model._deterministic):
        mean = means[i, s, a]
        if det:
            out.append(mean)
        else:  # bernoulli-scaled: value cap with probability mean/cap
            out.append(cap if rng.random() * cap < mean else 0.0)
        cap = 1.0  # bidders after the seller
    return out


def step(model: MdpModel, sim: SimState, a: int):
    """Advance one round: sample s' ~ P(.|s,a) and all realized rewards."""
    if not 0 <= a < model.A:
        raise ValueError(f"action {a} out of range [0, {model.A})")
    s = sim.s
    rewards = draw_rewards(model, s, a, sim.rng)
    s2 = int(model._kernel_cdf[s, a].searchsorted(sim.rng.random(), side="right"))
    if s2 >= model.S:  # cdf rounding at 1.0
        s2 = model.S - 1
    sim.s = s2
    sim.t += 1
    return s2, rewards


def save_model(model: MdpModel, path) -> None:
    doc = {
        "S": model.S,
        "A": model.A,
        "n": model.n,
        "alpha": model.alpha,
        "c_max": model.c_max,
        "kernel": model.kernel.tolist(),
        "reward_means": model.reward_means.tolist(),
        "reward_family": list(model.reward_family),
    }
    Path(path).write_text(json.dumps(doc, indent=1))


def load_model(path) -> MdpModel:
    doc = json.loads(Path(path).read_text())
    model = MdpModel(
        kernel=np.array(doc["kernel"]),
        reward_means=np.array(doc["reward_means"]),
        alpha=float(doc["alpha"]),
        c_max=float(doc["c_max"]),
        reward_family=tuple(doc["reward_family"]),
    )
    if model.S != doc["S"] or model.A != doc["A"] or model.n != doc["n"]:
        raise ValueError(f"inconsistent dimensions in model file {path}")
    return model
