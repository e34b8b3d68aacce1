"""Occupancy-measure polytopes and LP maximization over them.

Variants:
  FULL              all valid occupancy measures (mass, flow, nonnegativity)
  EXACT_KERNEL      additionally consistent with a fixed kernel P
  SHRUNK            every state-action mass at least delta
  SHRUNK_EXACT      SHRUNK intersected with EXACT_KERNEL
  SHRUNK_CONFIDENCE SHRUNK intersected with a two-sided kernel band
                    lower(s,a,s')*m(s,a) <= q(s,a,s') <= upper(s,a,s')*m(s,a),
                    where m(s,a) = sum_x q(s,a,x)

The band implements an intersection of per-episode confidence sets: callers
keep, per entry, the running max lower bound and min upper bound (see
``tighten_band``), so the LP stays constant-size across episodes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .occupancy import OccupancyMeasure
from .tolerances import TOL

logger = logging.getLogger(__name__)

VARIANTS = ("FULL", "EXACT_KERNEL", "SHRUNK", "SHRUNK_EXACT", "SHRUNK_CONFIDENCE")

# HiGHS dual simplex: deterministic and vertex-exact at these sizes
_LP_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}


@dataclass(frozen=True)
class PolytopeSpec:
    variant: str
    S: int
    A: int
    kernel: Optional[np.ndarray] = None
    delta: Optional[float] = None
    band_lower: Optional[np.ndarray] = None
    band_upper: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.S < 1 or self.A < 1:
            raise ValueError(f"bad dims S={self.S}, A={self.A}")
        shape = (self.S, self.A, self.S)
        if self.variant in ("EXACT_KERNEL", "SHRUNK_EXACT"):
            if self.kernel is None or self.kernel.shape != shape:
                raise ValueError(f"variant {self.variant} needs a kernel of shape {shape}")
        if self.variant.startswith("SHRUNK"):
            if self.delta is None or not 0 < self.delta <= 1.0 / (self.S * self.A):
                raise ValueError(
                    f"delta must lie in (0, 1/(S*A)]; got {self.delta}"
                )
        if self.variant == "SHRUNK_CONFIDENCE":
            if self.band_lower is None or self.band_upper is None:
                raise ValueError("SHRUNK_CONFIDENCE needs band_lower and band_upper")
            if self.band_lower.shape != shape or self.band_upper.shape != shape:
                raise ValueError(f"band arrays must have shape {shape}")
            if self.band_lower.min() < 0 or self.band_upper.max() > 1 + TOL.row_sum:
                raise ValueError("band must be clipped to [0, 1]")

    @classmethod
    def confidence(cls, delta, p_bar, radii, prior=None):
        """Shrunk confidence polytope from an empirical kernel and radii.

        ``prior`` carries the (lower, upper) band accumulated over earlier
        episodes; the new band is intersected with it.
        """
        lower, upper = tighten_band(prior, p_bar, radii)
        S, A = p_bar.shape[0], p_bar.shape[1]
        return cls("SHRUNK_CONFIDENCE", S, A, delta=delta,
                   band_lower=lower, band_upper=upper)


def tighten_band(prior, p_bar, radii):
    """Intersect a prior [lower, upper] kernel band with p_bar +/- radii."""
    if np.any(radii < 0):
        raise ValueError("radii must be nonnegative")
    if prior is None:
        lo = np.zeros_like(p_bar)
        hi = np.ones_like(p_bar)
    else:
        lo, hi = prior
    lower = np.clip(np.maximum(lo, p_bar - radii), 0.0, 1.0)
    upper = np.clip(np.minimum(hi, p_bar + radii), 0.0, 1.0)
    return lower, upper


@dataclass
class ConstraintSystem:
    """Dense rows for linprog plus per-family counts for inspection."""

    A_eq: np.ndarray
    b_eq: np.ndarray
    A_ub: np.ndarray
    b_ub: np.ndarray
    n_normalization: int
    n_flow: int
    n_kernel: int
    n_shrink: int
    n_band: int
    n_nonneg: int

    def max_violation(self, x: np.ndarray) -> float:
        """Largest constraint violation of a flat point (bounds included)."""
        v = 0.0
        if len(self.b_eq):
            v = max(v, float(np.abs(self.A_eq @ x - self.b_eq).max()))
        if len(self.b_ub):
            v = max(v, float(np.maximum(self.A_ub @ x - self.b_ub, 0.0).max()))
        v = max(v, float(np.maximum(-x, 0.0).max()))
        return v

    def dump(self) -> str:
        """Plain-text listing: one line per row, `sum c*q[s,a,s'] (=|<=) b`."""
        lines = []

        def fmt(row, op, rhs):
            terms = [
                f"{row[j]:+g}*q{np.unravel_index(j, self._shape)}"
                for j in np.flatnonzero(np.abs(row) > 0)
            ]
            lines.append(" ".join(terms) + f" {op} {rhs:g}")

        for row, rhs in zip(self.A_eq, self.b_eq):
            fmt(row, "=", rhs)
        for row, rhs in zip(self.A_ub, self.b_ub):
            fmt(row, "<=", rhs)
        lines.append(f"q >= 0  ({self.n_nonneg} bounds)")
        return "\n".join(lines)


def build_constraints(spec: PolytopeSpec) -> ConstraintSystem:
    """Emit the linear rows selecting the requested polytope over AS^2 variables."""
    S, A = spec.S, spec.A
    nv = S * A * S

    def idx(s, a, x):
        return (s * A + a) * S + x

    eq_rows, eq_rhs = [np.ones(nv)], [1.0]

    # flow conservation: inflow to s equals outflow from s
    for s in range(S):
        row = np.zeros((S, A, S))
        row[:, :, s] += 1.0
        row[s, :, :] -= 1.0
        eq_rows.append(row.ravel())
        eq_rhs.append(0.0)

    n_kernel = 0
    if spec.variant in ("EXACT_KERNEL", "SHRUNK_EXACT"):
        for s in range(S):
            for a in range(A):
                for x in range(S):
                    row = np.zeros(nv)
                    row[idx(s, a, x)] += 1.0
                    row[idx(s, a, 0):idx(s, a, 0) + S] -= spec.kernel[s, a, x]
                    eq_rows.append(row)
                    eq_rhs.append(0.0)
                    n_kernel += 1

    ub_rows, ub_rhs = [], []
    n_shrink = 0
    if spec.variant.startswith("SHRUNK"):
        for s in range(S):
            for a in range(A):
                row = np.zeros(nv)
                row[idx(s, a, 0):idx(s, a, 0) + S] = -1.0
                ub_rows.append(row)
                ub_rhs.append(-spec.delta)
                n_shrink += 1

    n_band = 0
    if spec.variant == "SHRUNK_CONFIDENCE":
        for s in range(S):
            for a in range(A):
                for x in range(S):
                    up = np.zeros(nv)
                    up[idx(s, a, 0):idx(s, a, 0) + S] = -spec.band_upper[s, a, x]
                    up[idx(s, a, x)] += 1.0
                    ub_rows.append(up)
                    ub_rhs.append(0.0)
                    lo = np.zeros(nv)
                    lo[idx(s, a, 0):idx(s, a, 0) + S] = spec.band_lower[s, a, x]
                    lo[idx(s, a, x)] -= 1.0
                    ub_rows.append(lo)
                    ub_rhs.append(0.0)
                    n_band += 2

    system = ConstraintSystem(
        A_eq=np.array(eq_rows),
        b_eq=np.array(eq_rhs),
        A_ub=np.array(ub_rows) if ub_rows else np.zeros((0, nv)),
        b_ub=np.array(ub_rhs),
        n_normalization=1,
        n_flow=S,
        n_kernel=n_kernel,
        n_shrink=n_shrink,
        n_band=n_band,
        n_nonneg=nv,
    )
    system._shape = (S, A, S)
    return system


@dataclass(frozen=True)
class LpSolution:
    q: Optional[OccupancyMeasure]
    objective_value: float
    status: str  # "optimal" | "infeasible"


def maximize(objective: np.ndarray, spec: PolytopeSpec) -> LpSolution:
    """Maximize <q, r> over the polytope; r is a per-(s,a) table."""
    objective = np.asarray(objective, dtype=np.float64)
    if objective.shape != (spec.S, spec.A):
        raise ValueError(f"objective must be (S, A) = {(spec.S, spec.A)}")
    if not np.all(np.isfinite(objective)):
        raise ValueError("objective must be finite")
    system = build_constraints(spec)
    c = np.repeat(objective[:, :, None], spec.S, axis=2).ravel()
    res = linprog(
        -c,
        A_ub=system.A_ub if len(system.b_ub) else None,
        b_ub=system.b_ub if len(system.b_ub) else None,
        A_eq=system.A_eq,
        b_eq=system.b_eq,
        bounds=(0, None),
        method="highs-ds",
        options=_LP_OPTIONS,
    )
    if res.status == 2:
        return LpSolution(q=None, objective_value=float("nan"), status="infeasible")
    if res.status != 0:
        raise RuntimeError(f"LP solver failed (status {res.status}): {res.message}")
    q = res.x.reshape(spec.S, spec.A, spec.S)
    return LpSolution(
        q=OccupancyMeasure(q),
        objective_value=float(-res.fun),
        status="optimal",
    )


def calibrate_delta(model_or_kernel, objective: np.ndarray, epsilon: float,
                    delta_min: float = 1e-6) -> float:
    """Largest halving-grid delta whose shrunk optimum stays within epsilon.

    Grid: 1/(2SA), 1/(4SA), ... down to ``delta_min``. Each candidate is
    verified by comparing the shrunk-polytope LP optimum against the full
    kernel-polytope optimum.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    kernel = getattr(model_or_kernel, "kernel", model_or_kernel)
    S, A = kernel.shape[0], kernel.shape[1]
    base = maximize(objective, PolytopeSpec("EXACT_KERNEL", S, A, kernel=kernel))
    grid = []
    d = 1.0 / (2 * S * A)
    while d > delta_min:
        grid.append(d)
        d /= 2
    grid.append(delta_min)
    for d in grid:
        sol = maximize(
            objective, PolytopeSpec("SHRUNK_EXACT", S, A, kernel=kernel, delta=d)
        )
        if sol.status == "optimal" and sol.objective_value >= base.objective_value - epsilon:
            return d
    logger.warning(
        "delta floor %.1e still violates the %.3g gap; returning the floor",
        delta_min, epsilon,
    )
    return delta_min
