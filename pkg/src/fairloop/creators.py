"""Creator-side feedback loop: allocation, retention, and epsilon sweeps.

A platform fractionally allocates each user group's attention across
creators. Creators stay on the platform with a probability that is a
steep sigmoid in the exposure they receive, so the utility-optimal
allocation (which concentrates exposure on broadly appealing creators)
starves niche creators and destroys the options of the user groups that
valued them. Exposure and opportunity floors counteract that at a
quantifiable price in immediate utility.

Retention is evaluated after solving: the optimization objective stays
linear, and retention discounts are applied to the optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TOL_DOUBLY_STOCHASTIC
from .errors import DegenerateGroupError
from .lp import LinearProgram, LpSolution, solve_lp

#: Default retention sigmoid midpoint (exposure share) and steepness.
DEFAULT_RETENTION_THRESHOLD = 0.10
DEFAULT_RETENTION_SLOPE = 100.0

ALLOCATION_CONSTRAINTS = ("exposure_floor", "opportunity_floor")


@dataclass(frozen=True)
class CreatorMarket:
    """User-group sizes, group-by-creator relevance, retention sigmoid."""

    group_sizes: np.ndarray
    relevance: np.ndarray
    retention_threshold: float = DEFAULT_RETENTION_THRESHOLD
    retention_slope: float = DEFAULT_RETENTION_SLOPE

    def __post_init__(self):
        sizes = np.asarray(self.group_sizes, dtype=float)
        rel = np.asarray(self.relevance, dtype=float)
        if sizes.ndim != 1 or np.any(sizes <= 0):
            raise ValueError("group sizes must be positive")
        if rel.ndim != 2 or rel.shape[0] != sizes.size:
            raise ValueError("relevance must have one row per user group")
        if rel.min() < 0.0 or rel.max() > 1.0:
            raise ValueError("relevance entries must lie in [0, 1]")
        object.__setattr__(self, "group_sizes", sizes)
        object.__setattr__(self, "relevance", rel)

    @property
    def n_groups(self) -> int:
        return self.group_sizes.size

    @property
    def n_creators(self) -> int:
        return self.relevance.shape[1]

    @property
    def total_users(self) -> float:
        return float(self.group_sizes.sum())

    def relevance_mass(self) -> np.ndarray:
        """Population-weighted relevance per creator (opportunity denominators)."""
        return self.group_sizes @ self.relevance


@dataclass(frozen=True)
class FractionalAllocation:
    """Row-stochastic matrix: fraction of each user group shown each creator."""

    sigma: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.ndim != 2:
            raise ValueError("allocation must be a matrix")
        if sigma.min() < -TOL_DOUBLY_STOCHASTIC:
            raise ValueError("allocation entries must be non-negative")
        if np.abs(sigma.sum(axis=1) - 1.0).max() > TOL_DOUBLY_STOCHASTIC:
            raise ValueError("each row must sum to 1")
        object.__setattr__(self, "sigma", np.maximum(sigma, 0.0))


def creator_exposure(alloc: FractionalAllocation, market: CreatorMarket,
                     i: int | None = None):
    """Population share of attention creator ``i`` receives (all if None)."""
    expo = market.group_sizes @ alloc.sigma / market.total_users
    return expo if i is None else float(expo[i])


def retention_prob(exposure: float, market: CreatorMarket) -> float:
    """Probability a creator stays, as a sigmoid in received exposure.

    The exponent is clamped to +-700 before exponentiation and the
    probability to [1e-300, 1 - 1e-16] so extreme exposures cannot
    overflow or round to exactly 0/1.
    """
    z = market.retention_slope * (float(exposure) - market.retention_threshold)
    z = min(max(z, -700.0), 700.0)
    p = 1.0 / (1.0 + np.exp(-z))
    return float(min(max(p, 1e-300), 1.0 - 1e-16))


def immediate_utility(alloc: FractionalAllocation, market: CreatorMarket) -> float:
    """Population-weighted relevance collected by the allocation."""
    return float((market.group_sizes[:, None] * market.relevance * alloc.sigma).sum())


def future_utility(alloc: FractionalAllocation, market: CreatorMarket) -> np.ndarray:
    """Best retention-discounted option of each user group.

    Creator departures shrink the future menu; the expected value of a
    group's best future option is max_i relevance[u, i] * p_i with p_i
    the retention probability under the current exposure split.
    """
    expo = creator_exposure(alloc, market)
    p = np.array([retention_prob(e, market) for e in expo])
    return (market.relevance * p).max(axis=1)


def retention_probs(alloc: FractionalAllocation, market: CreatorMarket) -> np.ndarray:
    expo = creator_exposure(alloc, market)
    return np.array([retention_prob(e, market) for e in expo])


def solve_allocation(market: CreatorMarket, constraint_kind: str,
                     epsilon: float,
                     solver=solve_lp) -> tuple[FractionalAllocation | None, LpSolution]:
    """Maximize immediate utility over row-stochastic allocations.

    ``exposure_floor``: every creator's exposure share >= epsilon
    (feasible only for epsilon <= 1 / n_creators).
    ``opportunity_floor``: every creator's population-weighted
    allocation, normalized by its relevance mass, >= epsilon.
    """
    if constraint_kind not in ALLOCATION_CONSTRAINTS:
        raise ValueError(f"unknown constraint kind {constraint_kind!r}")
    if epsilon < 0:
        raise ValueError("epsilon must be non-negative")
    g, c = market.n_groups, market.n_creators
    sizes, rel = market.group_sizes, market.relevance
    n_vars = g * c

    objective = (sizes[:, None] * rel).ravel()
    eq = []
    for u in range(g):
        row = np.zeros(n_vars)
        row[u * c: (u + 1) * c] = 1.0
        eq.append((row, 1.0))

    if constraint_kind == "opportunity_floor":
        mass = market.relevance_mass()
        for i, d in enumerate(mass):
            if d <= 0.0:
                raise DegenerateGroupError(i + 1)
        scale = mass
    else:
        scale = np.full(c, market.total_users)

    ineq = []
    for i in range(c):
        row = np.zeros(n_vars)
        row[i::c] = sizes / scale[i]
        ineq.append((row, float(epsilon)))

    lp = LinearProgram(objective, eq, ineq,
                       np.column_stack([np.zeros(n_vars), np.full(n_vars, np.inf)]))
    sol = solver(lp)
    if not sol.ok:
        return None, sol
    return FractionalAllocation(sol.x.reshape(g, c)), sol


def epsilon_sweep(market: CreatorMarket, constraint_kind: str,
                  epsilon_grid) -> list[dict]:
    """Solve the constrained allocation for each epsilon in ascending order.

    Infeasible grid points are recorded with status "infeasible" and NaN
    metrics; the sweep continues.
    """
    grid = [float(e) for e in epsilon_grid]
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("epsilon grid must be sorted ascending")
    records = []
    for eps in grid:
        alloc, sol = solve_allocation(market, constraint_kind, eps)
        if alloc is None:
            records.append({
                "epsilon": eps, "status": sol.status,
                "exposures": np.full(market.n_creators, np.nan),
                "retention": np.full(market.n_creators, np.nan),
                "utility": float("nan"),
                "future_utility": np.full(market.n_groups, np.nan),
            })
            continue
        records.append({
            "epsilon": eps, "status": "optimal",
            "exposures": creator_exposure(alloc, market),
            "retention": retention_probs(alloc, market),
            "utility": immediate_utility(alloc, market),
            "future_utility": future_utility(alloc, market),
        })
    return records


def niche_creator_market() -> CreatorMarket:
    """A worked three-group, three-creator market used across the docs.

    Creator 1 appeals broadly to the two large groups, creator 2 is the
    niche favorite of the small group 3, creator 3 appeals to no one.
    """
    return CreatorMarket(
        group_sizes=np.array([100.0, 100.0, 10.0]),
        relevance=np.array([[0.9, 0.1, 0.0],
                            [0.9, 0.4, 0.0],
                            [0.2, 0.9, 0.1]]),
    )
