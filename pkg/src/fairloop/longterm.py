"""Long-horizon exposure policy optimization.

The per-group engagement state (fraction of active users) evolves with
the exposure share each group receives: groups served above a threshold
recover toward high activity, starved groups decay. A myopic policy
re-optimizes instantaneous reward each step and concentrates exposure
on whichever group is currently most valuable; a farsighted policy
chooses one static exposure split by discounted-value grid search over
the simplex. On instances where a currently weak group has high
potential value, the farsighted policy revives it and outperforms the
myopic one over the horizon.

Both the dynamics and the reward are pluggable; the defaults below are
a sigmoid-threshold recovery rule and an activity-weighted engagement
rate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class EngagementState:
    """Per-group fraction of active users, each component in [0, 1]."""

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("state must be a non-empty vector")
        if v.min() < 0.0 or v.max() > 1.0:
            raise ValueError("state components must lie in [0, 1]")
        object.__setattr__(self, "v", v)

    @property
    def m(self) -> int:
        return self.v.size


@dataclass(frozen=True)
class ExposurePolicy:
    """Exposure share per group; a point on the probability simplex."""

    beta: np.ndarray
    kind: str = "static"

    def __post_init__(self):
        beta = np.asarray(self.beta, dtype=float)
        if beta.ndim != 1 or np.any(beta < -1e-12):
            raise ValueError("exposure shares must be non-negative")
        if abs(beta.sum() - 1.0) > 1e-9:
            raise ValueError("exposure shares must sum to 1")
        object.__setattr__(self, "beta", np.maximum(beta, 0.0))


@dataclass(frozen=True)
class DynamicsParams:
    eta: float = 0.3       # adjustment rate
    theta: float = 0.3     # exposure share where recovery balances decay
    kappa: float = 20.0    # sharpness of the recovery threshold

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError("eta must lie in [0, 1]")


@dataclass(frozen=True)
class RewardParams:
    group_sizes: np.ndarray
    base_interest: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.group_sizes, dtype=float)
        q = np.asarray(self.base_interest, dtype=float)
        if n.shape != q.shape or n.ndim != 1:
            raise ValueError("group sizes and base interest must be matching vectors")
        if np.any(n <= 0) or np.any(q < 0):
            raise ValueError("group sizes must be positive and interest non-negative")
        object.__setattr__(self, "group_sizes", n)
        object.__setattr__(self, "base_interest", q)


@dataclass(frozen=True)
class HorizonSpec:
    """Discounted horizon with pluggable dynamics and reward."""

    T: int
    gamma: float
    dynamics_params: DynamicsParams = field(default_factory=DynamicsParams)
    reward_params: RewardParams | None = None
    dynamics: Callable | None = None
    reward: Callable | None = None

    def __post_init__(self):
        if self.T < 0:
            raise ValueError("horizon must be non-negative")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("discount must lie in [0, 1)")

    def step(self, v: np.ndarray, beta: np.ndarray) -> np.ndarray:
        fn = self.dynamics if self.dynamics is not None else default_dynamics
        return fn(v, beta, self.dynamics_params)

    def payoff(self, v: np.ndarray, beta: np.ndarray) -> float:
        fn = self.reward if self.reward is not None else default_reward
        return fn(v, beta, self.reward_params)


def default_dynamics(v, beta, params: DynamicsParams) -> np.ndarray:
    """Sigmoid-threshold recovery: served groups heal, starved groups decay."""
    v = np.asarray(v, dtype=float)
    beta = np.asarray(beta, dtype=float)
    attractor = 1.0 / (1.0 + np.exp(-params.kappa * (beta - params.theta)))
    return np.clip((1.0 - params.eta) * v + params.eta * attractor, 0.0, 1.0)


def default_reward(v, beta, params: RewardParams) -> float:
    """Engagement rate: active users x base interest x exposure share."""
    v = np.asarray(v, dtype=float)
    beta = np.asarray(beta, dtype=float)
    return float((params.group_sizes * v * params.base_interest * beta).sum())


def rollout(policy, spec: HorizonSpec, v0) -> tuple[float, dict]:
    """Discounted value of a policy from state ``v0`` over t = 0..T.

    ``policy`` is either an :class:`ExposurePolicy` (static) or a
    callable state -> ExposurePolicy (closed loop).
    """
    v = np.asarray(v0, dtype=float)
    pick = (lambda _v: policy) if isinstance(policy, ExposurePolicy) else policy
    value = 0.0
    states, betas, rewards = [v.copy()], [], []
    for t in range(spec.T + 1):
        beta = pick(v).beta
        reward = spec.payoff(v, beta)
        value += spec.gamma ** t * reward
        betas.append(beta.copy())
        rewards.append(reward)
        if t < spec.T:
            v = spec.step(v, beta)
            states.append(v.copy())
    return value, {"states": np.array(states), "betas": np.array(betas),
                   "rewards": np.array(rewards)}


def myopic_policy(spec: HorizonSpec, v) -> ExposurePolicy:
    """Vertex policy maximizing instantaneous reward; ties to lowest group."""
    v = np.asarray(v, dtype=float)
    params = spec.reward_params
    scores = params.group_sizes * v * params.base_interest
    j = int(np.argmax(scores))  # argmax takes the first (lowest) index on ties
    beta = np.zeros(v.size)
    beta[j] = 1.0
    return ExposurePolicy(beta)


def simplex_grid(m: int, h: float) -> list[np.ndarray]:
    """All points with coordinates in multiples of ``h`` summing to 1."""
    steps = round(1.0 / h)
    if abs(steps * h - 1.0) > 1e-9:
        raise ValueError("grid spacing must divide 1")
    points = []
    for combo in itertools.product(range(steps + 1), repeat=m - 1):
        if sum(combo) <= steps:
            last = steps - sum(combo)
            points.append(np.array(combo + (last,), dtype=float) / steps)
    points.sort(key=lambda b: tuple(b))
    return points


def grid_search_policy(spec: HorizonSpec, v0, h: float = 0.05
                       ) -> tuple[ExposurePolicy, float]:
    """Best static exposure split on the simplex grid; lexicographic ties."""
    best_beta, best_value = None, -np.inf
    for beta in simplex_grid(np.asarray(v0).size, h):
        value, _ = rollout(ExposurePolicy(beta), spec, v0)
        if value > best_value + 1e-12:
            best_beta, best_value = beta, value
    return ExposurePolicy(best_beta), float(best_value)


def compare(spec: HorizonSpec, v0, h: float = 0.05) -> dict:
    """Myopic closed-loop rollout versus farsighted static grid search."""
    v0 = np.asarray(v0, dtype=float)
    myopic_value, myopic_traj = rollout(lambda v: myopic_policy(spec, v), spec, v0)
    far_policy, far_value = grid_search_policy(spec, v0, h)
    _, far_traj = rollout(far_policy, spec, v0)
    return {
        "myopic_value": float(myopic_value),
        "farsighted_value": float(far_value),
        "farsighted_beta": far_policy.beta,
        "myopic_trajectory": myopic_traj,
        "farsighted_trajectory": far_traj,
        "terminal_engagement_myopic": myopic_traj["states"][-1],
        "terminal_engagement_farsighted": far_traj["states"][-1],
    }


def disadvantaged_group_spec() -> tuple[HorizonSpec, np.ndarray]:
    """Two-group instance where reviving the weak group pays off.

    Group 1 starts barely active but its users are half again as
    interested as group 2's, so a farsighted allocator should accept
    the short-term loss of serving it back to health.
    """
    spec = HorizonSpec(
        T=60, gamma=0.95,
        dynamics_params=DynamicsParams(eta=0.3, theta=0.3, kappa=20.0),
        reward_params=RewardParams(group_sizes=np.array([100.0, 100.0]),
                                   base_interest=np.array([1.5, 1.0])),
    )
    return spec, np.array([0.2, 0.8])
