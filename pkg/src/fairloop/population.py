"""Sampling feedback loop: recommendation-driven churn plus homophily.

Users belong to one of two groups. Each step every user independently
receives a recommendation with their group's probability; users who
receive none leave and are immediately replaced. Replacements join
group 1 with probability equal to group 1's population share at the
start of the step (homophily), so the composition drifts toward
whichever group is served better, even from a balanced start.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RandomSource


@dataclass(frozen=True)
class PopulationParams:
    n: int
    init_counts: tuple[int, int]
    rec_prob: tuple[float, float]
    horizon: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("population size must be positive")
        if sum(self.init_counts) != self.n:
            raise ValueError("initial counts must sum to the population size")
        if min(self.init_counts) < 0:
            raise ValueError("initial counts must be non-negative")
        if not all(0.0 <= p <= 1.0 for p in self.rec_prob):
            raise ValueError("recommendation probabilities must lie in [0, 1]")
        if self.horizon < 0:
            raise ValueError("horizon must be non-negative")


@dataclass(frozen=True)
class PopulationState:
    """Group labels (1 or 2) of the active users at step ``t``."""

    labels: np.ndarray
    t: int = 0

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=int)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("labels must be a non-empty vector")
        if not np.isin(labels, (1, 2)).all():
            raise ValueError("labels must be 1 or 2")
        object.__setattr__(self, "labels", labels)

    @property
    def counts(self) -> tuple[int, int]:
        n1 = int((self.labels == 1).sum())
        return n1, self.labels.size - n1


def initial_state(params: PopulationParams) -> PopulationState:
    n1, n2 = params.init_counts
    return PopulationState(np.array([1] * n1 + [2] * n2), t=0)


def population_step(state: PopulationState, params: PopulationParams,
                    rng: RandomSource) -> PopulationState:
    """One synchronous churn-and-replace step.

    The homophily probability uses the counts at the start of the step;
    departures are not interleaved with replacements, so the update is
    order-independent. Two uniform draws per user per step, in user
    order: retention first, then replacement group.
    """
    labels = state.labels
    n = labels.size
    p_keep = np.where(labels == 1, params.rec_prob[0], params.rec_prob[1])
    keep = rng.random(n) < p_keep
    share_1 = (labels == 1).sum() / n
    joins_group_1 = rng.random(n) < share_1
    new_labels = np.where(keep, labels, np.where(joins_group_1, 1, 2))
    return PopulationState(new_labels, t=state.t + 1)


def run_population_sim(params: PopulationParams, rng: RandomSource) -> np.ndarray:
    """Group counts per step, shape (horizon + 1, 2); row 0 is the start."""
    state = initial_state(params)
    trajectory = [state.counts]
    for _ in range(params.horizon):
        state = population_step(state, params, rng)
        trajectory.append(state.counts)
    return np.array(trajectory, dtype=int)
