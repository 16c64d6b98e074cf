"""Fast-timescale exposure control over a deployment horizon.

A ranking system must deliver a cumulative exposure target per item
group by the end of a horizon of T steps, while user demand (relevance)
shifts from step to step. Rather than enforcing the target at every
step, a proportional controller boosts the scores of groups that have
fallen behind the linearly interpolated pace, letting exposure be
earned on the steps where it is cheap.

The same boost arises as online dual ascent on the Lagrangian of the
exposure-constrained ranking problem: the multiplier of each group's
constraint grows while the group is behind and is projected at zero
once it catches up, so both controllers are provided and can be
compared step by step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GroupPartition, _as_weights, relevance_sort, user_exposure
from .errors import HorizonExhaustedError

#: End-of-horizon target satisfaction tolerance.
TOL_TRACK = 1e-6


@dataclass(frozen=True)
class TrackerState:
    """Cumulative per-group exposure along a horizon.

    ``t`` is the next step to be played, 1-based; after the final
    update it rests at ``T + 1``.
    """

    s: np.ndarray
    t: int
    T: int
    targets: np.ndarray
    gain: float

    def __post_init__(self):
        s = np.asarray(self.s, dtype=float)
        targets = np.asarray(self.targets, dtype=float)
        if np.any(s < 0) or np.any(targets < 0):
            raise ValueError("exposure totals and targets must be non-negative")
        if self.T < 1:
            raise ValueError("horizon must be positive")
        if not 1 <= self.t <= self.T + 1:
            raise ValueError("step index must lie in 1..T+1")
        if self.gain < 0:
            raise ValueError("gain must be non-negative")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "targets", targets)

    @staticmethod
    def initial(targets, T: int, gain: float) -> "TrackerState":
        targets = np.asarray(targets, dtype=float)
        return TrackerState(np.zeros(targets.size), 1, T, targets, gain)

    def deficits(self) -> np.ndarray:
        """One-sided tracking error against the linear pace at step t."""
        pace = (self.t - 1) / self.T * self.targets
        return np.maximum(0.0, pace - self.s)


@dataclass(frozen=True)
class DualState:
    """Non-negative multipliers of the per-group exposure constraints."""

    lam: np.ndarray
    step_size: float

    def __post_init__(self):
        lam = np.asarray(self.lam, dtype=float)
        if np.any(lam < 0):
            raise ValueError("multipliers must be non-negative")
        if self.step_size < 0:
            raise ValueError("step size must be non-negative")
        object.__setattr__(self, "lam", lam)

    @staticmethod
    def initial(n_groups: int, step_size: float) -> "DualState":
        return DualState(np.zeros(n_groups), step_size)


def boosted_scores(relevance, groups: GroupPartition,
                   tracker: TrackerState) -> np.ndarray:
    """Raw scores plus gain * deficit of each item's group.

    The boost is identical for all items of a group, so within-group
    order always follows raw relevance; groups at or ahead of pace get
    exactly zero boost.
    """
    rel = np.atleast_2d(np.asarray(relevance, dtype=float))
    boost_per_group = tracker.gain * tracker.deficits()
    item_boost = boost_per_group[groups.item_to_group - 1]
    return rel + item_boost[None, :]


def tracker_update(tracker: TrackerState, realized_exposure) -> TrackerState:
    """Accumulate one step of realized per-group exposure."""
    realized = np.asarray(realized_exposure, dtype=float)
    if np.any(realized < 0):
        raise ValueError("realized exposure must be non-negative")
    if tracker.t > tracker.T:
        raise HorizonExhaustedError("tracker stepped past its horizon")
    return TrackerState(tracker.s + realized, tracker.t + 1, tracker.T,
                        tracker.targets, tracker.gain)


def dual_ascent_step(dual: DualState, exposure_this_step, targets,
                     T: int) -> DualState:
    """Projected ascent: lam += step * (target/T - exposure), floored at 0."""
    exposure = np.asarray(exposure_this_step, dtype=float)
    targets = np.asarray(targets, dtype=float)
    lam = np.maximum(0.0, dual.lam + dual.step_size * (targets / T - exposure))
    return DualState(lam, dual.step_size)


@dataclass(frozen=True)
class HorizonRun:
    """Per-step record of one controlled horizon."""

    rankings: tuple          # tuple over steps of tuples over users
    tracker: TrackerState    # final state
    step_exposures: np.ndarray  # (T, m)
    boosts: np.ndarray          # (T, m) additive boost applied at each step
    utilities: np.ndarray       # (T,) mean per-user position-weighted relevance

    @property
    def total_utility(self) -> float:
        return float(self.utilities.sum())


def run_horizon(relevance_stream, groups: GroupPartition, pi, targets,
                gain: float, T: int, mode: str = "p_control") -> HorizonRun:
    """Play T ranking steps under proportional or dual-ascent control.

    ``relevance_stream`` holds one relevance matrix (users x items) per
    step. At each step items are ranked by adjusted score (ties to the
    lowest item index), exposure is measured with ``pi`` and averaged
    over the step's users, and the controller state advances. Fully
    deterministic.

    In dual-ascent mode the additive boost is ``lam_j / n_users_t``,
    matching the per-user normalization of the underlying Lagrangian
    step; with one user per step the two modes use identical formulas
    whenever the running tracking error has not changed sign.
    """
    if mode not in ("p_control", "dual_ascent"):
        raise ValueError(f"unknown controller mode {mode!r}")
    stream = [np.atleast_2d(np.asarray(r, dtype=float)) for r in relevance_stream]
    if len(stream) != T:
        raise ValueError("stream length must equal the horizon")
    targets = np.asarray(targets, dtype=float)
    m = targets.size
    pi_vec = _as_weights(pi)

    tracker = TrackerState.initial(targets, T, gain)
    dual = DualState.initial(m, gain)
    rankings, exposures, boosts, utilities = [], [], [], []

    for rel in stream:
        n_users = rel.shape[0]
        if mode == "p_control":
            boost_group = tracker.gain * tracker.deficits()
        else:
            boost_group = dual.lam / n_users
        scores = rel + boost_group[groups.item_to_group - 1][None, :]
        step_rankings = tuple(tuple(int(i) for i in relevance_sort(row))
                              for row in scores)
        step_expo = np.array([
            np.mean([user_exposure(r, groups, pi_vec, j) for r in step_rankings])
            for j in range(1, m + 1)])
        step_util = float(np.mean([pi_vec[: len(r)] @ rel[u, list(r)]
                                   for u, r in enumerate(step_rankings)]))
        rankings.append(step_rankings)
        exposures.append(step_expo)
        boosts.append(boost_group)
        utilities.append(step_util)
        tracker = tracker_update(tracker, step_expo)
        dual = dual_ascent_step(dual, step_expo, targets, T)

    return HorizonRun(rankings=tuple(rankings), tracker=tracker,
                      step_exposures=np.array(exposures),
                      boosts=np.array(boosts),
                      utilities=np.array(utilities))
