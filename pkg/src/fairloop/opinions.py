"""Opinion dynamics under engagement-driven recommendation.

Each user holds a scalar opinion in [0, 1]. Every step the platform
recommends content with a stance in [0, 1] and the opinion moves a
fraction ``alpha`` of the way toward it. The engagement-maximizing
policy recommends stance 1 to users above 0.5 and stance 0 otherwise,
which drives the population to the extremes; mixing in a uniform draw
with probability ``epsilon`` keeps opinions away from the poles at a
cost in engagement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import RandomSource


@dataclass(frozen=True)
class OpinionParams:
    alpha: float = 0.1
    epsilon: float = 0.0
    n_users: int = 100
    horizon: int = 30
    #: (population fraction, uniform initial range (a, b)) per group
    group_splits: tuple = ((0.5, (0.5, 0.7)), (0.5, (0.3, 0.5)))

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in [0, 1]")
        if self.n_users < 1 or self.horizon < 0:
            raise ValueError("n_users must be positive and horizon non-negative")
        fracs = [f for f, _ in self.group_splits]
        if abs(sum(fracs) - 1.0) > 1e-9:
            raise ValueError("group fractions must sum to 1")
        for _, (a, b) in self.group_splits:
            if not 0.0 <= a < b <= 1.0:
                raise ValueError("initial ranges must satisfy 0 <= a < b <= 1")

    def group_counts(self) -> list[int]:
        """Deterministic integer split; the last group absorbs rounding."""
        counts, acc = [], 0
        for frac, _ in self.group_splits[:-1]:
            c = int(round(frac * self.n_users))
            counts.append(c)
            acc += c
        counts.append(self.n_users - acc)
        return counts


@dataclass(frozen=True)
class OpinionTrajectory:
    """Per-step record of a simulation run.

    ``opinions`` has shape (horizon + 1, n_users); row t is the state
    after t update steps. ``engagements`` has shape (horizon, n_users):
    the realized per-user engagement of each update step.
    ``polarization`` has one entry per recorded state.
    """

    opinions: np.ndarray
    engagements: np.ndarray
    polarization: np.ndarray

    @property
    def final_opinions(self) -> np.ndarray:
        return self.opinions[-1]

    @property
    def mean_engagement(self) -> np.ndarray:
        return self.engagements.mean(axis=1) if self.engagements.size else \
            np.empty(0)

    @property
    def time_averaged_engagement(self) -> float:
        return float(self.engagements.mean()) if self.engagements.size else 0.0


def opinion_step(x: float, r: float, alpha: float) -> float:
    """One opinion update: move ``x`` a fraction ``alpha`` toward ``r``."""
    if not 0.0 <= x <= 1.0 or not 0.0 <= r <= 1.0:
        raise ValueError("x and r must lie in [0, 1]")
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    return (1.0 - alpha) * x + alpha * r


def aligned_policy(x: float) -> float:
    """Engagement-maximizing stance: 1 for opinions strictly above 0.5."""
    return 1.0 if x > 0.5 else 0.0


def diverse_policy(x: float, epsilon: float, rng: RandomSource) -> float:
    """Aligned stance with probability 1 - epsilon, else a uniform draw."""
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1]")
    if rng.random() < epsilon:
        return float(rng.random())
    return aligned_policy(x)


def engagement(x: float, r: float) -> float:
    """Engagement model: proportional to opinion-stance alignment."""
    return x * r


def polarization_metric(x) -> float:
    """Population variance of opinions: 0 at consensus, 0.25 at a 0/1 split."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        raise ValueError("opinion vector must be non-empty")
    return float(x.var())


def _initial_opinions(params: OpinionParams, rng: RandomSource) -> np.ndarray:
    parts = []
    for count, (_, (a, b)) in zip(params.group_counts(), params.group_splits):
        parts.append(rng.uniform(a, b, count))
    return np.concatenate(parts) if parts else np.empty(0)


def run_opinion_sim(params: OpinionParams, rng: RandomSource) -> OpinionTrajectory:
    """Simulate the recommendation loop for ``params.horizon`` steps.

    Per step and per user, two uniforms are drawn in user-index order:
    one to decide aligned-vs-diverse, one for the diverse stance (the
    second is drawn regardless of the branch so the stream layout is
    fixed). Deterministic given the RandomSource seed.
    """
    n = params.n_users
    x = _initial_opinions(params, rng)
    opinions = [x.copy()]
    engagements = []
    polar = [polarization_metric(x)]
    for _ in range(params.horizon):
        aligned = (x > 0.5).astype(float)
        use_diverse = rng.random(n) < params.epsilon
        uniform_stance = rng.random(n)
        r = np.where(use_diverse, uniform_stance, aligned)
        engagements.append(x * r)
        x = (1.0 - params.alpha) * x + params.alpha * r
        opinions.append(x.copy())
        polar.append(polarization_metric(x))
    return OpinionTrajectory(
        opinions=np.array(opinions),
        engagements=(np.array(engagements) if engagements
                     else np.empty((0, n))),
        polarization=np.array(polar))


def tradeoff_sweep(epsilon_grid, rng: RandomSource, n_users: int = 100,
                   horizon: int = 30, trials: int = 200,
                   alpha: float = 0.1, group_splits=None,
                   jobs: int = 1) -> list[dict]:
    """Monte Carlo engagement/polarization trade-off across diversity levels.

    For each epsilon, ``trials`` independent runs are aggregated into
    the mean and standard deviation of time-averaged engagement and of
    final-state polarization. Trial seeds depend only on the trial
    index (common random numbers across epsilon values), so adjacent
    grid points are positively coupled and their differences are low
    noise. Rows come back in grid order.

    ``jobs`` > 1 runs trials on a thread pool; results are always
    reduced in trial order, so the output does not depend on ``jobs``.
    """
    epsilon_grid = [float(e) for e in epsilon_grid]
    if any(not 0.0 <= e <= 1.0 for e in epsilon_grid):
        raise ValueError("epsilon grid values must lie in [0, 1]")
    splits = group_splits if group_splits is not None else \
        OpinionParams.__dataclass_fields__["group_splits"].default
    rows = []
    for eps in epsilon_grid:
        params = OpinionParams(alpha=alpha, epsilon=eps, n_users=n_users,
                               horizon=horizon, group_splits=splits)

        def one_trial(trial: int) -> tuple[float, float]:
            traj = run_opinion_sim(params, rng.spawn(trial))
            return traj.time_averaged_engagement, float(traj.polarization[-1])

        if jobs > 1:
            from concurrent.futures import ThreadPoolExecutor
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(one_trial, range(trials)))
        else:
            results = [one_trial(t) for t in range(trials)]
        eng = np.array([r[0] for r in results])
        pol = np.array([r[1] for r in results])
        rows.append({
            "epsilon": eps,
            "mean_engagement": float(eng.mean()),
            "sd_engagement": float(eng.std(ddof=1)) if trials > 1 else 0.0,
            "mean_polarization": float(pol.mean()),
            "sd_polarization": float(pol.std(ddof=1)) if trials > 1 else 0.0,
        })
    return rows
