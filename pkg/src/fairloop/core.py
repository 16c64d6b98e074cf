"""Core domain types and ranking fairness metrics.

The metrics operate on ranked lists of items under a position-weight
vector: ``user_exposure`` counts how much visibility one user's ranking
gives to a group of items, ``group_exposure`` averages that across
users, ``group_impact`` weights visibility by relevance (realized
engagement), and ``group_tpr`` normalizes visibility by the group's
total relevance (recommendation rate per unit of merit).

Users may optionally carry positive weights (e.g. population sizes when
a "user" stands for a whole user group); weighted averages then use the
weights in place of uniform 1/|U| factors.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGroupError, EmptyGroupWarning

#: Tolerance for doubly stochastic row/column sums.
TOL_DOUBLY_STOCHASTIC = 1e-9


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelevanceMatrix:
    """Latent relevance of each item to each user, entries in [0, 1].

    Rows index users (or user groups), columns index items.
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 2:
            raise ValueError("relevance must be a 2-d matrix")
        if not np.all(np.isfinite(vals)):
            raise ValueError("relevance entries must be finite")
        if vals.min(initial=0.0) < 0.0 or vals.max(initial=0.0) > 1.0:
            raise ValueError("relevance entries must lie in [0, 1]")
        object.__setattr__(self, "values", vals)

    @property
    def n_users(self) -> int:
        return self.values.shape[0]

    @property
    def n_items(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class GroupPartition:
    """Assignment of every item to exactly one of ``m`` groups (1-based).

    Empty groups are legal but almost always a configuration mistake, so
    construction emits an :class:`EmptyGroupWarning` for each one.
    """

    item_to_group: np.ndarray
    m: int

    def __post_init__(self):
        mapping = np.asarray(self.item_to_group, dtype=int)
        if mapping.ndim != 1:
            raise ValueError("item_to_group must be a flat sequence")
        if self.m < 1:
            raise ValueError("m must be positive")
        if mapping.size and (mapping.min() < 1 or mapping.max() > self.m):
            raise ValueError("group indices must lie in 1..m")
        object.__setattr__(self, "item_to_group", mapping)
        counts = np.bincount(mapping, minlength=self.m + 1)[1:]
        for j, c in enumerate(counts, start=1):
            if c == 0:
                warnings.warn(f"group {j} contains no items", EmptyGroupWarning,
                              stacklevel=2)

    @property
    def n_items(self) -> int:
        return self.item_to_group.size

    def members(self, j: int) -> np.ndarray:
        """Item indices belonging to group ``j``."""
        self._check_group(j)
        return np.flatnonzero(self.item_to_group == j)

    def indicator(self, j: int) -> np.ndarray:
        """0/1 vector over items, 1 where the item is in group ``j``."""
        self._check_group(j)
        return (self.item_to_group == j).astype(float)

    def _check_group(self, j: int):
        if not 1 <= j <= self.m:
            raise ValueError(f"group index {j} outside 1..{self.m}")


@dataclass(frozen=True)
class PositionWeights:
    """Per-rank visibility weights, non-increasing, entries in [0, 1].

    The default construction (:func:`dcg_weights`) uses the discounted
    cumulative gain discount 1/log2(k+1), so the top position has
    weight exactly 1. Trailing zeros are allowed and express truncated
    (top-k) rankings.
    """

    pi: np.ndarray

    def __post_init__(self):
        pi = np.asarray(self.pi, dtype=float)
        if pi.ndim != 1 or pi.size == 0:
            raise ValueError("pi must be a non-empty vector")
        if pi.min() < 0.0 or pi.max() > 1.0:
            raise ValueError("position weights must lie in [0, 1]")
        if np.any(np.diff(pi) > 1e-12):
            raise ValueError("position weights must be non-increasing")
        if pi[0] <= 0.0:
            raise ValueError("the top position must have positive weight")
        object.__setattr__(self, "pi", pi)

    def __len__(self) -> int:
        return self.pi.size

    @property
    def total(self) -> float:
        return float(self.pi.sum())


@dataclass(frozen=True)
class RankedList:
    """A permutation-like list of distinct item indices."""

    items: tuple[int, ...]

    def __post_init__(self):
        items = tuple(int(i) for i in np.asarray(self.items).ravel())
        if len(set(items)) != len(items):
            raise ValueError("ranked items must be pairwise distinct")
        if items and min(items) < 0:
            raise ValueError("item indices must be non-negative")
        object.__setattr__(self, "items", items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class StochasticRankingPolicy:
    """Doubly stochastic position-by-item matrix for one user.

    Entry (k, i) is the probability that item i occupies rank k. Tiny
    negative entries (within :data:`TOL_DOUBLY_STOCHASTIC`) are clamped
    to zero on construction.
    """

    sigma: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        validate_doubly_stochastic(sigma)
        object.__setattr__(self, "sigma", np.maximum(sigma, 0.0))

    @property
    def n(self) -> int:
        return self.sigma.shape[0]


def validate_doubly_stochastic(mat: np.ndarray, tol: float = TOL_DOUBLY_STOCHASTIC):
    """Raise ValueError unless ``mat`` is doubly stochastic within ``tol``."""
    mat = np.asarray(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    if mat.min(initial=0.0) < -tol:
        raise ValueError("matrix has negative entries beyond tolerance")
    if np.abs(mat.sum(axis=1) - 1.0).max() > tol:
        raise ValueError("row sums differ from 1 beyond tolerance")
    if np.abs(mat.sum(axis=0) - 1.0).max() > tol:
        raise ValueError("column sums differ from 1 beyond tolerance")


# ---------------------------------------------------------------------------
# Coercion helpers
# ---------------------------------------------------------------------------

def _as_relevance(relevance) -> np.ndarray:
    if isinstance(relevance, RelevanceMatrix):
        return relevance.values
    return np.asarray(relevance, dtype=float)


def _as_ranking(ranking) -> np.ndarray:
    if isinstance(ranking, RankedList):
        return np.asarray(ranking.items, dtype=int)
    return np.asarray(ranking, dtype=int)


def _as_weights(pi) -> np.ndarray:
    if isinstance(pi, PositionWeights):
        return pi.pi
    return np.asarray(pi, dtype=float)


def _user_weights(user_weights, n_users: int) -> np.ndarray:
    if user_weights is None:
        return np.ones(n_users)
    w = np.asarray(user_weights, dtype=float)
    if w.shape != (n_users,):
        raise ValueError("user_weights must have one entry per user")
    if np.any(w <= 0):
        raise ValueError("user weights must be positive")
    return w


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def dcg_weights(n: int) -> PositionWeights:
    """Position weights 1/log2(k+1) for ranks k = 1..n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    ranks = np.arange(1, n + 1)
    return PositionWeights(1.0 / np.log2(ranks + 1.0))


def user_exposure(ranking, groups: GroupPartition, pi, j: int) -> float:
    """Position-weighted count of group-j items in one user's ranking."""
    groups._check_group(j)
    ranking = _as_ranking(ranking)
    pi = _as_weights(pi)
    if ranking.size > pi.size:
        raise ValueError("ranking is longer than the position-weight vector")
    in_group = groups.item_to_group[ranking] == j
    return float(pi[: ranking.size][in_group].sum())


def group_exposure(rankings, groups: GroupPartition, pi, j: int,
                   user_weights=None) -> float:
    """Weighted mean of :func:`user_exposure` across users."""
    rankings = [_as_ranking(r) for r in rankings]
    if not rankings:
        raise ValueError("at least one user ranking is required")
    w = _user_weights(user_weights, len(rankings))
    vals = np.array([user_exposure(r, groups, pi, j) for r in rankings])
    return float(w @ vals / w.sum())


def group_impact(rankings, relevance, groups: GroupPartition, pi, j: int,
                 user_weights=None) -> float:
    """Relevance-weighted exposure: realized engagement credited to group j."""
    groups._check_group(j)
    rel = _as_relevance(relevance)
    rankings = [_as_ranking(r) for r in rankings]
    if not rankings:
        raise ValueError("at least one user ranking is required")
    if len(rankings) != rel.shape[0]:
        raise ValueError("one ranking per relevance row is required")
    pi_vec = _as_weights(pi)
    w = _user_weights(user_weights, len(rankings))
    vals = np.empty(len(rankings))
    for u, ranking in enumerate(rankings):
        if ranking.size > pi_vec.size:
            raise ValueError("ranking is longer than the position-weight vector")
        in_group = groups.item_to_group[ranking] == j
        vals[u] = (pi_vec[: ranking.size] * rel[u, ranking] * in_group).sum()
    return float(w @ vals / w.sum())


def group_tpr(rankings, relevance, groups: GroupPartition, pi, j: int,
              user_weights=None) -> float:
    """Group recommendation rate per unit of underlying relevance.

    Numerator: total position-weighted visibility of group-j items over
    all users. Denominator: total relevance mass of group-j items. A
    zero denominator raises :class:`DegenerateGroupError` rather than
    silently returning 0, since 0/0 usually signals a mis-specified
    group map.
    """
    groups._check_group(j)
    rel = _as_relevance(relevance)
    rankings = [_as_ranking(r) for r in rankings]
    if not rankings:
        raise ValueError("at least one user ranking is required")
    w = _user_weights(user_weights, len(rankings))
    members = groups.members(j)
    denom = float(w @ rel[:, members].sum(axis=1))
    if denom <= 0.0:
        raise DegenerateGroupError(j)
    pi_vec = _as_weights(pi)
    numer = 0.0
    for u, ranking in enumerate(rankings):
        in_group = groups.item_to_group[ranking] == j
        numer += w[u] * (pi_vec[: ranking.size] * in_group).sum()
    return float(numer / denom)


def aggregate_utility(rankings, relevance, pi, user_weights=None) -> float:
    """Total position-discounted relevance collected by the rankings."""
    rel = _as_relevance(relevance)
    rankings = [_as_ranking(r) for r in rankings]
    if not rankings:
        raise ValueError("at least one user ranking is required")
    if len(rankings) != rel.shape[0]:
        raise ValueError("one ranking per relevance row is required")
    pi_vec = _as_weights(pi)
    w = _user_weights(user_weights, len(rankings))
    total = 0.0
    for u, ranking in enumerate(rankings):
        if ranking.size > pi_vec.size:
            raise ValueError("ranking is longer than the position-weight vector")
        total += w[u] * (pi_vec[: ranking.size] * rel[u, ranking]).sum()
    return float(total)


def relevance_sort(scores) -> np.ndarray:
    """Rank items by descending score; ties go to the lowest item index."""
    scores = np.asarray(scores, dtype=float)
    # stable sort on negated scores keeps ascending index order within ties
    return np.argsort(-scores, kind="stable")
