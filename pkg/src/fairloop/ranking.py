"""Fairness-constrained optimal ranking over the Birkhoff polytope.

Instead of searching permutations directly, each user's ranking is
relaxed to a doubly stochastic position-by-item matrix. Utility and all
supported group-fairness constraints are linear in those matrices, so
the relaxation is a linear program. The optimal matrices are then
decomposed into convex combinations of permutations (Birkhoff-von
Neumann) and discrete rankings are sampled; utility and fairness hold
exactly in expectation over that sampling.

Supported constraint kinds:

* ``exposure_floor``     weighted-average group exposure >= epsilon_j
* ``impact_floor``       same, with relevance-weighted entries
* ``opportunity_floor``  group visibility / group relevance mass >= epsilon_j
* ``exposure_equal``     all group exposures equal (epsilon ignored)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bvn import BirkhoffDecomposition, bvn_decompose, sample_ranking
from .core import (GroupPartition, _as_relevance, _as_weights, _user_weights)
from .errors import DegenerateGroupError, InfeasibleError
from .lp import LinearProgram, solve_lp
from .rng import RandomSource

CONSTRAINT_KINDS = ("exposure_floor", "impact_floor", "opportunity_floor",
                    "exposure_equal")


@dataclass(frozen=True)
class FairnessConstraintKind:
    """Which group-fairness constraint to impose on the ranking LP."""

    kind: str
    epsilon: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in CONSTRAINT_KINDS:
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind != "exposure_equal":
            eps = np.asarray(self.epsilon, dtype=float)
            if eps.ndim != 1:
                raise ValueError("epsilon must be a per-group vector")
            if not np.all(np.isfinite(eps)) or np.any(eps < 0):
                raise ValueError("epsilon must be finite and non-negative")
            object.__setattr__(self, "epsilon", eps)

    @staticmethod
    def exposure_floor(epsilon) -> "FairnessConstraintKind":
        return FairnessConstraintKind("exposure_floor", epsilon)

    @staticmethod
    def impact_floor(epsilon) -> "FairnessConstraintKind":
        return FairnessConstraintKind("impact_floor", epsilon)

    @staticmethod
    def opportunity_floor(epsilon) -> "FairnessConstraintKind":
        return FairnessConstraintKind("opportunity_floor", epsilon)

    @staticmethod
    def exposure_equal() -> "FairnessConstraintKind":
        return FairnessConstraintKind("exposure_equal", None)


@dataclass(frozen=True)
class RankingResult:
    """Sampled rankings plus exact (pre-sampling) diagnostics."""

    rankings: tuple[tuple[int, ...], ...]
    policies: tuple[np.ndarray, ...]
    decompositions: tuple[BirkhoffDecomposition, ...]
    objective_value: float
    exposures: np.ndarray  # per group, computed from the LP optimum


def _exposure_row(pi: np.ndarray, indicator: np.ndarray, weight: float,
                  n: int, n_users: int, u: int,
                  per_item: np.ndarray | None = None) -> np.ndarray:
    """LP coefficient row for one user's contribution to a group metric."""
    row = np.zeros(n_users * n * n)
    contrib = np.outer(pi, indicator if per_item is None else indicator * per_item)
    row[u * n * n: (u + 1) * n * n] = weight * contrib.ravel()
    return row


def assemble_ranking_lp(relevance, groups: GroupPartition, pi,
                        constraint: FairnessConstraintKind,
                        user_weights=None) -> LinearProgram:
    """Build the ranking LP over stacked per-user doubly stochastic matrices.

    Variable (u, k, i) is the probability user u sees item i at rank k,
    flattened as ``u * n^2 + k * n + i``. Position weights must cover a
    full ranking (len(pi) == n_items); use trailing zero weights for
    truncated lists.
    """
    rel = _as_relevance(relevance)
    n_users, n = rel.shape
    pi_vec = _as_weights(pi)
    if pi_vec.size != n:
        raise ValueError("position weights must have one entry per item")
    if groups.n_items != n:
        raise ValueError("group partition does not match the item count")
    w = _user_weights(user_weights, n_users)
    w_total = float(w.sum())

    n_vars = n_users * n * n
    objective = np.zeros(n_vars)
    for u in range(n_users):
        objective[u * n * n: (u + 1) * n * n] = (w[u] * np.outer(pi_vec, rel[u])).ravel()

    eq = []
    for u in range(n_users):
        base = u * n * n
        for k in range(n):
            row = np.zeros(n_vars)
            row[base + k * n: base + (k + 1) * n] = 1.0
            eq.append((row, 1.0))
        for i in range(n):
            row = np.zeros(n_vars)
            row[base + i: base + n * n: n] = 1.0
            eq.append((row, 1.0))

    ineq = []
    kind = constraint.kind
    if kind == "exposure_equal":
        for j in range(1, groups.m):
            g_a = groups.indicator(j)
            g_b = groups.indicator(j + 1)
            row = np.zeros(n_vars)
            for u in range(n_users):
                row += _exposure_row(pi_vec, g_a - g_b, w[u] / w_total, n, n_users, u)
            eq.append((row, 0.0))
    else:
        eps = constraint.epsilon
        if eps.size != groups.m:
            raise ValueError("epsilon must have one entry per group")
        for j in range(1, groups.m + 1):
            g = groups.indicator(j)
            row = np.zeros(n_vars)
            if kind == "exposure_floor":
                for u in range(n_users):
                    row += _exposure_row(pi_vec, g, w[u] / w_total, n, n_users, u)
            elif kind == "impact_floor":
                for u in range(n_users):
                    row += _exposure_row(pi_vec, g, w[u] / w_total, n, n_users, u,
                                         per_item=rel[u])
            elif kind == "opportunity_floor":
                denom = float(w @ (rel * g).sum(axis=1))
                if denom <= 0.0:
                    raise DegenerateGroupError(j)
                for u in range(n_users):
                    row += _exposure_row(pi_vec, g, w[u] / denom, n, n_users, u)
            ineq.append((row, float(eps[j - 1])))

    bounds = np.column_stack([np.zeros(n_vars), np.full(n_vars, np.inf)])
    return LinearProgram(objective, eq, ineq, bounds)


def policy_exposures(policies: Sequence[np.ndarray], groups: GroupPartition,
                     pi, user_weights=None) -> np.ndarray:
    """Exact per-group exposure of a set of stochastic ranking policies."""
    pi_vec = _as_weights(pi)
    w = _user_weights(user_weights, len(policies))
    out = np.zeros(groups.m)
    for j in range(1, groups.m + 1):
        g = groups.indicator(j)
        vals = np.array([pi_vec @ sig @ g for sig in policies])
        out[j - 1] = w @ vals / w.sum()
    return out


def _clean_policy(sigma: np.ndarray, max_iter: int = 100) -> np.ndarray:
    """Clamp small negatives and restore exact double stochasticity.

    LP vertices satisfy the stochasticity rows to solver precision, but
    the decomposition wants tighter sums, so a few alternating row and
    column normalizations are applied.
    """
    sigma = np.maximum(np.asarray(sigma, dtype=float), 0.0)
    for _ in range(max_iter):
        rows = sigma.sum(axis=1, keepdims=True)
        sigma = sigma / rows
        cols = sigma.sum(axis=0, keepdims=True)
        sigma = sigma / cols
        err = max(np.abs(sigma.sum(axis=1) - 1).max(),
                  np.abs(sigma.sum(axis=0) - 1).max())
        if err < 1e-12:
            break
    return sigma


def fair_rank(relevance, groups: GroupPartition, pi,
              constraint: FairnessConstraintKind, user_weights=None,
              rng: RandomSource | None = None,
              solver=solve_lp) -> RankingResult:
    """End-to-end pipeline: assemble, solve, decompose, sample.

    The returned diagnostics (objective value, per-group exposures) are
    computed from the LP optimum itself, i.e. before sampling; the
    sampled rankings attain them in expectation. ``solver`` may be any
    callable turning a :class:`LinearProgram` into an
    :class:`LpSolution`.
    """
    rel = _as_relevance(relevance)
    n_users, n = rel.shape
    lp = assemble_ranking_lp(rel, groups, pi, constraint, user_weights)
    sol = solver(lp)
    if sol.status == "infeasible":
        raise InfeasibleError("ranking constraints are infeasible")
    if sol.status != "optimal":
        raise InfeasibleError(f"solver returned status {sol.status}")

    raw = [sol.x[u * n * n: (u + 1) * n * n].reshape(n, n) for u in range(n_users)]
    exposures = policy_exposures(raw, groups, pi, user_weights)
    cleaned = [_clean_policy(sig) for sig in raw]
    decomps = tuple(bvn_decompose(sig) for sig in cleaned)
    rng = rng if rng is not None else RandomSource(0)
    rankings = tuple(tuple(int(i) for i in sample_ranking(d, rng)) for d in decomps)
    return RankingResult(rankings=rankings,
                         policies=tuple(cleaned),
                         decompositions=decomps,
                         objective_value=sol.objective_value,
                         exposures=exposures)
