"""fairloop: fairness metrics, optimal ranking, and feedback-loop
simulators for recommender ecosystems.

The package is organized around the lifecycle of a fairness
intervention:

* :mod:`fairloop.core` - ranking fairness metrics (exposure, impact,
  opportunity) and the shared domain types.
* :mod:`fairloop.lp`, :mod:`fairloop.bvn`, :mod:`fairloop.ranking` -
  fairness-constrained optimal ranking via a linear program over doubly
  stochastic matrices, decomposed and sampled into discrete rankings.
* :mod:`fairloop.opinions`, :mod:`fairloop.population` - user-side
  feedback loops (opinion polarization, representation drift).
* :mod:`fairloop.creators` - creator-side retention feedback and
  constrained allocation sweeps.
* :mod:`fairloop.controller` - fast-timescale exposure tracking.
* :mod:`fairloop.longterm` - exposure targets as a long-horizon control
  objective.
* :mod:`fairloop.cli` - deterministic experiment runner.
"""

__version__ = "0.1.0"

from .bvn import BirkhoffDecomposition, bvn_decompose, sample_ranking
from .core import (GroupPartition, PositionWeights, RankedList,
                   RelevanceMatrix, StochasticRankingPolicy, aggregate_utility,
                   dcg_weights, group_exposure, group_impact, group_tpr,
                   relevance_sort, user_exposure)
from .lp import LinearProgram, LpSolution, solve_lp
from .ranking import FairnessConstraintKind, RankingResult, fair_rank
from .rng import RandomSource, mix_seed

__all__ = [
    "__version__",
    "BirkhoffDecomposition", "bvn_decompose", "sample_ranking",
    "GroupPartition", "PositionWeights", "RankedList", "RelevanceMatrix",
    "StochasticRankingPolicy", "aggregate_utility", "dcg_weights",
    "group_exposure", "group_impact", "group_tpr", "relevance_sort",
    "user_exposure",
    "LinearProgram", "LpSolution", "solve_lp",
    "FairnessConstraintKind", "RankingResult", "fair_rank",
    "RandomSource", "mix_seed",
]
