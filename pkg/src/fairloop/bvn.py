"""Birkhoff-von Neumann decomposition of doubly stochastic matrices.

Any doubly stochastic matrix is a convex combination of permutation
matrices. :func:`bvn_decompose` computes such a combination greedily:
find a perfect matching on the support of the remaining matrix, peel
off the minimum matched entry as a term weight, repeat. Sampling a
permutation from the resulting weights yields a randomized ranking
whose expected position-by-item occupancy is exactly the input matrix.

The bipartite matching uses augmenting paths with ascending scan order,
so the decomposition is deterministic for a given input.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import TOL_DOUBLY_STOCHASTIC, validate_doubly_stochastic
from .errors import DecompositionError
from .rng import RandomSource

#: Support threshold: entries at or below this are treated as zero.
TOL_SUPPORT = 1e-9
#: Required entrywise reconstruction accuracy of a valid decomposition.
TOL_RECONSTRUCT = 1e-8


@dataclass(frozen=True)
class BirkhoffDecomposition:
    """Convex combination of permutations: ``sum_k weight_k P(perm_k)``.

    ``permutations[k][pos]`` is the item placed at rank ``pos`` by the
    k-th permutation.
    """

    weights: tuple[float, ...]
    permutations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.weights) != len(self.permutations):
            raise ValueError("one weight per permutation is required")
        if not self.weights:
            raise ValueError("decomposition must contain at least one term")
        if min(self.weights) <= 0.0 or max(self.weights) > 1.0 + TOL_DOUBLY_STOCHASTIC:
            raise ValueError("weights must lie in (0, 1]")
        if abs(sum(self.weights) - 1.0) > TOL_DOUBLY_STOCHASTIC:
            raise ValueError("weights must sum to 1")
        n = len(self.permutations[0])
        for perm in self.permutations:
            if len(perm) != n or sorted(perm) != list(range(n)):
                raise ValueError("each term must be a full permutation of 0..n-1")

    @property
    def n(self) -> int:
        return len(self.permutations[0])

    @property
    def n_terms(self) -> int:
        return len(self.weights)

    def reconstruct(self) -> np.ndarray:
        """The doubly stochastic matrix this decomposition represents."""
        n = self.n
        mat = np.zeros((n, n))
        for w, perm in zip(self.weights, self.permutations):
            mat[np.arange(n), perm] += w
        return mat


def perfect_matching(support: np.ndarray) -> np.ndarray | None:
    """Perfect matching of rows to columns on a boolean support matrix.

    Kuhn's augmenting-path algorithm; rows are processed in ascending
    order and column candidates are scanned in ascending order, which
    makes the result deterministic. Returns ``match`` with
    ``match[row] = col``, or None if no perfect matching exists.
    """
    n = support.shape[0]
    col_owner = [-1] * n  # column -> row currently matched to it
    adjacency = [np.flatnonzero(support[r]).tolist() for r in range(n)]

    def try_assign(r: int, visited: list[bool]) -> bool:
        for c in adjacency[r]:
            if visited[c]:
                continue
            visited[c] = True
            if col_owner[c] == -1 or try_assign(col_owner[c], visited):
                col_owner[c] = r
                return True
        return False

    for r in range(n):
        if not try_assign(r, [False] * n):
            return None
    match = np.empty(n, dtype=int)
    for c, r in enumerate(col_owner):
        match[r] = c
    return match


def bvn_decompose(sigma: np.ndarray, tol: float = TOL_SUPPORT) -> BirkhoffDecomposition:
    """Decompose a doubly stochastic matrix into weighted permutations.

    Terminates in at most (n-1)^2 + 1 iterations; raises
    :class:`DecompositionError` (carrying the residual matrix) if the
    support of an intermediate matrix admits no perfect matching, which
    only happens when the input violates double stochasticity.
    """
    sigma = np.asarray(sigma, dtype=float)
    validate_doubly_stochastic(sigma)
    remaining = np.maximum(sigma, 0.0).copy()
    n = remaining.shape[0]
    max_terms = (n - 1) ** 2 + 1

    weights: list[float] = []
    perms: list[tuple[int, ...]] = []
    for _ in range(max_terms):
        if remaining.max() <= tol:
            break
        match = perfect_matching(remaining > tol)
        if match is None:
            raise DecompositionError(remaining.copy())
        w = float(remaining[np.arange(n), match].min())
        weights.append(w)
        perms.append(tuple(int(c) for c in match))
        remaining[np.arange(n), match] -= w
        remaining[remaining < tol] = 0.0
    else:
        if remaining.max() > tol:
            raise DecompositionError(remaining.copy(),
                                     "decomposition did not terminate")
    return BirkhoffDecomposition(tuple(weights), tuple(perms))


def sample_ranking(decomp: BirkhoffDecomposition, rng: RandomSource) -> np.ndarray:
    """Draw one permutation, term k with probability weight_k."""
    u = float(rng.random()) * sum(decomp.weights)
    acc = 0.0
    for w, perm in zip(decomp.weights, decomp.permutations):
        acc += w
        if u < acc:
            return np.asarray(perm, dtype=int)
    return np.asarray(decomp.permutations[-1], dtype=int)
