"""Dense linear programming via two-phase simplex.

The problems this package generates are desk scale (at most a few
hundred variables), so a dense tableau simplex with Bland's
anti-cycling pivot rule is both fast enough and fully deterministic:
the entering variable is always the improving column of lowest index,
and ratio-test ties break toward the basic variable of lowest index.
Determinism matters because downstream golden tests compare solver
output bit for bit.

:func:`solve_lp` is the single entry point; callers that want a
different solver can supply any function with the same signature.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

#: Feasibility/optimality tolerance for reported solutions.
TOL_LP = 1e-7
#: Internal pivot tolerance.
_PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective @ x
    subject to  a @ x == b   for (a, b) in eq_constraints
                a @ x >= b   for (a, b) in ineq_constraints
                bounds[i, 0] <= x[i] <= bounds[i, 1]

    Lower bounds must be finite; upper bounds may be ``np.inf``.
    """

    objective: np.ndarray
    eq_constraints: list = field(default_factory=list)
    ineq_constraints: list = field(default_factory=list)
    bounds: np.ndarray | None = None

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("objective must be a non-empty vector")
        n = c.size
        eqs = [(np.asarray(a, dtype=float), float(b)) for a, b in self.eq_constraints]
        ineqs = [(np.asarray(a, dtype=float), float(b)) for a, b in self.ineq_constraints]
        for a, _ in eqs + ineqs:
            if a.shape != (n,):
                raise ValueError("constraint coefficient vectors must match the variable count")
        if self.bounds is None:
            bounds = np.column_stack([np.zeros(n), np.full(n, np.inf)])
        else:
            bounds = np.asarray(self.bounds, dtype=float)
            if bounds.shape != (n, 2):
                raise ValueError("bounds must have shape (n_vars, 2)")
        if not np.all(np.isfinite(bounds[:, 0])):
            raise ValueError("lower bounds must be finite")
        if np.any(bounds[:, 0] > bounds[:, 1]):
            raise ValueError("each lower bound must not exceed its upper bound")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "eq_constraints", eqs)
        object.__setattr__(self, "ineq_constraints", ineqs)
        object.__setattr__(self, "bounds", bounds)

    @property
    def n_vars(self) -> int:
        return self.objective.size


@dataclass(frozen=True)
class LpSolution:
    x: np.ndarray
    objective_value: float
    status: str  # "optimal" | "infeasible" | "unbounded"

    @property
    def ok(self) -> bool:
        return self.status == "optimal"


def _pivot(tab: np.ndarray, basis: np.ndarray, row: int, col: int):
    tab[row] /= tab[row, col]
    colvals = tab[:, col].copy()
    colvals[row] = 0.0
    tab -= np.outer(colvals, tab[row])
    basis[row] = col


def _run_simplex(tab: np.ndarray, basis: np.ndarray, c: np.ndarray,
                 allowed: np.ndarray) -> str:
    """Maximize c over the tableau in place. Bland's rule throughout.

    ``tab`` has shape (m, n_cols + 1); the last column is the rhs.
    Returns "optimal" or "unbounded".
    """
    m = tab.shape[0]
    while True:
        # reduced costs: c_j - c_B @ B^-1 A_j
        cb = c[basis]
        reduced = c - cb @ tab[:, :-1]
        reduced[~allowed] = 0.0
        improving = np.flatnonzero(reduced > _PIVOT_TOL)
        if improving.size == 0:
            return "optimal"
        col = int(improving[0])  # Bland: lowest index
        colvals = tab[:, col]
        rows = np.flatnonzero(colvals > _PIVOT_TOL)
        if rows.size == 0:
            return "unbounded"
        ratios = tab[rows, -1] / colvals[rows]
        best = ratios.min()
        ties = rows[ratios <= best + 1e-12]
        row = int(ties[np.argmin(basis[ties])])  # Bland: lowest basic index
        _pivot(tab, basis, row, col)


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve ``lp`` to optimality or diagnose infeasible/unbounded."""
    n = lp.n_vars
    lo = lp.bounds[:, 0]
    hi = lp.bounds[:, 1]
    span = hi - lo

    # Shift to y = x - lo >= 0; collect rows as (coeffs, rhs, kind).
    rows_a, rows_b, kinds = [], [], []
    for a, b in lp.eq_constraints:
        rows_a.append(a)
        rows_b.append(b - a @ lo)
        kinds.append("eq")
    for a, b in lp.ineq_constraints:
        rows_a.append(a)
        rows_b.append(b - a @ lo)
        kinds.append("ge")
    finite_ub = np.flatnonzero(np.isfinite(span))
    for i in finite_ub:
        e = np.zeros(n)
        e[i] = 1.0
        rows_a.append(e)
        rows_b.append(span[i])
        kinds.append("le")

    m = len(rows_a)
    n_ge = sum(k == "ge" for k in kinds)
    n_le = sum(k == "le" for k in kinds)
    n_cols = n + n_ge + n_le + m  # structural | surplus | slack | artificial

    A = np.zeros((m, n_cols))
    b = np.array(rows_b, dtype=float)
    ge_at, le_at = n, n + n_ge
    art_at = n + n_ge + n_le
    i_ge = i_le = 0
    for r, (a, kind) in enumerate(zip(rows_a, kinds)):
        A[r, :n] = a
        if kind == "ge":
            A[r, ge_at + i_ge] = -1.0
            i_ge += 1
        elif kind == "le":
            A[r, le_at + i_le] = 1.0
            i_le += 1
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0
    for r in range(m):
        A[r, art_at + r] = 1.0

    tab = np.column_stack([A, b])
    basis = np.arange(art_at, art_at + m)

    if m > 0:
        # Phase 1: maximize -sum(artificials).
        c1 = np.zeros(n_cols)
        c1[art_at:] = -1.0
        allowed = np.ones(n_cols, dtype=bool)
        _run_simplex(tab, basis, c1, allowed)  # bounded below by construction
        infeas = float(tab[:, -1][basis >= art_at].sum())
        if infeas > TOL_LP:
            return LpSolution(np.full(n, np.nan), np.nan, "infeasible")
        # Drive remaining artificials out of the basis or drop their rows.
        drop = []
        for r in range(m):
            if basis[r] >= art_at:
                cand = np.flatnonzero(np.abs(tab[r, :art_at]) > _PIVOT_TOL)
                if cand.size:
                    _pivot(tab, basis, r, int(cand[0]))
                else:
                    drop.append(r)
        if drop:
            keep = np.setdiff1d(np.arange(tab.shape[0]), drop)
            tab = tab[keep]
            basis = basis[keep]

    # Phase 2: original objective over y-space; artificials barred.
    c2 = np.zeros(n_cols)
    c2[:n] = lp.objective
    allowed = np.ones(n_cols, dtype=bool)
    allowed[art_at:] = False
    status = _run_simplex(tab, basis, c2, allowed)
    if status == "unbounded":
        return LpSolution(np.full(n, np.nan), np.nan, "unbounded")

    y = np.zeros(n_cols)
    y[basis] = tab[:, -1]
    x = y[:n] + lo
    return LpSolution(x, float(lp.objective @ x), "optimal")
