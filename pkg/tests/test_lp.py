import itertools

import numpy as np
import pytest

from fairloop import LinearProgram, solve_lp
from fairloop.rng import RandomSource


def enumerate_vertices(lp: LinearProgram):
    """Independent oracle: enumerate basic feasible points of the LP.

    Collects every constraint as an equality candidate (ge rows, plus
    both bound faces per variable), solves all n-subsets, and keeps the
    feasible solutions. Only usable for small dense instances.
    """
    n = lp.n_vars
    rows = []
    for a, b in lp.eq_constraints:
        rows.append(("eq", a, b))
    cands = []
    for a, b in lp.ineq_constraints:
        cands.append((a, b))
    for i in range(n):
        e = np.zeros(n)
        e[i] = 1.0
        cands.append((e, lp.bounds[i, 0]))
        if np.isfinite(lp.bounds[i, 1]):
            cands.append((e, lp.bounds[i, 1]))

    eq_a = [a for _, a, _ in rows]
    eq_b = [b for _, _, b in rows]
    n_free = n - len(eq_a)
    feasible = []
    for subset in itertools.combinations(range(len(cands)), n_free):
        A = np.array(eq_a + [cands[i][0] for i in subset])
        b = np.array(eq_b + [cands[i][1] for i in subset])
        if A.shape[0] != n or abs(np.linalg.det(A)) < 1e-12:
            continue
        x = np.linalg.solve(A, b)
        if np.any(x < lp.bounds[:, 0] - 1e-9) or np.any(x > lp.bounds[:, 1] + 1e-9):
            continue
        if any(a @ x < rhs - 1e-9 for a, rhs in lp.ineq_constraints):
            continue
        if any(abs(a @ x - rhs) > 1e-9 for a, rhs in lp.eq_constraints):
            continue
        feasible.append(x)
    return feasible


def oracle_optimum(lp: LinearProgram):
    vertices = enumerate_vertices(lp)
    if not vertices:
        return None
    return max(float(lp.objective @ x) for x in vertices)


def test_box_maximum():
    lp = LinearProgram(np.array([1.0]), bounds=np.array([[0.0, 1.0]]))
    sol = solve_lp(lp)
    assert sol.ok
    assert sol.x[0] == pytest.approx(1.0)
    assert sol.objective_value == pytest.approx(1.0)


def test_contradictory_constraints_infeasible():
    lp = LinearProgram(np.array([1.0]),
                       ineq_constraints=[(np.array([1.0]), 2.0)],
                       bounds=np.array([[0.0, 1.0]]))
    assert solve_lp(lp).status == "infeasible"


def test_unbounded():
    lp = LinearProgram(np.array([1.0]))
    assert solve_lp(lp).status == "unbounded"


def test_equality_and_inequality_mix():
    # max x + y  s.t.  x + y = 1.5, x >= 0.5, 0 <= x,y <= 1
    lp = LinearProgram(np.array([1.0, 1.0]),
                       eq_constraints=[(np.array([1.0, 1.0]), 1.5)],
                       ineq_constraints=[(np.array([1.0, 0.0]), 0.5)],
                       bounds=np.array([[0.0, 1.0], [0.0, 1.0]]))
    sol = solve_lp(lp)
    assert sol.ok
    assert sol.objective_value == pytest.approx(1.5)
    assert sol.x.sum() == pytest.approx(1.5)
    assert sol.x[0] >= 0.5 - 1e-9


def test_redundant_equalities_handled():
    # duplicated constraint row leaves an artificial basic at zero
    lp = LinearProgram(np.array([2.0, 1.0]),
                       eq_constraints=[(np.array([1.0, 1.0]), 1.0),
                                       (np.array([1.0, 1.0]), 1.0)],
                       bounds=np.array([[0.0, 1.0], [0.0, 1.0]]))
    sol = solve_lp(lp)
    assert sol.ok
    assert sol.objective_value == pytest.approx(2.0)


def test_nonzero_lower_bounds():
    lp = LinearProgram(np.array([-1.0, -2.0]),
                       ineq_constraints=[(np.array([1.0, 1.0]), 1.0)],
                       bounds=np.array([[0.25, 2.0], [0.25, 2.0]]))
    sol = solve_lp(lp)
    assert sol.ok
    assert sol.x[0] == pytest.approx(0.75)
    assert sol.x[1] == pytest.approx(0.25)


def test_random_instances_match_vertex_enumeration():
    rng = RandomSource(99)
    n = 6
    solved = infeasible = 0
    for trial in range(40):
        c = rng.uniform(-1, 1, n)
        ub = rng.uniform(0.5, 2.0, n)
        bounds = np.column_stack([np.zeros(n), ub])
        ineq = []
        for _ in range(3):
            a = rng.uniform(-1, 1, n)
            rhs = float(rng.uniform(-1.0, 0.8))
            ineq.append((a, rhs))
        lp = LinearProgram(c, ineq_constraints=ineq, bounds=bounds)
        expected = oracle_optimum(lp)
        sol = solve_lp(lp)
        if expected is None:
            assert sol.status == "infeasible"
            infeasible += 1
        else:
            assert sol.ok, f"trial {trial}: solver says {sol.status}"
            assert sol.objective_value == pytest.approx(expected, abs=1e-7)
            solved += 1
    assert solved >= 20  # the generator should produce mostly feasible LPs


def test_random_equality_instances():
    rng = RandomSource(123)
    n = 5
    checked = 0
    for _ in range(25):
        c = rng.uniform(-1, 1, n)
        bounds = np.column_stack([np.zeros(n), np.ones(n)])
        a = rng.uniform(0.2, 1.0, n)
        lp = LinearProgram(c, eq_constraints=[(a, float(a.sum()) * 0.4)],
                           bounds=bounds)
        expected = oracle_optimum(lp)
        sol = solve_lp(lp)
        assert expected is not None and sol.ok
        assert sol.objective_value == pytest.approx(expected, abs=1e-7)
        assert a @ sol.x == pytest.approx(a.sum() * 0.4, abs=1e-7)
        checked += 1
    assert checked == 25


def test_determinism():
    rng = RandomSource(4)
    c = rng.uniform(-1, 1, 6)
    bounds = np.column_stack([np.zeros(6), np.ones(6)])
    ineq = [(rng.uniform(-1, 1, 6), -0.5) for _ in range(2)]
    lp = LinearProgram(c, ineq_constraints=ineq, bounds=bounds)
    first = solve_lp(lp)
    second = solve_lp(lp)
    assert first.status == second.status
    assert np.array_equal(first.x, second.x)


def test_dimension_mismatch_rejected():
    with pytest.raises(ValueError):
        LinearProgram(np.array([1.0, 2.0]),
                      eq_constraints=[(np.array([1.0]), 1.0)])
    with pytest.raises(ValueError):
        LinearProgram(np.array([1.0]), bounds=np.array([[1.0, 0.0]]))
