import numpy as np
import pytest

from dirpareto.lp import LPError, LPProblem, lp_feasible, lp_minimize

from oracles import rational_feasible


def test_interval_witness():
    p = LPProblem(1)
    p.add_ge([1.0], 0.0)
    p.add_le([1.0], 1.0)
    w = lp_feasible(p)
    assert w is not None
    assert -1e-9 <= w[0] <= 1.0 + 1e-9


def test_empty_interval_infeasible():
    p = LPProblem(1)
    p.add_ge([1.0], 1.0)
    p.add_le([1.0], 0.0)
    assert lp_feasible(p) is None


def test_simplex_face_witness():
    p = LPProblem(2)
    p.add_eq([1.0, 1.0], 1.0)
    p.add_ge([1.0, 0.0], 0.0)
    p.add_ge([0.0, 1.0], 0.0)
    w = lp_feasible(p)
    assert w is not None
    assert abs(w[0] + w[1] - 1.0) <= 1e-9
    assert w.min() >= -1e-9


def test_no_constraints_feasible():
    p = LPProblem(3)
    w = lp_feasible(p)
    assert np.allclose(w, 0.0)


def test_minimize_on_box():
    p = LPProblem(2)
    for k in range(2):
        e = np.zeros(2)
        e[k] = 1.0
        p.add_ge(e, -1.0)
        p.add_le(e, 2.0)
    p.objective = np.array([1.0, -1.0])
    val, arg = lp_minimize(p)
    assert val == pytest.approx(-3.0, abs=1e-9)
    assert arg[0] == pytest.approx(-1.0, abs=1e-9)
    assert arg[1] == pytest.approx(2.0, abs=1e-9)


def test_minimize_infeasible_returns_none():
    p = LPProblem(1)
    p.add_ge([1.0], 1.0)
    p.add_le([1.0], 0.0)
    p.objective = np.array([1.0])
    assert lp_minimize(p) is None


def test_minimize_unbounded_raises():
    p = LPProblem(1)
    p.add_ge([1.0], 0.0)
    p.objective = np.array([-1.0])
    with pytest.raises(LPError):
        lp_minimize(p)


def test_minimize_needs_objective():
    with pytest.raises(LPError):
        lp_minimize(LPProblem(1))


def test_bad_row_shape():
    p = LPProblem(2)
    with pytest.raises(LPError):
        p.add_ge([1.0], 0.0)


def test_non_finite_data():
    p = LPProblem(1)
    p.add_ge([np.inf], 0.0)
    with pytest.raises(LPError):
        lp_feasible(p)


def test_witness_actually_satisfies_random_instances():
    rng = np.random.default_rng(7)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        p = LPProblem(n)
        rows = []
        for _ in range(int(rng.integers(1, 6))):
            a = rng.integers(-4, 5, n).astype(float)
            b = float(rng.integers(-4, 5))
            if np.any(a):
                p.add_ge(a, b)
                rows.append((a, b))
        w = lp_feasible(p)
        if w is not None:
            for a, b in rows:
                assert float(a @ w) >= b - 1e-7


def test_feasibility_matches_rational_oracle_500():
    """Acceptance criterion: simplex verdicts equal exact rational vertex
    enumeration on 500 random small LPs, zero disagreements."""
    rng = np.random.default_rng(123)
    disagreements = 0
    for _ in range(500):
        n = int(rng.integers(1, 4))
        n_ge = int(rng.integers(1, 5))
        n_eq = int(rng.integers(0, 2))
        ge, eq = [], []
        p = LPProblem(n)
        for _ in range(n_ge):
            a = rng.integers(-3, 4, n)
            b = int(rng.integers(-3, 4))
            if not np.any(a):
                a[0] = 1
            p.add_ge(a.astype(float), float(b))
            ge.append((list(int(c) for c in a), b))
        for _ in range(n_eq):
            a = rng.integers(-3, 4, n)
            b = int(rng.integers(-3, 4))
            if not np.any(a):
                a[-1] = 1
            p.add_eq(a.astype(float), float(b))
            eq.append((list(int(c) for c in a), b))
        ours = lp_feasible(p) is not None
        exact = rational_feasible(n, ge, eq)
        if ours != exact:
            disagreements += 1
    assert disagreements == 0
