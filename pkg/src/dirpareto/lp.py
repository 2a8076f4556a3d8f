"""Small dense linear programming: two-phase simplex with Bland's rule.

Every LP in this package is tiny (tens of variables), so a plain dense
tableau is fast enough and easy to audit.  Variables are free reals;
nonnegativity is expressed with explicit inequality rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9


class LPError(Exception):
    """Malformed LP input (inconsistent shapes, non-finite data, unbounded phase 1)."""


@dataclass
class LPProblem:
    """min objective . v  subject to  A_ub v >= b_ub  and  A_eq v = b_eq.

    ``objective`` may be None for a pure feasibility problem.
    """

    n: int
    a_ub: list = field(default_factory=list)   # rows (coef vector, rhs)
    a_eq: list = field(default_factory=list)
    objective: np.ndarray | None = None

    def add_ge(self, coef, rhs):
        coef = np.asarray(coef, dtype=float)
        if coef.shape != (self.n,):
            raise LPError(f"inequality row has shape {coef.shape}, expected ({self.n},)")
        self.a_ub.append((coef, float(rhs)))

    def add_le(self, coef, rhs):
        self.add_ge(-np.asarray(coef, dtype=float), -float(rhs))

    def add_eq(self, coef, rhs):
        coef = np.asarray(coef, dtype=float)
        if coef.shape != (self.n,):
            raise LPError(f"equality row has shape {coef.shape}, expected ({self.n},)")
        self.a_eq.append((coef, float(rhs)))


def _pivot(tab, basis, row, col):
    tab[row] /= tab[row, col]
    for r in range(tab.shape[0]):
        if r != row and abs(tab[r, col]) > 0.0:
            tab[r] -= tab[r, col] * tab[row]
    basis[row] = col


def _simplex(tab, basis, cost, ncols):
    """Minimize cost over the tableau in place; Bland's rule throughout.

    Returns the objective value, or None if unbounded below.
    """
    m = len(basis)
    # reduced cost row, with the rhs column carrying -objective
    z = np.append(cost, 0.0)
    for i, b in enumerate(basis):
        if abs(cost[b]) > 0.0:
            z -= cost[b] * tab[i, :]
    while True:
        enter = -1
        for j in range(ncols):
            if z[j] < -PIVOT_TOL:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best = np.inf
        for i in range(m):
            a = tab[i, enter]
            if a > PIVOT_TOL:
                ratio = tab[i, -1] / a
                if ratio < best - PIVOT_TOL or (
                    ratio < best + PIVOT_TOL and (leave < 0 or basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            return None
        _pivot(tab, basis, leave, enter)
        z = z - z[enter] * tab[leave, :]
    value = 0.0
    for i, b in enumerate(basis):
        value += cost[b] * tab[i, -1]
    return value


def _solve(p: LPProblem):
    """Two-phase simplex.  Returns (status, witness) with status in
    {'feasible', 'infeasible', 'unbounded'}; witness is the point found
    (feasible) and the objective minimizer when an objective is set.
    """
    n = p.n
    if n < 1:
        raise LPError("LP needs at least one variable")
    nslack = len(p.a_ub)
    ncols = 2 * n + nslack  # v = vp - vn, one slack per inequality
    rows = []
    rhs = []
    si = 0
    for coef, b in p.a_ub:
        row = np.zeros(ncols)
        row[:n] = coef
        row[n:2 * n] = -coef
        row[2 * n + si] = -1.0  # coef.v - s = b, s >= 0
        si += 1
        rows.append(row)
        rhs.append(b)
    for coef, b in p.a_eq:
        row = np.zeros(ncols)
        row[:n] = coef
        row[n:2 * n] = -coef
        rows.append(row)
        rhs.append(b)
    m = len(rows)
    if m == 0:
        witness = np.zeros(n)
        return "feasible", witness
    A = np.array(rows)
    b = np.array(rhs, dtype=float)
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b))):
        raise LPError("non-finite LP data")
    neg = b < 0
    A[neg] *= -1.0
    b[neg] *= -1.0

    # phase 1: artificial basis
    tab = np.hstack([A, np.eye(m), b[:, None]])
    basis = [ncols + i for i in range(m)]
    cost1 = np.zeros(ncols + m)
    cost1[ncols:] = 1.0
    val = _simplex(tab, basis, cost1, ncols + m)
    if val is None:
        raise LPError("phase-1 unbounded: malformed input")
    if val > FEAS_TOL:
        return "infeasible", None
    # drive artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= ncols:
            for j in range(ncols):
                if abs(tab[i, j]) > PIVOT_TOL:
                    _pivot(tab, basis, i, j)
                    break
    keep = [i for i in range(m) if basis[i] < ncols or abs(tab[i, -1]) <= FEAS_TOL]
    tab = tab[keep][:, list(range(ncols)) + [ncols + m]]
    basis = [basis[i] for i in keep]
    live = [i for i in range(len(basis)) if basis[i] < ncols]
    tab = tab[live]
    basis = [basis[i] for i in live]

    if p.objective is not None:
        cost2 = np.zeros(ncols)
        cost2[:n] = p.objective
        cost2[n:2 * n] = -p.objective
        val2 = _simplex(tab, basis, cost2, ncols)
        if val2 is None:
            return "unbounded", None

    x = np.zeros(ncols)
    for i, bi in enumerate(basis):
        x[bi] = tab[i, -1]
    witness = x[:n] - x[n:2 * n]
    return "feasible", witness


def lp_feasible(p: LPProblem):
    """Feasibility check; returns a witness vector or None (certified infeasible)."""
    status, witness = _solve(p)
    return witness if status == "feasible" else None


def lp_minimize(p: LPProblem):
    """Minimize the objective; returns (value, argmin) or None if infeasible.

    Raises LPError when the objective is unbounded below on the feasible set.
    """
    if p.objective is None:
        raise LPError("lp_minimize needs an objective")
    status, witness = _solve(p)
    if status == "infeasible":
        return None
    if status == "unbounded":
        raise LPError("objective unbounded below")
    return float(np.dot(p.objective, witness)), witness
