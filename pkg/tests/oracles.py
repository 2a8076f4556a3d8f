"""Independent oracles used to freeze expected values in the tests.

These deliberately avoid the package's own algorithms: the Gerstewitz
value is re-derived by bisection on the defining inclusion, LP
feasibility by exact rational vertex enumeration, and polyhedral
distances by scipy's interior-point/HiGHS solver.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

BISECT_ITERS = 60


def gerstewitz_bisect(K, e, y, lo=-1e6, hi=1e6):
    """min{lam : lam * e - y in K} by bisection on the monotone predicate."""
    e = np.asarray(e, dtype=float)
    y = np.asarray(y, dtype=float)

    def inside(lam):
        return K.contains(lam * e - y, tol=0.0)

    if not inside(hi):
        raise AssertionError("bracket too small (hi)")
    if inside(lo):
        raise AssertionError("bracket too small (lo)")
    for _ in range(BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if inside(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _solve_exact(rows, rhs):
    """Solve a square rational system; None when singular."""
    n = len(rows)
    a = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def rational_feasible(n, ge_rows, eq_rows, box=10**6):
    """Exact feasibility of {A v >= b, C v = d} for rational data, n <= 3.

    Enumerates vertices of the box-bounded polyhedron; the box is far
    outside the magnitude any solution of small-integer data can need.
    """
    ge = [( [Fraction(c) for c in r], Fraction(b)) for r, b in ge_rows]
    eq = [( [Fraction(c) for c in r], Fraction(b)) for r, b in eq_rows]
    for k in range(n):
        unit = [Fraction(0)] * n
        unit[k] = Fraction(1)
        ge.append((list(unit), Fraction(-box)))
        ge.append(([-u for u in unit], Fraction(-box)))

    def ok(v):
        return (all(sum(c * x for c, x in zip(r, v)) >= b for r, b in ge)
                and all(sum(c * x for c, x in zip(r, v)) == b for r, b in eq))

    # A nonempty box-bounded polyhedron has a vertex: n independent tight
    # rows.  Enumerate all square subsystems; ok() re-checks everything,
    # so spurious solves are harmless.
    all_rows = eq + ge
    for combo in itertools.combinations(range(len(all_rows)), n):
        rows = [all_rows[i][0] for i in combo]
        rhs = [all_rows[i][1] for i in combo]
        v = _solve_exact(rows, rhs)
        if v is not None and ok(v):
            return True
    return False


def linf_distance_to_polyhedron(matrix, rhs, x):
    """min |d|_inf s.t. A (x + d) >= b, via scipy linprog (HiGHS)."""
    A = np.asarray(matrix, dtype=float)
    b = np.asarray(rhs, dtype=float)
    x = np.asarray(x, dtype=float)
    n = A.shape[1]
    # variables (d, t); minimize t
    c = np.zeros(n + 1)
    c[n] = 1.0
    a_ub = []
    b_ub = []
    for row, off in zip(A, b):
        a_ub.append(np.append(-row, 0.0))
        b_ub.append(float(row @ x) - off)
    for k in range(n):
        ek = np.zeros(n + 1)
        ek[k] = 1.0
        ek[n] = -1.0
        a_ub.append(ek.copy())        # d_k <= t
        b_ub.append(0.0)
        ek2 = np.zeros(n + 1)
        ek2[k] = -1.0
        ek2[n] = -1.0
        a_ub.append(ek2)              # -d_k <= t
        b_ub.append(0.0)
    res = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                  bounds=[(None, None)] * n + [(0, None)], method="highs")
    if not res.success:
        return None
    return float(res.fun)
