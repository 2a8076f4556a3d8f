"""Gerstewitz scalarization for H-rep cones with nonempty interior.

s(y) = inf{lambda : lambda e in y + K}.  With K = {y : a_i . y >= 0}
and a_i . e > 0 for every row, this is max_i (a_i . y) / (a_i . e).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import HalfspaceCone, as_vector
from .lp import LPProblem, lp_feasible

TOL = 1e-9


class ScalarizationError(Exception):
    pass


@dataclass(frozen=True)
class ScalarizationContext:
    K: HalfspaceCone
    e: tuple

    @staticmethod
    def create(K: HalfspaceCone, e) -> "ScalarizationContext":
        e = as_vector(e, K.dim)
        if not K.contains(e, strict=True):
            raise ScalarizationError("e must be strictly interior to K")
        return ScalarizationContext(K, tuple(e))

    @property
    def evec(self) -> np.ndarray:
        return np.array(self.e)


@dataclass(frozen=True)
class SubdiffCert:
    """One subgradient plus the constraint set it was drawn from.

    The full subdifferential is {v* in K+ : v*(e) = 1, v*(u) = s(u)};
    ``satisfies`` tests candidate functionals against exactly that.
    """

    witness: tuple
    u: tuple
    value: float
    K: HalfspaceCone
    e: tuple

    def satisfies(self, vstar, tol: float = 1e-7) -> bool:
        vstar = as_vector(vstar, self.K.dim)
        if abs(float(np.dot(vstar, self.e)) - 1.0) > tol:
            return False
        if abs(float(np.dot(vstar, self.u)) - self.value) > tol:
            return False
        # v* in K+ = cone generated by the rows of K (full-dimensional K)
        rows = self.K.matrix
        m = rows.shape[0]
        p = LPProblem(m)
        for j in range(m):
            e = np.zeros(m)
            e[j] = 1.0
            p.add_ge(e, 0.0)
        for k in range(self.K.dim):
            p.add_eq(rows[:, k], vstar[k])
        return lp_feasible(p) is not None


def gerstewitz_value(ctx: ScalarizationContext, y) -> float:
    y = as_vector(y, ctx.K.dim)
    rows = ctx.K.matrix
    denom = rows @ ctx.evec
    return float(np.max((rows @ y) / denom))


def gerstewitz_subdiff(ctx: ScalarizationContext, u) -> SubdiffCert:
    """One element of the subdifferential at u, by LP feasibility over
    nonnegative row weights w with (sum w_i a_i)(e) = 1 and (.)(u) = s(u)."""
    u = as_vector(u, ctx.K.dim)
    s = gerstewitz_value(ctx, u)
    rows = ctx.K.matrix
    m = rows.shape[0]
    p = LPProblem(m)
    for j in range(m):
        ej = np.zeros(m)
        ej[j] = 1.0
        p.add_ge(ej, 0.0)
    p.add_eq(rows @ ctx.evec, 1.0)
    p.add_eq(rows @ u, s)
    w = lp_feasible(p)
    if w is None:
        raise ScalarizationError(
            "subgradient LP infeasible: numerical failure (the subdifferential "
            "is analytically nonempty)")
    vstar = rows.T @ w
    return SubdiffCert(tuple(vstar), tuple(u), s, ctx.K, ctx.e)
