"""Membership oracles for the sets used as constraints and targets.

Polyhedra are exact; curved regions (cardioid, the closed-curve example)
are polygon approximations with even-odd point-in-polygon membership.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import GeometryError, as_vector
from .lp import LPProblem, lp_feasible

TOL = 1e-9


@dataclass(frozen=True)
class PolyhedralSet:
    """{x : a_i . x >= b_i}.  A feasibility witness is found at construction."""

    dim: int
    rows: tuple
    offsets: tuple
    witness: tuple

    @staticmethod
    def from_rows(rows, offsets) -> "PolyhedralSet":
        mat = [as_vector(r) for r in rows]
        offs = [float(b) for b in offsets]
        if not mat or len(mat) != len(offs):
            raise GeometryError("polyhedron rows/offsets mismatch or empty")
        dim = mat[0].size
        p = LPProblem(dim)
        for a, b in zip(mat, offs):
            p.add_ge(a, b)
        w = lp_feasible(p)
        if w is None:
            raise GeometryError("polyhedron is empty")
        return PolyhedralSet(dim, tuple(tuple(r) for r in mat), tuple(offs), tuple(w))

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)

    @property
    def rhs(self) -> np.ndarray:
        return np.array(self.offsets, dtype=float)

    def contains(self, x, tol: float = TOL) -> bool:
        x = as_vector(x, self.dim)
        return bool(np.all(self.matrix @ x >= self.rhs - tol))

    def active_rows(self, x, tol: float = TOL) -> np.ndarray:
        """Rows with a_i . x = b_i within tol, as a matrix (possibly empty)."""
        x = as_vector(x, self.dim)
        mask = np.abs(self.matrix @ x - self.rhs) <= tol
        return self.matrix[mask]


@dataclass(frozen=True)
class PolygonRegion:
    """Closed planar region bounded by a polygon; even-odd membership.

    Boundary points count as members up to ``edge_tol`` distance.
    """

    vertices: tuple
    edge_tol: float = 1e-12
    name: str = "polygon"
    dim: int = 2

    @property
    def matrix(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    def contains(self, x, tol: float = TOL) -> bool:
        x = as_vector(x, 2)
        V = self.matrix
        W = np.roll(V, -1, axis=0)
        px, py = x
        straddle = (V[:, 1] > py) != (W[:, 1] > py)
        if np.any(straddle):
            vi, wi = V[straddle], W[straddle]
            xc = vi[:, 0] + (py - vi[:, 1]) / (wi[:, 1] - vi[:, 1]) * (
                wi[:, 0] - vi[:, 0])
            if int(np.count_nonzero(px < xc)) % 2 == 1:
                return True
        if self.edge_tol == 0.0:
            return False
        return self._near_boundary(x)

    def _near_boundary(self, x) -> bool:
        V = self.matrix
        W = np.roll(V, -1, axis=0)
        d = W - V
        lens2 = np.einsum("ij,ij->i", d, d)
        lens2[lens2 == 0.0] = 1.0
        t = np.clip(np.einsum("ij,ij->i", x - V, d) / lens2, 0.0, 1.0)
        proj = V + t[:, None] * d
        dist2 = np.einsum("ij,ij->i", x - proj, x - proj)
        return bool(np.min(dist2) <= self.edge_tol ** 2)


@dataclass(frozen=True)
class ImplicitSet:
    """Membership from a predicate callable."""

    dim: int
    predicate: object
    name: str = "implicit"

    def contains(self, x, tol: float = TOL) -> bool:
        return bool(self.predicate(as_vector(x, self.dim)))


@dataclass(frozen=True)
class UnionSet:
    parts: tuple
    name: str = "union"

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    def contains(self, x, tol: float = TOL) -> bool:
        return any(p.contains(x, tol) for p in self.parts)


@dataclass(frozen=True)
class IntersectionSet:
    parts: tuple
    name: str = "intersection"

    @property
    def dim(self) -> int:
        return self.parts[0].dim

    def contains(self, x, tol: float = TOL) -> bool:
        return all(p.contains(x, tol) for p in self.parts)


def _clustered_parameters(n: int) -> np.ndarray:
    """n+1 parameter values on [0, 2pi] quadratically clustered at both ends.

    The cardioid has a cusp at parameter 0 (= 2pi); uniform spacing leaves
    chords near the cusp whose slope swamps the small-step membership
    queries, so the mesh is refined there.
    """
    j = np.arange(n + 1) / n
    return 2.0 * np.pi * np.sin(0.5 * np.pi * j) ** 2


def cardioid_region(segments: int = 4096) -> PolygonRegion:
    """Plane domain bounded by x = -2cos t + cos 2t + 1, y = 2sin t - sin 2t.

    The cusp sits at the origin and opens toward the negative x-axis.
    """
    t = _clustered_parameters(segments)[:-1]
    x = -2.0 * np.cos(t) + np.cos(2.0 * t) + 1.0
    y = 2.0 * np.sin(t) - np.sin(2.0 * t)
    verts = np.stack([x, y], axis=1)
    verts[0] = (0.0, 0.0)  # exact cusp vertex
    # edge_tol = 0: any fixed boundary tolerance eventually swallows the
    # x^{3/2} cusp sliver at small scales, turning points strictly outside
    # the region into spurious members.  The exact cusp vertex makes the
    # even-odd test decide the negative axis correctly at every scale.
    return PolygonRegion(tuple(map(tuple, verts)), edge_tol=0.0,
                         name="cardioid")


def closed_curve_region(segments: int = 4096) -> PolygonRegion:
    """Region bounded by x = 2 + 2cos t (1 - sin t), y = sin t (1 - cos t)."""
    t = 2.0 * np.pi * np.arange(segments) / segments
    x = 2.0 + 2.0 * np.cos(t) * (1.0 - np.sin(t))
    y = np.sin(t) * (1.0 - np.cos(t))
    verts = np.stack([x, y], axis=1)
    # force the exact pass through the origin at t = pi
    k = int(round(segments / 2))
    verts[k] = (0.0, 0.0)
    return PolygonRegion(tuple(map(tuple, verts)), name="closed-curve")


def curve_halfplane_set(segments: int = 4096) -> UnionSet:
    """H union (curve-region intersect -H) with H = {(x, y) : y >= -x}."""
    H = PolyhedralSet.from_rows([[1.0, 1.0]], [0.0])
    minus_H = ImplicitSet(2, lambda p: p[0] + p[1] <= TOL, name="-H")
    curve = closed_curve_region(segments)
    return UnionSet((H, IntersectionSet((curve, minus_H), name="curve&-H")),
                    name="curve-halfplane")
