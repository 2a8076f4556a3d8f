"""Evaluable vector functions with Jacobians.

Builtins carry analytic Jacobians; maps parsed from expressions fall back
to central finite differences with step 1e-6 * (1 + |x|).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expressions as ex
from .geometry import as_vector

FD_STEP = 1e-6


@dataclass(frozen=True)
class SmoothMap:
    name: str
    dim_in: int
    dim_out: int
    fn: object                 # callable ndarray -> ndarray
    jac: object = None         # optional callable ndarray -> (dim_out, dim_in) ndarray

    def __call__(self, x) -> np.ndarray:
        x = as_vector(x, self.dim_in)
        y = np.atleast_1d(np.asarray(self.fn(x), dtype=float))
        if y.shape != (self.dim_out,):
            raise ValueError(f"{self.name}: output shape {y.shape}, expected ({self.dim_out},)")
        return y

    def jacobian(self, x) -> np.ndarray:
        x = as_vector(x, self.dim_in)
        if self.jac is not None:
            J = np.asarray(self.jac(x), dtype=float)
            return J.reshape(self.dim_out, self.dim_in)
        return finite_difference_jacobian(self, x)


def finite_difference_jacobian(f: SmoothMap, x: np.ndarray) -> np.ndarray:
    x = as_vector(x, f.dim_in)
    h = FD_STEP * (1.0 + np.linalg.norm(x))
    J = np.zeros((f.dim_out, f.dim_in))
    for k in range(f.dim_in):
        e = np.zeros(f.dim_in)
        e[k] = h
        J[:, k] = (f(x + e) - f(x - e)) / (2.0 * h)
    return J


def from_expressions(exprs, dim_in: int, name: str = "expr") -> SmoothMap:
    """Build a map from one parsed/unparsed expression per output coordinate."""
    nodes = []
    for e in exprs:
        nodes.append(ex.parse_expression(e) if isinstance(e, str) else e)

    def fn(x, _nodes=tuple(nodes)):
        return np.array([ex.evaluate(n, x) for n in _nodes])

    return SmoothMap(name, dim_in, len(nodes), fn)


def _saddle_x2_y2():
    return SmoothMap(
        "saddle-x2-y2", 2, 1,
        lambda x: np.array([x[0] ** 2 - x[1] ** 2]),
        lambda x: np.array([[2 * x[0], -2 * x[1]]]),
    )


def _saddle_x2_y3():
    return SmoothMap(
        "saddle-x2-y3", 2, 1,
        lambda x: np.array([x[0] ** 2 - x[1] ** 3]),
        lambda x: np.array([[2 * x[0], -3 * x[1] ** 2]]),
    )


def _sin_inv_x():
    def fn(x):
        return np.array([np.sin(1.0 / x[0]) if x[0] != 0.0 else 0.0])
    return SmoothMap("sin-inv-x", 1, 1, fn)


def _x3_sin_inv_x():
    def fn(x):
        return np.array([x[0] ** 3 * np.sin(1.0 / x[0]) if x[0] != 0.0 else 0.0])

    def jac(x):
        if x[0] == 0.0:
            return np.array([[0.0]])
        t = x[0]
        return np.array([[3 * t ** 2 * np.sin(1.0 / t) - t * np.cos(1.0 / t)]])
    return SmoothMap("x3-sin-inv-x", 1, 1, fn, jac)


def sector_map(theta1: float, theta2: float) -> SmoothMap:
    """Scalar function vanishing exactly on the sector between two angles.

    atan2 gives the angle everywhere except the printed x=0 split, which is
    handled first; the third branch covers the open third quadrant.
    """
    def fn(x):
        if x[0] == 0.0:
            return np.array([0.0])
        if x[0] < 0.0 and x[1] < 0.0:
            return np.array([-1.0])
        ang = np.arctan(x[1] / x[0])
        return np.array([(theta2 - ang) * (ang - theta1)])
    return SmoothMap(f"sector-{theta1:.6f}-{theta2:.6f}", 2, 1, fn)


def _vector_2x_x():
    return SmoothMap(
        "vector-2x-x", 1, 2,
        lambda x: np.array([2 * x[0], x[0]]),
        lambda x: np.array([[2.0], [1.0]]),
    )


def _vector_pair_saddle():
    return SmoothMap(
        "vector-pair-saddle", 2, 2,
        lambda x: np.array([x[0] ** 2 - x[1] ** 2, x[0] ** 2 - x[1] ** 3]),
        lambda x: np.array([[2 * x[0], -2 * x[1]], [2 * x[0], -3 * x[1] ** 2]]),
    )


def _identity(dim):
    return SmoothMap(f"identity-{dim}", dim, dim, lambda x: x.copy(),
                     lambda x: np.eye(dim))


BUILTINS = {
    "saddle_x2_y2": _saddle_x2_y2,
    "saddle_x2_y3": _saddle_x2_y3,
    "sin_inv_x": _sin_inv_x,
    "x3_sin_inv_x": _x3_sin_inv_x,
    "vector_2x_x": _vector_2x_x,
    "vector_pair_saddle": _vector_pair_saddle,
    "identity_1": lambda: _identity(1),
    "identity_2": lambda: _identity(2),
}


def builtin(name: str) -> SmoothMap:
    if name not in BUILTINS:
        raise KeyError(f"unknown builtin map {name!r}; known: {sorted(BUILTINS)}")
    return BUILTINS[name]()
