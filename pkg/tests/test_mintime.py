import numpy as np
import pytest

from dirpareto.geometry import DirectionSet, GeometryError, HalfspaceCone
from dirpareto.maps import SmoothMap, builtin
from dirpareto.mintime import (
    Target,
    calmness_ratio,
    minimal_time,
    subregularity_ratio,
)
from dirpareto.sets import PolyhedralSet

from oracles import linf_distance_to_polyhedron

INF = float("inf")


def D(*vs):
    return DirectionSet.finite(vs)


def _unit(v):
    v = np.asarray(v, dtype=float)
    return tuple(v / np.linalg.norm(v))


def test_point_target_hand_cases():
    L = D((1.0, 0.0))
    assert minimal_time(L, (0, 0), Target.point((3, 0)))[0] == pytest.approx(3.0)
    assert minimal_time(L, (0, 0), Target.point((0, 3)))[0] == INF
    v, exact = minimal_time(L, (0, 0), Target.point((3, 0)), norm="linf")
    assert v == pytest.approx(3.0) and exact


def test_point_target_finite_iff_cone_membership():
    """T_L(x, {u}) < inf iff u - x in cone L, with value |u - x|."""
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 4))
        dirs = [_unit(rng.normal(size=n)) for _ in range(int(rng.integers(1, 4)))]
        L = D(*dirs)
        x = rng.uniform(-3, 3, n)
        u = rng.uniform(-3, 3, n)
        from dirpareto.geometry import cone_contains
        val, exact = minimal_time(L, x, Target.point(u))
        assert exact
        if cone_contains(L, u - x):
            assert val == pytest.approx(float(np.linalg.norm(u - x)), abs=1e-9)
        else:
            assert val == INF


def test_finite_points_takes_min():
    L = D((1.0, 0.0), (0.0, 1.0))
    t = Target.finite_points([(2, 0), (0, 5), (-1, 0)])
    assert minimal_time(L, (0, 0), t)[0] == pytest.approx(2.0)


def test_empty_finite_points_rejected():
    with pytest.raises(GeometryError):
        Target.finite_points([])


def test_polyhedron_finite_directions_closed_form():
    poly = PolyhedralSet.from_rows([[1.0, 0.0]], [2.0])  # {x1 >= 2}
    L = D((1.0, 0.0), (0.0, 1.0))
    val, exact = minimal_time(L, (0.0, 0.0), Target.polyhedral(poly))
    assert exact and val == pytest.approx(2.0)
    # only the useless direction: infinite
    val, _ = minimal_time(D((0.0, 1.0)), (0.0, 0.0), Target.polyhedral(poly))
    assert val == INF


def test_point_already_inside_polyhedron():
    poly = PolyhedralSet.from_rows([[1.0, 0.0]], [2.0])
    val, _ = minimal_time(D((0.0, 1.0)), (3.0, 1.0), Target.polyhedral(poly))
    assert val == 0.0


def test_full_sphere_linf_equals_distance_hand():
    poly = PolyhedralSet.from_rows([[1.0, 0.0]], [2.0])
    L = DirectionSet.full_sphere(2)
    val, exact = minimal_time(L, (0.0, 0.0), Target.polyhedral(poly),
                              norm="linf")
    assert exact and val == pytest.approx(2.0, abs=1e-9)


def _random_polyhedron(rng, n):
    for _ in range(50):
        m = int(rng.integers(1, 5))
        rows = rng.integers(-3, 4, (m, n)).astype(float)
        rows = rows[np.any(rows != 0, axis=1)]
        if not len(rows):
            continue
        offs = rng.integers(-3, 4, len(rows)).astype(float)
        try:
            return PolyhedralSet.from_rows(rows, offs)
        except GeometryError:
            continue
    raise AssertionError("could not build a nonempty polyhedron")


def test_full_sphere_linf_matches_lp_oracle_100():
    """Acceptance criterion: T_{S_X} equals the linf distance computed by
    an independent LP solver on 100 random polyhedron instances."""
    rng = np.random.default_rng(21)
    checked = 0
    while checked < 100:
        n = int(rng.integers(2, 4))
        poly = _random_polyhedron(rng, n)
        x = rng.uniform(-4, 4, n)
        val, exact = minimal_time(DirectionSet.full_sphere(n), x,
                                  Target.polyhedral(poly), norm="linf")
        assert exact
        ref = linf_distance_to_polyhedron(poly.matrix, poly.rhs, x)
        assert ref is not None
        assert val == pytest.approx(ref, abs=1e-6)
        checked += 1


def test_monotonicity_in_L_100():
    rng = np.random.default_rng(31)
    for _ in range(100):
        n = int(rng.integers(1, 4))
        d1 = [_unit(rng.normal(size=n)) for _ in range(2)]
        d2 = d1 + [_unit(rng.normal(size=n)) for _ in range(2)]
        L1, L2 = D(*d1), D(*d2)
        x = rng.uniform(-3, 3, n)
        u = rng.uniform(-3, 3, n)
        v1, _ = minimal_time(L1, x, Target.point(u))
        v2, _ = minimal_time(L2, x, Target.point(u))
        assert v2 <= v1 + 1e-9


def test_lower_bound_by_distance():
    rng = np.random.default_rng(41)
    for _ in range(100):
        n = int(rng.integers(1, 4))
        L = D(*[_unit(rng.normal(size=n)) for _ in range(3)])
        x = rng.uniform(-3, 3, n)
        u = rng.uniform(-3, 3, n)
        val, _ = minimal_time(L, x, Target.point(u))
        assert val >= float(np.linalg.norm(u - x)) - 1e-9


def test_cone_section_l2_upper_bound_flagged():
    K = HalfspaceCone.from_rows(np.eye(2))
    L = DirectionSet.cone_section(K)
    poly = PolyhedralSet.from_rows([[1.0, 0.0]], [2.0])
    val, exact = minimal_time(L, (0.0, 1.0), Target.polyhedral(poly))
    assert not exact          # sampled upper bound, flagged approximate
    assert val >= 2.0 - 1e-9  # never below the true value


def test_calmness_identity_is_one():
    f = builtin("identity_1")
    est = calmness_ratio(f, (0.0,), D((1.0,)), D((1.0,)))
    assert est.empirical
    assert est.supremum_ratio == pytest.approx(1.0, abs=1e-9)


def test_calmness_2x_is_two():
    f = SmoothMap("2x", 1, 1, lambda x: 2.0 * x, lambda x: [[2.0]])
    est = calmness_ratio(f, (0.0,), D((1.0,)), D((1.0,)))
    assert est.supremum_ratio == pytest.approx(2.0, abs=1e-9)


def test_calmness_square_sup_at_grid_edge():
    f = SmoothMap("sq", 1, 1, lambda x: x ** 2, lambda x: [[2.0 * x[0]]])
    est = calmness_ratio(f, (0.0,), D((1.0,)), D((1.0,)), radius=0.1)
    assert est.supremum_ratio == pytest.approx(0.1, abs=1e-9)
    assert est.witness_pair is not None


def test_calmness_no_admissible_grid_flagged_zero():
    # f decreases but M only allows increases: numerator always infinite
    f = SmoothMap("neg", 1, 1, lambda x: -x, lambda x: [[-1.0]])
    est = calmness_ratio(f, (0.0,), D((1.0,)), D((1.0,)))
    assert est.supremum_ratio == 0.0
    assert est.note != ""


def test_subregularity_equals_inverse_calmness_linear_maps():
    """Subregularity of f matches calmness of f^-1 within 5 percent on
    matched full-circle grids (invertible linear maps on R^2)."""
    rng = np.random.default_rng(51)
    ang = 2.0 * np.pi * np.arange(128) / 128
    circle = D(*np.stack([np.cos(ang), np.sin(ang)], axis=1))
    tried = 0
    for _ in range(20):
        A = rng.uniform(-2.0, 2.0, (2, 2))
        if abs(np.linalg.det(A)) < 0.3:
            continue
        tried += 1
        Ainv = np.linalg.inv(A)
        f = SmoothMap("lin", 2, 2, lambda x, A=A: A @ x, lambda x, A=A: A)
        finv = SmoothMap("lininv", 2, 2, lambda y, B=Ainv: B @ y,
                         lambda y, B=Ainv: B)
        sub = subregularity_ratio(f, (0.0, 0.0), circle, circle,
                                  radius=0.5, levels=3, rays=128)
        calm = calmness_ratio(finv, (0.0, 0.0), circle, circle,
                              radius=0.5, levels=3, rays=128)
        assert sub.supremum_ratio == pytest.approx(
            calm.supremum_ratio, rel=0.05)
        if tried >= 8:
            break
    assert tried >= 8


def test_unknown_norm_rejected():
    with pytest.raises(GeometryError):
        minimal_time(D((1.0,)), (0.0,), Target.point((1.0,)), norm="l7")
