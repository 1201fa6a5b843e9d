import random
from math import factorial

import pytest

from toric_cy4 import (
    Fan,
    enumerate_cones,
    euler_characteristic_ambient,
    primitive_collections,
    validate_fan,
)
from toric_cy4.errors import IncompleteFan, MalformedInput, NonSmoothCone
from toric_cy4.lattice_fan import det_int

from conftest import shuffled_cones


def test_validate_cp4(cp4):
    report = validate_fan(cp4)
    assert report.smooth and report.complete
    assert all(abs(d) == 1 for d in report.cone_dets)


def test_validate_b1(b1):
    report = validate_fan(b1)
    assert report.smooth and report.complete


def test_validate_p1p1_and_p1(p1p1, p1):
    assert validate_fan(p1p1).smooth
    assert validate_fan(p1).complete


def test_nonsmooth_cone_detected(cp4):
    rays = list(cp4.rays)
    rays[4] = (-2, -1, -1, -1)
    bad = Fan.make(rays, cp4.max_cones, 4)
    with pytest.raises(NonSmoothCone) as exc:
        validate_fan(bad)
    assert abs(exc.value.det) == 2


def test_incomplete_fan_detected(cp4):
    partial = Fan.make(cp4.rays, list(cp4.max_cones)[:-1], 4)
    with pytest.raises(IncompleteFan) as exc:
        validate_fan(partial)
    assert exc.value.count == 1


def test_malformed_inputs():
    with pytest.raises(MalformedInput):  # non-primitive ray
        Fan.make([(2, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(MalformedInput):  # zero ray
        Fan.make([(0, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(MalformedInput):  # index out of range
        Fan.make([(1, 0), (0, 1)], [(0, 5)])
    with pytest.raises(MalformedInput):  # wrong cone size
        Fan.make([(1, 0), (0, 1)], [(0,), (1,)], dim=2)
    with pytest.raises(MalformedInput):  # unused ray
        Fan.make([(1, 0), (0, 1), (-1, -1)], [(0, 1)])


def test_enumerate_cones_cp4(cp4):
    faces = enumerate_cones(cp4)
    # all 31 proper subsets of the 5 rays, including the zero cone
    assert len(faces) == 31
    assert frozenset() in faces
    assert frozenset(range(5)) not in faces


def test_enumerate_cones_simplex_sizes():
    # brute-force face count of one maximal cone must be a full power set
    fan = Fan.make(
        [(1, 0), (0, 1), (-1, -1)],
        [(0, 1), (1, 2), (2, 0)],
    )
    faces = enumerate_cones(fan)
    per_cone = [frozenset(s) for s in [(), (0,), (1,), (0, 1)]]
    assert all(f in faces for f in per_cone)


def test_enumerate_cones_face_closed(b1):
    faces = enumerate_cones(b1)
    for f in faces:
        for i in f:
            assert f - {i} in faces


def test_b1_has_no_cone_on_opposite_rays(b1):
    assert frozenset({0, 4}) not in enumerate_cones(b1)


def test_primitive_collections_cp4(cp4):
    assert primitive_collections(cp4) == [(0, 1, 2, 3, 4)]


def test_primitive_collections_b1(b1):
    assert primitive_collections(b1) == [(0, 4), (1, 2, 3, 5)]


def test_primitive_collections_p1p1(p1p1):
    # brute-force oracle: check both defining conditions over all subsets
    from itertools import combinations

    faces = enumerate_cones(p1p1)
    expected = []
    for size in range(1, 5):
        for cand in combinations(range(4), size):
            if frozenset(cand) in faces:
                continue
            proper_ok = all(
                frozenset(sub) in faces
                for k in range(size)
                for sub in combinations(cand, k)
            )
            if proper_ok:
                expected.append(cand)
    assert primitive_collections(p1p1) == sorted(expected, key=lambda c: (len(c), c))
    assert primitive_collections(p1p1) == [(0, 2), (1, 3)]


def test_primitive_collections_order_independent(b1):
    rng = random.Random(7)
    base = primitive_collections(b1)
    for _ in range(10):
        assert primitive_collections(shuffled_cones(b1, rng)) == base


def test_euler_characteristic(cp4, b1):
    assert euler_characteristic_ambient(cp4) == 5
    assert euler_characteristic_ambient(b1) == 8


def test_det_sum_matches_polytope_volume(cp4, b1):
    # completeness cross-check: sum of |det| over maximal cones equals the
    # normalized volume of the convex hull of the rays (Fano polytope)
    scipy_spatial = pytest.importorskip("scipy.spatial")
    for fan in (cp4, b1):
        total = sum(abs(det_int(fan.cone_matrix(c))) for c in fan.max_cones)
        hull = scipy_spatial.ConvexHull([list(u) for u in fan.rays])
        assert total == round(hull.volume * factorial(fan.dim))
        assert total == len(fan.max_cones)  # smooth: each det is +-1
