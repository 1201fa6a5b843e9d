import random

import pytest

from toric_cy4 import Fan, build_ring, data_path, parse_fan_file


@pytest.fixture(scope="session")
def cp4():
    return parse_fan_file(data_path("cp4.fan")).to_fan()


@pytest.fixture(scope="session")
def b1():
    return parse_fan_file(data_path("b1.fan")).to_fan()


@pytest.fixture(scope="session")
def p1p1():
    """Product of two projective lines: the standard 2-dim quadrant fan."""
    return Fan.make(
        rays=[(1, 0), (0, 1), (-1, 0), (0, -1)],
        max_cones=[(0, 1), (1, 2), (2, 3), (3, 0)],
    )


@pytest.fixture(scope="session")
def p1():
    return Fan.make(rays=[(1,), (-1,)], max_cones=[(0,), (1,)])


@pytest.fixture(scope="session")
def cp4_ring(cp4):
    return build_ring(cp4)


@pytest.fixture(scope="session")
def b1_ring(b1):
    return build_ring(b1)


def relabel_fan(fan: Fan, perm: list[int]) -> Fan:
    """Apply a ray relabeling: old index i becomes perm[i]."""
    new_rays = [None] * fan.nrays
    for i, u in enumerate(fan.rays):
        new_rays[perm[i]] = u
    new_cones = [frozenset(perm[i] for i in c) for c in fan.max_cones]
    return Fan.make(new_rays, new_cones, fan.dim)


def shuffled_cones(fan: Fan, rng: random.Random) -> Fan:
    cones = list(fan.max_cones)
    rng.shuffle(cones)
    return Fan.make(fan.rays, cones, fan.dim)
