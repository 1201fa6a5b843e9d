from fractions import Fraction

import pytest

from toric_cy4 import anticanonical_degree, chow_group, divisor_map
from toric_cy4.cox_grading import DivisorMapMatrix, smith_normal_form
from toric_cy4.errors import RankDeficient, TorsionFound


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def test_smith_normal_form_properties():
    cases = [
        [[2, 4, 4], [-6, 6, 12], [10, 4, 16]],
        [[1, 0], [0, 1]],
        [[6]],
        [[2, 0], [0, 0], [4, 8]],
    ]
    for a in cases:
        d, u, v = smith_normal_form(a)
        assert matmul(matmul(u, a), v) == d
        diag = [d[k][k] for k in range(min(len(d), len(d[0])))]
        for i, row in enumerate(d):
            for j, x in enumerate(row):
                if i != j:
                    assert x == 0
        nonzero = [x for x in diag if x]
        assert all(x > 0 for x in nonzero)
        for x, y in zip(nonzero, nonzero[1:]):
            assert y % x == 0


def test_divisor_map_cp4(cp4):
    dm = divisor_map(cp4)
    assert dm.entries == (
        (1, 0, 0, 0, -1),
        (0, 1, 0, 0, -1),
        (0, 0, 1, 0, -1),
        (0, 0, 0, 1, -1),
    )


def test_divisor_map_b1(b1):
    dm = divisor_map(b1)
    # row j lists coordinate j of each ray
    assert dm.entries == (
        (0, 1, 0, 0, 0, -1),
        (0, 0, 1, 0, 0, -1),
        (0, 0, 0, 1, 0, -1),
        (1, 0, 0, 0, -1, 3),
    )


def test_divisor_map_p1(p1):
    assert divisor_map(p1).entries == ((1, -1),)


def test_chow_rejects_rank_deficiency():
    # rays confined to a hyperplane (torus factor): character map loses rank
    with pytest.raises(RankDeficient):
        chow_group(DivisorMapMatrix(entries=((1, -1), (0, 0))))


def test_chow_cp4(cp4):
    cp = chow_group(divisor_map(cp4))
    assert cp.free_rank == 1
    assert cp.torsion == ()
    degs = cp.degree_of_variable
    assert len(set(degs)) == 1  # all five variables in the same class
    assert anticanonical_degree(cp) in ((5,), (-5,))


def unimodular_match(ours, paper):
    """Find an integer unimodular change of basis taking our degree vectors
    to the paper's, if one exists."""
    k = len(ours[0])
    # pick k independent columns of `ours`
    from itertools import combinations

    def det2(m):
        if k == 1:
            return m[0][0]
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]

    for idxs in combinations(range(len(ours)), k):
        basis = [ours[i] for i in idxs]
        mat = [[Fraction(basis[j][i]) for j in range(k)] for i in range(k)]
        d = det2([[int(x) for x in row] for row in mat])
        if d == 0:
            continue
        # solve T * ours_i = paper_i on the chosen basis
        target = [paper[i] for i in idxs]
        rows = []
        ok = True
        for out_coord in range(k):
            # T_row . basis_j = target_j[out_coord]
            aug = [[Fraction(basis[j][i]) for i in range(k)] + [Fraction(target[j][out_coord])]
                   for j in range(k)]
            for col in range(k):
                piv = next((t for t in range(col, k) if aug[t][col]), None)
                if piv is None:
                    ok = False
                    break
                aug[col], aug[piv] = aug[piv], aug[col]
                aug[col] = [x / aug[col][col] for x in aug[col]]
                for t in range(k):
                    if t != col and aug[t][col]:
                        c = aug[t][col]
                        aug[t] = [x - c * y for x, y in zip(aug[t], aug[col])]
            if not ok:
                break
            row = [aug[i][k] for i in range(k)]
            if any(x.denominator != 1 for x in row):
                ok = False
                break
            rows.append([int(x) for x in row])
        if not ok:
            continue
        t_det = det2(rows)
        if abs(t_det) != 1:
            continue
        if all(
            tuple(sum(rows[a][b] * ours[i][b] for b in range(k)) for a in range(k)) == paper[i]
            for i in range(len(ours))
        ):
            return rows
    return None


def test_chow_b1_matches_paper_up_to_basis(b1):
    cp = chow_group(divisor_map(b1))
    assert cp.free_rank == 2
    assert cp.torsion == ()
    paper = [(1, 0), (0, 1), (0, 1), (0, 1), (1, 3), (0, 1)]
    assert unimodular_match(list(cp.degree_of_variable), paper) is not None
    # the anticanonical degree must transform to (2, 7) under the same map
    t = unimodular_match(list(cp.degree_of_variable), paper)
    ours = anticanonical_degree(cp)
    mapped = tuple(sum(t[a][b] * ours[b] for b in range(2)) for a in range(2))
    assert mapped == (2, 7)


def test_chow_p1(p1):
    cp = chow_group(divisor_map(p1))
    assert cp.free_rank == 1
    assert cp.degree_of_variable[0] == cp.degree_of_variable[1]
    assert anticanonical_degree(cp) in ((2,), (-2,))


def test_exactness_composite_vanishes(cp4, b1):
    # every linear relation row has total Chow degree zero
    for fan in (cp4, b1):
        dm = divisor_map(fan)
        cp = chow_group(dm)
        for row in dm.entries:
            combo = [
                sum(row[i] * cp.degree_of_variable[i][k] for i in range(fan.nrays))
                for k in range(cp.free_rank)
            ]
            assert all(x == 0 for x in combo)


def test_free_rank_is_rays_minus_dim(cp4, b1, p1p1):
    for fan in (cp4, b1, p1p1):
        cp = chow_group(divisor_map(fan))
        assert cp.free_rank == fan.nrays - fan.dim


def test_torsion_is_hard_error():
    with pytest.raises(TorsionFound) as exc:
        chow_group(DivisorMapMatrix(entries=((2, 0),)))
    assert 2 in exc.value.factors
