"""Divisor classes and the grading of the total coordinate ring.

The lattice of characters maps into the free group on the rays by
m -> (<m, u_i>)_i; the cokernel is the divisor class group and grades the
coordinate ring, one degree vector per variable.  The cokernel is computed
with an exact Smith normal form over Z.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RankDeficient, TorsionFound
from .lattice_fan import Fan


def smith_normal_form(a: list[list[int]]):
    """Return (d, u, v) with u*a*v = d diagonal, u and v unimodular.

    Deterministic pivoting: the smallest nonzero absolute value in the
    remaining submatrix, ties broken row-major.  Diagonal entries are
    normalized nonnegative and satisfy the divisibility chain.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(m, n):
        p = pivot(t)
        if p is None:
            break
        swap_rows(t, p[0])
        swap_cols(t, p[1])
        while True:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    add_row(i, t, -q)
                    if d[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    add_col(j, t, -q)
                    if d[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty and all(d[i][t] == 0 for i in range(t + 1, m)) \
                    and all(d[t][j] == 0 for j in range(t + 1, n)):
                break
        # enforce divisibility d[t][t] | d[i][j] for the rest
        fixed = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t] != 0:
                    add_row(t, i, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            t += 1
    return d, u, v


@dataclass(frozen=True)
class DivisorMapMatrix:
    """n x r matrix with entry (j, i) = j-th coordinate of ray u_i."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])


@dataclass(frozen=True)
class ChowPresentation:
    free_rank: int
    torsion: tuple[int, ...]
    degree_of_variable: tuple[tuple[int, ...], ...]


def divisor_map(fan: Fan) -> DivisorMapMatrix:
    """Matrix of the character-to-divisor map in the standard bases."""
    n, r = fan.dim, fan.nrays
    entries = tuple(tuple(fan.rays[i][j] for i in range(r)) for j in range(n))
    d, _, _ = smith_normal_form([list(row) for row in entries])
    rank = sum(1 for k in range(min(n, r)) if d[k][k] != 0)
    if rank < n:
        raise RankDeficient(f"divisor map has rank {rank} < {n}: torus factor present")
    return DivisorMapMatrix(entries=entries)


def chow_group(dm: DivisorMapMatrix) -> ChowPresentation:
    """Cokernel of the divisor map, with one degree vector per variable.

    The cokernel of the r x n transpose is read off the Smith form
    u*a*v = d: the class of the i-th standard basis vector is column i of
    u, reduced modulo the diagonal.  Smooth complete input must give a
    free cokernel; torsion is reported as a hard error.
    """
    n, r = dm.nrows, dm.ncols
    at = [[dm.entries[j][i] for j in range(n)] for i in range(r)]  # r x n
    d, u, _ = smith_normal_form(at)
    diag = [d[k][k] for k in range(min(r, n))]
    rank = sum(1 for x in diag if x != 0)
    if rank < n:
        raise RankDeficient(f"divisor map has rank {rank} < {n}")
    torsion = [x for x in diag if x not in (0, 1)]
    if torsion:
        raise TorsionFound(torsion)
    # free coordinates of the cokernel: rows of u past the rank
    degrees = tuple(tuple(u[k][i] for k in range(rank, r)) for i in range(r))
    # g o f = 0: the free rows of u annihilate the image of the map
    for j in range(n):
        col = [dm.entries[j][i] for i in range(r)]
        for k in range(rank, r):
            if sum(u[k][i] * col[i] for i in range(r)) != 0:
                raise AssertionError("cokernel projection does not kill the image")
    return ChowPresentation(free_rank=r - rank, torsion=(), degree_of_variable=degrees)


def anticanonical_degree(cp: ChowPresentation) -> tuple[int, ...]:
    """Degree of the anticanonical class: componentwise sum over variables."""
    return tuple(sum(col) for col in zip(*cp.degree_of_variable))
