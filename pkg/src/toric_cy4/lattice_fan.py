"""Complete simplicial fans in an integer lattice.

A fan is given by its primitive ray generators and an explicit list of
maximal cones (index sets into the ray list).  This module validates the
smoothness/completeness hypotheses and extracts the combinatorics the rest
of the pipeline consumes: the face lattice, primitive collections, and the
Euler characteristic of the associated variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import IncompleteFan, MalformedInput, NonSmoothCone


def det_int(rows: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss fraction-free elimination)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    if any(len(r) != n for r in a):
        raise ValueError("square matrix required")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _facet_normal(rays: list[tuple[int, ...]]) -> tuple[int, ...]:
    """Integer normal vector to the span of n-1 independent vectors in Z^n."""
    n = len(rays) + 1
    normal = []
    for j in range(n):
        minor = [[r[k] for k in range(n) if k != j] for r in rays]
        normal.append((-1) ** j * det_int(minor))
    return tuple(normal)


def _is_primitive(v: tuple[int, ...]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


@dataclass(frozen=True)
class Fan:
    """Rays (primitive generators) plus maximal cones as ray-index sets.

    Construction checks only structural well-formedness; geometric
    validity (smoothness, completeness) is the job of :func:`validate_fan`.
    """

    rays: tuple[tuple[int, ...], ...]
    max_cones: tuple[frozenset[int], ...]
    dim: int

    def __post_init__(self):
        n = self.dim
        if n < 1:
            raise MalformedInput(f"dim must be positive, got {n}")
        if not self.rays:
            raise MalformedInput("fan has no rays")
        for i, u in enumerate(self.rays):
            if len(u) != n:
                raise MalformedInput(f"ray #{i} has length {len(u)}, expected {n}")
            if all(x == 0 for x in u):
                raise MalformedInput(f"ray #{i} is zero")
            if not _is_primitive(u):
                raise MalformedInput(f"ray #{i} = {u} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise MalformedInput("duplicate rays")
        if not self.max_cones:
            raise MalformedInput("fan has no maximal cones")
        used: set[int] = set()
        for k, cone in enumerate(self.max_cones):
            if len(cone) != n:
                raise MalformedInput(
                    f"maximal cone #{k} has {len(cone)} rays, expected {n}"
                )
            for i in cone:
                if not 0 <= i < len(self.rays):
                    raise MalformedInput(f"maximal cone #{k}: ray index {i} out of range")
            used |= cone
        if len(set(self.max_cones)) != len(self.max_cones):
            raise MalformedInput("duplicate maximal cones")
        if used != set(range(len(self.rays))):
            missing = sorted(set(range(len(self.rays))) - used)
            raise MalformedInput(f"rays {missing} appear in no maximal cone")

    @classmethod
    def make(cls, rays, max_cones, dim=None) -> "Fan":
        rays = tuple(tuple(int(x) for x in u) for u in rays)
        if dim is None:
            dim = len(rays[0]) if rays else 0
        cones = tuple(frozenset(int(i) for i in c) for c in max_cones)
        return cls(rays=rays, max_cones=cones, dim=dim)

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def cone_matrix(self, cone: frozenset[int]) -> list[list[int]]:
        """Rows are the generators of the given cone, in ray-index order."""
        return [list(self.rays[i]) for i in sorted(cone)]


@dataclass(frozen=True)
class ValidationReport:
    smooth: bool
    complete: bool
    cone_dets: tuple[int, ...]


def validate_fan(fan: Fan) -> ValidationReport:
    """Check smoothness and completeness; raise on failure.

    Smoothness: every maximal cone's generators form a Z-basis (|det| = 1).
    Completeness: every facet of a maximal cone is shared by exactly two
    maximal cones, and the two opposite rays lie strictly on opposite sides
    of the facet hyperplane.  For simplicial fans this facet-pairing
    criterion certifies that the support is all of N_R.
    """
    dets = []
    for k, cone in enumerate(fan.max_cones):
        d = det_int(fan.cone_matrix(cone))
        dets.append(d)
        if abs(d) != 1:
            raise NonSmoothCone(k, d)

    facet_owners: dict[frozenset[int], list[int]] = {}
    for k, cone in enumerate(fan.max_cones):
        for i in cone:
            facet_owners.setdefault(cone - {i}, []).append(k)
    for facet, owners in facet_owners.items():
        if len(owners) != 2:
            raise IncompleteFan(facet, len(owners))
        normal = _facet_normal([fan.rays[i] for i in sorted(facet)])
        sides = []
        for k in owners:
            (extra,) = fan.max_cones[k] - facet
            sides.append(sum(a * b for a, b in zip(normal, fan.rays[extra])))
        if sides[0] * sides[1] >= 0:
            raise IncompleteFan(facet, len(owners))

    return ValidationReport(smooth=True, complete=True, cone_dets=tuple(dets))


def enumerate_cones(fan: Fan) -> frozenset[frozenset[int]]:
    """All faces of all maximal cones, including the zero cone."""
    faces: set[frozenset[int]] = set()
    for cone in fan.max_cones:
        members = sorted(cone)
        for size in range(len(members) + 1):
            for sub in combinations(members, size):
                faces.add(frozenset(sub))
    return frozenset(faces)


def primitive_collections(fan: Fan) -> list[tuple[int, ...]]:
    """Minimal non-faces of the fan, sorted by size then lexicographically.

    A subset of rays is a primitive collection iff it is contained in no
    cone while every proper subset is.  Exhaustive search over subsets is
    fine at the ray counts arising from Fano fourfolds.
    """
    faces = enumerate_cones(fan)
    out = []
    indices = range(fan.nrays)
    for size in range(1, fan.nrays + 1):
        for cand in combinations(indices, size):
            if frozenset(cand) in faces:
                continue
            if all(frozenset(cand[:i] + cand[i + 1:]) in faces for i in range(size)):
                out.append(cand)
    out.sort(key=lambda c: (len(c), c))
    return out


def euler_characteristic_ambient(fan: Fan) -> int:
    """Euler characteristic of the smooth complete toric variety: the
    number of maximal cones."""
    return len(fan.max_cones)
