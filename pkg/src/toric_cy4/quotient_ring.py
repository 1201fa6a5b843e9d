"""Exact polynomial arithmetic and the cohomology quotient ring.

Polynomials are sparse maps from exponent tuples to rationals.  The
cohomology ring of a smooth complete toric variety is presented as the
quotient by the Stanley-Reisner ideal plus the linear relations; after
integer elimination of the variables of one maximal cone the remainder of
the presentation is handled by a reduced Groebner basis (Buchberger,
degrevlex), which gives canonical normal forms, graded ranks and the
top-degree integration functional.

An independent evaluation route, :func:`multilinear_oracle`, computes the
same intersection numbers directly from cone membership and the linear
relations, never touching the Groebner machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import DegenerateTopDegree, EliminationSingular
from .cox_grading import DivisorMapMatrix, divisor_map
from .lattice_fan import Fan, primitive_collections

Exponent = tuple[int, ...]


def degrevlex_key(e: Exponent):
    """Sort key: larger key = larger monomial in degrevlex (x0 > x1 > ...)."""
    return (sum(e), tuple(-x for x in reversed(e)))


class MultiPoly:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exponent: Exponent, coeff=1) -> "MultiPoly":
        return cls(len(exponent), {tuple(exponent): Fraction(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.nvars, out)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def leading(self) -> tuple[Exponent, Fraction]:
        e = max(self.terms, key=degrevlex_key)
        return e, self.terms[e]

    def monic(self) -> "MultiPoly":
        if self.is_zero():
            return self
        _, c = self.leading()
        return self.scale(Fraction(1) / c)

    def homogeneous_component(self, d: int) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def format(self, names=None) -> str:
        if self.is_zero():
            return "0"
        if names is None:
            names = [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=degrevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{names[i]}^{k}" if k > 1 else names[i]
                for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    def __repr__(self):
        return f"MultiPoly({self.format()})"


def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def reduce_poly(p: MultiPoly, basis: list[MultiPoly]) -> MultiPoly:
    """Full normal form of p modulo the (Groebner) basis."""
    remainder: dict[Exponent, Fraction] = {}
    work = MultiPoly(p.nvars, dict(p.terms))
    leads = [(g.leading()[0], g.leading()[1], g) for g in basis if not g.is_zero()]
    while not work.is_zero():
        e, c = work.leading()
        for le, lc, g in leads:
            if _divides(le, e):
                factor = tuple(a - b for a, b in zip(e, le))
                work = work - (g * MultiPoly.monomial(factor, c / lc))
                break
        else:
            remainder[e] = remainder.get(e, Fraction(0)) + c
            del work.terms[e]
    return MultiPoly(p.nvars, remainder)


def _s_poly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ef, cf = f.leading()
    eg, cg = g.leading()
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    mf = MultiPoly.monomial(tuple(a - b for a, b in zip(lcm, ef)), Fraction(1) / cf)
    mg = MultiPoly.monomial(tuple(a - b for a, b in zip(lcm, eg)), Fraction(1) / cg)
    return f * mf - g * mg


def buchberger(gens: list[MultiPoly]) -> list[MultiPoly]:
    """Reduced monic Groebner basis under degrevlex.

    Uses the product (coprime leading monomials) and chain criteria to skip
    S-pairs.  The result is canonical for the term order: independent of
    the order of the input generators.
    """
    basis = [g.monic() for g in gens if not g.is_zero()]
    if not basis:
        return []
    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    done: set[tuple[int, int]] = set()
    while pairs:
        i, j = min(pairs)
        pairs.discard((i, j))
        done.add((i, j))
        ei, _ = basis[i].leading()
        ej, _ = basis[j].leading()
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        if lcm == tuple(a + b for a, b in zip(ei, ej)):
            continue  # coprime leading monomials
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            ek, _ = basis[k].leading()
            if _divides(ek, lcm) \
                    and tuple(sorted((i, k))) in done and tuple(sorted((j, k))) in done:
                skip = True
                break
        if skip:
            continue
        r = reduce_poly(_s_poly(basis[i], basis[j]), basis)
        if not r.is_zero():
            basis.append(r.monic())
            k = len(basis) - 1
            pairs |= {(i2, k) for i2 in range(k)}
    # minimalize: drop generators whose lead is divisible by another lead
    leads = [g.leading()[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(j != i and _divides(leads[j], leads[i])
               and (leads[j] != leads[i] or j < i) for j in range(len(basis))):
            continue
        keep.append(g)
    # interreduce tails
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        reduced.append(reduce_poly(g, others).monic())
    reduced.sort(key=lambda g: degrevlex_key(g.leading()[0]))
    return reduced


# --- presentation of the cohomology ring ---------------------------------

def stanley_reisner(fan: Fan, pcs: list[tuple[int, ...]]) -> list[MultiPoly]:
    """One squarefree monomial per primitive collection, in all r variables."""
    r = fan.nrays
    out = []
    for pc in pcs:
        e = [0] * r
        for i in pc:
            e[i] = 1
        out.append(MultiPoly.monomial(tuple(e)))
    return out


def linear_ideal(dm: DivisorMapMatrix) -> list[MultiPoly]:
    """The linear relations among divisor classes, one per lattice basis row."""
    r = dm.ncols
    return [
        MultiPoly(r, {tuple(int(i == k) for k in range(r)): Fraction(row[i])
                      for i in range(r) if row[i]})
        for row in dm.entries
    ]


@dataclass(frozen=True)
class RingContext:
    """Finalized presentation of the cohomology ring in the active variables.

    Immutable once built; normal forms and integrals are pure functions of
    this context.
    """

    nrays: int
    dim: int
    cone_index: int
    elimination_cone: tuple[int, ...]
    active_vars: tuple[int, ...]                 # original ray indices
    substitution: tuple[MultiPoly, ...]          # per ray: its active-var image
    groebner: tuple[MultiPoly, ...]
    monomial_basis: tuple[tuple[Exponent, ...], ...]
    top_monomial: Exponent
    point_scalar: Fraction

    @property
    def var_names(self) -> list[str]:
        return [f"x{i + 1}" for i in self.active_vars]


def eliminate_linear(fan: Fan, sr: list[MultiPoly], dm: DivisorMapMatrix,
                     cone_index: int = 0):
    """Solve the linear relations on one maximal cone.

    Returns (active ray indices, per-ray substitution polynomials,
    substituted Stanley-Reisner generators).  The cone's variables are
    expressed in the remaining ones; solvability over Z is guaranteed by
    smoothness (unit determinant).
    """
    n, r = fan.dim, fan.nrays
    sigma = sorted(fan.max_cones[cone_index])
    active = [i for i in range(r) if i not in sigma]
    # solve A_sigma * x_sigma = -A_active * x_active by Gaussian elimination
    rows = [[Fraction(dm.entries[t][i]) for i in sigma]
            + [Fraction(-dm.entries[t][i]) for i in active] for t in range(n)]
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            raise EliminationSingular(f"cone #{cone_index} is degenerate")
        rows[col], rows[piv] = rows[piv], rows[col]
        rows[col] = [x / rows[col][col] for x in rows[col]]
        for i in range(n):
            if i != col and rows[i][col]:
                c = rows[i][col]
                rows[i] = [x - c * y for x, y in zip(rows[i], rows[col])]
    nact = len(active)
    substitution: list[MultiPoly] = [None] * r  # type: ignore[list-item]
    for pos, i in enumerate(active):
        substitution[i] = MultiPoly.variable(nact, pos)
    for pos, j in enumerate(sigma):
        terms = {}
        for k in range(nact):
            c = rows[pos][n + k]
            if c:
                e = [0] * nact
                e[k] = 1
                terms[tuple(e)] = c
        substitution[j] = MultiPoly(nact, terms)

    def subst(p: MultiPoly) -> MultiPoly:
        out = MultiPoly.constant(nact, 0)
        for e, c in p.terms.items():
            term = MultiPoly.constant(nact, c)
            for i, k in enumerate(e):
                for _ in range(k):
                    term = term * substitution[i]
            out = out + term
        return out

    return tuple(active), tuple(substitution), [subst(g) for g in sr]


def build_ring(fan: Fan, cone_index: int = 0, pcs=None,
               dm: DivisorMapMatrix | None = None) -> RingContext:
    """Full ring construction: elimination, Groebner basis, graded basis,
    point-class normalization."""
    if pcs is None:
        pcs = primitive_collections(fan)
    if dm is None:
        dm = divisor_map(fan)
    sr = stanley_reisner(fan, pcs)
    active, substitution, gens = eliminate_linear(fan, sr, dm, cone_index)
    gb = buchberger(gens)
    n = fan.dim
    nact = len(active)
    leads = [g.leading()[0] for g in gb]
    basis: list[tuple[Exponent, ...]] = []
    for d in range(n + 1):
        degree_monos = []
        for combo in combinations_with_replacement(range(nact), d):
            e = [0] * nact
            for i in combo:
                e[i] += 1
            e = tuple(e)
            if not any(_divides(le, e) for le in leads):
                degree_monos.append(e)
        degree_monos.sort(key=degrevlex_key)
        basis.append(tuple(degree_monos))
    if len(basis[n]) != 1:
        raise DegenerateTopDegree(
            f"top-degree rank is {len(basis[n])}, expected 1"
        )
    top = basis[n][0]
    point = MultiPoly.constant(nact, 1)
    for j in sorted(fan.max_cones[cone_index]):
        point = point * substitution[j]
    point_nf = reduce_poly(point, list(gb))
    scalar = point_nf.coefficient(top)
    if scalar == 0 or point_nf != MultiPoly.monomial(top, scalar):
        raise DegenerateTopDegree("point class does not reduce to the top monomial")
    return RingContext(
        nrays=fan.nrays, dim=n, cone_index=cone_index,
        elimination_cone=tuple(sorted(fan.max_cones[cone_index])),
        active_vars=active, substitution=substitution,
        groebner=tuple(gb), monomial_basis=tuple(basis),
        top_monomial=top, point_scalar=scalar,
    )


def normal_form(p: MultiPoly, ctx: RingContext) -> MultiPoly:
    return reduce_poly(p, list(ctx.groebner))


def substitute(ctx: RingContext, p: MultiPoly) -> MultiPoly:
    """Rewrite a polynomial in all r ray variables into the active variables."""
    nact = len(ctx.active_vars)
    out = MultiPoly.constant(nact, 0)
    for e, c in p.terms.items():
        term = MultiPoly.constant(nact, c)
        for i, k in enumerate(e):
            for _ in range(k):
                term = term * ctx.substitution[i]
        out = out + term
    return out


def hilbert_ranks(ctx: RingContext) -> tuple[int, ...]:
    """Graded ranks of the quotient ring in degrees 0..dim (the even Betti
    numbers of the variety)."""
    return tuple(len(b) for b in ctx.monomial_basis)


def integrate_top(c, ctx: RingContext) -> Fraction:
    """Evaluate the degree-dim component against the fundamental class.

    The normalization is fixed by the point class: the product of the
    elimination cone's variables integrates to 1.  Accepts a MultiPoly or
    anything with a ``components`` sequence (degree-indexed classes).
    """
    if hasattr(c, "components"):
        p = c.components[ctx.dim]
    else:
        p = c
    p = normal_form(p, ctx).homogeneous_component(ctx.dim)
    return p.coefficient(ctx.top_monomial) / ctx.point_scalar


@dataclass(frozen=True)
class CohomClass:
    """A cohomology class stored degreewise, each component in normal form."""

    components: tuple[MultiPoly, ...]

    @classmethod
    def from_poly(cls, p: MultiPoly, ctx: RingContext) -> "CohomClass":
        nf = normal_form(p, ctx)
        return cls(tuple(nf.homogeneous_component(d) for d in range(ctx.dim + 1)))

    def mul(self, other: "CohomClass", ctx: RingContext) -> "CohomClass":
        n = ctx.dim
        comps = []
        for d in range(n + 1):
            acc = MultiPoly.zero(len(ctx.active_vars))
            for a in range(d + 1):
                acc = acc + self.components[a] * other.components[d - a]
            comps.append(normal_form(acc, ctx).homogeneous_component(d))
        return CohomClass(tuple(comps))


# --- independent intersection-number oracle ------------------------------

def _dual_vector(fan: Fan, sigma: tuple[int, ...], i: int) -> tuple[Fraction, ...]:
    """m with <m, u_i> = 1 and <m, u_k> = 0 for the other rays of sigma."""
    n = fan.dim
    rows = [[Fraction(x) for x in fan.rays[k]] + [Fraction(int(k == i))]
            for k in sigma]
    for col in range(n):
        piv = next((t for t in range(col, n) if rows[t][col]), None)
        if piv is None:
            raise EliminationSingular("degenerate cone in oracle")
        rows[col], rows[piv] = rows[piv], rows[col]
        rows[col] = [x / rows[col][col] for x in rows[col]]
        for t in range(n):
            if t != col and rows[t][col]:
                c = rows[t][col]
                rows[t] = [x - c * y for x, y in zip(rows[t], rows[col])]
    return tuple(rows[t][n] for t in range(n))


def multilinear_oracle(fan: Fan, exponents: Exponent) -> Fraction:
    """Intersection number of a degree-n monomial in the ray variables.

    Factors are consumed one at a time while maintaining a set of distinct
    rays known to span a cone.  A repeated ray is rewritten through the
    linear relation dual to a maximal cone containing the current set, so
    each step either prunes (non-face) or grows the set by one ray; the
    recursion therefore terminates.  Completely independent of the
    Groebner-basis route.
    """
    n = fan.dim
    if sum(exponents) != n:
        raise ValueError(f"total degree {sum(exponents)} != {n}")
    cone_sets = [frozenset(c) for c in fan.max_cones]

    def is_face(s: frozenset[int]) -> bool:
        return any(s <= c for c in cone_sets)

    # distinct rays first, repeats afterwards, deterministic order
    support = sorted(i for i, k in enumerate(exponents) if k)
    factors = support + sorted(
        i for i in support for _ in range(exponents[i] - 1)
    )

    def ev(t: frozenset[int], rest: tuple[int, ...]) -> Fraction:
        if not rest:
            return Fraction(int(t in cone_sets))
        i, tail = rest[0], rest[1:]
        if i not in t:
            grown = t | {i}
            return ev(grown, tail) if is_face(grown) else Fraction(0)
        sigma = sorted(next(c for c in cone_sets if t <= c))
        m = _dual_vector(fan, tuple(sigma), i)
        total = Fraction(0)
        for k in range(fan.nrays):
            if k in sigma:
                continue
            pairing = sum(a * b for a, b in zip(m, fan.rays[k]))
            if pairing == 0:
                continue
            grown = t | {k}
            if is_face(grown):
                total += -pairing * ev(grown, tail)
        return total

    return ev(frozenset(), tuple(factors))
