"""Invariants of the doubled eight-manifold built from a toric Fano fourfold.

Given a validated fourfold fan, this module walks the whole computation:
Chern classes of the ambient variety, the anticanonical divisor D and the
surface S (by adjunction), Euler characteristics by Chern-Gauss-Bonnet,
Hodge numbers of S from the Riemann-Roch (Noether) integrals, signatures
from the Hodge index theorem, and finally the doubling formulas giving
chi(M), tau(M) and the A-hat genus.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, asdict
from fractions import Fraction
from math import comb

from .errors import (
    AhatNotIntegral,
    DivisibilityViolation,
    MalformedInput,
    NegativeHodgeNumber,
    NonIntegralResult,
    PipelineInconsistency,
)
from .cox_grading import chow_group, divisor_map
from .lattice_fan import Fan, euler_characteristic_ambient, primitive_collections, validate_fan
from .quotient_ring import (
    CohomClass,
    MultiPoly,
    RingContext,
    build_ring,
    hilbert_ranks,
    integrate_top,
    normal_form,
)

HOLONOMY_BY_AHAT = {
    1: "Spin(7)",
    2: "SU(4)",
    3: "Sp(2)",
    4: "Sp(1)xSp(1)",
}


@dataclass(frozen=True)
class ChernSeries:
    """Truncated total Chern class, one normal-form component per degree."""

    graded: CohomClass

    def component(self, d: int) -> MultiPoly:
        return self.graded.components[d]


@dataclass(frozen=True)
class HodgeDiamondCY3:
    h00: int
    h11: int
    h21: int

    @property
    def chi(self) -> int:
        return 2 * (self.h11 - self.h21)


@dataclass(frozen=True)
class HodgeDiamondSurface:
    h00: int
    h01: int
    h02: int
    h11: int

    @property
    def chi_top(self) -> int:
        return 2 + 2 * self.h02 + self.h11


@dataclass(frozen=True)
class DoublingReport:
    chi_P: int
    tau_P: int
    chi_D: int
    h11_D: int
    h21_D: int
    chi_S: int
    h02_S: int
    h11_S: int
    tau_S: int
    chi_M: int
    tau_M: int
    a_hat: int
    holonomy_claim: str
    fan_id: str | None = None
    name: str | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegralResult(f"{what} = {value} is not an integer")
    return int(value)


def anticanonical_class(ctx: RingContext) -> CohomClass:
    """Class of the sum of all ray divisors, in the active variables."""
    total = MultiPoly.zero(len(ctx.active_vars))
    for sub in ctx.substitution:
        total = total + sub
    return CohomClass.from_poly(total, ctx)


def total_chern_ambient(ctx: RingContext, fan: Fan) -> ChernSeries:
    """Product of (1 + [D_rho]) over all rays, truncated at the dimension."""
    acc = CohomClass.from_poly(
        MultiPoly.constant(len(ctx.active_vars), 1), ctx
    )
    for sub in ctx.substitution:
        factor = CohomClass.from_poly(
            MultiPoly.constant(len(ctx.active_vars), 1) + sub, ctx
        )
        acc = acc.mul(factor, ctx)
    return ChernSeries(graded=acc)


def adjoint_chern(cX: ChernSeries, d: CohomClass, multiplicity: int,
                  ctx: RingContext) -> ChernSeries:
    """Divide the total Chern class by (1 + d)^multiplicity via the formal
    binomial series, truncated at the dimension (adjunction)."""
    n = ctx.dim
    d1 = d.components[1]
    inverse = MultiPoly.constant(len(ctx.active_vars), 0)
    for k in range(n + 1):
        coeff = (-1) ** k * comb(multiplicity + k - 1, k)
        inverse = inverse + (d1 ** k).scale(coeff)
    inv_class = CohomClass.from_poly(inverse, ctx)
    return ChernSeries(graded=cX.graded.mul(inv_class, ctx))


def euler_of_divisor(cD: ChernSeries, d: CohomClass, ctx: RingContext) -> int:
    """Chern-Gauss-Bonnet on the threefold: pair c3 with the divisor class."""
    val = integrate_top(cD.component(3) * d.components[1], ctx)
    return _as_int(val, "chi(D)")


def hodge_of_divisor(chi_D: int, picard_rank: int) -> HodgeDiamondCY3:
    """Hodge diamond of the Calabi-Yau threefold: h11 from the Lefschetz
    hyperplane theorem, h21 from the Euler characteristic."""
    if chi_D % 2 != 0:
        raise NonIntegralResult(f"chi(D) = {chi_D} must be even")
    h11 = picard_rank
    h21 = h11 - chi_D // 2
    if h11 < 0 or h21 < 0:
        raise NegativeHodgeNumber(f"h11={h11}, h21={h21}")
    return HodgeDiamondCY3(h00=1, h11=h11, h21=h21)


def euler_of_surface(cS: ChernSeries, d: CohomClass, ctx: RingContext) -> int:
    """Chern-Gauss-Bonnet on the surface: pair c2 with the square of the
    divisor class."""
    d1 = d.components[1]
    val = integrate_top(cS.component(2) * d1 * d1, ctx)
    return _as_int(val, "chi(S)")


def noether_surface(cS: ChernSeries, d: CohomClass, ctx: RingContext) -> HodgeDiamondSurface:
    """Middle Hodge numbers of the simply-connected surface from the two
    Riemann-Roch integrals (divisibility by 12 and 6 is asserted)."""
    d1 = d.components[1]
    c1, c2 = cS.component(1), cS.component(2)
    sq = d1 * d1
    int_plus = _as_int(integrate_top((c1 * c1 + c2) * sq, ctx), "int(c1^2+c2)")
    int_minus = _as_int(integrate_top((c1 * c1 - c2.scale(5)) * sq, ctx),
                        "int(c1^2-5c2)")
    if int_plus % 12 != 0:
        raise DivisibilityViolation(f"12 does not divide int(c1^2+c2) = {int_plus}")
    if int_minus % 6 != 0:
        raise DivisibilityViolation(f"6 does not divide int(c1^2-5c2) = {int_minus}")
    h02 = int_plus // 12 - 1
    h11 = -int_minus // 6
    if h02 < 0 or h11 < 0:
        raise NegativeHodgeNumber(f"h02={h02}, h11={h11}")
    return HodgeDiamondSurface(h00=1, h01=0, h02=h02, h11=h11)


def signature_surface(hd: HodgeDiamondSurface) -> int:
    """Hodge index theorem on a simply-connected surface."""
    return 2 - hd.h11 + 2 * hd.h02


def signature_ambient(ranks: tuple[int, ...]) -> int:
    """Alternating sum of the even Betti numbers (odd ones vanish)."""
    if len(ranks) != 5:
        raise MalformedInput(f"expected 5 graded ranks, got {len(ranks)}")
    return sum((-1) ** k * b for k, b in enumerate(ranks))


def doubling_invariants(chi_P: int, chi_S: int, chi_D: int,
                        tau_P: int, tau_S: int) -> tuple[int, int, int, str]:
    """chi(M), tau(M), A-hat and the holonomy label for the doubled manifold."""
    chi_M = 2 * (chi_P + chi_S - chi_D)
    tau_M = 2 * (tau_P - tau_S)
    num = 3 * tau_M - chi_M
    if num % 48 != 0:
        raise AhatNotIntegral(f"48 does not divide 3*tau - chi = {num}")
    a_hat = num // 48
    holonomy = HOLONOMY_BY_AHAT.get(a_hat, "undetermined")
    if a_hat != 2:
        warnings.warn(
            f"A-hat = {a_hat}: doubled manifold is not Calabi-Yau "
            f"(holonomy claim: {holonomy})",
            stacklevel=2,
        )
    return chi_M, tau_M, a_hat, holonomy


def compute_report(fan: Fan, fan_id: str | None = None, name: str | None = None,
                   elimination_cone: int | None = None) -> DoublingReport:
    """End-to-end computation for one fourfold fan.

    Deterministic: the elimination cone defaults to the first maximal cone
    in input order and can be overridden for invariance checks.
    """
    if fan.dim != 4:
        raise MalformedInput(f"pipeline requires a fourfold fan, got dim {fan.dim}")
    validate_fan(fan)
    pcs = primitive_collections(fan)
    dm = divisor_map(fan)
    cp = chow_group(dm)
    cone_index = 0 if elimination_cone is None else elimination_cone
    if not 0 <= cone_index < len(fan.max_cones):
        raise MalformedInput(f"elimination cone index {cone_index} out of range")
    ctx = build_ring(fan, cone_index=cone_index, pcs=pcs, dm=dm)

    ranks = hilbert_ranks(ctx)
    chi_P = euler_characteristic_ambient(fan)
    if sum(ranks) != chi_P:
        raise PipelineInconsistency(
            f"sum of graded ranks {sum(ranks)} != number of maximal cones {chi_P}"
        )
    tau_P = signature_ambient(ranks)

    c_ambient = total_chern_ambient(ctx, fan)
    d = anticanonical_class(ctx)
    if not normal_form(c_ambient.component(1) - d.components[1], ctx).is_zero():
        raise PipelineInconsistency("c1 of the ambient variety is not anticanonical")

    c_D = adjoint_chern(c_ambient, d, 1, ctx)
    chi_D = euler_of_divisor(c_D, d, ctx)
    diamond_D = hodge_of_divisor(chi_D, cp.free_rank)

    c_S = adjoint_chern(c_ambient, d, 2, ctx)
    chi_S = euler_of_surface(c_S, d, ctx)
    diamond_S = noether_surface(c_S, d, ctx)
    if diamond_S.chi_top != chi_S:
        raise PipelineInconsistency(
            f"surface diamond gives chi {diamond_S.chi_top}, "
            f"Chern-Gauss-Bonnet gives {chi_S}"
        )
    tau_S = signature_surface(diamond_S)

    chi_M, tau_M, a_hat, holonomy = doubling_invariants(
        chi_P, chi_S, chi_D, tau_P, tau_S
    )
    return DoublingReport(
        chi_P=chi_P, tau_P=tau_P,
        chi_D=chi_D, h11_D=diamond_D.h11, h21_D=diamond_D.h21,
        chi_S=chi_S, h02_S=diamond_S.h02, h11_S=diamond_S.h11, tau_S=tau_S,
        chi_M=chi_M, tau_M=tau_M, a_hat=a_hat, holonomy_claim=holonomy,
        fan_id=fan_id, name=name,
    )
