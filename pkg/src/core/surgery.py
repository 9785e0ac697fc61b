"""Rational blow-down as arithmetic on invariant records, geography checks, W_{4,n}."""
import logging
from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from config import E4_CHI, E4_SIGMA, W4N_MAX
from ..utils.errors import (
    ConsistencyFailure,
    IncompatibleNormalBundles,
    InsufficientNegativePart,
    NotRationalBlowdown,
    OutOfRange,
)
from .hj import cpq_string
from .quotients import QuotientInventory
from .singularities import classify_T
from .surfaces import FourManifoldInvariants, recognize_en

logger = logging.getLogger(__name__)

GENERAL_TYPE_CAVEAT = "Noether's inequality constrains minimal surfaces of general type only"


class BlowdownPlan(BaseModel):
    """C_{p,q} configurations to excise, one (p, q) pair each."""

    model_config = ConfigDict(frozen=True)

    configurations: Tuple[Tuple[int, int], ...] = ()

    @field_validator("configurations")
    @classmethod
    def _check_pairs(cls, configurations: Tuple[Tuple[int, int], ...]) -> Tuple[Tuple[int, int], ...]:
        for p, q in configurations:
            if not p > q > 0 or gcd(p, q) != 1:
                raise ValueError(f"C_(p,q) needs p > q > 0 coprime, got ({p}, {q})")
        return configurations

    @property
    def total_length(self) -> int:
        return sum(len(cpq_string(p, q)) for p, q in self.configurations)


class NoetherResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    holds: bool
    # c1^2 - (2 chi_h - 6)
    margin: Fraction
    general_type_possible: bool
    caveat: str = GENERAL_TYPE_CAVEAT


class GeographyReport(BaseModel):
    """Noether and Bogomolov-Miyaoka-Yau checks with margins, plus E(n) recognition."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    invariants: FourManifoldInvariants
    noether: NoetherResult
    bmy_holds: bool
    # 9 chi_h - c1^2
    bmy_margin: Fraction
    issues: Tuple[str, ...]
    en: Optional[int]

    @property
    def consistent(self) -> bool:
        return not self.issues


def blow_down(m: FourManifoldInvariants, p: int, q: int) -> FourManifoldInvariants:
    """
    Replaces a C_{p,q} plumbing of k spheres by the rational ball B_{p,q}.

    chi drops by k (chi(C_{p,q}) = k + 1, chi(B_{p,q}) = 1) and the rank k
    negative definite piece leaves the signature, so sigma rises by k.
    chi_h is unchanged.

    Raises:
        InsufficientNegativePart: If k exceeds b- of m
    """
    k = len(cpq_string(p, q))
    if k > m.bminus:
        logger.error(f"C_({p},{q}) needs {k} negative directions, b- = {m.bminus}")
        raise InsufficientNegativePart(f"C_({p},{q}) has {k} spheres but b- = {m.bminus}")

    result = m.model_copy(update={"chi": m.chi - k, "sigma": m.sigma + k})
    if result.chi_h != m.chi_h:
        raise ConsistencyFailure(f"blow-down changed chi_h from {m.chi_h} to {result.chi_h}")
    logger.debug(f"Blew down C_({p},{q}): ({m.chi}, {m.sigma}) -> ({result.chi}, {result.sigma})")
    return result


def full_blow_down(m: FourManifoldInvariants, plan: BlowdownPlan) -> FourManifoldInvariants:
    """
    Blows down every configuration of the plan.

    Raises:
        InsufficientNegativePart: If the configurations together exceed b-
    """
    if plan.total_length > m.bminus:
        logger.error(f"Plan needs {plan.total_length} negative directions, b- = {m.bminus}")
        raise InsufficientNegativePart(f"plan has {plan.total_length} spheres in total but b- = {m.bminus}")
    result = m
    for p, q in plan.configurations:
        result = blow_down(result, p, q)
    if not plan.configurations:
        return result
    return result.with_note(f"rationally blown down {len(plan.configurations)} configuration(s)")


def plan_from_inventory(inv: QuotientInventory) -> BlowdownPlan:
    """
    The full rational blow-down of a quotient: one C_{n,a} per T-singularity
    1/n^2(1, na - 1). Rational double points stay resolved.

    Raises:
        NotRationalBlowdown: For a T-singularity with d > 1
    """
    configurations: List[Tuple[int, int]] = []
    for entry in inv.entries:
        c = classify_T(entry.type)
        if c.kind == "rdp_a":
            continue
        if c.kind != "t_type" or c.t_type is None:
            raise NotRationalBlowdown(f"{entry.type} is not of class T")
        if c.t_type.d != 1:
            logger.error(f"{entry.type} has d = {c.t_type.d}; its Milnor fibre is not a rational ball")
            raise NotRationalBlowdown(f"{entry.type} = {c.t_type} has d > 1")
        configurations.extend([(c.t_type.n, c.t_type.a)] * entry.multiplicity)
    return BlowdownPlan(configurations=tuple(configurations))


def noether_check(m: FourManifoldInvariants) -> NoetherResult:
    """c1^2 >= 2 chi_h - 6, with a margin; c1^2 <= 0 rules out general type."""
    margin = m.c1sq - (2 * m.chi_h - 6)
    result = NoetherResult(holds=margin >= 0, margin=margin, general_type_possible=m.c1sq > 0)
    if not result.holds:
        logger.warning(f"Noether inequality fails by {-margin} for chi={m.chi}, sigma={m.sigma}")
    return result


def geography_report(m: FourManifoldInvariants) -> GeographyReport:
    bmy_margin = 9 * m.chi_h - m.c1sq
    return GeographyReport(
        invariants=m,
        noether=noether_check(m),
        bmy_holds=bmy_margin >= 0,
        bmy_margin=bmy_margin,
        issues=tuple(m.consistency_issues()),
        en=recognize_en(m),
    )


def e4_invariants() -> FourManifoldInvariants:
    return FourManifoldInvariants(chi=E4_CHI, sigma=E4_SIGMA)


def w4n(n: int) -> FourManifoldInvariants:
    """
    E(4) with n disjoint (-4)-sections rationally blown down.

    Raises:
        OutOfRange: Unless 1 <= n <= 9
    """
    if not 1 <= n <= W4N_MAX:
        logger.error(f"W_(4,{n}) requested, n must lie in 1..{W4N_MAX}")
        raise OutOfRange(f"n must lie in 1..{W4N_MAX}, got {n}")
    return full_blow_down(e4_invariants(), BlowdownPlan(configurations=((2, 1),) * n))


def normal_connected_sum(
    m1: FourManifoldInvariants,
    m2: FourManifoldInvariants,
    genus: int,
    selfint1: int,
    selfint2: int,
) -> FourManifoldInvariants:
    """
    Gluing along embedded surfaces of genus g with dual normal bundles.

    chi = chi1 + chi2 - 2 (2 - 2g) and sigma = sigma1 + sigma2.

    Raises:
        IncompatibleNormalBundles: If selfint1 + selfint2 != 0
    """
    if selfint1 + selfint2 != 0:
        logger.error(f"Normal bundles of degrees {selfint1} and {selfint2} are not dual")
        raise IncompatibleNormalBundles(f"self-intersections {selfint1} and {selfint2} do not sum to zero")
    if m1.b1 != 0 or m2.b1 != 0:
        raise ValueError("the normal connected sum is only tracked for b1 = 0 summands")
    if genus < 0:
        raise ValueError(f"genus must be nonnegative, got {genus}")
    return FourManifoldInvariants(
        chi=m1.chi + m2.chi - 2 * (2 - 2 * genus),
        sigma=m1.sigma + m2.sigma,
    ).with_note(f"normal connected sum along a genus {genus} surface")
