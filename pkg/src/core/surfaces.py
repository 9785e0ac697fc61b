"""Divisor classes on Hirzebruch surfaces, double covers and surface invariants."""
import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, computed_field, field_validator

from ..utils.errors import ConsistencyFailure, IneffectiveBranch, MeetsBranch, MixedSurfaces, NonIntegralGenus

logger = logging.getLogger(__name__)

B1_ASSUMPTION = "b1 = 0 assumed"


class HirzebruchClass(BaseModel):
    """
    The class a*C0 + b*f on the Hirzebruch surface Sigma_e.

    C0 is the negative section (C0^2 = -e) and f the fibre class; for e = 0
    this is the bidegree (a, b) class on P1 x P1.
    """

    model_config = ConfigDict(frozen=True)

    e: int
    a: int
    b: int

    @field_validator("e")
    @classmethod
    def _check_e(cls, e: int) -> int:
        if e < 0:
            raise ValueError(f"Sigma_e needs e >= 0, got {e}")
        return e

    def __add__(self, other: "HirzebruchClass") -> "HirzebruchClass":
        _same_surface(self, other)
        return HirzebruchClass(e=self.e, a=self.a + other.a, b=self.b + other.b)

    def __sub__(self, other: "HirzebruchClass") -> "HirzebruchClass":
        _same_surface(self, other)
        return HirzebruchClass(e=self.e, a=self.a - other.a, b=self.b - other.b)

    def __rmul__(self, k: int) -> "HirzebruchClass":
        return HirzebruchClass(e=self.e, a=k * self.a, b=k * self.b)

    def __str__(self) -> str:
        return f"{self.a}C0{self.b:+d}f on Sigma_{self.e}"


class FourManifoldInvariants(BaseModel):
    """
    Euler number, signature and b1 of a closed oriented 4-manifold, with the
    Chern numbers of a complex surface read off from them.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    chi: int
    sigma: int
    b1: int = 0
    notes: Tuple[str, ...] = (B1_ASSUMPTION,)

    @computed_field
    @property
    def c1sq(self) -> int:
        return 2 * self.chi + 3 * self.sigma

    @computed_field
    @property
    def chi_h(self) -> Fraction:
        return Fraction(self.chi + self.sigma, 4)

    @computed_field
    @property
    def b2(self) -> int:
        return self.chi - 2 + 2 * self.b1

    @computed_field
    @property
    def bplus(self) -> Fraction:
        return Fraction(self.b2 + self.sigma, 2)

    @computed_field
    @property
    def bminus(self) -> Fraction:
        return Fraction(self.b2 - self.sigma, 2)

    def noether_holds(self) -> bool:
        """c1^2 + chi = 12 chi_h."""
        return self.c1sq + self.chi == 12 * self.chi_h

    def consistency_issues(self) -> List[str]:
        """Reasons why no simply connected complex surface has these numbers."""
        issues = []
        if self.chi_h.denominator != 1:
            issues.append(f"chi_h = {self.chi_h} is not an integer")
        if self.bplus.denominator != 1 or self.bminus.denominator != 1:
            issues.append("b2 and sigma have different parity")
        if self.bplus < 0 or self.bminus < 0:
            issues.append(f"negative Betti number: b+ = {self.bplus}, b- = {self.bminus}")
        return issues

    def with_note(self, note: str) -> "FourManifoldInvariants":
        return self.model_copy(update={"notes": self.notes + (note,)})


def _same_surface(x: HirzebruchClass, y: HirzebruchClass) -> None:
    if x.e != y.e:
        logger.error(f"Classes on Sigma_{x.e} and Sigma_{y.e} combined")
        raise MixedSurfaces(f"classes live on Sigma_{x.e} and Sigma_{y.e}")


def fibre(e: int) -> HirzebruchClass:
    return HirzebruchClass(e=e, a=0, b=1)


def negative_section(e: int) -> HirzebruchClass:
    return HirzebruchClass(e=e, a=1, b=0)


def p1xp1_class(a: int, b: int) -> HirzebruchClass:
    return HirzebruchClass(e=0, a=a, b=b)


def canonical_class(e: int) -> HirzebruchClass:
    """K = -2 C0 - (e + 2) f."""
    return HirzebruchClass(e=e, a=-2, b=-(e + 2))


def intersect(x: HirzebruchClass, y: HirzebruchClass) -> int:
    """(a1 C0 + b1 f).(a2 C0 + b2 f) = -e a1 a2 + a1 b2 + a2 b1."""
    _same_surface(x, y)
    return -x.e * x.a * y.a + x.a * y.b + y.a * x.b


def is_effective(x: HirzebruchClass) -> bool:
    """Membership in the cone spanned by C0 and f."""
    return x.a >= 0 and x.b >= 0


def genus_smooth_member(x: HirzebruchClass) -> int:
    """
    Genus of a smooth member of |x| by adjunction: 1 + (x^2 + x.K)/2.

    Raises:
        NonIntegralGenus: If x^2 + x.K is odd
    """
    twice = intersect(x, x) + intersect(x, canonical_class(x.e))
    if twice % 2:
        logger.error(f"Adjunction gives a half-integral genus for {x}")
        raise NonIntegralGenus(f"x^2 + x.K = {twice} is odd for {x}")
    return 1 + twice // 2


def genus_bidegree(a: int, b: int) -> int:
    """Genus (a - 1)(b - 1) of a smooth curve of bidegree (a, b) on P1 x P1."""
    if a < 1 or b < 1:
        raise ValueError(f"bidegree must be positive, got ({a}, {b})")
    return (a - 1) * (b - 1)


def hirzebruch_invariants(e: int) -> FourManifoldInvariants:
    if e < 0:
        raise ValueError(f"Sigma_e needs e >= 0, got {e}")
    return FourManifoldInvariants(chi=4, sigma=0)


def projective_plane_invariants() -> FourManifoldInvariants:
    return FourManifoldInvariants(chi=3, sigma=1)


def _from_chern_numbers(chi: int, c1sq: int, chi_h: Fraction, label: str) -> FourManifoldInvariants:
    """Signature from (chi, c1^2), then checked against the holomorphic Euler characteristic."""
    if (c1sq - 2 * chi) % 3:
        raise ConsistencyFailure(f"{label}: c1^2 - 2 chi = {c1sq - 2 * chi} is not divisible by 3")
    result = FourManifoldInvariants(chi=chi, sigma=(c1sq - 2 * chi) // 3)
    if result.chi_h != chi_h:
        logger.error(f"{label}: chi_h {result.chi_h} from (chi, sigma) differs from {chi_h}")
        raise ConsistencyFailure(f"{label}: chi_h mismatch {result.chi_h} != {chi_h}")
    return result


def double_cover(base: FourManifoldInvariants, L: HirzebruchClass) -> FourManifoldInvariants:
    """
    Invariants of the double cover of Sigma_e branched along a smooth B in |2L|.

    chi(X) = 2 chi(base) - chi(B), c1^2(X) = 2 (K + L)^2 and
    chi_h(X) = 2 chi_h(base) + (L^2 + L.K)/2; the signature follows from the
    first two and is cross-checked against the third.

    Raises:
        IneffectiveBranch: If 2L is not effective
        ConsistencyFailure: If the two routes to chi_h disagree
    """
    branch = 2 * L
    if not is_effective(branch):
        logger.error(f"Branch class {branch} is not effective")
        raise IneffectiveBranch(f"branch divisor {branch} is not effective")

    K = canonical_class(L.e)
    if branch.a == 0 and branch.b == 0:
        logger.warning("Empty branch locus: the double cover is disconnected")
        chi_branch = 0
        note = "disconnected cover: empty branch locus"
    else:
        chi_branch = 2 - 2 * genus_smooth_member(branch)
        note = f"branched along a smooth member of |{branch.a}C0+{branch.b}f|"

    chi = 2 * base.chi - chi_branch
    c1sq = 2 * intersect(K + L, K + L)
    chi_h = 2 * base.chi_h + Fraction(intersect(L, L) + intersect(L, K), 2)
    logger.debug(f"Double cover of Sigma_{L.e} along |2L|, L = {L}: chi={chi}, c1^2={c1sq}, chi_h={chi_h}")
    return _from_chern_numbers(chi, c1sq, chi_h, "double cover").with_note(note)


def projective_plane_double_cover(degree: int) -> FourManifoldInvariants:
    """
    Double cover of P^2 branched along a smooth curve of even degree 2k.

    The octic gives a Horikawa surface with the invariants of W_{4,2}.
    """
    if degree <= 0 or degree % 2:
        raise IneffectiveBranch(f"branch degree must be positive and even, got {degree}")
    k = degree // 2
    genus = (degree - 1) * (degree - 2) // 2
    chi = 2 * 3 - (2 - 2 * genus)
    c1sq = 2 * (k - 3) ** 2
    chi_h = 2 + Fraction(k * k - 3 * k, 2)
    return _from_chern_numbers(chi, c1sq, chi_h, "double plane").with_note(
        f"branched along a smooth plane curve of degree {degree}"
    )


class SplitPreimage(BaseModel):
    model_config = ConfigDict(frozen=True)

    components: int
    each_selfint: int


def split_preimage(d: HirzebruchClass, branch: HirzebruchClass) -> SplitPreimage:
    """
    Preimage of a curve disjoint from the branch locus: two disjoint copies,
    each with the self-intersection of d.

    Raises:
        MeetsBranch: If d.B != 0
    """
    meeting = intersect(d, branch)
    if meeting != 0:
        logger.error(f"{d} meets the branch curve {branch} in {meeting} points")
        raise MeetsBranch(f"{d} . {branch} = {meeting} != 0")
    return SplitPreimage(components=2, each_selfint=intersect(d, d))


def det_twisted_cotangent(e: int, d: HirzebruchClass) -> HirzebruchClass:
    """Class of the determinant of Omega^1 (x) O(d) on Sigma_e, namely K + 2d."""
    return canonical_class(e) + 2 * d


def recognize_en(m: FourManifoldInvariants) -> Optional[int]:
    """n such that the numbers are those of E(n): chi = 12n, sigma = -8n, c1^2 = 0."""
    if m.b1 != 0 or m.chi <= 0 or m.chi % 12:
        return None
    n = m.chi // 12
    if m.sigma == -8 * n and m.c1sq == 0 and m.chi_h == n:
        return n
    return None
