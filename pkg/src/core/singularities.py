"""Cyclic quotient singularities 1/r(a, b): normal form, class T, resolution."""
import logging
from fractions import Fraction
from math import gcd, isqrt
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, model_validator

from config import CLASSIFY_T_MAX_ORDER
from ..utils.errors import ConsistencyFailure, NonIsolatedFixedLocus, NotTType, SmoothInput
from .exactmath import solve_symmetric
from .hj import HJString, chain_matrix, hj_expand

logger = logging.getLogger(__name__)


class CyclicQuotientType(BaseModel):
    """
    The germ C^2/Z_r with Z_r acting by (z1, z2) -> (zeta^a z1, zeta^b z2),
    together with its normal form 1/r(1, q), q = a^{-1} b mod r.
    """

    model_config = ConfigDict(frozen=True)

    r: int
    a: int
    b: int
    q: int

    @property
    def is_smooth(self) -> bool:
        return self.r == 1

    def __str__(self) -> str:
        if self.is_smooth:
            return "smooth"
        return f"1/{self.r}(1,{self.q})"


class TFactorization(BaseModel):
    """(d, n, a) with r = d n^2 and q = d n a - 1."""

    model_config = ConfigDict(frozen=True)

    d: int
    n: int
    a: int

    @model_validator(mode="after")
    def _check(self) -> "TFactorization":
        if self.d <= 0 or self.n < 2 or gcd(self.a, self.n) != 1:
            raise ValueError(f"need d > 0, n >= 2, gcd(a, n) = 1, got {self}")
        return self

    @property
    def r(self) -> int:
        return self.d * self.n * self.n

    @property
    def q(self) -> int:
        return self.d * self.n * self.a - 1

    def __str__(self) -> str:
        return f"T(d={self.d},n={self.n},a={self.a})"


class TClassification(BaseModel):
    """Result of class T recognition: smooth, A_k, T(d, n, a) or not class T."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["smooth", "rdp_a", "t_type", "not_class_t"]
    rdp_index: Optional[int] = None
    t_type: Optional[TFactorization] = None
    # every (d, n, a) factorization, also when an RDP tag is primary
    annotations: Tuple[TFactorization, ...] = ()

    @property
    def is_class_t(self) -> bool:
        return self.kind in ("rdp_a", "t_type")

    @property
    def is_rdp(self) -> bool:
        return self.kind == "rdp_a"

    def __str__(self) -> str:
        if self.kind == "rdp_a":
            return f"A_{self.rdp_index}"
        if self.kind == "t_type":
            return str(self.t_type)
        return self.kind


class ResolutionData(BaseModel):
    """Minimal resolution of a cyclic quotient germ and its effect on K^2 and chi."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    string: HJString
    discrepancies: Tuple[Fraction, ...]
    delta_K2: Fraction
    delta_chi: int

    @model_validator(mode="after")
    def _check(self) -> "ResolutionData":
        if len(self.discrepancies) != len(self.string.terms) or self.delta_chi != len(self.string.terms):
            raise ValueError("one discrepancy and one Euler number step per exceptional curve")
        if any(not -1 < x <= 0 for x in self.discrepancies):
            raise ValueError(f"discrepancies out of (-1, 0]: {[str(x) for x in self.discrepancies]}")
        return self


def normalize(r: int, a: int, b: int) -> CyclicQuotientType:
    """
    Brings 1/r(a, b) to the form 1/r(1, q). The result carries weights (1, q),
    so germs with proportional weights compare equal.

    Raises:
        NonIsolatedFixedLocus: If a or b shares a factor with r
    """
    if r < 1:
        raise ValueError(f"group order must be positive, got {r}")
    if r == 1:
        return CyclicQuotientType(r=1, a=0, b=0, q=0)
    if gcd(r, a) != 1 or gcd(r, b) != 1:
        logger.error(f"Weights ({a}, {b}) are not units modulo {r}")
        raise NonIsolatedFixedLocus(f"1/{r}({a},{b}) does not have an isolated fixed point")
    q = (pow(a, -1, r) * b) % r
    return CyclicQuotientType(r=r, a=1, b=q, q=q)


def t_annotations(t: CyclicQuotientType) -> List[TFactorization]:
    """Every (d, n, a) with r = d n^2, q = d n a - 1, by brute force over divisors."""
    if t.r > CLASSIFY_T_MAX_ORDER:
        raise ValueError(f"order {t.r} exceeds the recognition guard {CLASSIFY_T_MAX_ORDER}")
    found = []
    for n in range(2, isqrt(t.r) + 1):
        if t.r % (n * n):
            continue
        d = t.r // (n * n)
        if (t.q + 1) % (d * n):
            continue
        a = (t.q + 1) // (d * n)
        if gcd(a, n) == 1:
            found.append(TFactorization(d=d, n=n, a=a))
    return found


def classify_T(t: CyclicQuotientType) -> TClassification:
    """Recognises rational double points A_k and germs 1/dn^2(1, dna - 1)."""
    if t.is_smooth:
        return TClassification(kind="smooth")
    annotations = tuple(t_annotations(t))
    if t.q == t.r - 1:
        if annotations:
            logger.info(f"{t} is both A_{t.r - 1} and of T-form {annotations[0]}")
        return TClassification(kind="rdp_a", rdp_index=t.r - 1, annotations=annotations)
    if annotations:
        return TClassification(kind="t_type", t_type=annotations[0], annotations=annotations)
    return TClassification(kind="not_class_t")


def resolve(t: CyclicQuotientType) -> ResolutionData:
    """
    Minimal resolution of 1/r(1, q) and its discrepancies.

    The discrepancies a_i solve M a = v with M the chain intersection matrix
    and v_i = b_i - 2 = K.E_i (adjunction on the rational curve E_i), so that
    K_resolved = pullback K + sum a_i E_i and delta K^2 = sum a_i (b_i - 2).

    Raises:
        SmoothInput: If the germ is a smooth point
    """
    if t.is_smooth:
        logger.error("Asked to resolve a smooth point")
        raise SmoothInput("a smooth point has no resolution graph")

    string = hj_expand(t.r, t.q)
    v = [b - 2 for b in string.terms]
    discrepancies = solve_symmetric(chain_matrix(string), v)
    delta_K2 = sum((x * w for x, w in zip(discrepancies, v)), Fraction(0))
    logger.debug(f"Resolution of {t}: {string}, discrepancies {[str(x) for x in discrepancies]}")

    try:
        return ResolutionData(
            string=string,
            discrepancies=tuple(discrepancies),
            delta_K2=delta_K2,
            delta_chi=len(string.terms),
        )
    except ValueError as e:
        logger.error(f"Resolution data of {t} is inconsistent: {str(e)}")
        raise ConsistencyFailure(f"resolution of {t} violates the klt bounds: {str(e)}")


def qg_deformation_dim(c: TClassification) -> int:
    """
    Number d of parameters t_0, ..., t_{d-1} of the Q-Gorenstein smoothing family.

    Raises:
        NotTType: If c is not of type 1/dn^2(1, dna - 1)
    """
    if c.kind != "t_type" or c.t_type is None:
        raise NotTType(f"{c} is not of type 1/dn^2(1,dna-1)")
    return c.t_type.d


def milnor_number_of_smoothing(c: TClassification) -> int:
    """b_2 of the Milnor fibre of the Q-Gorenstein smoothing: d - 1."""
    return qg_deformation_dim(c) - 1
