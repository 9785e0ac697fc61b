"""Hirzebruch-Jung continued fractions, C_{p,q} strings and lens spaces.

Convention: the string [b_1, ..., b_k] has value b_1 - 1/(b_2 - 1/(... - 1/b_k)),
and the chain it describes has spheres of self-intersection -b_i. The lens
space of a chain with value m/q is L(m, q).
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..utils.errors import InvalidFraction, InvalidPQ
from .exactmath import SymMatrix

logger = logging.getLogger(__name__)


class HJString(BaseModel):
    """Linear chain of rational curves with self-intersections -b_i."""

    model_config = ConfigDict(frozen=True)

    terms: Tuple[int, ...]

    @field_validator("terms")
    @classmethod
    def _check_terms(cls, terms: Tuple[int, ...]) -> Tuple[int, ...]:
        if not terms:
            raise ValueError("an HJ string needs at least one term")
        if any(b < 2 for b in terms):
            raise ValueError(f"every term must be >= 2, got {list(terms)}")
        return terms

    @classmethod
    def of(cls, *terms: int) -> "HJString":
        return cls(terms=tuple(terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return "[" + ",".join(str(b) for b in self.terms) + "]"


class LensSpace(BaseModel):
    """L(m, q), stored with 0 < q < m."""

    model_config = ConfigDict(frozen=True)

    m: int
    q: int

    @model_validator(mode="after")
    def _check(self) -> "LensSpace":
        if self.m < 2:
            raise ValueError(f"lens space order must be >= 2, got {self.m}")
        if not 0 < self.q < self.m or gcd(self.m, self.q) != 1:
            raise ValueError(f"L({self.m}, {self.q}) needs 0 < q < m coprime to m")
        return self

    @classmethod
    def of(cls, m: int, q: int) -> "LensSpace":
        """Builds L(m, q) after reducing q modulo m."""
        return cls(m=m, q=q % m)

    def __str__(self) -> str:
        return f"L({self.m},{self.q})"


def _check_fraction(m: int, q: int) -> None:
    if not 0 < q < m or gcd(m, q) != 1:
        logger.error(f"Invalid fraction {m}/{q}")
        raise InvalidFraction(f"need 0 < q < m with gcd(m, q) = 1, got m={m}, q={q}")


def hj_expand(m: int, q: int) -> HJString:
    """
    Expands m/q into its unique continued fraction with all terms >= 2.

    Args:
        m: Numerator, m > q
        q: Denominator, coprime to m

    Returns:
        HJString: [b_1, ..., b_k] with hj_value = m/q

    Raises:
        InvalidFraction: If 0 < q < m, gcd(m, q) = 1 fails
    """
    _check_fraction(m, q)
    terms = []
    while True:
        b = -(-m // q)
        terms.append(b)
        remainder = b * q - m
        if remainder == 0:
            break
        m, q = q, remainder
    return HJString(terms=tuple(terms))


def hj_value(s: HJString) -> Fraction:
    """Evaluates the continued fraction of s."""
    value = Fraction(s.terms[-1])
    for b in reversed(s.terms[:-1]):
        value = b - 1 / value
    return value


def cpq_string(p: int, q: int) -> HJString:
    """
    The string of C_{p,q}: the expansion of p^2/(pq - 1).

    Raises:
        InvalidPQ: If p > q > 0, gcd(p, q) = 1 fails
    """
    if not p > q > 0 or gcd(p, q) != 1:
        logger.error(f"Invalid C_(p,q) parameters p={p}, q={q}")
        raise InvalidPQ(f"need p > q > 0 with gcd(p, q) = 1, got p={p}, q={q}")
    return hj_expand(p * p, p * q - 1)


def lens_of_chain(s: HJString) -> LensSpace:
    value = hj_value(s)
    return LensSpace(m=value.numerator, q=value.denominator)


def lens_equivalent(a: LensSpace, b: LensSpace, allow_reversal: bool = False) -> bool:
    """
    Decides L(m, q) = L(m, q') as oriented manifolds.

    Oriented equivalence holds iff q' = q^{+1 or -1} mod m; with
    allow_reversal, -q^{+1 or -1} is accepted too.
    """
    if a.m != b.m:
        return False
    m = a.m
    candidates = {a.q, pow(a.q, -1, m)}
    if allow_reversal:
        candidates |= {(-c) % m for c in candidates}
    return b.q in candidates


def dual_string(m: int, q: int) -> HJString:
    """The expansion of m/(m - q), which describes the orientation-reversed boundary."""
    _check_fraction(m, q)
    return hj_expand(m, m - q)


def reverse(s: HJString) -> HJString:
    return HJString(terms=tuple(reversed(s.terms)))


def chain_matrix(s: HJString) -> SymMatrix:
    """Intersection matrix of the chain: -b_i on the diagonal, 1 between neighbours."""
    k = len(s.terms)
    rows = [[0] * k for _ in range(k)]
    for i, b in enumerate(s.terms):
        rows[i][i] = -b
        if i + 1 < k:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return SymMatrix(rows)


def is_wahl_string(s: HJString) -> bool:
    """
    Tests whether s is reached from [4] by the rewrites
    [b_1, ..., b_k] -> [b_1 + 1, ..., b_k, 2] and [2, b_1, ..., b_k + 1].
    """
    terms = list(s.terms)
    while terms != [4]:
        if len(terms) < 2:
            return False
        first, last = terms[0], terms[-1]
        if last == 2 and first > 2:
            terms = [first - 1] + terms[1:-1]
        elif first == 2 and last > 2:
            terms = terms[1:-1] + [last - 1]
        else:
            return False
    return True
