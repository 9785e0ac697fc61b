"""
Diagnostics for the Q-Gorenstein smoothing family of a class T singularity.

The family is uv = y^{dn} + sum_{k<d} t_k y^{kn} in C^3, with Z_n acting by
(u, v, y) -> (zeta u, zeta^{-1} v, zeta^a y). Its central fibre divided by
Z_n is the singularity 1/dn^2(1, dna - 1).
"""
import logging
from fractions import Fraction
from math import gcd
from typing import List, Tuple

import sympy as sp
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from ..utils.errors import InvalidPQ, InvalidSpec
from .exactmath import squarefree, uni_poly
from .hj import HJString, cpq_string, reverse
from .singularities import (
    CyclicQuotientType,
    ResolutionData,
    TClassification,
    classify_T,
    milnor_number_of_smoothing,
    normalize,
    resolve,
)

logger = logging.getLogger(__name__)

Y = sp.Symbol("y")


class TFamilySpec(BaseModel):
    """(d, n, a) and the d deformation parameters t_0, ..., t_{d-1}."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    d: int
    n: int
    a: int
    t: Tuple[Fraction, ...]

    @model_validator(mode="after")
    def _check(self) -> "TFamilySpec":
        if self.d <= 0 or self.n < 2 or gcd(self.a, self.n) != 1:
            raise ValueError(f"need d > 0, n >= 2, gcd(a, n) = 1, got d={self.d}, n={self.n}, a={self.a}")
        if len(self.t) != self.d:
            raise ValueError(f"need exactly d = {self.d} parameters, got {len(self.t)}")
        return self

    @classmethod
    def of(cls, d: int, n: int, a: int, t: List) -> "TFamilySpec":
        """
        Validated constructor.

        Raises:
            InvalidSpec: If the data violates d > 0, n >= 2, gcd(a, n) = 1 or len(t) = d
        """
        try:
            return cls(d=d, n=n, a=a, t=tuple(Fraction(x) for x in t))
        except ValidationError as e:
            logger.error(f"Invalid smoothing family ({d}, {n}, {a}): {e.errors()[0]['msg']}")
            raise InvalidSpec(f"invalid family (d={d}, n={n}, a={a}, t={list(t)}): {e.errors()[0]['msg']}")


class CpqCrossReference(BaseModel):
    """Which (p, q) conventions make C_{p,q} match the resolution string."""

    model_config = ConfigDict(frozen=True)

    candidates: Tuple[Tuple[int, int], ...]
    matches: Tuple[Tuple[int, int], ...]


class SmoothingReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: TFamilySpec
    central_fibre: CyclicQuotientType
    classification: TClassification
    resolution: ResolutionData
    action_preserves: bool
    fiber_smooth: bool
    action_free: bool
    milnor_number: int
    k: int
    # replacing the resolution chain (chi = k + 1) by the negative definite Milnor fibre
    delta_chi: int
    delta_sigma: int
    cpq: CpqCrossReference


def _weight(monomial_u: int, monomial_v: int, monomial_y: int, spec: TFamilySpec) -> int:
    return (monomial_u - monomial_v + spec.a * monomial_y) % spec.n


def action_preserves(spec: TFamilySpec) -> bool:
    """Every monomial of uv - p(y) has weight 0 mod n, so the fibres are Z_n-invariant."""
    monomials = [(1, 1, 0), (0, 0, spec.d * spec.n)]
    monomials += [(0, 0, k * spec.n) for k, t_k in enumerate(spec.t) if t_k != 0]
    return all(_weight(u, v, y, spec) == 0 for u, v, y in monomials)


def family_polynomial(spec: TFamilySpec) -> sp.Poly:
    """p(y) = y^{dn} + sum_k t_k y^{kn}."""
    coefficients: List[Fraction] = [Fraction(0)] * (spec.d * spec.n + 1)
    coefficients[-1] = Fraction(1)
    for k, t_k in enumerate(spec.t):
        coefficients[k * spec.n] += t_k
    return uni_poly(coefficients, Y)


def fiber_smooth(spec: TFamilySpec) -> bool:
    """
    uv = p(y) is singular only where u = v = 0 and p(y) = p'(y) = 0, so the
    fibre is smooth exactly when p is squarefree.
    """
    return squarefree(family_polynomial(spec))


def action_free(spec: TFamilySpec) -> bool:
    """
    A point fixed by a nontrivial power has u = v = 0 and, a being a unit,
    y = 0; the origin lies on the fibre iff p(0) = 0.
    """
    p = family_polynomial(spec)
    return p.eval(0) != 0


def central_fibre_type(spec: TFamilySpec) -> CyclicQuotientType:
    return normalize(spec.d * spec.n * spec.n, 1, spec.d * spec.n * spec.a - 1)


def _cpq_cross_reference(spec: TFamilySpec, string: HJString) -> CpqCrossReference:
    a = spec.a % spec.n
    candidates = tuple(dict.fromkeys([(spec.n, a), (spec.n, spec.n - a)]))
    matches = []
    for p, q in candidates:
        try:
            chain = cpq_string(p, q)
        except InvalidPQ:
            continue
        if chain == string or reverse(chain) == string:
            matches.append((p, q))
    if spec.d == 1 and not matches:
        logger.warning(f"No C_(p,q) convention matches the resolution string {string} of d = 1 family")
    return CpqCrossReference(candidates=candidates, matches=tuple(matches))


def smoothing_report(spec: TFamilySpec) -> SmoothingReport:
    """
    Central fibre, its resolution, fibre diagnostics and the invariant changes
    of replacing the resolution by the Milnor fibre of the smoothing.
    """
    central = central_fibre_type(spec)
    classification = classify_T(central)
    resolution = resolve(central)
    k = len(resolution.string)
    milnor = milnor_number_of_smoothing(classification) if classification.kind == "t_type" else spec.d - 1

    report = SmoothingReport(
        spec=spec,
        central_fibre=central,
        classification=classification,
        resolution=resolution,
        action_preserves=action_preserves(spec),
        fiber_smooth=fiber_smooth(spec),
        action_free=action_free(spec),
        milnor_number=milnor,
        k=k,
        delta_chi=milnor - k,
        delta_sigma=k - milnor,
        cpq=_cpq_cross_reference(spec, resolution.string),
    )
    logger.info(f"Smoothing of {central}: resolution {resolution.string}, smooth={report.fiber_smooth}, free={report.action_free}")
    return report
