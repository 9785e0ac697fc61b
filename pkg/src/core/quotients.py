"""Cyclic group actions on curves in P1 x P1 and on their products.

The generator acts on P1 x P1 by ([z0:z1], [w0:w1]) -> ([zeta z0:z1], [w0:w1])
with zeta = i for the group Z_4 (or -1 for Z_2). Everything is computed over
the Gaussian rationals.
"""
import logging
from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

import sympy as sp
from pydantic import BaseModel, ConfigDict

from config import DEFAULT_GROUP_ORDER
from ..utils.errors import (
    ConsistencyFailure,
    IrreducibleFactor,
    NonIntegerResult,
    NonIntegralLefschetz,
    NonIsolatedFixedLocus,
    NotClassT,
    SingularPoint,
)
from .exactmath import GaussRational, gauss_root_of_unity
from .singularities import CyclicQuotientType, classify_T, normalize, resolve
from .surfaces import FourManifoldInvariants, genus_bidegree, recognize_en

logger = logging.getLogger(__name__)

Z0, Z1, W0, W1 = sp.symbols("z0 z1 w0 w1")
_S, _U, _T = sp.symbols("s u t")

ProjectivePoint = Tuple[GaussRational, GaussRational]


class BiProjCurve(BaseModel):
    """Curve F(z, w) = 0 in P1 x P1, F bihomogeneous of bidegree (d1, d2)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    bidegree: Tuple[int, int]
    equation: sp.Expr

    @classmethod
    def from_expression(cls, equation: Union[str, sp.Expr]) -> "BiProjCurve":
        """
        Builds a curve from an expression in z0, z1, w0, w1 (``I`` or ``i`` for sqrt(-1)).

        Raises:
            ValueError: If the expression is zero or not bihomogeneous
        """
        if isinstance(equation, str):
            equation = sp.sympify(equation, locals={"z0": Z0, "z1": Z1, "w0": W0, "w1": W1, "i": sp.I})
        poly = sp.Poly(sp.expand(equation), Z0, Z1, W0, W1, domain=sp.QQ_I)
        if poly.is_zero:
            raise ValueError("the zero polynomial does not define a curve")
        degrees = {(e0 + e1, f0 + f1) for e0, e1, f0, f1 in poly.monoms()}
        if len(degrees) != 1:
            raise ValueError(f"equation is not bihomogeneous, monomial bidegrees {sorted(degrees)}")
        return cls(bidegree=degrees.pop(), equation=sp.expand(equation))

    @property
    def genus(self) -> int:
        """Genus of a smooth curve of this bidegree."""
        return curve_genus(self)


class FixedPointDatum(BaseModel):
    """An isolated fixed point of the generator on a curve and its tangent weight."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    z: ProjectivePoint
    w: ProjectivePoint
    tangent_weight: int

    def label(self) -> str:
        return f"([{self.z[0]}:{self.z[1]}],[{self.w[0]}:{self.w[1]}])"


class InventoryEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    type: CyclicQuotientType
    multiplicity: int


class QuotientInventory(BaseModel):
    """Singular points of (C x C')/G with the invariants of the smooth cover C x C'."""

    model_config = ConfigDict(frozen=True)

    entries: Tuple[InventoryEntry, ...]
    cover_chi: int
    cover_K2: int
    cover_chi_o: int
    group_order: int

    @property
    def total_points(self) -> int:
        return sum(e.multiplicity for e in self.entries)


class ElementFixedData(BaseModel):
    """
    Fixed points of the group element g^power, each given by the weights
    (a, b) of the generator at the point and a multiplicity.
    """

    model_config = ConfigDict(frozen=True)

    power: int
    points: Tuple[Tuple[int, int, int], ...]


def curve_genus(c: BiProjCurve) -> int:
    return genus_bidegree(*c.bidegree)


def e4_curve() -> BiProjCurve:
    """The genus 3 curve z0^4 (w0^2 + w1^2) + z1^4 (w0^2 - w1^2) = 0."""
    return BiProjCurve.from_expression(Z0**4 * (W0**2 + W1**2) + Z1**4 * (W0**2 - W1**2))


def ck_curve(k: int) -> BiProjCurve:
    """
    A member z0^4 f_k(w) + z1^4 g_k(w) of the bidegree (4, k) family with
    f_k, g_k products of distinct rational linear forms.
    """
    if not 1 <= k <= 4:
        raise ValueError(f"explicit C_k curves are built for 1 <= k <= 4, got {k}")
    f_k = sp.prod([W1 + j * W0 for j in range(1, k + 1)])
    g_k = sp.prod([W1 - j * W0 for j in range(1, k + 1)])
    return BiProjCurve.from_expression(Z0**4 * f_k + Z1**4 * g_k)


def _generator_root(n: int) -> sp.Expr:
    if n not in (2, 4):
        raise ValueError(f"explicit actions are defined over Q(i): group order must be 2 or 4, got {n}")
    return sp.I if n == 4 else sp.Integer(-1)


def _binary_form_roots(form: sp.Expr, degree: int) -> List[ProjectivePoint]:
    """Roots [w0:w1] of a binary form, which must split over Q(i)."""
    h = sp.Poly(sp.expand(form.subs({W0: 1, W1: _T})), _T, domain=sp.QQ_I)
    if h.is_zero:
        raise NonIsolatedFixedLocus("the curve contains a whole fixed line of the action")
    roots: List[ProjectivePoint] = []
    if h.degree() < degree:
        roots.append((GaussRational(0), GaussRational(1)))
    _, factors = sp.factor_list(h.as_expr(), _T, gaussian=True)
    for factor, _multiplicity in factors:
        linear = sp.Poly(factor, _T)
        if linear.degree() != 1:
            logger.error(f"Binary form factor {factor} does not split over Q(i)")
            raise IrreducibleFactor(f"factor {factor} of degree {linear.degree()} does not split over Q(i)")
        alpha, beta = linear.all_coeffs()
        roots.append((GaussRational(1), GaussRational.from_sympy(-beta / alpha)))
    return roots


def _tangent_weight(c: BiProjCurve, z_at_zero: bool, w: ProjectivePoint, n: int) -> int:
    """
    Weight of the action on the tangent line of C at a fixed point.

    In the chart z1 = 1 (z = [0:1]) the coordinate s = z0/z1 has weight 1;
    in the chart z0 = 1 (z = [1:0]) the coordinate s = z1/z0 has weight n - 1.
    C is locally a graph over s exactly when dF/du != 0 for the w-chart
    coordinate u.
    """
    if w[0] != 0:
        w_subs, u0 = {W0: 1, W1: _U}, (w[1] / w[0]).to_sympy()
    else:
        w_subs, u0 = {W0: _U, W1: 1}, sp.Integer(0)
    z_subs = {Z0: _S, Z1: 1} if z_at_zero else {Z0: 1, Z1: _S}
    local = c.equation.subs({**z_subs, **w_subs}, simultaneous=True)
    at_point = {_S: 0, _U: u0}

    if sp.expand(local.subs(at_point)) != 0:
        raise ConsistencyFailure("candidate fixed point does not lie on the curve")
    d_s = sp.expand(sp.diff(local, _S).subs(at_point))
    d_u = sp.expand(sp.diff(local, _U).subs(at_point))
    if d_s == 0 and d_u == 0:
        logger.error("Curve is singular at a candidate fixed point")
        raise SingularPoint("both partial derivatives vanish at a fixed point")
    if d_u == 0:
        raise NonIsolatedFixedLocus("the action is trivial on the tangent line at a fixed point")
    return 1 if z_at_zero else n - 1


def fixed_points(c: BiProjCurve, n: int = DEFAULT_GROUP_ORDER) -> List[FixedPointDatum]:
    """
    Fixed points of ([z0:z1], [w0:w1]) -> ([zeta z0:z1], [w0:w1]) on C.

    They lie over z = [0:1] or z = [1:0]; the restricted binary forms in
    (w0, w1) are factored over Q(i).

    Raises:
        SingularPoint: If C is singular at a fixed point
        IrreducibleFactor: If a restricted form does not split over Q(i)
    """
    _generator_root(n)
    found = []
    for z_at_zero, z in ((True, (GaussRational(0), GaussRational(1))), (False, (GaussRational(1), GaussRational(0)))):
        form = c.equation.subs({Z0: z[0].to_sympy(), Z1: z[1].to_sympy()})
        for w in _binary_form_roots(form, c.bidegree[1]):
            weight = _tangent_weight(c, z_at_zero, w, n)
            found.append(FixedPointDatum(z=z, w=w, tangent_weight=weight))

    for point in found:
        value = c.equation.subs(
            {Z0: point.z[0].to_sympy(), Z1: point.z[1].to_sympy(), W0: point.w[0].to_sympy(), W1: point.w[1].to_sympy()}
        )
        if sp.expand(value) != 0:
            raise ConsistencyFailure(f"fixed point {point.label()} is not on the curve")
    logger.info(f"Found {len(found)} fixed points on a curve of bidegree {c.bidegree}")
    return found


def riemann_hurwitz_check(genus: int, group_order: int, quotient_genus: int, ramification: Sequence[int]) -> bool:
    """
    2 - 2g = |G| (2 - 2g') - sum over ramified points upstairs of (e_p - 1).

    Raises:
        ValueError: If a stabilizer order does not divide |G|
    """
    if any(group_order % e for e in ramification):
        raise ValueError(f"stabilizer orders {list(ramification)} must divide {group_order}")
    return 2 - 2 * genus == group_order * (2 - 2 * quotient_genus) - sum(e - 1 for e in ramification)


def quotient_genus(genus: int, group_order: int, ramification: Sequence[int]) -> int:
    """Genus of C/G solved from the Riemann-Hurwitz formula."""
    twice = 2 - 2 * genus + sum(e - 1 for e in ramification)
    if twice % (2 * group_order):
        raise NonIntegerResult(f"Riemann-Hurwitz gives no integral quotient genus for g={genus}, |G|={group_order}")
    return 1 - twice // (2 * group_order)


def _weights(points: Sequence[Union[FixedPointDatum, int]]) -> List[int]:
    return [p.tangent_weight if isinstance(p, FixedPointDatum) else int(p) for p in points]


def product_inventory(
    fp: Sequence[Union[FixedPointDatum, int]],
    n: int = DEFAULT_GROUP_ORDER,
    genus: int = 3,
    fp_other: Optional[Sequence[Union[FixedPointDatum, int]]] = None,
    genus_other: Optional[int] = None,
) -> QuotientInventory:
    """
    Singularities of (C x C')/Z_n under the diagonal action.

    Each pair of fixed points (p, p') gives a germ 1/n(w_p, w_p'). Fixed points
    may be given as data or as bare tangent weights. Without fp_other the
    action is on C x C.
    """
    first = _weights(fp)
    second = first if fp_other is None else _weights(fp_other)
    other_genus = genus if genus_other is None else genus_other

    counts: Counter = Counter(normalize(n, a, b) for a in first for b in second)
    entries = tuple(
        InventoryEntry(type=t, multiplicity=m) for t, m in sorted(counts.items(), key=lambda item: (item[0].r, item[0].q))
    )
    inventory = QuotientInventory(
        entries=entries,
        cover_chi=(2 - 2 * genus) * (2 - 2 * other_genus),
        cover_K2=8 * (genus - 1) * (other_genus - 1),
        cover_chi_o=(1 - genus) * (1 - other_genus),
        group_order=n,
    )
    logger.debug(f"Inventory: {[f'{e.multiplicity} x {e.type}' for e in entries]}")
    return inventory


def burnside_euler(chi_cover: int, group_order: int, fixed_counts: Sequence[int]) -> int:
    """
    chi(S/G) = (1/|G|) sum_g chi(Fix(g)), with Fix(1) = S.

    Raises:
        NonIntegerResult: If the average is not an integer
    """
    if len(fixed_counts) != group_order - 1:
        raise ValueError(f"need one fixed point count per nontrivial element, got {len(fixed_counts)}")
    total = chi_cover + sum(fixed_counts)
    if total % group_order:
        logger.error(f"Orbit count {total}/{group_order} is not integral")
        raise NonIntegerResult(f"chi of the quotient would be {Fraction(total, group_order)}")
    return total // group_order


def lefschetz_contributions(group_order: int, data: Sequence[ElementFixedData]) -> Dict[int, GaussRational]:
    """
    Fixed point contribution sum_p 1/((1 - zeta^{ja})(1 - zeta^{jb})) of each g^j.

    Raises:
        NonIsolatedFixedLocus: If a weight is not a unit modulo the group order
    """
    if 4 % group_order:
        raise ValueError(f"exact evaluation needs the group order to divide 4, got {group_order}")
    step = 4 // group_order
    contributions: Dict[int, GaussRational] = {}
    for element in data:
        j = element.power % group_order
        if j == 0:
            raise ValueError("the identity has no isolated fixed points")
        total = GaussRational(0)
        for a, b, count in element.points:
            if any(gcd(x, group_order) != 1 for x in (a, b)):
                logger.error(f"Weights ({a}, {b}) are not units modulo {group_order}")
                raise NonIsolatedFixedLocus(f"weights ({a}, {b}) do not give an isolated fixed point of Z_{group_order}")
            denominator = (1 - gauss_root_of_unity(j * a * step)) * (1 - gauss_root_of_unity(j * b * step))
            total = total + GaussRational(count) / denominator
        contributions[j] = contributions.get(j, GaussRational(0)) + total
    return contributions


def holomorphic_lefschetz(chi_o_cover: int, group_order: int, data: Sequence[ElementFixedData]) -> int:
    """
    chi(O) of the quotient as the average of holomorphic Lefschetz numbers.

    Raises:
        NonIntegralLefschetz: If the average is not a rational integer
    """
    contributions = lefschetz_contributions(group_order, data)
    total = (GaussRational(chi_o_cover) + sum(contributions.values(), GaussRational(0))) / group_order
    logger.debug(f"Lefschetz contributions {[f'g^{j}: {v}' for j, v in sorted(contributions.items())]}")
    if not total.is_integer():
        logger.error(f"Holomorphic Lefschetz average {total} is not an integer")
        raise NonIntegralLefschetz(f"average of Lefschetz numbers is {total}")
    return int(total.re)


def lefschetz_data(inv: QuotientInventory) -> List[ElementFixedData]:
    """Every point of the inventory is fixed by every nontrivial element, with weights (1, q)."""
    points = tuple((1, e.type.q, e.multiplicity) for e in inv.entries)
    return [ElementFixedData(power=j, points=points) for j in range(1, inv.group_order)]


def resolve_quotient(inv: QuotientInventory) -> FourManifoldInvariants:
    """
    Invariants of the minimal resolution of (C x C')/G.

    chi from the orbit count plus one per exceptional curve; K^2 from
    K_cover^2/|G| plus the discrepancy corrections; chi_h from the holomorphic
    Lefschetz formula. The signature is c1^2 - 8 chi_h and must agree with
    (c1^2 - 2 chi)/3.

    Raises:
        NotClassT: If some singular point is not of class T
        ConsistencyFailure: If the two signatures disagree
    """
    for entry in inv.entries:
        if entry.type.r != inv.group_order:
            raise ValueError(f"{entry.type} does not have full stabilizer Z_{inv.group_order}")
        if not classify_T(entry.type).is_class_t:
            logger.error(f"{entry.type} is not of class T")
            raise NotClassT(f"{entry.type} is not of class T")

    chi = burnside_euler(inv.cover_chi, inv.group_order, [inv.total_points] * (inv.group_order - 1))
    K2 = Fraction(inv.cover_K2, inv.group_order)
    for entry in inv.entries:
        resolution = resolve(entry.type)
        chi += entry.multiplicity * resolution.delta_chi
        K2 += entry.multiplicity * resolution.delta_K2
    if K2.denominator != 1:
        raise ConsistencyFailure(f"K^2 of the resolution is not an integer: {K2}")

    chi_h = holomorphic_lefschetz(inv.cover_chi_o, inv.group_order, lefschetz_data(inv))
    sigma = int(K2) - 8 * chi_h
    if Fraction(int(K2) - 2 * chi, 3) != sigma:
        logger.error(f"Signature {sigma} from chi_h disagrees with (K^2 - 2 chi)/3 for chi={chi}, K^2={K2}")
        raise ConsistencyFailure(f"sigma = {sigma} but (K^2 - 2 chi)/3 = {Fraction(int(K2) - 2 * chi, 3)}")

    logger.info(f"Resolved {inv.total_points} quotient singularities: chi={chi}, sigma={sigma}, chi_h={chi_h}")
    return FourManifoldInvariants(chi=chi, sigma=sigma)


def fibration_euler(fibre_genus: int, base_genus: int, singular_fibre_eulers: Sequence[int]) -> int:
    """Euler number of a fibration: chi(B) chi(F) + sum over singular fibres of (chi(F_s) - chi(F))."""
    generic = 2 - 2 * fibre_genus
    return (2 - 2 * base_genus) * generic + sum(e - generic for e in singular_fibre_eulers)


def quotient_fibration_euler(
    fp: Sequence[Union[FixedPointDatum, int]],
    genus: int,
    fp_other: Sequence[Union[FixedPointDatum, int]],
    genus_other: int,
    n: int = DEFAULT_GROUP_ORDER,
) -> int:
    """
    Euler number of the resolved quotient through its projection to C/Z_n.

    The fibre over the image of a fixed point x is C'/Z_n together with the
    exceptional trees of the points (x, y); it has Euler number
    chi(C'/Z_n) + total number of exceptional curves over x.
    """
    first, second = _weights(fp), _weights(fp_other)
    base_genus = quotient_genus(genus, n, [n] * len(first))
    fibre_quotient_genus = quotient_genus(genus_other, n, [n] * len(second))
    singular = []
    for a in first:
        spheres = sum(resolve(normalize(n, a, b)).delta_chi for b in second)
        singular.append(2 - 2 * fibre_quotient_genus + spheres)
    return fibration_euler(genus_other, base_genus, singular)


class QuotientPipelineResult(BaseModel):
    """Everything computed for (C x C')/Z_n and its minimal resolution."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    genus: int
    genus_other: int
    fixed_points: Tuple[FixedPointDatum, ...]
    fixed_points_other: Tuple[FixedPointDatum, ...]
    quotient_curve_genus: int
    inventory: QuotientInventory
    quotient_chi: int
    lefschetz: Dict[int, GaussRational]
    invariants: FourManifoldInvariants
    fibration_chi: int
    en: Optional[int]


def product_pipeline(
    curve: BiProjCurve,
    curve_other: Optional[BiProjCurve] = None,
    n: int = DEFAULT_GROUP_ORDER,
) -> QuotientPipelineResult:
    """Fixed points, inventory, resolution and cross-checks for (C x C')/Z_n."""
    other = curve if curve_other is None else curve_other
    fp = fixed_points(curve, n)
    fp_other = fp if curve_other is None else fixed_points(other, n)
    g, g_other = curve_genus(curve), curve_genus(other)

    if not riemann_hurwitz_check(g, n, quotient_genus(g, n, [n] * len(fp)), [n] * len(fp)):
        raise ConsistencyFailure("Riemann-Hurwitz check failed for the first factor")

    inventory = product_inventory(fp, n, g, fp_other, g_other)
    invariants = resolve_quotient(inventory)
    fibration_chi = quotient_fibration_euler(fp, g, fp_other, g_other, n)
    if fibration_chi != invariants.chi:
        logger.error(f"Fibration Euler number {fibration_chi} differs from {invariants.chi}")
        raise ConsistencyFailure(f"chi = {invariants.chi} but the fibration gives {fibration_chi}")

    return QuotientPipelineResult(
        genus=g,
        genus_other=g_other,
        fixed_points=tuple(fp),
        fixed_points_other=tuple(fp_other),
        quotient_curve_genus=quotient_genus(g, n, [n] * len(fp)),
        inventory=inventory,
        quotient_chi=burnside_euler(inventory.cover_chi, n, [inventory.total_points] * (n - 1)),
        lefschetz=lefschetz_contributions(n, lefschetz_data(inventory)),
        invariants=invariants,
        fibration_chi=fibration_chi,
        en=recognize_en(invariants),
    )


class FamilyCounts(BaseModel):
    """Counts for (C_k x C_l)/Z_4 computed from k and l alone."""

    model_config = ConfigDict(frozen=True)

    k: int
    l: int
    genus_k: int
    genus_l: int
    fixed_points_k: int
    fixed_points_l: int
    inventory: QuotientInventory
    invariants: FourManifoldInvariants
    en: Optional[int]


def ck_cl_counts(k: int, l: int) -> FamilyCounts:
    """
    C_k has bidegree (4, k), genus 3(k - 1), and 2k fixed points: k of weight
    1 over z = [0:1] and k of weight 3 over z = [1:0].
    """
    if k < 1 or l < 1:
        raise ValueError(f"k and l must be positive, got ({k}, {l})")
    n = DEFAULT_GROUP_ORDER
    g_k, g_l = genus_bidegree(4, k), genus_bidegree(4, l)
    weights_k = [1] * k + [n - 1] * k
    weights_l = [1] * l + [n - 1] * l
    inventory = product_inventory(weights_k, n, g_k, weights_l, g_l)
    invariants = resolve_quotient(inventory)
    return FamilyCounts(
        k=k,
        l=l,
        genus_k=g_k,
        genus_l=g_l,
        fixed_points_k=len(weights_k),
        fixed_points_l=len(weights_l),
        inventory=inventory,
        invariants=invariants,
        en=recognize_en(invariants),
    )
